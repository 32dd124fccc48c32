# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Exceptions raised by dmorse.

Every error derives from :class:`MorseError` and from the closest builtin
exception, so callers may catch either.
"""

import typing

if typing.TYPE_CHECKING:
  from dmorse.morse import ValidationReport


class MorseError(Exception):
  """Base class of all dmorse errors."""


class MalformedSimplexError(MorseError, ValueError):
  """A simplex or a gradient pair is not well formed."""


class UnknownSimplexError(MorseError, LookupError):
  """A simplex is not a member of the complex it is used with."""


class IncompleteFunctionError(MorseError, ValueError):
  """A function misses values for some simplices of its complex."""


class InvalidMorseFunctionError(MorseError, ValueError):
  """A function violates the discrete Morse axioms or injectivity."""

  def __init__(self, message: str, report: 'ValidationReport'):
    super().__init__(message)
    self.report = report


class InvalidGradientFieldError(MorseError, ValueError):
  """A set of pairs is not an acyclic matching."""

  def __init__(self, message: str, report: 'ValidationReport'):
    super().__init__(message)
    self.report = report


class InvalidEndpointError(MorseError, ValueError):
  """A path endpoint has the wrong dimension."""


class NotAGraphError(MorseError, ValueError):
  """A graph-only operation got a complex of dimension two or more."""


class DimensionMismatchError(MorseError, ValueError):
  """Simplices compared by a connection query differ in dimension."""


class NonCriticalError(MorseError, ValueError):
  """A connection query got a simplex that is not critical."""


class EnumerationLimitError(MorseError, ValueError):
  """The input is too large for exhaustive enumeration."""


class CriticalValueError(MorseError, ValueError):
  """An interval that must be free of critical values contains one."""


class ParseError(MorseError, ValueError):
  """A complex or function file could not be parsed."""

  def __init__(self, message: str, line: typing.Optional[int] = None):
    if line is not None:
      message = f'line {line}: {message}'
    super().__init__(message)
    self.line = line


class UnknownCorpusEntryError(MorseError, LookupError):
  """No builtin complex or function has the requested name."""
