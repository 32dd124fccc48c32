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
"""Text formats for complexes (``.cplx``), functions (``.dmf``) and fields.

Both file formats are line based. Blank lines and lines starting with ``#``
are ignored. A complex line lists the vertex tokens of one simplex and the
closure is taken on load; a function line reads ``<simplex-name> <value>``.
"""

import pathlib
import typing

from dmorse.complex import Simplex, SimplicialComplex, build_complex
from dmorse.errors import (IncompleteFunctionError, MalformedSimplexError,
                           ParseError, UnknownSimplexError)
from dmorse.morse import (GradientVectorField, MorseFunction, Value,
                          format_value, parse_value)

PathLike = typing.Union[str, pathlib.Path]


def _lines(text: str) -> typing.Iterator[tuple[int, list[str]]]:
  for number, line in enumerate(text.splitlines(), start=1):
    stripped = line.strip()
    if stripped and not stripped.startswith('#'):
      yield number, stripped.split()


def parse_complex(text: str) -> SimplicialComplex:
  """Reads a complex, one simplex per line.

  Raises:
    ParseError: A line holds an invalid or repeated token.
  """
  simplices = []
  for number, tokens in _lines(text):
    try:
      simplices.append(Simplex.of(*tokens))
    except MalformedSimplexError as e:
      raise ParseError(str(e), number) from e
  return build_complex(simplices)


def dump_complex(complex_: SimplicialComplex) -> str:
  """Writes the maximal simplices of ``complex_``, one per line."""
  return ''.join(' '.join(s.vertices) + '\n'
                 for s in complex_.maximal_simplices())


def parse_function(text: str, complex_: SimplicialComplex) -> MorseFunction:
  """Reads the values of a function on ``complex_``.

  Raises:
    ParseError: A line is malformed or repeats a simplex.
    UnknownSimplexError: A line names a simplex outside ``complex_``.
    IncompleteFunctionError: Some simplices of ``complex_`` have no value.
  """
  values: dict[Simplex, Value] = {}
  for number, fields in _lines(text):
    if len(fields) != 2:
      got = ' '.join(fields)
      raise ParseError(f'Expected "<simplex> <value>", got {got!r}', number)
    name, literal = fields
    try:
      simplex = Simplex.parse(name)
    except MalformedSimplexError as e:
      raise ParseError(str(e), number) from e
    if simplex not in complex_:
      raise UnknownSimplexError(f'line {number}: Unknown simplex: {name}')
    if simplex in values:
      raise ParseError(f'Duplicate value for {name}', number)
    try:
      values[simplex] = parse_value(literal)
    except ParseError as e:
      raise ParseError(str(e), number) from e
  missing = [s.name for s in complex_ if s not in values]
  if missing:
    raise IncompleteFunctionError('No value for ' + ', '.join(missing))
  return MorseFunction(values)


def dump_function(function: typing.Mapping[Simplex, Value]) -> str:
  return ''.join(f'{s.name} {format_value(function[s])}\n'
                 for s in sorted(function))


def load_complex(path: PathLike) -> SimplicialComplex:
  return parse_complex(pathlib.Path(path).read_text(encoding='utf-8'))


def load_function(path: PathLike,
                  complex_: SimplicialComplex) -> MorseFunction:
  return parse_function(
      pathlib.Path(path).read_text(encoding='utf-8'), complex_)


def format_field(field: GradientVectorField) -> str:
  """One line per field: ``pair <lower> <upper>`` items joined by ``; ``."""
  if not len(field):
    return 'empty'
  return '; '.join(f'pair {lower} {upper}' for lower, upper in field)
