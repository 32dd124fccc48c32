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

from pathlib import Path

import pytest

from dmorse.complex import SimplicialComplex, build_complex
from dmorse.generate import GraphCorpusEntry, corpus_entry
from dmorse.morse import MorseFunction

pytest_plugins = "sphinx.testing.fixtures"


@pytest.fixture(scope="session")
def rootdir() -> Path:
  return Path(__file__).parent.absolute() / "roots"


@pytest.fixture
def p3() -> SimplicialComplex:
  return build_complex([('a', 'b'), ('b', 'c')])


@pytest.fixture
def p3_f1() -> MorseFunction:
  """Critical set {a}; everything flows down to a."""
  return MorseFunction({'a': 0, 'a-b': 2, 'b': 3, 'b-c': 4, 'c': 5})


@pytest.fixture
def p3_f2() -> MorseFunction:
  """Critical set {c}; everything flows down to c."""
  return MorseFunction({'a': 5, 'a-b': 4, 'b': 3, 'b-c': 2, 'c': 0})


@pytest.fixture
def c3() -> SimplicialComplex:
  return build_complex([('a', 'b'), ('b', 'c'), ('a', 'c')])


@pytest.fixture
def c3_all_critical() -> MorseFunction:
  return MorseFunction({
      'a': 0,
      'b': 1,
      'c': 2,
      'a-b': 3,
      'b-c': 4,
      'a-c': 5
  })


@pytest.fixture(scope="session")
def fig4() -> GraphCorpusEntry:
  return corpus_entry('fig4')
