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
"""Sub-level filtrations and persistence pairs of discrete Morse functions.

Pairs come from the standard F2 column reduction of the boundary matrix in
filtration order, which realizes the elder rule: a dying class is attributed
to the youngest birth it merges.
"""

import dataclasses
import enum
import functools
import logging
import typing

import numpy as np

from dmorse import gf2
from dmorse.complex import Simplex, SimplicialComplex, betti_numbers
from dmorse.morse import (MorseFunction, Value, alternating_sum,
                          critical_simplices, require_dmf)

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class FiltrationOrder:
  """A face-respecting total order of the simplices with entry values."""

  sequence: tuple[Simplex, ...]
  entry_value: typing.Mapping[Simplex, Value]

  def values(self) -> list[Value]:
    """Distinct entry values in increasing order."""
    return sorted(set(self.entry_value.values()))

  def index(self, simplex: Simplex) -> int:
    return self.sequence.index(simplex)

  def prefix(self, c: Value) -> tuple[Simplex, ...]:
    return tuple(s for s in self.sequence if self.entry_value[s] <= c)

  def prefix_complex(self, c: Value) -> SimplicialComplex:
    return SimplicialComplex(self.prefix(c))


def _entry_values(complex_: SimplicialComplex,
                  function: typing.Mapping[Simplex, Value]
                 ) -> dict[Simplex, Value]:
  entry: dict[Simplex, Value] = {}
  for p in range(complex_.dim, -1, -1):
    for simplex in complex_.simplices(p):
      entry[simplex] = min([function[simplex]] +
                           [entry[t] for t in complex_.cofaces(simplex)])
  return entry


def filtration_order(complex_: SimplicialComplex,
                     function: typing.Mapping[Simplex,
                                              Value]) -> FiltrationOrder:
  """Orders simplices by the value at which they enter the sub-level complex.

  A simplex enters at the smallest value of itself and its cofaces. Ties put
  the lower dimension first, then the canonical name.
  """
  require_dmf(complex_, function)
  entry = _entry_values(complex_, function)
  sequence = tuple(
      sorted(complex_, key=lambda s: (entry[s], s.dim, s.name)))
  return FiltrationOrder(sequence, entry)


@dataclasses.dataclass(frozen=True)
class PersistencePair:
  """Birth and death of a homology class; ``death`` is None for infinity."""

  birth: Simplex
  death: typing.Optional[Simplex]
  birth_value: Value
  death_value: typing.Optional[Value]

  @property
  def dim(self) -> int:
    return self.birth.dim

  @property
  def essential(self) -> bool:
    return self.death is None

  @property
  def persistence(self) -> typing.Optional[Value]:
    """Death value minus birth value, None for an essential class."""
    if self.death_value is None:
      return None
    return self.death_value - self.birth_value


@dataclasses.dataclass(frozen=True)
class Persistence:
  """Result of the boundary-matrix reduction of one filtration.

  ``pairs`` holds the persistence pairs between critical simplices, essential
  ones included. ``zero_persistence`` holds the reduction pairs whose members
  enter at the same value; these are the gradient pairs of the function.
  """

  filtration: FiltrationOrder
  pairs: tuple[PersistencePair, ...]
  zero_persistence: tuple[tuple[Simplex, Simplex], ...]
  dim: int

  def in_dim(self, q: int) -> tuple[PersistencePair, ...]:
    return tuple(pair for pair in self.pairs if pair.dim == q)

  def pair_counts(self) -> list[int]:
    """Number of pairs born in each dimension, index 0..dim."""
    return [len(self.in_dim(q)) for q in range(self.dim + 1)]

  def finite_pair_counts(self) -> list[int]:
    """Number of finite pairs born in each dimension, index 0..dim."""
    return [
        sum(1 for pair in self.in_dim(q) if not pair.essential)
        for q in range(self.dim + 1)
    ]

  def betti_at(self, c: Value) -> list[int]:
    """Betti numbers of the sub-level complex at ``c`` read off the pairs."""
    betti = [0] * (self.dim + 1)
    for pair in self.pairs:
      if pair.birth_value <= c and (pair.death_value is None or
                                    pair.death_value > c):
        betti[pair.dim] += 1
    return betti


@functools.lru_cache(maxsize=1024)
def _persistence(complex_: SimplicialComplex,
                 function: MorseFunction) -> Persistence:
  filtration = filtration_order(complex_, function)
  sequence = filtration.sequence
  entry = filtration.entry_value
  position = {s: i for i, s in enumerate(sequence)}
  matrix = np.zeros((len(sequence), len(sequence)), dtype=np.uint8)
  for j, simplex in enumerate(sequence):
    for face in simplex.faces():
      matrix[position[face], j] = 1
  reduced, owner = gf2.reduce_columns(matrix)
  logger.debug('Reduced a %d x %d boundary matrix', *matrix.shape)

  pairs = []
  zero = []
  deaths = set(owner.values())
  for row, col in owner.items():
    birth, death = sequence[row], sequence[col]
    if entry[birth] == entry[death]:
      zero.append((birth, death))
    else:
      pairs.append(
          PersistencePair(birth, death, entry[birth], entry[death]))
  for i, simplex in enumerate(sequence):
    if i not in owner and i not in deaths:
      pairs.append(PersistencePair(simplex, None, entry[simplex], None))
  pairs.sort(key=lambda pair: (pair.dim, pair.birth_value, pair.birth.name))
  zero.sort()
  return Persistence(filtration, tuple(pairs), tuple(zero), complex_.dim)


def persistence_pairs(complex_: SimplicialComplex,
                      function: typing.Mapping[Simplex, Value]) -> Persistence:
  """Persistence pairs of the sub-level filtration of ``function``.

  Raises:
    InvalidMorseFunctionError: ``function`` is not an injective DMF.
  """
  if not isinstance(function, MorseFunction):
    function = MorseFunction(function)
  return _persistence(complex_, function)


class CriticalKind(enum.Enum):
  BIRTH_PAIRED = 'birth'
  DEATH = 'death'
  ESSENTIAL = 'essential'


def classify_critical(
    complex_: SimplicialComplex,
    function: typing.Mapping[Simplex, Value]) -> dict[Simplex, CriticalKind]:
  """Tags each critical simplex by the role it plays in its pair."""
  tags = {}
  for pair in persistence_pairs(complex_, function).pairs:
    if pair.death is None:
      tags[pair.birth] = CriticalKind.ESSENTIAL
    else:
      tags[pair.birth] = CriticalKind.BIRTH_PAIRED
      tags[pair.death] = CriticalKind.DEATH
  return dict(sorted(tags.items()))


@dataclasses.dataclass(frozen=True)
class MorseEqualities:
  """Morse inequalities rewritten as equalities through pair counts.

  Per dimension ``q``: ``C_q = b_q + #finite_{q-1} + #finite_q`` and
  ``b_q = #pairs_q - #finite_q``; per ``i`` the alternating partial sums of
  ``C`` exceed those of ``b`` by exactly ``#finite_i``, and the full
  alternating sums agree.
  """

  critical_counts: list[int]
  betti: list[int]
  pair_counts: list[int]
  finite_pair_counts: list[int]
  critical_identity: list[bool]
  betti_identity: list[bool]
  partial_sums: list[bool]
  alternating_sum: bool

  @property
  def ok(self) -> bool:
    return (all(self.critical_identity) and all(self.betti_identity) and
            all(self.partial_sums) and self.alternating_sum)


def morse_equalities_report(
    complex_: SimplicialComplex,
    function: typing.Mapping[Simplex, Value]) -> MorseEqualities:
  counts = critical_simplices(complex_, function).counts()
  betti = betti_numbers(complex_)
  result = persistence_pairs(complex_, function)
  pairs = result.pair_counts()
  finite = result.finite_pair_counts()
  top = complex_.dim

  def finite_at(q: int) -> int:
    # Nothing is born below dimension 0 and nothing dies above the top.
    if q < 0 or q == top:
      return 0
    return finite[q]

  return MorseEqualities(
      critical_counts=counts,
      betti=betti,
      pair_counts=pairs,
      finite_pair_counts=finite,
      critical_identity=[
          counts[q] == betti[q] + finite_at(q - 1) + finite_at(q)
          for q in range(top + 1)
      ],
      betti_identity=[
          betti[q] == pairs[q] - finite[q] for q in range(top + 1)
      ],
      partial_sums=[
          alternating_sum(counts, i) == alternating_sum(betti, i) + finite[i]
          for i in range(top + 1)
      ],
      alternating_sum=(top < 0 or alternating_sum(counts, top)
                       == alternating_sum(betti, top) + finite_at(top)),
  )


def betti_at(complex_: SimplicialComplex,
             function: typing.Mapping[Simplex, Value],
             c: typing.Union[int, Value]) -> list[int]:
  """Betti numbers of the sub-level complex ``K(c)`` from the pairs alone."""
  return persistence_pairs(complex_, function).betti_at(Value(c))
