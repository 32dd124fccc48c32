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
"""Finite simplicial complexes and their chain complex over F2."""

import dataclasses
import functools
import itertools
import logging
import re
import typing

import numpy as np

from dmorse import gf2
from dmorse.errors import MalformedSimplexError, UnknownSimplexError

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r'[A-Za-z0-9_]+\Z')
NAME_SEPARATOR = '-'


@functools.total_ordering
@dataclasses.dataclass(frozen=True, eq=True)
class Simplex:
  """A simplex given by its strictly increasing tuple of vertex tokens.

  Simplices order by dimension first and canonical name second, which is the
  deterministic order used for every listing in this package.
  """

  vertices: tuple[str, ...]

  def __post_init__(self):
    if not self.vertices:
      raise MalformedSimplexError('A simplex needs at least one vertex')
    for token in self.vertices:
      if not isinstance(token, str) or not TOKEN_PATTERN.match(token):
        raise MalformedSimplexError(f'Invalid vertex token: {token!r}')
    for lower, upper in zip(self.vertices, self.vertices[1:]):
      if lower >= upper:
        raise MalformedSimplexError(
            f'Vertices must be strictly increasing: {self.vertices!r}')

  @classmethod
  def of(cls, *tokens: str) -> 'Simplex':
    """Builds a simplex from vertex tokens given in any order."""
    if len(set(tokens)) != len(tokens):
      raise MalformedSimplexError(f'Duplicate vertex in simplex: {tokens!r}')
    return cls(tuple(sorted(tokens)))

  @classmethod
  def parse(cls, name: str) -> 'Simplex':
    """Parses a canonical name such as ``a-b-c``."""
    return cls.of(*name.split(NAME_SEPARATOR))

  @property
  def dim(self) -> int:
    return len(self.vertices) - 1

  @property
  def name(self) -> str:
    return NAME_SEPARATOR.join(self.vertices)

  def faces(self) -> tuple['Simplex', ...]:
    """Codimension-1 faces; empty for a vertex."""
    if self.dim == 0:
      return ()
    return tuple(
        sorted(
            Simplex(self.vertices[:i] + self.vertices[i + 1:])
            for i in range(len(self.vertices))))

  def is_face_of(self, other: 'Simplex') -> bool:
    """True iff ``self`` is a codimension-1 face of ``other``."""
    return (other.dim == self.dim + 1 and
            set(self.vertices).issubset(other.vertices))

  def _key(self) -> tuple[int, str]:
    return (self.dim, self.name)

  def __lt__(self, other: object) -> bool:
    if not isinstance(other, Simplex):
      return NotImplemented
    return self._key() < other._key()

  def __str__(self) -> str:
    return self.name


class SimplicialComplex:
  """An immutable face-closed set of simplices.

  Use :func:`build_complex` to obtain the closure of arbitrary simplices; the
  constructor itself insists on a closed input.
  """

  def __init__(self, simplices: typing.Iterable[Simplex]):
    members = frozenset(simplices)
    for simplex in members:
      for face in simplex.faces():
        if face not in members:
          raise MalformedSimplexError(
              f'Complex is not closed under faces: {face} of {simplex}')
    self._members = members
    by_dim: dict[int, list[Simplex]] = {}
    cofaces: dict[Simplex, list[Simplex]] = {s: [] for s in members}
    for simplex in members:
      by_dim.setdefault(simplex.dim, []).append(simplex)
      for face in simplex.faces():
        cofaces[face].append(simplex)
    self._by_dim = {p: tuple(sorted(group)) for p, group in by_dim.items()}
    self._cofaces = {s: tuple(sorted(group)) for s, group in cofaces.items()}
    self._hash = hash(members)

  @property
  def dim(self) -> int:
    """Largest simplex dimension, -1 for the empty complex."""
    return max(self._by_dim, default=-1)

  def simplices(self, p: typing.Optional[int] = None) -> tuple[Simplex, ...]:
    """All simplices, or the ``p``-dimensional ones, in canonical order."""
    if p is not None:
      return self._by_dim.get(p, ())
    return tuple(
        itertools.chain.from_iterable(
            self._by_dim[q] for q in sorted(self._by_dim)))

  @property
  def vertices(self) -> tuple[Simplex, ...]:
    return self.simplices(0)

  @property
  def edges(self) -> tuple[Simplex, ...]:
    return self.simplices(1)

  def counts(self) -> list[int]:
    """Number of simplices per dimension, index 0..dim."""
    return [len(self.simplices(p)) for p in range(self.dim + 1)]

  def faces(self, simplex: Simplex) -> tuple[Simplex, ...]:
    self._require(simplex)
    return simplex.faces()

  def cofaces(self, simplex: Simplex) -> tuple[Simplex, ...]:
    self._require(simplex)
    return self._cofaces[simplex]

  def maximal_simplices(self) -> tuple[Simplex, ...]:
    return tuple(s for s in self.simplices() if not self._cofaces[s])

  def is_subcomplex_of(self, other: 'SimplicialComplex') -> bool:
    return self._members <= other._members

  def _require(self, simplex: Simplex) -> None:
    if simplex not in self._members:
      raise UnknownSimplexError(f'Unknown simplex: {simplex}')

  def __contains__(self, simplex: object) -> bool:
    return simplex in self._members

  def __iter__(self) -> typing.Iterator[Simplex]:
    return iter(self.simplices())

  def __len__(self) -> int:
    return len(self._members)

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, SimplicialComplex):
      return NotImplemented
    return self._members == other._members

  def __hash__(self) -> int:
    return self._hash

  def __reduce__(self):
    # String hashes differ between processes; rebuild instead of copying.
    return (SimplicialComplex, (tuple(self._members),))

  def __repr__(self) -> str:
    names = ', '.join(s.name for s in self.maximal_simplices())
    return f'SimplicialComplex([{names}])'


@dataclasses.dataclass(frozen=True)
class Chain:
  """A chain with F2 coefficients, stored as its support."""

  support: frozenset[Simplex] = frozenset()

  def __post_init__(self):
    if len({s.dim for s in self.support}) > 1:
      raise MalformedSimplexError('A chain must have homogeneous dimension')

  @property
  def dim(self) -> typing.Optional[int]:
    """Dimension of the support, ``None`` for the zero chain."""
    return next(iter(self.support)).dim if self.support else None

  def __add__(self, other: 'Chain') -> 'Chain':
    return Chain(self.support ^ other.support)

  def __bool__(self) -> bool:
    return bool(self.support)

  def __iter__(self) -> typing.Iterator[Simplex]:
    return iter(sorted(self.support))

  def __len__(self) -> int:
    return len(self.support)


def _coerce(simplex: typing.Union[Simplex, typing.Sequence[str]]) -> Simplex:
  if isinstance(simplex, Simplex):
    return simplex
  if isinstance(simplex, str):
    return Simplex.parse(simplex)
  return Simplex.of(*simplex)


def closure(
    simplices: typing.Iterable[typing.Union[Simplex, typing.Sequence[str]]]
) -> frozenset[Simplex]:
  """All non-empty faces of the given simplices, themselves included."""
  members: set[Simplex] = set()
  for simplex in map(_coerce, simplices):
    if simplex in members:
      continue
    for size in range(1, len(simplex.vertices) + 1):
      members.update(
          Simplex(c) for c in itertools.combinations(simplex.vertices, size))
  return frozenset(members)


def build_complex(
    maximal_simplices: typing.Iterable[typing.Union[Simplex,
                                                    typing.Sequence[str]]]
) -> SimplicialComplex:
  """Returns the face closure of the given simplices.

  Args:
    maximal_simplices: Simplices or vertex-token tuples, in any order and not
      necessarily maximal. A plain string is read as a canonical name.

  Raises:
    MalformedSimplexError: A tuple is empty or repeats a vertex.
  """
  complex_ = SimplicialComplex(closure(maximal_simplices))
  logger.debug('Built complex with %d simplices (dim %d)', len(complex_),
               complex_.dim)
  return complex_


def faces(simplex: Simplex, complex_: SimplicialComplex) -> frozenset[Simplex]:
  return frozenset(complex_.faces(simplex))


def cofaces(simplex: Simplex,
            complex_: SimplicialComplex) -> frozenset[Simplex]:
  return frozenset(complex_.cofaces(simplex))


def boundary(simplex: Simplex, complex_: SimplicialComplex) -> Chain:
  """Boundary of a simplex over F2; the zero chain for a vertex."""
  return Chain(frozenset(complex_.faces(simplex)))


def boundary_of_chain(chain: Chain, complex_: SimplicialComplex) -> Chain:
  """F2-linear extension of :func:`boundary`."""
  result = Chain()
  for simplex in chain:
    result = result + boundary(simplex, complex_)
  return result


def boundary_matrix(complex_: SimplicialComplex, q: int) -> np.ndarray:
  """Matrix of the boundary map from dimension ``q`` to ``q - 1``.

  Rows and columns follow the canonical order of ``complex_.simplices``.
  """
  rows = complex_.simplices(q - 1)
  cols = complex_.simplices(q)
  index = {s: i for i, s in enumerate(rows)}
  matrix = np.zeros((len(rows), len(cols)), dtype=np.uint8)
  for j, simplex in enumerate(cols):
    for face in simplex.faces():
      matrix[index[face], j] = 1
  return matrix


def betti_numbers(complex_: SimplicialComplex) -> list[int]:
  """Betti numbers over F2, index 0..dim; empty for the empty complex."""
  top = complex_.dim
  ranks = [0] * (top + 2)
  for q in range(1, top + 1):
    ranks[q] = gf2.rank(boundary_matrix(complex_, q))
  return [
      len(complex_.simplices(q)) - ranks[q] - ranks[q + 1]
      for q in range(top + 1)
  ]


def euler_characteristic(complex_: SimplicialComplex) -> int:
  return sum((-1)**q * n for q, n in enumerate(complex_.counts()))
