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
"""Discrete Morse functions, gradient vector fields and gradient paths."""

import collections
import collections.abc
import dataclasses
import enum
import fractions
import functools
import logging
import re
import typing

import networkx as nx

from dmorse.complex import (Simplex, SimplicialComplex, betti_numbers,
                            closure)
from dmorse.errors import (CriticalValueError, IncompleteFunctionError,
                           InvalidEndpointError, InvalidGradientFieldError,
                           InvalidMorseFunctionError, MalformedSimplexError,
                           ParseError, UnknownSimplexError)

logger = logging.getLogger(__name__)

Value = fractions.Fraction
SimplexLike = typing.Union[Simplex, str]

_DECIMAL = re.compile(r'[+-]?(\d+(\.\d*)?|\.\d+)\Z')
_RATIONAL = re.compile(r'[+-]?\d+/\d+\Z')


def parse_value(text: str) -> Value:
  """Parses a decimal literal or a ``p/q`` rational into an exact value."""
  text = text.strip()
  if not (_DECIMAL.match(text) or _RATIONAL.match(text)):
    raise ParseError(f'Invalid value: {text!r}')
  try:
    return Value(text)
  except ZeroDivisionError:
    raise ParseError(f'Zero denominator: {text!r}')


def format_value(value: Value) -> str:
  """Formats an exact value as an integer or ``p/q``."""
  if value.denominator == 1:
    return str(value.numerator)
  return f'{value.numerator}/{value.denominator}'


def _as_simplex(simplex: SimplexLike) -> Simplex:
  return simplex if isinstance(simplex, Simplex) else Simplex.parse(simplex)


def _as_value(value: typing.Union[int, str, Value]) -> Value:
  if isinstance(value, bool) or isinstance(value, float):
    raise TypeError(f'Values must be exact, got {value!r}')
  if isinstance(value, str):
    return parse_value(value)
  return Value(value)


class MorseFunction(collections.abc.Mapping):
  """An immutable map from simplices to exact rational values.

  Values may be given as ints, :class:`fractions.Fraction` or decimal/rational
  strings; keys as simplices or canonical names. Whether the map satisfies
  the discrete Morse axioms is checked by :func:`validate_dmf`.
  """

  def __init__(self, values: typing.Mapping[SimplexLike,
                                            typing.Union[int, str, Value]]):
    self._values = {
        _as_simplex(simplex): _as_value(value)
        for simplex, value in values.items()
    }
    self._hash = hash(frozenset(self._values.items()))

  def __getitem__(self, simplex: Simplex) -> Value:
    return self._values[simplex]

  def __iter__(self) -> typing.Iterator[Simplex]:
    return iter(sorted(self._values))

  def __len__(self) -> int:
    return len(self._values)

  def __hash__(self) -> int:
    return self._hash

  def __reduce__(self):
    return (MorseFunction, (self._values,))

  def __repr__(self) -> str:
    body = ', '.join(
        f'{s.name}:{format_value(v)}' for s, v in sorted(self._values.items()))
    return f'MorseFunction({{{body}}})'

  def restrict(self, complex_: SimplicialComplex) -> 'MorseFunction':
    """Restriction to a subcomplex, again a discrete Morse function."""
    return MorseFunction({s: self._values[s] for s in complex_})


class ViolationKind(enum.Enum):
  COFACE = 'coface'
  FACE = 'face'
  NON_INJECTIVE = 'non-injective'
  NON_MATCHING = 'non-matching'
  CYCLE = 'cycle'


@dataclasses.dataclass(frozen=True)
class Violation:
  kind: ViolationKind
  simplices: tuple[Simplex, ...]
  message: str


@dataclasses.dataclass(frozen=True)
class ValidationReport:
  violations: tuple[Violation, ...] = ()

  @property
  def ok(self) -> bool:
    return not self.violations

  def __bool__(self) -> bool:
    return self.ok


def validate_dmf(complex_: SimplicialComplex,
                 function: typing.Mapping[Simplex, Value],
                 require_injective: bool = True) -> ValidationReport:
  """Checks the discrete Morse axioms for every simplex.

  A simplex violates the axioms when more than one coface has a value at or
  below its own, or more than one face has a value at or above its own. With
  ``require_injective`` repeated values are reported as well. Values given
  for simplices outside ``complex_`` are ignored.

  Raises:
    IncompleteFunctionError: Some simplex of ``complex_`` has no value.
  """
  missing = [s for s in complex_ if s not in function]
  if missing:
    names = ', '.join(s.name for s in missing[:5])
    raise IncompleteFunctionError(
        f'Missing values for {len(missing)} simplices: {names}')

  violations = []
  for simplex in complex_:
    value = function[simplex]
    low_cofaces = [
        t for t in complex_.cofaces(simplex) if function[t] <= value
    ]
    if len(low_cofaces) > 1:
      violations.append(
          Violation(
              ViolationKind.COFACE, (simplex, *low_cofaces),
              f'{simplex} has {len(low_cofaces)} cofaces with values at or '
              f'below {format_value(value)}'))
    high_faces = [f for f in simplex.faces() if function[f] >= value]
    if len(high_faces) > 1:
      violations.append(
          Violation(
              ViolationKind.FACE, (simplex, *high_faces),
              f'{simplex} has {len(high_faces)} faces with values at or '
              f'above {format_value(value)}'))

  if require_injective:
    groups: dict[Value, list[Simplex]] = collections.defaultdict(list)
    for simplex in complex_:
      groups[function[simplex]].append(simplex)
    for value, members in sorted(groups.items()):
      if len(members) > 1:
        names = ', '.join(s.name for s in members)
        violations.append(
            Violation(ViolationKind.NON_INJECTIVE, tuple(members),
                      f'Value {format_value(value)} is shared by {names}'))
  return ValidationReport(tuple(violations))


def require_dmf(complex_: SimplicialComplex,
                function: typing.Mapping[Simplex, Value]) -> None:
  """Raises :class:`InvalidMorseFunctionError` unless ``function`` is valid."""
  if not isinstance(function, MorseFunction):
    function = MorseFunction(function)
  _require_dmf(complex_, function)


@functools.lru_cache(maxsize=4096)
def _require_dmf(complex_: SimplicialComplex, function: MorseFunction) -> None:
  report = validate_dmf(complex_, function)
  if not report.ok:
    raise InvalidMorseFunctionError(
        'Not an injective discrete Morse function: ' +
        report.violations[0].message, report)


class GradientVectorField:
  """A set of gradient pairs ``(lower, upper)`` with ``lower`` a facet of
  ``upper``.

  Whether the pairs form an acyclic matching is checked by
  :func:`validate_gvf`; partner lookups assume they do.
  """

  def __init__(self, pairs: typing.Iterable[tuple[SimplexLike, SimplexLike]]):
    normalized = set()
    for lower, upper in pairs:
      lower, upper = _as_simplex(lower), _as_simplex(upper)
      if not lower.is_face_of(upper):
        raise MalformedSimplexError(
            f'Not a gradient pair: {lower} is not a facet of {upper}')
      normalized.add((lower, upper))
    self._pairs = frozenset(normalized)
    self._up = {lower: upper for lower, upper in self._pairs}
    self._down = {upper: lower for lower, upper in self._pairs}

  @property
  def pairs(self) -> frozenset[tuple[Simplex, Simplex]]:
    return self._pairs

  def upper(self, simplex: Simplex) -> typing.Optional[Simplex]:
    """The coface paired with ``simplex``, if any."""
    return self._up.get(simplex)

  def lower(self, simplex: Simplex) -> typing.Optional[Simplex]:
    """The face paired with ``simplex``, if any."""
    return self._down.get(simplex)

  def is_paired(self, simplex: Simplex) -> bool:
    return simplex in self._up or simplex in self._down

  def critical(self, complex_: SimplicialComplex) -> tuple[Simplex, ...]:
    return tuple(s for s in complex_ if not self.is_paired(s))

  def __iter__(self) -> typing.Iterator[tuple[Simplex, Simplex]]:
    return iter(sorted(self._pairs))

  def __len__(self) -> int:
    return len(self._pairs)

  def __contains__(self, pair: object) -> bool:
    return pair in self._pairs

  def __eq__(self, other: object) -> bool:
    if not isinstance(other, GradientVectorField):
      return NotImplemented
    return self._pairs == other._pairs

  def __hash__(self) -> int:
    return hash(self._pairs)

  def __repr__(self) -> str:
    body = ', '.join(f'({a}, {b})' for a, b in self)
    return f'GradientVectorField([{body}])'


@dataclasses.dataclass(frozen=True)
class GradientPath:
  """An alternating sequence of ``p``- and ``(p+1)``-simplices."""

  sequence: tuple[Simplex, ...]
  p: int

  def __post_init__(self):
    if not self.sequence:
      raise MalformedSimplexError('A gradient path needs a simplex')
    for simplex in self.sequence:
      if simplex.dim not in (self.p, self.p + 1):
        raise MalformedSimplexError(
            f'{simplex} does not belong to a path of type ({self.p}, '
            f'{self.p + 1})')

  @property
  def start(self) -> Simplex:
    return self.sequence[0]

  @property
  def end(self) -> Simplex:
    return self.sequence[-1]

  @property
  def trivial(self) -> bool:
    return len(self.sequence) == 1

  def is_valid_in(self, field: GradientVectorField) -> bool:
    """Checks the step rules of a gradient path against ``field``."""
    for i, (current, following) in enumerate(
        zip(self.sequence, self.sequence[1:])):
      if current.dim == self.p:
        if field.upper(current) != following:
          return False
      else:
        previous = self.sequence[i - 1] if i > 0 else field.lower(current)
        if (not following.is_face_of(current) or following == previous or
            following.dim != self.p):
          return False
    return True

  def __iter__(self) -> typing.Iterator[Simplex]:
    return iter(self.sequence)

  def __len__(self) -> int:
    return len(self.sequence)

  def __str__(self) -> str:
    return ';'.join(s.name for s in self.sequence)


def _step(field: GradientVectorField, simplex: Simplex,
          p: int) -> tuple[Simplex, ...]:
  if simplex.dim == p:
    upper = field.upper(simplex)
    return (upper,) if upper is not None else ()
  paired = field.lower(simplex)
  return tuple(face for face in simplex.faces() if face != paired)


def v_paths(field: GradientVectorField, start: Simplex, end: Simplex,
            p: int) -> list[GradientPath]:
  """All gradient paths of type ``(p, p+1)`` from ``start`` to ``end``.

  Either endpoint may be a ``p``- or a ``(p+1)``-simplex. A path stops at the
  first arrival at ``end``; ``start == end`` yields the trivial path only.

  Raises:
    InvalidEndpointError: An endpoint is neither ``p``- nor
      ``(p+1)``-dimensional.
  """
  for simplex in (start, end):
    if p < 0 or simplex.dim not in (p, p + 1):
      raise InvalidEndpointError(
          f'{simplex} cannot end a path of type ({p}, {p + 1})')

  paths = []
  stack = [(start,)]
  while stack:
    sequence = stack.pop()
    current = sequence[-1]
    if current == end:
      paths.append(GradientPath(sequence, p))
      continue
    for following in reversed(_step(field, current, p)):
      if following not in sequence:
        stack.append(sequence + (following,))
  return paths


def flow_digraph(complex_: SimplicialComplex,
                 field: GradientVectorField) -> nx.DiGraph:
  """The modified Hasse diagram: face edges descend, paired edges ascend."""
  digraph = nx.DiGraph()
  digraph.add_nodes_from(complex_)
  for upper in complex_:
    for lower in upper.faces():
      if (lower, upper) in field:
        digraph.add_edge(lower, upper)
      else:
        digraph.add_edge(upper, lower)
  return digraph


def validate_gvf(complex_: SimplicialComplex,
                 field: GradientVectorField) -> ValidationReport:
  """Checks that ``field`` is an acyclic matching on ``complex_``.

  Raises:
    UnknownSimplexError: A pair references a simplex outside ``complex_``.
  """
  usage: dict[Simplex, list[tuple[Simplex, Simplex]]] = (
      collections.defaultdict(list))
  for pair in field:
    for simplex in pair:
      if simplex not in complex_:
        raise UnknownSimplexError(f'Unknown simplex: {simplex}')
      usage[simplex].append(pair)

  violations = []
  for simplex, pairs in sorted(usage.items()):
    if len(pairs) > 1:
      listed = ', '.join(f'({a}, {b})' for a, b in pairs)
      violations.append(
          Violation(ViolationKind.NON_MATCHING, (simplex,),
                    f'{simplex} occurs in {len(pairs)} pairs: {listed}'))
  try:
    cycle = nx.find_cycle(flow_digraph(complex_, field))
  except nx.NetworkXNoCycle:
    pass
  else:
    members = tuple(edge[0] for edge in cycle)
    names = ', '.join(s.name for s in members)
    violations.append(
        Violation(ViolationKind.CYCLE, members, f'Closed V-path: {names}'))
  return ValidationReport(tuple(violations))


def require_gvf(complex_: SimplicialComplex,
                field: GradientVectorField) -> None:
  report = validate_gvf(complex_, field)
  if not report.ok:
    raise InvalidGradientFieldError(
        'Not an acyclic matching: ' + report.violations[0].message, report)


@dataclasses.dataclass(frozen=True)
class Criticality:
  """Critical/non-critical tag for every simplex of a complex."""

  tags: typing.Mapping[Simplex, bool]
  dim: int

  @property
  def critical(self) -> frozenset[Simplex]:
    return frozenset(s for s, tag in self.tags.items() if tag)

  def counts(self) -> list[int]:
    """Number of critical simplices per dimension, index 0..dim."""
    result = [0] * (self.dim + 1)
    for simplex, tag in self.tags.items():
      if tag:
        result[simplex.dim] += 1
    return result

  def __contains__(self, simplex: object) -> bool:
    return bool(self.tags.get(typing.cast(Simplex, simplex), False))


def _tags(complex_: SimplicialComplex,
          function: typing.Mapping[Simplex, Value]) -> dict[Simplex, bool]:
  tags = {}
  for simplex in complex_:
    value = function[simplex]
    tags[simplex] = (all(function[t] > value
                         for t in complex_.cofaces(simplex)) and
                     all(function[f] < value for f in simplex.faces()))
  return tags


def critical_simplices(
    complex_: SimplicialComplex,
    function: typing.Mapping[Simplex, Value]) -> Criticality:
  """Tags every simplex as critical or not.

  Raises:
    InvalidMorseFunctionError: ``function`` is not an injective DMF.
  """
  require_dmf(complex_, function)
  return Criticality(_tags(complex_, function), complex_.dim)


def gradient_field(complex_: SimplicialComplex,
                   function: typing.Mapping[Simplex, Value]
                  ) -> GradientVectorField:
  """The gradient pairs ``(a, b)`` with ``a`` a facet of ``b`` and
  ``f(a) >= f(b)``.

  Raises:
    InvalidMorseFunctionError: ``function`` is not an injective DMF.
  """
  require_dmf(complex_, function)
  return _gradient_pairs(complex_, function)


def _gradient_pairs(complex_: SimplicialComplex,
                    function: typing.Mapping[Simplex, Value]
                   ) -> GradientVectorField:
  return GradientVectorField((lower, upper)
                             for upper in complex_
                             for lower in upper.faces()
                             if function[lower] >= function[upper])


def critical_values(complex_: SimplicialComplex,
                    function: typing.Mapping[Simplex, Value]) -> list[Value]:
  criticality = critical_simplices(complex_, function)
  return sorted(function[s] for s in criticality.critical)


def sublevel_complex(complex_: SimplicialComplex,
                     function: typing.Mapping[Simplex, Value],
                     c: Value) -> SimplicialComplex:
  """Simplices with value at most ``c`` together with all their faces."""
  require_dmf(complex_, function)
  return SimplicialComplex(
      closure(s for s in complex_ if function[s] <= Value(c)))


def perturb_injective(complex_: SimplicialComplex,
                      function: typing.Mapping[Simplex, Value]
                     ) -> MorseFunction:
  """Breaks ties of a valid discrete Morse function.

  Distinct values keep their order and the gradient field is unchanged.
  Within a tie group the upper simplex of a gradient pair goes first, other
  members follow canonical name order.

  Raises:
    InvalidMorseFunctionError: ``function`` violates the axioms.
  """
  report = validate_dmf(complex_, function, require_injective=False)
  if not report.ok:
    raise InvalidMorseFunctionError(
        'Not a discrete Morse function: ' + report.violations[0].message,
        report)
  field = _gradient_pairs(complex_, function)
  groups: dict[Value, list[Simplex]] = collections.defaultdict(list)
  for simplex in complex_:
    groups[function[simplex]].append(simplex)
  distinct = sorted(groups)
  gaps = [b - a for a, b in zip(distinct, distinct[1:])]
  spread = min(gaps, default=Value(1)) / (
      max(len(members) for members in groups.values()) + 1)

  def tie_key(simplex: Simplex) -> tuple[str, int]:
    lower = field.lower(simplex)
    if lower is not None and function[lower] == function[simplex]:
      return (lower.name, 0)
    return (simplex.name, 1)

  values = {}
  for value, members in groups.items():
    for k, simplex in enumerate(sorted(members, key=tie_key)):
      values[simplex] = value + k * spread
  return MorseFunction(values)


@dataclasses.dataclass(frozen=True)
class MorseInequalities:
  """Weak and strong Morse inequalities with the Euler identity."""

  critical_counts: list[int]
  betti: list[int]
  weak: list[bool]
  strong: list[bool]
  euler: bool

  @property
  def ok(self) -> bool:
    return all(self.weak) and all(self.strong) and self.euler


def alternating_sum(values: typing.Sequence[int], i: int) -> int:
  """``values[i] - values[i - 1] + ... +- values[0]``."""
  return sum((-1)**(i - k) * values[k] for k in range(i + 1))


def morse_inequalities(complex_: SimplicialComplex,
                       function: typing.Mapping[Simplex,
                                                Value]) -> MorseInequalities:
  counts = critical_simplices(complex_, function).counts()
  betti = betti_numbers(complex_)
  top = len(counts)
  return MorseInequalities(
      critical_counts=counts,
      betti=betti,
      weak=[
          alternating_sum(counts, i) >= alternating_sum(betti, i)
          for i in range(top)
      ],
      strong=[c >= b for c, b in zip(counts, betti)],
      euler=(sum((-1)**q * c for q, c in enumerate(counts)) == sum(
          (-1)**q * b for q, b in enumerate(betti))))


def _padded(values: list[int], size: int) -> list[int]:
  return values + [0] * (size - len(values))


def homology_preserved(complex_: SimplicialComplex,
                       function: typing.Mapping[Simplex, Value], a: Value,
                       b: Value) -> bool:
  """Compares the Betti numbers of ``K(a)`` and ``K(b)``.

  Raises:
    CriticalValueError: ``[a, b]`` contains a critical value.
  """
  a, b = Value(a), Value(b)
  if any(a <= value <= b for value in critical_values(complex_, function)):
    raise CriticalValueError(
        f'[{format_value(a)}, {format_value(b)}] contains a critical value')
  size = complex_.dim + 1
  return (_padded(betti_numbers(sublevel_complex(complex_, function, a)),
                  size) == _padded(
                      betti_numbers(sublevel_complex(complex_, function, b)),
                      size))
