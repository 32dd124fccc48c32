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


import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmorse.complex import (Simplex, SimplicialComplex, betti_numbers,
                            build_complex)
from dmorse.errors import (CriticalValueError, IncompleteFunctionError,
                           InvalidEndpointError, InvalidMorseFunctionError,
                           MalformedSimplexError, MorseError, ParseError,
                           UnknownSimplexError)
from dmorse.generate import complex_corpus, corpus_entry, random_dmf
from dmorse.morse import (GradientPath, GradientVectorField, MorseFunction,
                          ViolationKind, alternating_sum, critical_simplices,
                          critical_values, flow_digraph, format_value,
                          gradient_field, homology_preserved,
                          morse_inequalities, parse_value, perturb_injective,
                          sublevel_complex, v_paths, validate_dmf,
                          validate_gvf)
from dmorse.persistence import filtration_order


def s(name: str) -> Simplex:
  return Simplex.parse(name)


def names(simplices) -> set[str]:
  return {simplex.name for simplex in simplices}


@pytest.fixture
def p2() -> SimplicialComplex:
  return build_complex([('a', 'b')])


@pytest.mark.parametrize('text, value', [
    ('0', Fraction(0)),
    ('-3', Fraction(-3)),
    ('+2.50', Fraction(5, 2)),
    ('.5', Fraction(1, 2)),
    ('1/3', Fraction(1, 3)),
    ('-4/6', Fraction(-2, 3)),
])
def test_parse_value(text: str, value: Fraction) -> None:
  assert parse_value(text) == value


@pytest.mark.parametrize('text', ['', '1e3', 'nan', 'inf', '1/0', '0x10'])
def test_parse_invalid_value(text: str) -> None:
  with pytest.raises(ParseError):
    parse_value(text)


def test_format_value() -> None:
  assert format_value(Fraction(4)) == '4'
  assert format_value(Fraction(-2, 3)) == '-2/3'


def test_function_rejects_floats() -> None:
  with pytest.raises(TypeError):
    MorseFunction({'a': 0.5})


def test_function_is_hashable_and_sorted() -> None:
  f = MorseFunction({'b': 1, 'a-b': '3/2', 'a': 0})
  g = MorseFunction({s('a'): 0, s('b'): 1, s('a-b'): Fraction(3, 2)})
  assert f == g
  assert hash(f) == hash(g)
  assert list(f) == [s('a'), s('b'), s('a-b')]


def test_validate_ok(p2: SimplicialComplex) -> None:
  assert validate_dmf(p2, {s('a'): 0, s('b'): 1, s('a-b'): 2}).ok


def test_validate_too_many_high_faces(p2: SimplicialComplex) -> None:
  report = validate_dmf(p2, MorseFunction({'a': 3, 'b': 2, 'a-b': 1}))
  assert not report.ok
  (violation,) = report.violations
  assert violation.kind == ViolationKind.FACE
  assert violation.simplices[0] == s('a-b')


def test_validate_p3(p3: SimplicialComplex, p3_f1: MorseFunction) -> None:
  assert validate_dmf(p3, p3_f1)


def test_validate_too_many_low_cofaces(p3: SimplicialComplex) -> None:
  report = validate_dmf(
      p3, MorseFunction({
          'a': 0,
          'a-b': 1,
          'b': 3,
          'b-c': 2,
          'c': '1/2'
      }))
  assert [v.kind for v in report.violations] == [ViolationKind.COFACE]
  assert report.violations[0].simplices[0] == s('b')


def test_validate_ties(p2: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'b': 1, 'a-b': 1})
  report = validate_dmf(p2, function)
  assert [v.kind for v in report.violations] == [ViolationKind.NON_INJECTIVE]
  assert validate_dmf(p2, function, require_injective=False).ok


def test_validate_missing_value(p2: SimplicialComplex) -> None:
  with pytest.raises(IncompleteFunctionError):
    validate_dmf(p2, MorseFunction({'a': 0, 'b': 1}))


def test_critical_all(c3: SimplicialComplex,
                      c3_all_critical: MorseFunction) -> None:
  criticality = critical_simplices(c3, c3_all_critical)
  assert criticality.critical == frozenset(c3)
  assert criticality.counts() == [3, 3]


def test_critical_p3(p3: SimplicialComplex, p3_f1: MorseFunction) -> None:
  criticality = critical_simplices(p3, p3_f1)
  assert names(criticality.critical) == {'a'}
  assert criticality.counts() == [1, 0]
  assert s('b') not in criticality


def test_critical_p3_two_minima(p3: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'a-b': 2, 'b': 3, 'b-c': 4, 'c': 1})
  assert names(critical_simplices(p3, function).critical) == {
      'a', 'c', 'b-c'
  }


def test_critical_rejects_invalid(p2: SimplicialComplex) -> None:
  with pytest.raises(InvalidMorseFunctionError) as excinfo:
    critical_simplices(p2, MorseFunction({'a': 3, 'b': 2, 'a-b': 1}))
  assert not excinfo.value.report.ok


def test_gradient_field(p3: SimplicialComplex, p3_f1: MorseFunction,
                        c3: SimplicialComplex,
                        c3_all_critical: MorseFunction,
                        p2: SimplicialComplex) -> None:
  assert gradient_field(p3, p3_f1) == GradientVectorField([('b', 'a-b'),
                                                           ('c', 'b-c')])
  assert not len(gradient_field(c3, c3_all_critical))
  assert gradient_field(p2, MorseFunction({
      'a': 0,
      'a-b': 1,
      'b': 2
  })) == GradientVectorField([('b', 'a-b')])


def test_gradient_pair_must_be_a_facet() -> None:
  with pytest.raises(MalformedSimplexError):
    GradientVectorField([('a', 'b-c')])


def test_validate_gvf(p2: SimplicialComplex, p3: SimplicialComplex,
                      c3: SimplicialComplex) -> None:
  report = validate_gvf(p2, GradientVectorField([('a', 'a-b'),
                                                 ('b', 'a-b')]))
  assert [v.kind for v in report.violations] == [ViolationKind.NON_MATCHING]
  assert validate_gvf(p3, GradientVectorField([('b', 'a-b'), ('c', 'b-c')]))
  report = validate_gvf(
      c3, GradientVectorField([('a', 'a-b'), ('b', 'b-c'), ('c', 'a-c')]))
  assert [v.kind for v in report.violations] == [ViolationKind.CYCLE]
  with pytest.raises(UnknownSimplexError):
    validate_gvf(p2, GradientVectorField([('c', 'c-d')]))


def test_flow_digraph(p2: SimplicialComplex) -> None:
  digraph = flow_digraph(p2, GradientVectorField([('b', 'a-b')]))
  assert set(digraph.edges) == {(s('a-b'), s('a')), (s('b'), s('a-b'))}


def test_v_paths_p3(p3: SimplicialComplex) -> None:
  field = GradientVectorField([('a', 'a-b'), ('b', 'b-c')])
  (path,) = v_paths(field, s('a'), s('c'), 0)
  assert str(path) == 'a;a-b;b;b-c;c'
  assert path.is_valid_in(field)
  assert not path.trivial


def test_v_paths_trivial() -> None:
  field = GradientVectorField([('a', 'a-b')])
  (path,) = v_paths(field, s('a-b'), s('a-b'), 0)
  assert path.trivial
  assert path.start == path.end == s('a-b')


def test_v_paths_empty_field() -> None:
  assert v_paths(GradientVectorField([]), s('a'), s('b'), 0) == []


def test_v_paths_branching() -> None:
  # Both ends of the critical edge b-c drain into the root a.
  field = GradientVectorField([('b', 'a-b'), ('c', 'c-d'), ('d', 'a-d')])
  paths = v_paths(field, s('b-c'), s('a'), 0)
  assert sorted(str(p) for p in paths) == [
      'b-c;b;a-b;a', 'b-c;c;c-d;d;a-d;a'
  ]
  assert all(p.is_valid_in(field) for p in paths)

def test_v_paths_endpoint_dimension() -> None:
  field = GradientVectorField([])
  with pytest.raises(InvalidEndpointError):
    v_paths(field, s('a-b-c'), s('a'), 0)


def test_gradient_path_rejects_wrong_dimension() -> None:
  with pytest.raises(MalformedSimplexError):
    GradientPath((s('a'), s('a-b-c')), 0)
  with pytest.raises(MalformedSimplexError):
    GradientPath((), 0)


def test_paired_face_is_not_revisited() -> None:
  field = GradientVectorField([('a', 'a-b')])
  path = GradientPath((s('a'), s('a-b'), s('a')), 0)
  assert not path.is_valid_in(field)


def test_sublevel_complex(p2: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'a-b': 1, 'b': 2})
  assert set(sublevel_complex(p2, function, 1)) == set(p2)
  assert len(sublevel_complex(p2, function, -1)) == 0
  assert sublevel_complex(p2, function, 2) == p2
  assert names(sublevel_complex(p2, function, 0)) == {'a'}


def test_critical_values(p3: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'a-b': 2, 'b': 3, 'b-c': 4, 'c': 1})
  assert critical_values(p3, function) == [0, 1, 4]


def test_restrict(p3: SimplicialComplex, p3_f1: MorseFunction) -> None:
  sub = sublevel_complex(p3, p3_f1, 3)
  restricted = p3_f1.restrict(sub)
  assert set(restricted) == set(sub)
  assert validate_dmf(sub, restricted)


def test_perturb_injective(p2: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'b': 1, 'a-b': 1})
  perturbed = perturb_injective(p2, function)
  assert validate_dmf(p2, perturbed).ok
  assert gradient_field(p2, perturbed) == GradientVectorField([('b', 'a-b')])
  assert perturbed[s('a')] == 0


def test_perturb_keeps_distinct_order(c3: SimplicialComplex) -> None:
  function = MorseFunction({
      'a': 0,
      'b': 0,
      'c': 0,
      'a-b': 1,
      'b-c': 1,
      'a-c': 2
  })
  perturbed = perturb_injective(c3, function)
  assert validate_dmf(c3, perturbed).ok
  assert [x.name for x in sorted(c3, key=perturbed.__getitem__)
         ] == ['a', 'b', 'c', 'a-b', 'b-c', 'a-c']


def test_perturb_rejects_invalid(p2: SimplicialComplex) -> None:
  with pytest.raises(InvalidMorseFunctionError):
    perturb_injective(p2, MorseFunction({'a': 3, 'b': 2, 'a-b': 1}))


def test_morse_inequalities(c3: SimplicialComplex,
                            c3_all_critical: MorseFunction) -> None:
  report = morse_inequalities(c3, c3_all_critical)
  assert report.critical_counts == [3, 3]
  assert report.betti == [1, 1]
  assert report.ok
  assert alternating_sum([3, 5, 2], 1) == 2
  assert alternating_sum([3, 5, 2], 2) == 0


def test_homology_preserved(p3: SimplicialComplex) -> None:
  function = MorseFunction({'a': 0, 'a-b': 2, 'b': 3, 'b-c': 4, 'c': 1})
  assert homology_preserved(p3, function, 2, 3)
  with pytest.raises(CriticalValueError, match=r'\[0, 2\] contains'):
    homology_preserved(p3, function, 0, 2)
  with pytest.raises(MorseError):
    homology_preserved(p3, function, 1, 1)


def _test_functions() -> list[tuple[SimplicialComplex, MorseFunction]]:
  cases = []
  for name in ('P4', 'C5', 'theta', 'K4', 'P3+C3', 'T6_3'):
    graph = corpus_entry(name).graph
    cases += [(graph, random_dmf(graph, seed)) for seed in range(10)]
  for complex_ in complex_corpus().values():
    cases += [(complex_, random_dmf(complex_, seed)) for seed in range(10)]
  return cases


def test_gradient_pairs_and_critical_partition() -> None:
  for complex_, function in _test_functions():
    field = gradient_field(complex_, function)
    critical = critical_simplices(complex_, function).critical
    paired = [x for pair in field for x in pair]
    assert len(paired) == len(set(paired))
    assert set(paired) | critical == set(complex_)
    assert not set(paired) & critical


def test_criticality_is_stable_along_the_filtration() -> None:
  for complex_, function in _test_functions():
    full = critical_simplices(complex_, function).critical
    for c in filtration_order(complex_, function).values():
      sub = sublevel_complex(complex_, function, c)
      local = critical_simplices(sub, function.restrict(sub)).critical
      assert local == full & set(sub)


def test_homology_is_preserved_between_critical_values() -> None:
  for complex_, function in _test_functions():
    values = sorted(function.values())
    critical = set(critical_values(complex_, function))
    for a, b in zip(values, values[1:]):
      if a not in critical and b not in critical:
        assert homology_preserved(complex_, function, a, b)


@settings(deadline=None, max_examples=50)
@given(st.integers(min_value=0, max_value=2**32))
def test_morse_inequalities_hold(seed: int) -> None:
  rng = random.Random(seed)
  name = rng.choice(['C6', 'theta', 'K4', 'fig4'])
  graph = corpus_entry(name).graph
  report = morse_inequalities(graph, random_dmf(graph, seed))
  assert report.ok
