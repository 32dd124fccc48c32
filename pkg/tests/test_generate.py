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

import networkx as nx
import pytest

from dmorse.complex import Simplex, betti_numbers, build_complex
from dmorse.errors import (EnumerationLimitError, InvalidGradientFieldError,
                           NotAGraphError, UnknownCorpusEntryError)
from dmorse.generate import (MAX_EDGES, brute_force_gvfs, complex_corpus,
                             corpus, corpus_entry, enumerate_gvfs,
                             from_networkx, random_dmf, random_gvf,
                             realize_dmf)
from dmorse.morse import (GradientVectorField, gradient_field, validate_dmf,
                          validate_gvf)


@pytest.mark.parametrize('name, count', [
    ('K1', 1),
    ('P2', 3),
    ('P3', 8),
    ('C3', 16),
    ('C4', 45),
    ('C5', 121),
    ('K4', 125),
])
def test_enumeration_counts(name: str, count: int) -> None:
  fields = enumerate_gvfs(corpus_entry(name).graph)
  assert len(fields) == count
  assert len(set(fields)) == count


@pytest.mark.parametrize('name', ['P2', 'P3', 'C3', 'T4_1'])
def test_enumeration_matches_brute_force(name: str) -> None:
  graph = corpus_entry(name).graph
  assert set(enumerate_gvfs(graph)) == set(brute_force_gvfs(graph))


def test_enumerated_fields_are_valid() -> None:
  graph = corpus_entry('theta').graph
  for field in enumerate_gvfs(graph):
    assert validate_gvf(graph, field).ok


def test_enumeration_limits() -> None:
  with pytest.raises(EnumerationLimitError):
    enumerate_gvfs(corpus_entry('fig4').graph)
  assert len(corpus_entry('fig4').graph.edges) > MAX_EDGES
  with pytest.raises(EnumerationLimitError):
    enumerate_gvfs(corpus_entry('C4').graph, max_edges=3)
  with pytest.raises(NotAGraphError):
    enumerate_gvfs(complex_corpus()['triangle_fan'])
  with pytest.raises(EnumerationLimitError):
    brute_force_gvfs(corpus_entry('fig4').graph)


def test_brute_force_filled_triangle() -> None:
  triangle = build_complex([('a', 'b', 'c')])
  fields = brute_force_gvfs(triangle, max_pairs=9)
  assert GradientVectorField([]) in fields
  assert GradientVectorField([('a', 'a-b'), ('b-c', 'a-b-c')]) in fields
  assert all(validate_gvf(triangle, field).ok for field in fields)


# Graphs with more fields than this only run the round trip with -m slow.
ROUND_TRIP_FIELDS = 2_000


def _round_trip_params() -> list:
  params = []
  for entry in corpus():
    if len(entry.graph.edges) > 8:
      continue
    count = len(enumerate_gvfs(entry.graph))
    marks = [pytest.mark.slow] if count > ROUND_TRIP_FIELDS else []
    params.append(pytest.param(entry.name, marks=marks, id=entry.name))
  return params


@pytest.mark.parametrize('name', _round_trip_params())
def test_realize_round_trip(name: str) -> None:
  graph = corpus_entry(name).graph
  rng = random.Random(0)
  for field in enumerate_gvfs(graph):
    function = realize_dmf(graph, field)
    assert validate_dmf(graph, function).ok
    assert gradient_field(graph, function) == field
    assert sorted(function.values()) == list(range(len(graph)))
    assert gradient_field(graph, realize_dmf(graph, field, rng)) == field


def test_realize_rejects_cycles() -> None:
  graph = corpus_entry('C3').graph
  with pytest.raises(InvalidGradientFieldError):
    realize_dmf(graph,
                GradientVectorField([('a', 'a-b'), ('b', 'b-c'),
                                     ('c', 'a-c')]))


def test_realize_in_dimension_two() -> None:
  for complex_ in complex_corpus().values():
    for seed in range(5):
      field = random_gvf(complex_, random.Random(seed))
      assert gradient_field(complex_, realize_dmf(complex_, field)) == field


def test_random_dmf_is_deterministic() -> None:
  graph = corpus_entry('fig4').graph
  assert random_dmf(graph, 3) == random_dmf(graph, 3)
  assert validate_dmf(graph, random_dmf(graph, 3)).ok
  assert {random_dmf(graph, seed) for seed in range(10)} != {
      random_dmf(graph, 0)
  }


def test_random_dmf_covers_every_field() -> None:
  graph = corpus_entry('P2').graph
  seen = {gradient_field(graph, random_dmf(graph, seed)) for seed in range(60)}
  assert seen == set(enumerate_gvfs(graph))


def test_corpus() -> None:
  names = [entry.name for entry in corpus()]
  assert len(names) == len(set(names))
  for name in ('K1', 'P2', 'P6', 'C3', 'C8', 'T7_10', 'theta', 'K4', 'fig4'):
    assert name in names
  assert betti_numbers(corpus_entry('C6').graph) == [1, 1]
  assert betti_numbers(corpus_entry('theta').graph) == [1, 2]
  assert betti_numbers(corpus_entry('P3+C3').graph) == [2, 1]
  assert betti_numbers(corpus_entry('K4').graph) == [1, 3]
  assert set(corpus_entry('fig4').functions) == {'f1', 'f2'}
  with pytest.raises(UnknownCorpusEntryError):
    corpus_entry('nope')


def test_corpus_trees() -> None:
  trees = [entry for entry in corpus() if entry.name.startswith('T')]
  assert len([t for t in trees if t.name.startswith('T7_')]) == 11
  for entry in trees:
    graph = entry.graph
    assert betti_numbers(graph) == [1, 0]
    assert len(graph.edges) == len(graph.vertices) - 1


def test_complex_corpus() -> None:
  complexes = complex_corpus()
  assert betti_numbers(complexes['triangle_fan']) == [1, 0, 0]
  assert betti_numbers(complexes['tetrahedron_boundary']) == [1, 0, 1]
  assert complexes['triangle_fan'].counts() == [6, 9, 4]


def test_from_networkx() -> None:
  graph = from_networkx(nx.star_graph(3), prefix='n')
  assert [v.name for v in graph.vertices] == ['n0', 'n1', 'n2', 'n3']
  assert Simplex.parse('n0-n2') in graph
  isolated = nx.Graph()
  isolated.add_nodes_from([5, 7])
  assert len(from_networkx(isolated)) == 2
