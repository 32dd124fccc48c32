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
"""Generation of gradient vector fields, their Morse functions and test
graphs.

A gradient vector field on a graph is a forest of paired edges with one
unpaired root per tree, every edge paired with its endpoint farther from the
root. Enumerating forests and roots therefore enumerates every field once.
"""

import dataclasses
import functools
import importlib.resources
import itertools
import logging
import random
import string
import typing

import networkx as nx
from networkx.utils import UnionFind

from dmorse import formats
from dmorse.complex import Simplex, SimplicialComplex, build_complex
from dmorse.connectivity import assert_graph
from dmorse.errors import EnumerationLimitError, UnknownCorpusEntryError
from dmorse.morse import (GradientVectorField, MorseFunction, flow_digraph,
                          require_gvf, validate_gvf)

logger = logging.getLogger(__name__)

MAX_EDGES = 14
MAX_BRUTE_FORCE_PAIRS = 18


def _orient(forest: nx.Graph,
            roots: typing.Iterable[Simplex]) -> GradientVectorField:
  pairs = []
  for root in roots:
    for parent, child in nx.bfs_edges(forest, root):
      pairs.append((child, forest.edges[parent, child]['simplex']))
  return GradientVectorField(pairs)


def _forest(vertices: typing.Iterable[Simplex],
            edges: typing.Iterable[Simplex]) -> nx.Graph:
  forest = nx.Graph()
  forest.add_nodes_from(vertices)
  for edge in edges:
    forest.add_edge(*edge.faces(), simplex=edge)
  return forest


@functools.lru_cache(maxsize=64)
def _enumerate(complex_: SimplicialComplex,
               max_edges: int) -> tuple[GradientVectorField, ...]:
  assert_graph(complex_)
  edges = complex_.edges
  if len(edges) > max_edges:
    raise EnumerationLimitError(
        f'Refusing to enumerate fields on {len(edges)} edges '
        f'(limit {max_edges})')
  if len(edges) == max_edges:
    logger.warning('Enumerating fields at the size limit of %d edges',
                   max_edges)

  fields = []
  for size in range(min(len(edges), len(complex_.vertices) - 1) + 1):
    for subset in itertools.combinations(edges, size):
      components = UnionFind()
      acyclic = True
      for edge in subset:
        u, v = edge.faces()
        if components[u] == components[v]:
          acyclic = False
          break
        components.union(u, v)
      if not acyclic:
        continue
      forest = _forest(complex_.vertices, subset)
      trees = [sorted(tree) for tree in nx.connected_components(forest)]
      trees.sort()
      for roots in itertools.product(*trees):
        fields.append(_orient(forest, roots))
  logger.debug('Enumerated %d fields on %d edges', len(fields), len(edges))
  return tuple(fields)


def enumerate_gvfs(complex_: SimplicialComplex,
                   max_edges: int = MAX_EDGES) -> list[GradientVectorField]:
  """Every gradient vector field on a graph, each exactly once.

  Raises:
    NotAGraphError: ``complex_`` is not a graph.
    EnumerationLimitError: The graph has more than ``max_edges`` edges.
  """
  return list(_enumerate(complex_, max_edges))


def brute_force_gvfs(
    complex_: SimplicialComplex,
    max_pairs: int = MAX_BRUTE_FORCE_PAIRS) -> list[GradientVectorField]:
  """Every acyclic matching on the Hasse diagram, by subset search.

  Works in any dimension; meant as a reference on tiny complexes.
  """
  candidates = [(face, s) for s in complex_ for face in s.faces()]
  if len(candidates) > max_pairs:
    raise EnumerationLimitError(
        f'Refusing to search {len(candidates)} candidate pairs '
        f'(limit {max_pairs})')
  fields = []
  for size in range(len(candidates) + 1):
    for subset in itertools.combinations(candidates, size):
      used = [s for pair in subset for s in pair]
      if len(used) != len(set(used)):
        continue
      field = GradientVectorField(subset)
      if validate_gvf(complex_, field).ok:
        fields.append(field)
  return fields


def realize_dmf(complex_: SimplicialComplex,
                field: GradientVectorField,
                rng: typing.Optional[random.Random] = None) -> MorseFunction:
  """An injective integer function whose gradient field is ``field``.

  Values ``0..N-1`` follow a linear extension of the flow digraph read
  backwards, so every face relation increases except the paired ones. The
  extension is lexicographic by default and random when ``rng`` is given.

  Raises:
    InvalidGradientFieldError: ``field`` is not an acyclic matching.
  """
  require_gvf(complex_, field)
  digraph = flow_digraph(complex_, field).reverse(copy=False)
  if rng is None:
    key: typing.Callable[[Simplex], typing.Any] = lambda s: (s.dim, s.name)
  else:
    weights = {s: rng.random() for s in complex_}
    key = weights.__getitem__
  order = nx.lexicographical_topological_sort(digraph, key=key)
  return MorseFunction({s: value for value, s in enumerate(order)})


def random_gvf(complex_: SimplicialComplex,
               rng: random.Random) -> GradientVectorField:
  """A random acyclic matching in any dimension.

  Candidate pairs are visited in random order and each is kept with
  probability one half unless it breaks the matching or closes a cycle.
  """
  candidates = [(face, s) for s in complex_ for face in s.faces()]
  rng.shuffle(candidates)
  pairs: list[tuple[Simplex, Simplex]] = []
  used: set[Simplex] = set()
  for lower, upper in candidates:
    if lower in used or upper in used or rng.random() < 0.5:
      continue
    field = GradientVectorField(pairs + [(lower, upper)])
    if validate_gvf(complex_, field).ok:
      pairs.append((lower, upper))
      used.update((lower, upper))
  return GradientVectorField(pairs)


def _random_forest_gvf(complex_: SimplicialComplex,
                       rng: random.Random) -> GradientVectorField:
  edges = list(complex_.edges)
  rng.shuffle(edges)
  components = UnionFind()
  chosen = []
  for edge in edges:
    u, v = edge.faces()
    if components[u] != components[v] and rng.random() < 0.5:
      components.union(u, v)
      chosen.append(edge)
  forest = _forest(complex_.vertices, chosen)
  roots = [
      rng.choice(sorted(tree))
      for tree in sorted(sorted(c) for c in nx.connected_components(forest))
  ]
  return _orient(forest, roots)


def random_dmf(complex_: SimplicialComplex,
               seed: int,
               max_edges: int = MAX_EDGES) -> MorseFunction:
  """A seeded random discrete Morse function.

  Graphs small enough to enumerate draw their field uniformly; larger graphs
  draw a random forest with random roots; higher dimensions fall back to
  :func:`random_gvf`.
  """
  rng = random.Random(seed)
  if complex_.dim <= 1 and len(complex_.edges) <= max_edges:
    field = rng.choice(enumerate_gvfs(complex_, max_edges))
  elif complex_.dim <= 1:
    logger.debug('Sampling a random forest on %d edges',
                 len(complex_.edges))
    field = _random_forest_gvf(complex_, rng)
  else:
    logger.debug('Sampling a random matching in dimension %d', complex_.dim)
    field = random_gvf(complex_, rng)
  return realize_dmf(complex_, field, rng)


@dataclasses.dataclass(frozen=True)
class GraphCorpusEntry:
  """A named test graph, possibly shipping named functions."""

  name: str
  graph: SimplicialComplex
  functions: typing.Mapping[str, MorseFunction] = dataclasses.field(
      default_factory=dict)


def _path(n: int) -> SimplicialComplex:
  names = string.ascii_lowercase[:n]
  return build_complex([(u, v) for u, v in zip(names, names[1:])])


def _cycle(n: int) -> SimplicialComplex:
  names = string.ascii_lowercase[:n]
  return build_complex([(names[i], names[(i + 1) % n]) for i in range(n)])


def from_networkx(graph: nx.Graph, prefix: str = 'v') -> SimplicialComplex:
  """Converts a networkx graph, naming node ``k`` of the sorted nodes
  ``<prefix><k>``."""
  names = {node: f'{prefix}{k}' for k, node in enumerate(sorted(graph))}
  return build_complex([(names[u], names[v]) for u, v in graph.edges] +
                       [(names[node],) for node in graph])


def _data(name: str) -> str:
  resource = importlib.resources.files('dmorse') / 'data' / name
  return resource.read_text(encoding='utf-8')


def _fig4() -> GraphCorpusEntry:
  graph = formats.parse_complex(_data('fig4.cplx'))
  functions = {
      label: formats.parse_function(_data(f'fig4.{label}.dmf'), graph)
      for label in ('f1', 'f2')
  }
  return GraphCorpusEntry('fig4', graph, functions)


@functools.lru_cache(maxsize=None)
def _corpus() -> tuple[GraphCorpusEntry, ...]:
  entries = [GraphCorpusEntry('K1', build_complex([('a',)]))]
  entries += [GraphCorpusEntry(f'P{n}', _path(n)) for n in range(2, 7)]
  entries += [GraphCorpusEntry(f'C{n}', _cycle(n)) for n in range(3, 9)]
  for order in range(2, 8):
    for k, tree in enumerate(nx.nonisomorphic_trees(order)):
      entries.append(GraphCorpusEntry(f'T{order}_{k}', from_networkx(tree)))
  entries.append(
      GraphCorpusEntry(
          'theta',
          build_complex([('a', 'u'), ('a', 'w'), ('b', 'u'), ('b', 'w'),
                         ('c', 'u'), ('c', 'w')])))
  entries.append(
      GraphCorpusEntry('K4',
                       build_complex(itertools.combinations('abcd', 2))))
  entries.append(
      GraphCorpusEntry(
          'P3+C3',
          build_complex([('a', 'b'), ('b', 'c'), ('d', 'e'), ('e', 'f'),
                         ('d', 'f')])))
  entries.append(_fig4())
  return tuple(entries)


def corpus() -> list[GraphCorpusEntry]:
  """The builtin test graphs."""
  return list(_corpus())


def corpus_entry(name: str) -> GraphCorpusEntry:
  for entry in _corpus():
    if entry.name == name:
      return entry
  raise UnknownCorpusEntryError(f'Unknown builtin graph: {name}')


def complex_corpus() -> dict[str, SimplicialComplex]:
  """Two-dimensional complexes: a fan of four triangles and the hollow
  tetrahedron."""
  rim = ['p0', 'p1', 'p2', 'p3', 'p4']
  return {
      'triangle_fan':
          build_complex([('o', u, v) for u, v in zip(rim, rim[1:])]),
      'tetrahedron_boundary':
          build_complex(itertools.combinations('abcd', 3)),
  }
