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
"""Connectedness of critical simplices of two Morse functions on a graph.

For ``q = 0`` a vertex ``alpha`` is connected to ``beta`` when a gradient
path of the field of ``beta`` runs from ``alpha`` to ``beta``; for ``q = 1``
an edge ``alpha`` is connected to ``beta`` when a gradient path of the field
of ``alpha`` does. Strong connectedness asks for both directions.
"""

import dataclasses
import functools
import logging
import typing

import networkx as nx

from dmorse.complex import (Simplex, SimplicialComplex, betti_numbers,
                            euler_characteristic)
from dmorse.errors import (DimensionMismatchError, InvalidEndpointError,
                           NonCriticalError, NotAGraphError,
                           UnknownSimplexError)
from dmorse.morse import (GradientPath, GradientVectorField, MorseFunction,
                          Value, critical_simplices, gradient_field, v_paths)

logger = logging.getLogger(__name__)

Function = typing.Mapping[Simplex, Value]


@dataclasses.dataclass(frozen=True, eq=False)
class GraphView:
  """A complex of dimension at most one with its networkx graph.

  Nodes are the vertex simplices; every edge carries its simplex under the
  ``simplex`` attribute.
  """

  complex: SimplicialComplex
  graph: nx.Graph


@functools.lru_cache(maxsize=256)
def assert_graph(complex_: SimplicialComplex) -> GraphView:
  """Views ``complex_`` as a graph.

  Raises:
    NotAGraphError: ``complex_`` has simplices of dimension 2 or more.
  """
  if complex_.dim > 1:
    raise NotAGraphError('Connectedness is only defined on graphs, got a '
                         f'complex of dimension {complex_.dim}')
  graph = nx.Graph()
  graph.add_nodes_from(complex_.vertices)
  for edge in complex_.edges:
    graph.add_edge(*edge.faces(), simplex=edge)
  return GraphView(complex_, graph)


@functools.lru_cache(maxsize=4096)
def _analysis(
    complex_: SimplicialComplex,
    function: MorseFunction) -> tuple[frozenset[Simplex], GradientVectorField]:
  critical = critical_simplices(complex_, function).critical
  return critical, gradient_field(complex_, function)


def _morse_function(function: Function) -> MorseFunction:
  if isinstance(function, MorseFunction):
    return function
  return MorseFunction(function)


def _require_critical(complex_: SimplicialComplex,
                      critical: frozenset[Simplex], simplex: Simplex, q: int,
                      label: str) -> None:
  if simplex not in complex_:
    raise UnknownSimplexError(f'Unknown simplex: {simplex}')
  if simplex.dim != q:
    raise DimensionMismatchError(
        f'{simplex} has dimension {simplex.dim}, expected {q}')
  if simplex not in critical:
    raise NonCriticalError(f'{simplex} is not critical for {label}')


@dataclasses.dataclass(frozen=True)
class _Flow:
  """Where gradient paths of one field on a graph can go.

  ``root`` maps every vertex to the critical vertex its descent ends in.
  ``reach`` maps every critical edge to itself and the paired edges met on
  the descents from its two faces.
  """

  root: typing.Mapping[Simplex, Simplex]
  reach: typing.Mapping[Simplex, frozenset[Simplex]]

  @property
  def sources(self) -> typing.Iterator[Simplex]:
    """The critical vertices."""
    return (v for v, root in self.root.items() if v == root)


@functools.lru_cache(maxsize=8192)
def _flow(complex_: SimplicialComplex, field: GradientVectorField) -> _Flow:
  root: dict[Simplex, Simplex] = {}
  trail: dict[Simplex, frozenset[Simplex]] = {}
  for vertex in complex_.vertices:
    pending = []
    current = vertex
    while current not in root:
      edge = field.upper(current)
      if edge is None:
        root[current], trail[current] = current, frozenset()
        break
      (following,) = (face for face in edge.faces() if face != current)
      pending.append((current, edge, following))
      current = following
    for current, edge, following in reversed(pending):
      root[current] = root[following]
      trail[current] = trail[following] | {edge}
  reach = {
      edge: frozenset([edge]).union(*(trail[face] for face in edge.faces()))
      for edge in complex_.edges
      if not field.is_paired(edge)
  }
  return _Flow(root, reach)


@functools.lru_cache(maxsize=8192)
def _function_flow(complex_: SimplicialComplex,
                   function: MorseFunction) -> _Flow:
  return _flow(complex_, _analysis(complex_, function)[1])


def _flows_to(flow: _Flow, start: Simplex, end: Simplex, q: int) -> bool:
  # Descents are unique on a graph, so no path search is needed.
  if q == 0:
    return flow.root[start] == end
  return end in flow.reach[start]


def _directions(q: int, flow1: _Flow, flow2: _Flow, alpha: Simplex,
                beta: Simplex) -> tuple[bool, bool]:
  if q == 0:
    return _flows_to(flow2, alpha, beta, 0), _flows_to(flow1, beta, alpha, 0)
  return _flows_to(flow1, alpha, beta, 1), _flows_to(flow2, beta, alpha, 1)


def _witnesses(q: int, first: GradientVectorField,
               second: GradientVectorField, alpha: Simplex,
               beta: Simplex) -> tuple[list[GradientPath], list[GradientPath]]:
  if q == 0:
    return v_paths(second, alpha, beta, 0), v_paths(first, beta, alpha, 0)
  return v_paths(first, alpha, beta, 0), v_paths(second, beta, alpha, 0)


def connected(
    complex_: SimplicialComplex, f1: Function, alpha: Simplex, f2: Function,
    beta: Simplex,
    q: int) -> tuple[bool, typing.Optional[GradientPath]]:
  """Whether the ``f1``-critical ``alpha`` is connected to the
  ``f2``-critical ``beta``.

  Returns:
    The verdict and the first witness path found, or None.

  Raises:
    NotAGraphError: ``complex_`` is not a graph.
    DimensionMismatchError: ``q`` is not 0 or 1, or an argument is not
      ``q``-dimensional.
    NonCriticalError: ``alpha`` or ``beta`` is not critical.
  """
  if q not in (0, 1):
    raise DimensionMismatchError(f'Connectedness on graphs needs q in (0, 1), '
                                 f'got {q}')
  assert_graph(complex_)
  critical1, field1 = _analysis(complex_, _morse_function(f1))
  critical2, field2 = _analysis(complex_, _morse_function(f2))
  _require_critical(complex_, critical1, alpha, q, 'f1')
  _require_critical(complex_, critical2, beta, q, 'f2')
  if q == 0:
    forward = v_paths(field2, alpha, beta, 0)
  else:
    forward = v_paths(field1, alpha, beta, 0)
  return bool(forward), forward[0] if forward else None


def strongly_connected(complex_: SimplicialComplex, f1: Function,
                       alpha: Simplex, f2: Function, beta: Simplex,
                       q: int) -> bool:
  """Whether ``alpha`` and ``beta`` are connected in both directions."""
  there, _ = connected(complex_, f1, alpha, f2, beta, q)
  back, _ = connected(complex_, f2, beta, f1, alpha, q)
  return there and back


@dataclasses.dataclass(frozen=True)
class Connection:
  """Witness paths between an ``f1``-critical and an ``f2``-critical
  simplex."""

  alpha: Simplex
  beta: Simplex
  forward: tuple[GradientPath, ...]
  backward: tuple[GradientPath, ...]

  @property
  def strong(self) -> bool:
    return bool(self.forward) and bool(self.backward)

  @property
  def direction(self) -> str:
    if self.strong:
      return 'strong'
    return 'fwd' if self.forward else 'bwd'


@dataclasses.dataclass(frozen=True)
class ConnectionReport:
  """All connections in dimension ``q`` between two Morse functions."""

  q: int
  connections: tuple[Connection, ...]

  @property
  def a_q(self) -> int:
    """Number of strongly connected pairs."""
    return sum(1 for c in self.connections if c.strong)

  def strong_pairs(self) -> frozenset[tuple[Simplex, Simplex]]:
    return frozenset((c.alpha, c.beta) for c in self.connections if c.strong)

  def __iter__(self) -> typing.Iterator[Connection]:
    return iter(self.connections)


def connection_matrix(complex_: SimplicialComplex, f1: Function, f2: Function,
                      q: int) -> ConnectionReport:
  """Checks every pair of ``q``-dimensional critical simplices.

  Only pairs connected in at least one direction are listed; each carries
  every witness path of both directions.
  """
  if q not in (0, 1):
    raise DimensionMismatchError(f'Connectedness on graphs needs q in (0, 1), '
                                 f'got {q}')
  assert_graph(complex_)
  critical1, field1 = _analysis(complex_, _morse_function(f1))
  critical2, field2 = _analysis(complex_, _morse_function(f2))
  flow1, flow2 = _flow(complex_, field1), _flow(complex_, field2)
  connections = []
  for alpha in sorted(s for s in critical1 if s.dim == q):
    for beta in sorted(s for s in critical2 if s.dim == q):
      there, back = _directions(q, flow1, flow2, alpha, beta)
      if not (there or back):
        continue
      forward, backward = _witnesses(q, field1, field2, alpha, beta)
      connections.append(
          Connection(alpha, beta, tuple(forward), tuple(backward)))
  return ConnectionReport(q, tuple(connections))


@dataclasses.dataclass(frozen=True)
class EulerReport:
  """Strong connection counts against the Euler characteristic.

  ``chi`` comes from the simplex counts and ``betti`` from homology; both
  must agree for the report to be ok.
  """

  a0: int
  a1: int
  chi: int
  betti: tuple[int, ...] = ()

  @property
  def homology_chi(self) -> int:
    return sum((-1)**q * b for q, b in enumerate(self.betti))

  @property
  def ok(self) -> bool:
    return self.a0 - self.a1 == self.chi == self.homology_chi

  def summary(self) -> str:
    return (f'A0={self.a0} A1={self.a1} chi={self.chi} '
            f'ok={str(self.ok).lower()}')


@functools.lru_cache(maxsize=256)
def _topology(complex_: SimplicialComplex) -> tuple[int, tuple[int, ...]]:
  return euler_characteristic(complex_), tuple(betti_numbers(complex_))


def verify_euler_theorem(complex_: SimplicialComplex, f1: Function,
                         f2: Function) -> EulerReport:
  """Compares ``A0 - A1`` with the Euler characteristic of the graph.

  Counts strong pairs from the descent maps of both fields; use
  :func:`connection_matrix` for the witness paths.
  """
  assert_graph(complex_)
  flow1 = _function_flow(complex_, _morse_function(f1))
  flow2 = _function_flow(complex_, _morse_function(f2))
  a0 = sum(1 for alpha in flow1.sources
           if flow1.root[flow2.root[alpha]] == alpha)
  a1 = sum(1 for alpha, reached in flow1.reach.items() for beta in reached
           if beta in flow2.reach and alpha in flow2.reach[beta])
  chi, betti = _topology(complex_)
  return EulerReport(a0, a1, chi, betti)


def _descent(field: GradientVectorField, vertex: Simplex) -> GradientPath:
  sequence = [vertex]
  while True:
    edge = field.upper(sequence[-1])
    if edge is None:
      return GradientPath(tuple(sequence), 0)
    (other,) = (face for face in edge.faces() if face != sequence[-1])
    sequence += [edge, other]


def flow_target(field: GradientVectorField, vertex: Simplex) -> Simplex:
  """The vertex where the maximal gradient path from ``vertex`` ends.

  On a graph every vertex has at most one way down, so the path is unique.
  """
  if vertex.dim != 0:
    raise InvalidEndpointError(f'{vertex} is not a vertex')
  return _descent(field, vertex).end


@dataclasses.dataclass(frozen=True)
class RootedTree:
  """A component of the graph minus its critical edges.

  ``parent`` maps each non-root vertex to the edge it is paired with, which
  is the first edge on its way to ``root``.
  """

  root: Simplex
  vertices: frozenset[Simplex]
  edges: frozenset[Simplex]
  parent: typing.Mapping[Simplex, Simplex]

  def path(self, vertex: Simplex) -> GradientPath:
    """The gradient path from ``vertex`` down to the root."""
    if vertex not in self.vertices:
      raise UnknownSimplexError(f'{vertex} is not in the tree of {self.root}')
    sequence = [vertex]
    while sequence[-1] != self.root:
      edge = self.parent[sequence[-1]]
      (other,) = (face for face in edge.faces() if face != sequence[-1])
      sequence += [edge, other]
    return GradientPath(tuple(sequence), 0)

  def __contains__(self, simplex: object) -> bool:
    return simplex in self.vertices or simplex in self.edges


@dataclasses.dataclass(frozen=True)
class RootedForest:
  trees: tuple[RootedTree, ...]

  @property
  def roots(self) -> tuple[Simplex, ...]:
    return tuple(tree.root for tree in self.trees)

  def tree_at(self, root: Simplex) -> RootedTree:
    for tree in self.trees:
      if tree.root == root:
        return tree
    raise NonCriticalError(f'{root} does not root a tree')

  def tree_of(self, vertex: Simplex) -> RootedTree:
    for tree in self.trees:
      if vertex in tree.vertices:
        return tree
    raise UnknownSimplexError(f'Unknown simplex: {vertex}')

  def __iter__(self) -> typing.Iterator[RootedTree]:
    return iter(self.trees)

  def __len__(self) -> int:
    return len(self.trees)


def rooted_forest(complex_: SimplicialComplex,
                  function: Function) -> RootedForest:
  """Removes the critical edges and roots every remaining tree at its
  critical vertex."""
  view = assert_graph(complex_)
  critical, field = _analysis(complex_, _morse_function(function))
  forest = nx.Graph()
  forest.add_nodes_from(view.graph)
  forest.add_edges_from((u, v, data)
                        for u, v, data in view.graph.edges(data=True)
                        if data['simplex'] not in critical)
  trees = []
  for component in nx.connected_components(forest):
    (root,) = (v for v in component if v in critical)
    edges = frozenset(
        data['simplex']
        for _, _, data in forest.subgraph(component).edges(data=True))
    parent = {v: field.upper(v) for v in component if v != root}
    trees.append(RootedTree(root, frozenset(component), edges, parent))
  trees.sort(key=lambda tree: tree.root)
  return RootedForest(tuple(trees))


@dataclasses.dataclass(frozen=True)
class EdgeTree:
  """The paths from the faces of a critical edge into a rooted tree together
  with the branches of that tree no critical edge reaches.

  An inapplicable request yields an empty tree and a ``diagnostic``.
  """

  edge: Simplex
  root: Simplex
  edge_paths: tuple[GradientPath, ...] = ()
  branches: tuple[GradientPath, ...] = ()
  diagnostic: typing.Optional[str] = None

  @property
  def simplices(self) -> frozenset[Simplex]:
    return frozenset(s for path in self.edge_paths + self.branches
                     for s in path)

  @property
  def vertices(self) -> frozenset[Simplex]:
    return frozenset(s for s in self.simplices if s.dim == 0)

  @property
  def edges(self) -> frozenset[Simplex]:
    return frozenset(s for s in self.simplices if s.dim == 1)

  @property
  def empty(self) -> bool:
    return not self.edge_paths


def tree_of_edge(complex_: SimplicialComplex, function: Function,
                 edge: Simplex, root: Simplex) -> EdgeTree:
  """The tree of the critical ``edge`` rooted in the critical vertex ``root``.

  Raises:
    DimensionMismatchError: ``edge`` is not an edge or ``root`` not a vertex.
    NonCriticalError: ``root`` is not critical.
  """
  assert_graph(complex_)
  critical, _ = _analysis(complex_, _morse_function(function))
  for simplex, dim in ((edge, 1), (root, 0)):
    if simplex not in complex_:
      raise UnknownSimplexError(f'Unknown simplex: {simplex}')
    if simplex.dim != dim:
      raise DimensionMismatchError(
          f'{simplex} has dimension {simplex.dim}, expected {dim}')
  if root not in critical:
    raise NonCriticalError(f'{root} is not critical')
  if edge not in critical:
    message = f'{edge} is not a critical edge'
    logger.warning('Empty edge tree: %s', message)
    return EdgeTree(edge, root, diagnostic=message)

  tree = rooted_forest(complex_, function).tree_at(root)
  edge_paths = tuple(tree.path(face) for face in edge.faces() if face in tree)
  if not edge_paths:
    message = f'No face of {edge} flows into the tree rooted in {root}'
    logger.warning('Empty edge tree: %s', message)
    return EdgeTree(edge, root, diagnostic=message)

  covered = {
      s for other in critical if other.dim == 1
      for face in other.faces() if face in tree
      for s in tree.path(face)
  }
  candidates = [
      tree.path(v) for v in sorted(tree.vertices) if v not in covered
  ]
  # A branch starts where no other uncovered path passes through.
  inner = {s for path in candidates for s in path.sequence[1:]}
  branches = tuple(path for path in candidates if path.start not in inner)
  return EdgeTree(edge, root, edge_paths, branches)


def is_optimal(complex_: SimplicialComplex, function: Function) -> bool:
  """Whether every critical count equals the matching Betti number."""
  counts = critical_simplices(complex_, function).counts()
  return counts == betti_numbers(complex_)
