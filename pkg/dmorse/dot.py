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
"""DOT renderings of complexes with their gradient vector fields.

Critical simplices are drawn in the critical color. A gradient pair is an
arrow from its lower to its upper simplex; other face relations carry no
arrowhead.
"""

import typing

from dmorse.complex import Simplex, SimplicialComplex
from dmorse.connectivity import assert_graph
from dmorse.morse import (GradientVectorField, Value, critical_simplices,
                          format_value, gradient_field)

STYLES = ('graph', 'hasse')


def _label(simplex: Simplex,
           function: typing.Optional[typing.Mapping[Simplex, Value]]) -> str:
  if function is None:
    return simplex.name
  return f'{simplex.name}\\n{format_value(function[simplex])}'


def _field(
    complex_: SimplicialComplex,
    function: typing.Optional[typing.Mapping[Simplex, Value]]
) -> tuple[frozenset[Simplex], GradientVectorField]:
  if function is None:
    return frozenset(), GradientVectorField(())
  return (critical_simplices(complex_, function).critical,
          gradient_field(complex_, function))


def hasse_dot(complex_: SimplicialComplex,
              function: typing.Optional[typing.Mapping[Simplex, Value]] = None,
              critical_color: str = 'red',
              regular_color: str = 'black') -> str:
  """The Hasse diagram, vertices at the bottom."""
  critical, field = _field(complex_, function)
  lines = ['digraph hasse {', '  rankdir=BT;', '  node [shape=box];']
  for p in range(complex_.dim + 1):
    names = ' '.join(f'"{s}"' for s in complex_.simplices(p))
    lines.append(f'  {{ rank=same; {names} }}')
  for simplex in complex_:
    color = critical_color if simplex in critical else regular_color
    lines.append(f'  "{simplex}" [label="{_label(simplex, function)}", '
                 f'color={color}, fontcolor={color}];')
  for simplex in complex_:
    for face in simplex.faces():
      if (face, simplex) in field:
        lines.append(f'  "{face}" -> "{simplex}" [penwidth=2];')
      else:
        lines.append(f'  "{face}" -> "{simplex}" [arrowhead=none];')
  lines.append('}')
  return '\n'.join(lines) + '\n'


def graph_dot(complex_: SimplicialComplex,
              function: typing.Optional[typing.Mapping[Simplex, Value]] = None,
              critical_color: str = 'red',
              regular_color: str = 'black') -> str:
  """The graph itself, each paired edge an arrow leaving its paired vertex.

  Raises:
    NotAGraphError: ``complex_`` is not a graph.
  """
  assert_graph(complex_)
  critical, field = _field(complex_, function)
  lines = ['digraph G {', '  node [shape=circle];']
  for vertex in complex_.vertices:
    color = critical_color if vertex in critical else regular_color
    lines.append(f'  "{vertex}" [label="{_label(vertex, function)}", '
                 f'color={color}, fontcolor={color}];')
  for edge in complex_.edges:
    u, v = edge.faces()
    color = critical_color if edge in critical else regular_color
    attributes = [f'color={color}']
    if function is not None:
      attributes.append(f'label="{format_value(function[edge])}"')
    lower = field.lower(edge)
    if lower == v:
      u, v = v, u
    if lower is None:
      attributes.append('arrowhead=none')
    lines.append(f'  "{u}" -> "{v}" [{", ".join(attributes)}];')
  lines.append('}')
  return '\n'.join(lines) + '\n'


def render(complex_: SimplicialComplex,
           function: typing.Optional[typing.Mapping[Simplex, Value]] = None,
           style: str = 'graph',
           critical_color: str = 'red',
           regular_color: str = 'black') -> str:
  """Dispatches on ``style``, one of :data:`STYLES`."""
  if style == 'graph':
    return graph_dot(complex_, function, critical_color, regular_color)
  if style == 'hasse':
    return hasse_dot(complex_, function, critical_color, regular_color)
  raise ValueError(f'Unknown style: {style!r}')
