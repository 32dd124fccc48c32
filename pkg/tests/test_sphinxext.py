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


import io

import pytest
from sphinx.ext.graphviz import graphviz
from sphinx.testing.util import SphinxTestApp


def codes(app: SphinxTestApp, docname: str) -> list[str]:
  doctree = app.env.get_doctree(docname)
  return [node['code'] for node in doctree.findall(graphviz)]


@pytest.mark.sphinx('dummy', testroot='diagram')
def test_default(app: SphinxTestApp, warning: io.StringIO) -> None:
  app.build()

  def test_index():
    # The missing complex only warns.
    graph, path, hasse = codes(app, 'index')

    # Critical simplices are colored, gradient pairs become arrows.
    assert graph.startswith('digraph G {')
    assert '"v07" [label="v07\\n0", color=red' in graph
    assert '"v10" -> "v11" [color=black, label="7"];' in graph

    assert '"b" -> "a" [color=black, label="2"];' in path
    assert hasse.startswith('digraph hasse {')
    assert '"b" -> "a-b" [penwidth=2];' in hasse
    assert 'missing.cplx' in warning.getvalue()

  def test_sections_index():
    # Root-relative and document-relative paths name the same file.
    absolute, relative = codes(app, 'sections/index')
    assert absolute == relative
    assert absolute.startswith('digraph G {')

  test_index()
  test_sections_index()


@pytest.mark.sphinx('dummy', testroot='diagram-config')
def test_config(app: SphinxTestApp) -> None:
  """Test the 'morse_default_style', 'morse_critical_color' and
  'morse_graphviz_layout' configuration parameters."""
  app.build()
  doctree = app.env.get_doctree('index')
  nodes = list(doctree.findall(graphviz))
  assert len(nodes) == 2

  default, styled = (node['code'] for node in nodes)
  assert default.startswith('digraph hasse {')
  assert 'color=blue' not in default
  assert styled.startswith('digraph G {')
  assert '"v01" [label="v01\\n0", color=blue, fontcolor=blue];' in styled
  assert all(node['options']['graphviz_dot'] == 'neato' for node in nodes)
