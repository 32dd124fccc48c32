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

import importlib.metadata
import os
import typing

from docutils import nodes
from docutils.parsers.rst import directives
from docutils.statemachine import StringList
from sphinx.application import Sphinx
from sphinx.ext.graphviz import Graphviz
from sphinx.util import logging

from dmorse import dot
from dmorse.cli import BUILTIN_PREFIX, resolve_complex, resolve_function
from dmorse.errors import MorseError

logger = logging.getLogger(__name__)

Meta = typing.TypedDict('Meta', {
    'version': str,
    'parallel_read_safe': bool,
    'parallel_write_safe': bool
})


def _style(argument: str) -> str:
  return directives.choice(argument, dot.STYLES)


class MorseDiagramDirective(Graphviz):
  """Sphinx Morse Diagram Directive.

  This directive draws a complex and, optionally, the gradient vector field
  of a discrete Morse function on it with Graphviz.

  # Example

  Pass a complex file with a root-relative or a document-relative path.

  ```rst
  .. morse-diagram:: /data/graph.cplx
  ```

  Critical simplices and gradient arrows are drawn when a function is given.

  ```rst
  .. morse-diagram:: graph.cplx
    :function: graph.dmf
  ```

  Builtin graphs and their functions are available with the `builtin:`
  prefix, and the Hasse diagram is drawn with the `hasse` style.

  ```rst
  .. morse-diagram:: builtin:fig4
    :function: builtin:f1
    :style: hasse
    :caption: The first function on the hexagon with tails.
  ```
  """

  required_arguments = 1  # Complex
  optional_arguments = 0
  has_content = False
  option_spec = {
      **Graphviz.option_spec,
      'function': directives.unchanged_required,
      'style': _style,
  }

  def resolve_path(self, path: str) -> str:
    if path.startswith(BUILTIN_PREFIX):
      return path
    docdir = os.path.dirname(self.env.doc2path(self.env.docname))
    # root-relative path
    if path.startswith('/'):
      resolved = os.path.join(self.env.srcdir, path.lstrip('/'))
    # document-relative path
    else:
      resolved = os.path.join(docdir, path)
    resolved = os.path.normpath(resolved)
    self.env.note_dependency(resolved)
    return resolved

  def run(self) -> typing.List[nodes.Node]:
    config = self.env.config
    style = self.options.pop('style', config.morse_default_style)
    try:
      inputs = resolve_complex(self.resolve_path(self.arguments[0]))
      function = None
      if 'function' in self.options:
        function = resolve_function(
            self.resolve_path(self.options.pop('function')), inputs)
      dotcode = dot.render(inputs.complex, function, style,
                           config.morse_critical_color,
                           config.morse_regular_color)
    except (MorseError, OSError) as e:
      logger.warning('Cannot draw %s: %s', self.arguments[0], e,
                     location=self.get_location())
      return []

    if config.morse_graphviz_layout != 'dot':
      self.options.setdefault('layout', config.morse_graphviz_layout)
    self.arguments = []
    self.content = StringList(dotcode.splitlines(), source='morse-diagram')
    return super().run()


def setup(app: Sphinx) -> Meta:
  app.setup_extension('sphinx.ext.graphviz')
  app.add_directive('morse-diagram', MorseDiagramDirective)
  app.add_config_value(
      'morse_default_style',
      'graph',
      'env',
      description="The default drawing style, 'graph' or 'hasse'")
  app.add_config_value(
      'morse_critical_color',
      'red',
      'env',
      description='The Graphviz color of critical simplices')
  app.add_config_value(
      'morse_regular_color',
      'black',
      'env',
      description='The Graphviz color of regular simplices')
  app.add_config_value(
      'morse_graphviz_layout',
      'dot',
      'env',
      description='The Graphviz layout program')
  return {
      'version': importlib.metadata.version('dmorse'),
      'parallel_read_safe': True,
      'parallel_write_safe': True,
  }
