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


import datetime
import os
import sys
from importlib import metadata

sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.graphviz",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "dmorse.sphinxext",
    "myst_parser",
]

master_doc = "index"
project = "dmorse"
year = datetime.datetime.now().strftime("%Y")
author = "The dmorse authors"
copyright = f"{year}, {author}"
source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

version = metadata.version("dmorse")
language = "en"
pygments_style = "sphinx"
toctree_collapse = False
autodoc_member_order = "bysource"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "networkx": ("https://networkx.org/documentation/stable/", None),
    "sphinx": ("https://www.sphinx-doc.org/en/master/", None),
}

morse_critical_color = "crimson"

# -- Options for HTML output ----------------------------------------------

html_theme = "shibuya"
html_theme_options = {
    "page_layout": "compact",
}
