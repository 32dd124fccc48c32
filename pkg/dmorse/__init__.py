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
"""Discrete Morse theory on simplicial complexes and graphs."""

import importlib.metadata

from dmorse.complex import (Chain, Simplex, SimplicialComplex, betti_numbers,
                            boundary, boundary_matrix, boundary_of_chain,
                            build_complex, closure, cofaces,
                            euler_characteristic, faces)
from dmorse.connectivity import (connected, connection_matrix, flow_target,
                                 is_optimal, rooted_forest, strongly_connected,
                                 tree_of_edge, verify_euler_theorem)
from dmorse.generate import (corpus, corpus_entry, enumerate_gvfs, random_dmf,
                             realize_dmf)
from dmorse.morse import (GradientPath, GradientVectorField, MorseFunction,
                          critical_simplices, gradient_field, v_paths,
                          validate_dmf, validate_gvf)
from dmorse.persistence import (filtration_order, morse_equalities_report,
                                persistence_pairs)

try:
  __version__ = importlib.metadata.version('dmorse')
except importlib.metadata.PackageNotFoundError:
  __version__ = '0.0.0'

__all__ = [
    'Chain',
    'GradientPath',
    'GradientVectorField',
    'MorseFunction',
    'Simplex',
    'SimplicialComplex',
    'betti_numbers',
    'boundary',
    'boundary_matrix',
    'boundary_of_chain',
    'build_complex',
    'closure',
    'cofaces',
    'connected',
    'connection_matrix',
    'corpus',
    'corpus_entry',
    'critical_simplices',
    'enumerate_gvfs',
    'euler_characteristic',
    'faces',
    'filtration_order',
    'flow_target',
    'gradient_field',
    'is_optimal',
    'morse_equalities_report',
    'persistence_pairs',
    'random_dmf',
    'realize_dmf',
    'rooted_forest',
    'strongly_connected',
    'tree_of_edge',
    'v_paths',
    'validate_dmf',
    'validate_gvf',
    'verify_euler_theorem',
]
