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
"""Dense linear algebra over the two-element field on numpy uint8 arrays."""

import typing

import numpy as np


def row_echelon(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
  """Row-reduces a binary matrix over F2.

  Args:
    matrix: Binary matrix (m x n), values in {0, 1}.

  Returns:
    The row-echelon form and the list of pivot columns, whose length is the
    rank.
  """
  reduced = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
  if reduced.ndim != 2:
    raise ValueError(f'Expected a 2-D matrix, got shape {reduced.shape}')
  m, n = reduced.shape
  pivots: list[int] = []
  pivot_row = 0
  for col in range(n):
    if pivot_row == m:
      break
    candidates = np.flatnonzero(reduced[pivot_row:, col])
    if candidates.size == 0:
      continue
    found = pivot_row + int(candidates[0])
    if found != pivot_row:
      reduced[[pivot_row, found]] = reduced[[found, pivot_row]]
    below = pivot_row + 1 + np.flatnonzero(reduced[pivot_row + 1:, col])
    reduced[below] ^= reduced[pivot_row]
    pivots.append(col)
    pivot_row += 1
  return reduced, pivots


def rank(matrix: np.ndarray) -> int:
  if matrix.size == 0:
    return 0
  _, pivots = row_echelon(matrix)
  return len(pivots)


def low(column: np.ndarray) -> typing.Optional[int]:
  """Index of the last non-zero entry, ``None`` for a zero column."""
  nonzero = np.flatnonzero(column)
  return int(nonzero[-1]) if nonzero.size else None


def reduce_columns(
    matrix: np.ndarray) -> tuple[np.ndarray, dict[int, int]]:
  """Standard persistence column reduction, left to right.

  A column is added onto later columns sharing its lowest non-zero row until
  every non-zero column has a distinct low.

  Returns:
    The reduced matrix and the map from each pivot row to the column whose
    low it is.
  """
  reduced = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
  owner: dict[int, int] = {}
  for j in range(reduced.shape[1]):
    pivot = low(reduced[:, j])
    while pivot is not None and pivot in owner:
      reduced[:, j] ^= reduced[:, owner[pivot]]
      pivot = low(reduced[:, j])
    if pivot is not None:
      owner[pivot] = j
  return reduced, owner
