/*
 * Copyright 2026 The setfn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace setfn {

enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

template <class T>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::IterationLimit;
  T objective{};
  std::vector<T> x;  // primal, one per column of A
  std::vector<T> y;  // dual, one per row of A
  long iterations = 0;
};

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis
/// is feasible. A is dense row-major, rows x cols.
///
/// Condensed (Tucker) tableau: row i reads  basic_i = rhs_i - sum_j a_ij nb_j,
/// the objective row reads  z = z0 + sum_j d_j nb_j. Bland's rule picks the
/// entering and leaving labels, so the method terminates on degenerate
/// problems. With T a rational type and eps = 0 every pivot is exact.
template <class T>
SimplexResult<T> simplex_maximize(std::size_t rows, std::size_t cols, const std::vector<T>& a,
                                  const std::vector<T>& b, const std::vector<T>& c, const T& eps,
                                  long max_iterations) {
  std::vector<T> tab(a);
  std::vector<T> rhs(b);
  std::vector<T> d(c);
  T z0 = T(0);
  // Labels: 0..cols-1 structural, cols..cols+rows-1 slack of each row.
  std::vector<std::size_t> basic(rows);
  std::vector<std::size_t> nonbasic(cols);
  for (std::size_t i = 0; i < rows; ++i) basic[i] = cols + i;
  for (std::size_t j = 0; j < cols; ++j) nonbasic[j] = j;

  SimplexResult<T> out;
  std::vector<T> pivot_row(cols);
  T ratio = T(0);
  T best = T(0);
  T factor = T(0);
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (d[j] > eps && (enter == cols || nonbasic[j] < nonbasic[enter])) enter = j;
    if (enter == cols) {
      out.status = SimplexStatus::Optimal;
      break;
    }
    if (out.iterations >= max_iterations) {
      out.status = SimplexStatus::IterationLimit;
      return out;
    }
    std::size_t leave = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      const T& piv = tab[i * cols + enter];
      if (!(piv > eps)) continue;
      ratio = rhs[i] / piv;
      if (leave == rows || ratio < best - eps || (!(ratio > best + eps) && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) {
      out.status = SimplexStatus::Unbounded;
      return out;
    }
    ++out.iterations;

    const T piv = tab[leave * cols + enter];
    T* prow = &tab[leave * cols];
    for (std::size_t j = 0; j < cols; ++j) prow[j] = (j == enter) ? T(1) / piv : prow[j] / piv;
    rhs[leave] /= piv;
    for (std::size_t j = 0; j < cols; ++j) pivot_row[j] = prow[j];

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      T* row = &tab[i * cols];
      factor = row[enter];
      if (factor == T(0)) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == enter) row[j] = -factor * pivot_row[j];
        else row[j] -= factor * pivot_row[j];
      }
      rhs[i] -= factor * rhs[leave];
    }
    factor = d[enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == enter) d[j] = -factor * pivot_row[j];
      else d[j] -= factor * pivot_row[j];
    }
    z0 += factor * rhs[leave];
    std::swap(basic[leave], nonbasic[enter]);
  }

  out.objective = z0;
  out.x.assign(cols, T(0));
  out.y.assign(rows, T(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (basic[i] < cols) out.x[basic[i]] = rhs[i];
  for (std::size_t j = 0; j < cols; ++j)
    if (nonbasic[j] >= cols) out.y[nonbasic[j] - cols] = -d[j];
  return out;
}

}  // namespace setfn
