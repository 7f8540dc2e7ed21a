// Copyright 2026 The Effortnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "effortnet/linalg.hpp"

#include <cmath>
#include <cstdint>

namespace effortnet {

namespace {

// splitmix64: deterministic start vector, no <random> distribution quirks.
double next_unit(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

SpectralNorm spectral_norm(const Matrix& m) {
  const int rows = m.rows, cols = m.cols;
  if (rows == 0 || cols == 0) return {0.0, true, 0};

  uint64_t state = 0x243F6A8885A308D3ull;
  std::vector<double> v(cols);
  double nv = 0.0;
  for (int c = 0; c < cols; ++c) {
    v[c] = 0.5 + next_unit(state);
    nv += v[c] * v[c];
  }
  nv = std::sqrt(nv);
  for (double& e : v) e /= nv;

  const double rel_tol = 1e-10;
  const int max_iter = 10000;
  std::vector<double> y(rows), z(cols);
  double sigma = 0.0, prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < cols; ++c) s += m(r, c) * v[c];
      y[r] = s;
    }
    double s2 = 0.0;
    for (double e : y) s2 += e * e;
    sigma = std::sqrt(s2);
    if (sigma == 0.0) return {0.0, true, it};
    if (prev >= 0.0 && std::fabs(sigma - prev) <= rel_tol * sigma) return {sigma, true, it};
    prev = sigma;

    double nz = 0.0;
    for (int c = 0; c < cols; ++c) {
      double s = 0.0;
      for (int r = 0; r < rows; ++r) s += m(r, c) * y[r];
      z[c] = s;
      nz += s * s;
    }
    nz = std::sqrt(nz);
    if (nz == 0.0) return {sigma, true, it};
    for (int c = 0; c < cols; ++c) v[c] = z[c] / nz;
  }
  return {sigma, false, max_iter};
}

}  // namespace effortnet
