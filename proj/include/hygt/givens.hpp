/*
Copyright 2026 The hygt authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hygt/errors.hpp"

namespace hygt {

/// Plane rotation by `theta` acting on coordinates m and n, stored with
/// m < n. As a matrix it has cos(theta) at (m,m) and (n,n), +sin(theta) at
/// (m,n), -sin(theta) at (n,m), and the identity elsewhere.
struct GivensRotation {
  std::size_t m = 0;
  std::size_t n = 0;
  double theta = 0.0;
};

/// One butterfly, in place:
///   y_m =  cos(t)*x_m + sin(t)*x_n
///   y_n = -sin(t)*x_m + cos(t)*x_n
inline void apply_butterfly_inplace(std::span<double> x, const GivensRotation& rot) {
  if (rot.m >= rot.n) throw ArgumentError("apply_butterfly: requires m < n");
  if (rot.n >= x.size()) throw ArgumentError("apply_butterfly: index out of range");
  const double c = std::cos(rot.theta);
  const double s = std::sin(rot.theta);
  const double a = x[rot.m];
  const double b = x[rot.n];
  x[rot.m] = c * a + s * b;
  x[rot.n] = c * b - s * a;
}

inline std::vector<double> apply_butterfly(std::vector<double> x, const GivensRotation& rot) {
  apply_butterfly_inplace(x, rot);
  return x;
}

}  // namespace hygt
