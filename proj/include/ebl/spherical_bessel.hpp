// Copyright 2026 The entangled-baseline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

namespace ebl::special {

/// Spherical Bessel function of the first kind j_n(z).
double sph_bessel_j(int n, double z);

/// Fills out[0..out.size()) with j_0(z) ... j_{size-1}(z).
///
/// Uses closed forms (or their power series near the origin) for the two
/// lowest orders, Miller's downward recurrence normalized by
/// sum_n (2n+1) j_n(z)^2 = 1 when the highest order exceeds z, and the
/// upward recurrence otherwise.
void sph_bessel_j_sequence(double z, std::span<double> out);

/// Derivative j_n'(z) = (n j_{n-1}(z) - (n+1) j_{n+1}(z)) / (2n+1).
double sph_bessel_j_derivative(int n, double z);

}  // namespace ebl::special
