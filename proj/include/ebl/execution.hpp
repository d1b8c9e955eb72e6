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

#include <cstddef>

namespace ebl {

/// Selects between the serial reference loop and the OpenMP kernel.
///
/// Every data-parallel kernel in the library has both paths. They are
/// required to produce bit-identical results: parallel loops write into
/// per-index slots and reductions happen serially in index order.
enum class Execution { Serial, Parallel };

/// Caps the number of OpenMP worker threads (0 leaves the runtime default).
void set_max_threads(int threads);

/// Number of threads a Parallel kernel would use right now.
int max_threads();

}  // namespace ebl
