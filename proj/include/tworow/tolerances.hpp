// Copyright 2026 The tworow Authors
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

#ifndef TWOROW_TOLERANCES_HPP_
#define TWOROW_TOLERANCES_HPP_

namespace tworow::tol {

// Primal feasibility of LP solutions (rows and bounds).
inline constexpr double kFeasibility = 1e-7;
// Smallest admissible pivot element.
inline constexpr double kPivot = 1e-9;
// Reduced-cost optimality tolerance.
inline constexpr double kDual = 1e-9;
// Coefficients below this magnitude are treated as zero.
inline constexpr double kZero = 1e-12;
// Values this close to an integer are snapped before lattice counting.
inline constexpr double kSnap = 1e-9;

}  // namespace tworow::tol

#endif  // TWOROW_TOLERANCES_HPP_
