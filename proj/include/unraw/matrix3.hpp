// Copyright 2026 The unraw Authors
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

#include <array>

namespace unraw {

using Vec3 = std::array<double, 3>;
using Matrix3 = std::array<Vec3, 3>;

inline constexpr Matrix3 kIdentity3 = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

/// Smallest |det| accepted when inverting a colour matrix.
inline constexpr double kMinDeterminant = 1e-8;

double determinant(const Matrix3& m) noexcept;
/// Adjugate inverse; throws kDomain when |det| <= kMinDeterminant.
Matrix3 inverse(const Matrix3& m);
Matrix3 multiply(const Matrix3& a, const Matrix3& b) noexcept;
Vec3 multiply(const Matrix3& m, const Vec3& v) noexcept;
/// Condition number in the Frobenius norm; infinite for singular input.
double condition_number(const Matrix3& m) noexcept;

}  // namespace unraw
