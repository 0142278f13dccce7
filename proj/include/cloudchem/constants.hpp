/*
 * Copyright 2026 the cloudchem authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>

namespace cloudchem {

/// Library version, written into export sidecar metadata.
inline constexpr const char* kVersion = "1.0.0";

inline constexpr double kPi = 3.14159265358979323846;

/// Everything internal is in Hartree atomic units (hbar = m = e = 1,
/// lengths in bohr, energies in hartree). This is the single conversion
/// constant used when reports mirror energies in electron volts.
inline constexpr double kHartreeToEv = 27.211386;

/// Dirac exchange prefactor C_x = (3/4)(3/pi)^(1/3).
inline const double kDiracExchangeCx = 0.75 * std::cbrt(3.0 / kPi);

}  // namespace cloudchem
