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

#include <string>
#include <vector>

#include "cloudchem/cloudchem.hpp"

namespace helpers {

inline const char* kHeliumGeometry = "He 2.0 0 0 0\n";
inline const char* kHydrogenGeometry = "H 1.0 0 0 0\n";

/// The five-exponent helium basis (Clementi exponents, taken verbatim at
/// the printed precision).
inline const char* kHeliumBasis =
    "0 1.41714\n"
    "0 2.37682\n"
    "0 4.39628\n"
    "0 6.52699\n"
    "0 7.94252\n";

inline cloudchem::NuclearFrame helium_frame() {
  return cloudchem::parse_geometry(kHeliumGeometry);
}

inline cloudchem::NuclearFrame hydrogen_frame() {
  return cloudchem::parse_geometry(kHydrogenGeometry);
}

inline cloudchem::StoBasis helium_basis() {
  return cloudchem::parse_basis(kHeliumBasis, helium_frame());
}

inline cloudchem::ScfResult helium_scf() {
  return cloudchem::scf_solve(helium_frame(), helium_basis(), 2);
}

/// One-electron 1s state with exponent zeta on a single q-charge nucleus.
inline cloudchem::DeterminantWavefunction hydrogenic_state(double zeta) {
  std::vector<Eigen::Vector3d> centers{Eigen::Vector3d::Zero()};
  cloudchem::StoBasis basis({cloudchem::StoPrimitive{zeta, 0}}, centers);
  Eigen::VectorXd c(1);
  c << 1.0;
  return cloudchem::DeterminantWavefunction(basis,
                                            {cloudchem::SpinOrbital{c, cloudchem::Spin::up}});
}

/// Paired two-electron 1s state with exponent zeta (minimal helium).
inline cloudchem::DeterminantWavefunction paired_state(double zeta) {
  std::vector<Eigen::Vector3d> centers{Eigen::Vector3d::Zero()};
  cloudchem::StoBasis basis({cloudchem::StoPrimitive{zeta, 0}}, centers);
  Eigen::VectorXd c(1);
  c << 1.0;
  return cloudchem::DeterminantWavefunction(
      basis, {cloudchem::SpinOrbital{c, cloudchem::Spin::up},
              cloudchem::SpinOrbital{c, cloudchem::Spin::down}});
}

/// Synthetic three-center system (water-like arrangement) with one 1s STO
/// per center and two S-orthonormal spatial orbitals occupied by four
/// electrons. Returns the three input files as text.
struct ThreeCenterFiles {
  std::string geometry;
  std::string basis;
  std::string orbitals;
};

inline ThreeCenterFiles synthetic_three_center() {
  ThreeCenterFiles f;
  f.geometry =
      "O 8.0 0 0 0\n"
      "H 1.0 1.43 1.11 0\n"
      "H 1.0 -1.43 1.11 0\n";
  f.basis =
      "0 2.2\n"
      "1 1.24\n"
      "2 1.24\n";
  cloudchem::NuclearFrame frame = cloudchem::parse_geometry(f.geometry);
  cloudchem::StoBasis basis = cloudchem::parse_basis(f.basis, frame);
  const Eigen::MatrixXd S = cloudchem::overlap_matrix(basis);
  // two spatial orbitals, S-orthonormalized
  std::vector<Eigen::VectorXd> spatial;
  Eigen::VectorXd a(3), b(3);
  a << 0.9, 0.30, 0.30;
  b << -0.2, 0.75, 0.75;
  spatial.push_back(a);
  spatial.push_back(b);
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      spatial[i] -= spatial[j].dot(S * spatial[i]) * spatial[j];
    }
    spatial[i] /= std::sqrt(spatial[i].dot(S * spatial[i]));
  }
  std::vector<cloudchem::SpinOrbital> orbs;
  for (const Eigen::VectorXd& c : spatial) {
    orbs.push_back(cloudchem::SpinOrbital{c, cloudchem::Spin::up});
    orbs.push_back(cloudchem::SpinOrbital{c, cloudchem::Spin::down});
  }
  f.orbitals =
      cloudchem::serialize_orbitals(cloudchem::DeterminantWavefunction(basis, orbs));
  return f;
}

}  // namespace helpers
