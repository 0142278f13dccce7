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

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cloudchem/constants.hpp"
#include "cloudchem/errors.hpp"

namespace cloudchem {

/// A classical point nucleus: charge in units of e, position in bohr.
struct Nucleus {
  double charge = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  std::string label;
};

/// The external-potential source: a fixed arrangement of point nuclei.
///
/// Invariants enforced at construction: every charge is positive, every
/// position is finite, and no two nuclei coincide.
class NuclearFrame {
 public:
  explicit NuclearFrame(std::vector<Nucleus> nuclei) : nuclei_(std::move(nuclei)) {
    for (std::size_t k = 0; k < nuclei_.size(); ++k) {
      const Nucleus& nuc = nuclei_[k];
      if (!(nuc.charge > 0.0)) {
        throw InvalidInputError("nucleus " + std::to_string(k) +
                                ": non-positive charge " + std::to_string(nuc.charge));
      }
      if (!nuc.position.allFinite()) {
        throw InvalidInputError("nucleus " + std::to_string(k) + ": non-finite position");
      }
      for (std::size_t l = 0; l < k; ++l) {
        if ((nuclei_[l].position - nuc.position).norm() < 1e-12) {
          throw InvalidInputError("nuclei " + std::to_string(l) + " and " +
                                  std::to_string(k) + " share a position");
        }
      }
    }
  }

  std::size_t size() const { return nuclei_.size(); }
  const Nucleus& operator[](std::size_t k) const { return nuclei_[k]; }
  const std::vector<Nucleus>& nuclei() const { return nuclei_; }

  /// Point-charge Coulomb repulsion summed over distinct nucleus pairs.
  double repulsion_energy() const {
    double e = 0.0;
    for (std::size_t k = 0; k < nuclei_.size(); ++k) {
      for (std::size_t l = k + 1; l < nuclei_.size(); ++l) {
        e += nuclei_[k].charge * nuclei_[l].charge /
             (nuclei_[k].position - nuclei_[l].position).norm();
      }
    }
    return e;
  }

 private:
  std::vector<Nucleus> nuclei_;
};

/// A normalized 1s Slater-type primitive (zeta^3/pi)^(1/2) exp(-zeta r)
/// attached to a center of the frame it was built against.
struct StoPrimitive {
  double zeta = 1.0;
  std::size_t center = 0;

  double normalization() const { return std::sqrt(zeta * zeta * zeta / kPi); }
  double radial_value(double r) const { return normalization() * std::exp(-zeta * r); }
};

/// A set of 1s STO primitives with resolved center positions.
///
/// SCF requires all primitives on one center; multi-center bases are allowed
/// only so externally computed molecular orbitals can be analyzed
/// (density, dipole, forces).
class StoBasis {
 public:
  StoBasis(std::vector<StoPrimitive> primitives, std::vector<Eigen::Vector3d> centers)
      : primitives_(std::move(primitives)), centers_(std::move(centers)) {
    if (primitives_.empty()) throw InvalidInputError("empty basis");
    for (std::size_t i = 0; i < primitives_.size(); ++i) {
      if (!(primitives_[i].zeta > 0.0)) {
        throw InvalidInputError("basis function " + std::to_string(i) +
                                ": non-positive exponent");
      }
      if (primitives_[i].center >= centers_.size()) {
        throw InvalidInputError("basis function " + std::to_string(i) +
                                ": center index out of range");
      }
    }
  }

  std::size_t size() const { return primitives_.size(); }
  const StoPrimitive& operator[](std::size_t i) const { return primitives_[i]; }
  const std::vector<StoPrimitive>& primitives() const { return primitives_; }
  const std::vector<Eigen::Vector3d>& centers() const { return centers_; }
  const Eigen::Vector3d& center_of(std::size_t i) const {
    return centers_[primitives_[i].center];
  }

  bool single_center() const {
    for (const StoPrimitive& p : primitives_) {
      if (p.center != primitives_.front().center) return false;
    }
    return true;
  }

  /// Center shared by all primitives; only meaningful when single_center().
  const Eigen::Vector3d& sole_center() const { return center_of(0); }

  double evaluate(std::size_t i, const Eigen::Vector3d& x) const {
    return primitives_[i].radial_value((x - center_of(i)).norm());
  }

 private:
  std::vector<StoPrimitive> primitives_;
  std::vector<Eigen::Vector3d> centers_;
};

enum class Spin { up, down };

inline char spin_label(Spin s) { return s == Spin::up ? 'u' : 'd'; }

/// A spatial coefficient vector over an StoBasis paired with a spin label.
struct SpinOrbital {
  Eigen::VectorXd coefficients;
  Spin spin = Spin::up;
};

/// An antisymmetric N-electron state given by N spin orbitals over a shared
/// basis. Same-spin orbitals must be S-orthonormal; validation happens where
/// the overlap matrix is available (parsers, SCF).
class DeterminantWavefunction {
 public:
  DeterminantWavefunction(StoBasis basis, std::vector<SpinOrbital> orbitals)
      : basis_(std::move(basis)), orbitals_(std::move(orbitals)) {
    if (orbitals_.empty()) throw InvalidInputError("determinant with no orbitals");
    for (std::size_t i = 0; i < orbitals_.size(); ++i) {
      if (static_cast<std::size_t>(orbitals_[i].coefficients.size()) != basis_.size()) {
        throw InvalidInputError("orbital " + std::to_string(i) +
                                ": coefficient dimension does not match basis size");
      }
    }
  }

  int electron_count() const { return static_cast<int>(orbitals_.size()); }
  const StoBasis& basis() const { return basis_; }
  const std::vector<SpinOrbital>& orbitals() const { return orbitals_; }
  const SpinOrbital& orbital(std::size_t i) const { return orbitals_[i]; }

  /// Spatial value of orbital i at a point.
  double orbital_value(std::size_t i, const Eigen::Vector3d& x) const {
    double v = 0.0;
    for (std::size_t mu = 0; mu < basis_.size(); ++mu) {
      v += orbitals_[i].coefficients[static_cast<Eigen::Index>(mu)] * basis_.evaluate(mu, x);
    }
    return v;
  }

  /// Radial spatial value of orbital i; valid for single-center bases.
  double orbital_value_radial(std::size_t i, double r) const {
    double v = 0.0;
    for (std::size_t mu = 0; mu < basis_.size(); ++mu) {
      v += orbitals_[i].coefficients[static_cast<Eigen::Index>(mu)] *
           basis_[mu].radial_value(r);
    }
    return v;
  }

 private:
  StoBasis basis_;
  std::vector<SpinOrbital> orbitals_;
};

/// Checks unit norms and same-spin orthogonality under the given overlap
/// matrix. Throws InvalidInputError on a violation beyond `tolerance`.
inline void validate_determinant(const DeterminantWavefunction& wf,
                                 const Eigen::MatrixXd& overlap, double tolerance) {
  const auto& orbs = wf.orbitals();
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    const double norm = orbs[i].coefficients.dot(overlap * orbs[i].coefficients);
    if (std::abs(norm - 1.0) > tolerance) {
      throw InvalidInputError("orbital " + std::to_string(i) + ": norm " +
                              std::to_string(norm) + " violates unit normalization");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (orbs[i].spin != orbs[j].spin) continue;  // opposite spins orthogonal by spin
      const double ov = orbs[i].coefficients.dot(overlap * orbs[j].coefficients);
      if (std::abs(ov) > tolerance) {
        throw InvalidInputError("orbitals " + std::to_string(j) + " and " +
                                std::to_string(i) + ": same-spin overlap " +
                                std::to_string(ov) + " violates orthogonality");
      }
    }
  }
}

}  // namespace cloudchem
