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
#include <vector>

#include "cloudchem/errors.hpp"
#include "cloudchem/quadrature.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

// ---------------------------------------------------------------------------
// Closed forms over normalized same-center 1s STOs
// psi_z(r) = (z^3/pi)^(1/2) exp(-z r).
// ---------------------------------------------------------------------------

namespace sto {

/// <a|b> = 8 (za zb)^(3/2) / (za+zb)^3.
inline double overlap_1s(double za, double zb) {
  const double s = za + zb;
  return 8.0 * std::pow(za * zb, 1.5) / (s * s * s);
}

/// <a|-1/2 del^2|b> = (za zb / 2) <a|b>. Symmetric in a,b.
inline double kinetic_1s(double za, double zb) {
  return 0.5 * za * zb * overlap_1s(za, zb);
}

/// <a| 1/r |b> about the shared center = 4 (za zb)^(3/2) / (za+zb)^2.
inline double coulomb_center_1s(double za, double zb) {
  const double s = za + zb;
  return 4.0 * std::pow(za * zb, 1.5) / (s * s);
}

/// <a| 1/|x - p| |b> for a point p at distance d from the shared center.
/// The product density is spherical, so the integral reduces radially with
/// the shell split: charge inside d acts as a point charge at the center,
/// shells outside d contribute their own potential. Radial pieces by
/// Gauss-Legendre quadrature.
inline double coulomb_offcenter_1s(double za, double zb, double d, int nodes = 96) {
  if (d < 1e-12) return coulomb_center_1s(za, zb);
  const double s = za + zb;
  const double norm = std::pow(za * zb, 1.5) / kPi;  // Na * Nb
  double inner = 0.0;
  {
    auto [r, w] = gauss_legendre_on(0.0, d, nodes);
    for (std::size_t i = 0; i < r.size(); ++i) {
      inner += w[i] * std::exp(-s * r[i]) * 4.0 * kPi * r[i] * r[i];
    }
  }
  double outer = 0.0;
  {
    // map [d, inf): r = d + L(1+t)/(1-t)
    auto [t, wt] = gauss_legendre(nodes);
    const double L = 3.0 / s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double om = 1.0 - t[i];
      const double r = d + L * (1.0 + t[i]) / om;
      outer += wt[i] * (2.0 * L / (om * om)) * std::exp(-s * r) * 4.0 * kPi * r;
    }
  }
  return norm * (inner / d + outer);
}

/// (ab|cd) = integral of psi_a(x)psi_b(x) 1/|x-x'| psi_c(x')psi_d(x'),
/// all four on one center. Radial reduction of 1/|x-x'| to 1/max(r,r')
/// gives the closed form below with alpha = za+zb, beta = zc+zd.
inline double eri_1s(double za, double zb, double zc, double zd) {
  const double alpha = za + zb;
  const double beta = zc + zd;
  const double s = alpha + beta;
  const double bracket =
      2.0 / (alpha * alpha) - 2.0 * beta / (s * s * s) - 2.0 / (s * s);
  return 16.0 * std::pow(za * zb * zc * zd, 1.5) * bracket / (beta * beta * beta);
}

/// Two-center overlap of normalized 1s STOs separated by R, via prolate
/// spheroidal coordinates. Needed only to validate externally supplied
/// multi-center orbitals.
inline double overlap_two_center_1s(double za, double zb, double R) {
  if (R < 1e-12) return overlap_1s(za, zb);
  const double p = 0.5 * (za + zb) * R;
  const double q = 0.5 * (za - zb) * R;
  const double a0 = std::exp(-p) / p;
  const double a2 = std::exp(-p) * (p * p + 2.0 * p + 2.0) / (p * p * p);
  double b0, b2;
  if (std::abs(q) < 1e-3) {
    // series; the sinh/cosh form cancels catastrophically near q = 0
    const double q2 = q * q;
    b0 = 2.0 * (1.0 + q2 / 6.0 + q2 * q2 / 120.0 + q2 * q2 * q2 / 5040.0);
    b2 = 2.0 * (1.0 / 3.0 + q2 / 10.0 + q2 * q2 / 168.0 + q2 * q2 * q2 / 6480.0);
  } else {
    b0 = 2.0 * std::sinh(q) / q;
    b2 = 2.0 * (std::sinh(q) / q - 2.0 * std::cosh(q) / (q * q) +
                2.0 * std::sinh(q) / (q * q * q));
  }
  const double norm = std::pow(za * zb, 1.5) / kPi;
  return norm * 2.0 * kPi * (R * R * R / 8.0) * (a2 * b0 - a0 * b2);
}

}  // namespace sto

namespace detail {
inline void require_same_center(const StoPrimitive& a, const StoPrimitive& b,
                                const char* what) {
  if (a.center != b.center) {
    throw UnsupportedGeometryError(std::string(what) +
                                   ": primitives on different centers are unsupported");
  }
}
}  // namespace detail

/// Overlap of two same-center primitives.
inline double overlap(const StoPrimitive& a, const StoPrimitive& b) {
  detail::require_same_center(a, b, "overlap");
  return sto::overlap_1s(a.zeta, b.zeta);
}

/// Kinetic-energy matrix element of two same-center primitives (hartree).
inline double kinetic(const StoPrimitive& a, const StoPrimitive& b) {
  detail::require_same_center(a, b, "kinetic");
  return sto::kinetic_1s(a.zeta, b.zeta);
}

/// Nuclear-attraction matrix element, summed over every nucleus of the
/// frame: -q_k <a| 1/|x - r_k| |b>. Off-center nuclei go through the
/// shell-split quadrature.
inline double nuclear_attraction(const StoPrimitive& a, const StoPrimitive& b,
                                 const StoBasis& basis, const NuclearFrame& frame) {
  detail::require_same_center(a, b, "nuclear_attraction");
  const Eigen::Vector3d& center = basis.centers()[a.center];
  double v = 0.0;
  for (const Nucleus& nuc : frame.nuclei()) {
    const double d = (nuc.position - center).norm();
    v -= nuc.charge * (d < 1e-12 ? sto::coulomb_center_1s(a.zeta, b.zeta)
                                 : sto::coulomb_offcenter_1s(a.zeta, b.zeta, d));
  }
  return v;
}

/// Electron-repulsion integral (ab|cd) for four same-center primitives.
inline double electron_repulsion(const StoPrimitive& a, const StoPrimitive& b,
                                 const StoPrimitive& c, const StoPrimitive& d) {
  detail::require_same_center(a, b, "electron_repulsion");
  detail::require_same_center(a, c, "electron_repulsion");
  detail::require_same_center(a, d, "electron_repulsion");
  return sto::eri_1s(a.zeta, b.zeta, c.zeta, d.zeta);
}

/// Overlap matrix; different-center pairs use the two-center closed form so
/// externally supplied molecular orbitals can be validated.
inline Eigen::MatrixXd overlap_matrix(const StoBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& a = basis[static_cast<std::size_t>(i)];
      const auto& b = basis[static_cast<std::size_t>(j)];
      const double sij =
          a.center == b.center
              ? sto::overlap_1s(a.zeta, b.zeta)
              : sto::overlap_two_center_1s(
                    a.zeta, b.zeta,
                    (basis.centers()[a.center] - basis.centers()[b.center]).norm());
      S(i, j) = sij;
      S(j, i) = sij;
    }
  }
  return S;
}

/// Rejects bases whose overlap matrix has an eigenvalue at or below 1e-10.
inline void require_well_conditioned(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-10) {
    throw LinearDependenceError("basis is linearly dependent (overlap eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

/// S, T and Vne over a single-center basis.
struct OneElectronMatrices {
  Eigen::MatrixXd S;
  Eigen::MatrixXd T;
  Eigen::MatrixXd Vne;
};

inline OneElectronMatrices one_electron_matrices(const StoBasis& basis,
                                                 const NuclearFrame& frame) {
  if (!basis.single_center()) {
    throw UnsupportedGeometryError(
        "one-electron matrices: multi-center bases support overlap only");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  OneElectronMatrices m{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& a = basis[static_cast<std::size_t>(i)];
      const auto& b = basis[static_cast<std::size_t>(j)];
      const double s = sto::overlap_1s(a.zeta, b.zeta);
      const double t = sto::kinetic_1s(a.zeta, b.zeta);
      const double v = nuclear_attraction(a, b, basis, frame);
      m.S(i, j) = m.S(j, i) = s;
      m.T(i, j) = m.T(j, i) = t;
      m.Vne(i, j) = m.Vne(j, i) = v;
    }
  }
  return m;
}

/// Kinetic-energy matrix alone (frame-independent).
inline Eigen::MatrixXd kinetic_matrix(const StoBasis& basis) {
  if (!basis.single_center()) {
    throw UnsupportedGeometryError("kinetic matrix: multi-center bases are unsupported");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      T(i, j) = T(j, i) = sto::kinetic_1s(basis[static_cast<std::size_t>(i)].zeta,
                                          basis[static_cast<std::size_t>(j)].zeta);
    }
  }
  return T;
}

/// Dense 4-index electron-repulsion tensor with the 8-fold permutation
/// symmetry exact by construction: each symmetry class is computed once and
/// assigned to all index images.
class TwoElectronTensor {
 public:
  explicit TwoElectronTensor(const StoBasis& basis) : n_(basis.size()) {
    if (!basis.single_center()) {
      throw UnsupportedGeometryError(
          "two-electron tensor: multi-center bases are unsupported");
    }
    data_.assign(n_ * n_ * n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          for (std::size_t l = k; l < n_; ++l) {
            if (pair_index(i, j) > pair_index(k, l)) continue;
            const double v = sto::eri_1s(basis[i].zeta, basis[j].zeta,
                                         basis[k].zeta, basis[l].zeta);
            assign_all(i, j, k, l, v);
          }
        }
      }
    }
  }

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * n_ + j; }

  void assign_all(std::size_t i, std::size_t j, std::size_t k, std::size_t l, double v) {
    const std::size_t idx[8][4] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                                   {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
    for (const auto& q : idx) {
      data_[((q[0] * n_ + q[1]) * n_ + q[2]) * n_ + q[3]] = v;
    }
  }

  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace cloudchem
