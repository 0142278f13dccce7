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
#include <optional>
#include <utility>
#include <vector>

#include "cloudchem/errors.hpp"
#include "cloudchem/integrals.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

/// SCF controls. Damping is linear density mixing: the retained fraction of
/// the previous density matrix.
struct ScfSettings {
  int max_iterations = 200;
  double energy_tolerance = 1e-10;   // hartree
  double density_tolerance = 1e-8;   // max-abs density matrix change
  double damping = 0.3;              // in [0, 1)
  /// Occupied spatial coefficient vectors to seed from (defaults to the
  /// core-Hamiltonian guess).
  std::optional<std::vector<Eigen::VectorXd>> initial_orbitals;

  void validate() const {
    if (max_iterations < 1) throw InvalidInputError("scf: max_iterations must be >= 1");
    if (!(energy_tolerance > 0.0) || !(density_tolerance > 0.0)) {
      throw InvalidInputError("scf: tolerances must be positive");
    }
    if (damping < 0.0 || damping >= 1.0) {
      throw InvalidInputError("scf: damping must lie in [0, 1)");
    }
  }
};

/// The energy decomposition: kinetic energy plus the five potential
/// contributions. electron_repulsion_total keeps the per-orbital self terms
/// (the j >= i double sum); self_repulsion and exchange are stored positive
/// and enter the total with minus signs. coulomb_integral is the
/// distinct-pair repulsion, electron_repulsion_total - self_repulsion.
struct EnergyReport {
  double kinetic = 0.0;
  double nucleus_nucleus = 0.0;
  double electron_nucleus = 0.0;
  double electron_repulsion_total = 0.0;
  double self_repulsion = 0.0;
  double exchange = 0.0;
  double coulomb_integral = 0.0;
  double total = 0.0;
};

struct ScfIterate {
  int iteration = 0;
  double energy = 0.0;
  double delta_energy = 0.0;
  double max_density_change = 0.0;
  double commutator_max = 0.0;  // max-abs of FPS - SPF
};

struct ScfResult {
  bool converged = false;
  int iterations = 0;
  DeterminantWavefunction wavefunction;
  EnergyReport energy;
  std::vector<ScfIterate> trace;
};

namespace detail {

/// Electron-electron pieces of the decomposition for a set of spin orbitals.
struct ElectronRepulsionTerms {
  double total = 0.0;     // sum_{i<=j} J_ij
  double self = 0.0;      // sum_i J_ii
  double exchange = 0.0;  // sum_{i<j, same spin} K_ij
};

inline ElectronRepulsionTerms electron_repulsion_terms(const DeterminantWavefunction& wf,
                                                       const TwoElectronTensor& eri) {
  const std::size_t n = wf.basis().size();
  const auto& orbs = wf.orbitals();
  const std::size_t no = orbs.size();

  // Half-transformed pair densities: v_i(l,s) = sum_{mn} c_im c_in (mn|ls).
  std::vector<Eigen::MatrixXd> half(no);
  for (std::size_t i = 0; i < no; ++i) {
    const Eigen::VectorXd& c = orbs[i].coefficients;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t q = 0; q < n; ++q) {
        const double cmq = c[static_cast<Eigen::Index>(m)] * c[static_cast<Eigen::Index>(q)];
        if (cmq == 0.0) continue;
        for (std::size_t l = 0; l < n; ++l) {
          for (std::size_t s = 0; s < n; ++s) {
            v(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(s)) +=
                cmq * eri(m, q, l, s);
          }
        }
      }
    }
    half[i] = std::move(v);
  }

  auto coulomb_ij = [&](std::size_t i, std::size_t j) {
    const Eigen::VectorXd& cj = orbs[j].coefficients;
    return cj.dot(half[i] * cj);
  };
  auto exchange_ij = [&](std::size_t i, std::size_t j) {
    const Eigen::VectorXd& ci = orbs[i].coefficients;
    const Eigen::VectorXd& cj = orbs[j].coefficients;
    double k = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t l = 0; l < n; ++l) {
          for (std::size_t s = 0; s < n; ++s) {
            k += ci[static_cast<Eigen::Index>(m)] * cj[static_cast<Eigen::Index>(q)] *
                 eri(m, q, l, s) * cj[static_cast<Eigen::Index>(l)] *
                 ci[static_cast<Eigen::Index>(s)];
          }
        }
      }
    }
    return k;
  };

  ElectronRepulsionTerms terms;
  for (std::size_t i = 0; i < no; ++i) {
    for (std::size_t j = i; j < no; ++j) {
      const double jij = coulomb_ij(i, j);
      terms.total += jij;
      if (i == j) terms.self += jij;
      if (i != j && orbs[i].spin == orbs[j].spin) terms.exchange += exchange_ij(i, j);
    }
  }
  return terms;
}

inline EnergyReport decompose_given(const NuclearFrame& frame,
                                    const DeterminantWavefunction& wf,
                                    const OneElectronMatrices& mats,
                                    const TwoElectronTensor& eri) {
  EnergyReport report;
  report.nucleus_nucleus = frame.repulsion_energy();
  for (const SpinOrbital& orb : wf.orbitals()) {
    report.kinetic += orb.coefficients.dot(mats.T * orb.coefficients);
    report.electron_nucleus += orb.coefficients.dot(mats.Vne * orb.coefficients);
  }
  const ElectronRepulsionTerms terms = electron_repulsion_terms(wf, eri);
  report.electron_repulsion_total = terms.total;
  report.self_repulsion = terms.self;
  report.exchange = terms.exchange;
  report.coulomb_integral = terms.total - terms.self;
  report.total = report.kinetic + report.nucleus_nucleus + report.electron_nucleus +
                 report.electron_repulsion_total - report.self_repulsion - report.exchange;
  return report;
}

/// Closed-shell spin orbitals (u/d pairs) from occupied spatial columns.
inline std::vector<SpinOrbital> paired_orbitals(const Eigen::MatrixXd& occupied) {
  std::vector<SpinOrbital> orbs;
  for (Eigen::Index a = 0; a < occupied.cols(); ++a) {
    orbs.push_back(SpinOrbital{occupied.col(a), Spin::up});
    orbs.push_back(SpinOrbital{occupied.col(a), Spin::down});
  }
  return orbs;
}

/// Orients each orbital so its largest-magnitude coefficient is positive,
/// removing eigenvector phase freedom from reported coefficients.
inline void orient_sign_convention(std::vector<SpinOrbital>& orbitals) {
  for (SpinOrbital& orb : orbitals) {
    Eigen::Index imax = 0;
    orb.coefficients.cwiseAbs().maxCoeff(&imax);
    if (orb.coefficients[imax] < 0.0) orb.coefficients = -orb.coefficients;
  }
}

}  // namespace detail

/// Full decomposition of the energy expectation value of a determinant.
inline EnergyReport decompose_energy(const NuclearFrame& frame,
                                     const DeterminantWavefunction& wf) {
  const OneElectronMatrices mats = one_electron_matrices(wf.basis(), frame);
  const TwoElectronTensor eri(wf.basis());
  return detail::decompose_given(frame, wf, mats, eri);
}

/// Expectation value of the Hamiltonian; identical to the decomposition total.
inline double expectation_energy(const NuclearFrame& frame,
                                 const DeterminantWavefunction& wf) {
  return decompose_energy(frame, wf).total;
}

/// Restricted closed-shell Roothaan SCF. The generalized eigenproblem is
/// solved through symmetric (Loewdin) orthogonalization; convergence
/// requires the energy change, the density change and the FPS-SPF
/// stationarity residual to fall below the settings' tolerances.
/// Non-convergence is reported through the result, with the trace intact.
inline ScfResult scf_solve(const NuclearFrame& frame, const StoBasis& basis,
                           int n_electrons, const ScfSettings& settings = {}) {
  settings.validate();
  if (n_electrons < 2) throw InvalidInputError("scf: need at least two electrons");
  if (n_electrons % 2 != 0) {
    throw InvalidInputError("scf: restricted formalism requires an even electron count");
  }
  if (!basis.single_center()) {
    throw UnsupportedGeometryError("scf: multi-center bases are unsupported");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  const int n_occ = n_electrons / 2;
  if (n_occ > n) {
    throw InvalidInputError("scf: not enough basis functions for " +
                            std::to_string(n_electrons) + " electrons");
  }

  const OneElectronMatrices mats = one_electron_matrices(basis, frame);
  require_well_conditioned(mats.S);
  const TwoElectronTensor eri(basis);
  const Eigen::MatrixXd H = mats.T + mats.Vne;

  // Loewdin S^(-1/2)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ses(mats.S);
  const Eigen::MatrixXd X = ses.eigenvectors() *
                            ses.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            ses.eigenvectors().transpose();

  auto solve_fock = [&](const Eigen::MatrixXd& F) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X * F * X);
    Eigen::MatrixXd C = X * es.eigenvectors();
    return Eigen::MatrixXd(C.leftCols(n_occ));
  };

  Eigen::MatrixXd occupied;
  if (settings.initial_orbitals) {
    const auto& seed = *settings.initial_orbitals;
    if (static_cast<int>(seed.size()) != n_occ) {
      throw InvalidInputError("scf: seed must supply one spatial orbital per electron pair");
    }
    occupied.resize(n, n_occ);
    for (int a = 0; a < n_occ; ++a) {
      if (seed[static_cast<std::size_t>(a)].size() != n) {
        throw InvalidInputError("scf: seed orbital dimension mismatch");
      }
      occupied.col(a) = seed[static_cast<std::size_t>(a)];
    }
  } else {
    occupied = solve_fock(H);  // core-Hamiltonian guess
  }

  auto density_of = [&](const Eigen::MatrixXd& occ) {
    return Eigen::MatrixXd(2.0 * occ * occ.transpose());
  };
  auto fock_of = [&](const Eigen::MatrixXd& P) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
      for (Eigen::Index q = 0; q < n; ++q) {
        double g = 0.0;
        for (Eigen::Index l = 0; l < n; ++l) {
          for (Eigen::Index s = 0; s < n; ++s) {
            g += P(l, s) *
                 (eri(static_cast<std::size_t>(m), static_cast<std::size_t>(q),
                      static_cast<std::size_t>(s), static_cast<std::size_t>(l)) -
                  0.5 * eri(static_cast<std::size_t>(m), static_cast<std::size_t>(l),
                            static_cast<std::size_t>(s), static_cast<std::size_t>(q)));
          }
        }
        G(m, q) = g;
      }
    }
    return Eigen::MatrixXd(H + G);
  };
  auto energy_of = [&](const Eigen::MatrixXd& occ) {
    DeterminantWavefunction wf(basis, detail::paired_orbitals(occ));
    return detail::decompose_given(frame, wf, mats, eri);
  };

  Eigen::MatrixXd P = density_of(occupied);
  double previous_energy = energy_of(occupied).total;

  ScfResult result{false, 0, DeterminantWavefunction(basis, detail::paired_orbitals(occupied)),
                   EnergyReport{}, {}};
  for (int it = 1; it <= settings.max_iterations; ++it) {
    const Eigen::MatrixXd F = fock_of(P);
    occupied = solve_fock(F);
    const Eigen::MatrixXd P_new = density_of(occupied);
    const EnergyReport report = energy_of(occupied);

    ScfIterate step;
    step.iteration = it;
    step.energy = report.total;
    step.delta_energy = report.total - previous_energy;
    step.max_density_change = (P_new - P).cwiseAbs().maxCoeff();
    step.commutator_max = (F * P_new * mats.S - mats.S * P_new * F).cwiseAbs().maxCoeff();
    result.trace.push_back(step);
    result.iterations = it;

    if (std::abs(step.delta_energy) < settings.energy_tolerance &&
        step.max_density_change < settings.density_tolerance &&
        step.commutator_max < settings.density_tolerance) {
      result.converged = true;
      break;
    }
    P = (1.0 - settings.damping) * P_new + settings.damping * P;
    previous_energy = report.total;
  }

  std::vector<SpinOrbital> orbitals = detail::paired_orbitals(occupied);
  detail::orient_sign_convention(orbitals);
  result.wavefunction = DeterminantWavefunction(basis, std::move(orbitals));
  result.energy = detail::decompose_given(frame, result.wavefunction, mats, eri);
  return result;
}

}  // namespace cloudchem
