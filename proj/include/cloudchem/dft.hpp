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
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cloudchem/density.hpp"
#include "cloudchem/electrostatics.hpp"
#include "cloudchem/errors.hpp"
#include "cloudchem/hartree_fock.hpp"
#include "cloudchem/parallel.hpp"
#include "cloudchem/quadrature.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

// ---------------------------------------------------------------------------
// Energy functional pieces
// ---------------------------------------------------------------------------

/// Classical Coulomb self-energy of the charge cloud,
/// (1/2) * integral rho(x) rho(x') / |x - x'|, via the radial shell
/// reduction for spherically symmetric densities.
inline double hartree_energy(const ChargeDensityField& field, const QuadratureGrid& grid) {
  if (!field.spherical() || grid.scheme != GridScheme::radial_spherical) {
    throw UnsupportedGeometryError(
        "hartree energy: only spherical densities on radial grids are supported");
  }
  const int nodes = static_cast<int>(grid.radial_nodes.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
    const double r = grid.radial_nodes[i];
    const double phi = detail::spherical_potential_at(field, r, nodes, grid.map_radius);
    acc += grid.radial_weights[i] * 4.0 * kPi * r * r * field.radial(r) * phi;
  }
  return 0.5 * acc;
}

/// integral rho^q V d^3x with V the nuclear potential; identical machinery
/// to the electrostatics interaction energy.
inline double external_energy(const ChargeDensityField& field, const NuclearFrame& frame,
                              const QuadratureGrid& grid) {
  return classical_interaction_energy(field, frame, grid);
}

/// Non-interacting kinetic energy of the supplied orbital representative,
/// sum_i <chi_i| -1/2 del^2 |chi_i>. Equals the Hartree-Fock kinetic term
/// for the same orbitals.
inline double ts_noninteracting(const DeterminantWavefunction& wf) {
  const Eigen::MatrixXd T = kinetic_matrix(wf.basis());
  double ts = 0.0;
  for (const SpinOrbital& orb : wf.orbitals()) {
    ts += orb.coefficients.dot(T * orb.coefficients);
  }
  return ts;
}

/// Dirac local exchange, -C_x * integral n(x)^(4/3) d^3x over the number
/// density n = rho / (-e).
inline double lda_exchange(const ChargeDensityField& field, const QuadratureGrid& grid) {
  if (grid.scheme == GridScheme::radial_spherical) {
    if (!field.spherical()) {
      throw InvalidInputError("radial grid cannot integrate a non-spherical field");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
      const double r = grid.radial_nodes[i];
      const double n = std::max(0.0, -field.radial(r));
      acc += grid.radial_weights[i] * 4.0 * kPi * r * r * std::pow(n, 4.0 / 3.0);
    }
    return -kDiracExchangeCx * acc;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double n = std::max(0.0, -field(grid.points[i]));
    acc += grid.weights[i] * std::pow(n, 4.0 / 3.0);
  }
  return -kDiracExchangeCx * acc;
}

// ---------------------------------------------------------------------------
// Exchange-correlation selection
// ---------------------------------------------------------------------------

enum class XcKind { none, lda_exchange, exact_from_hf };

/// A named exchange-correlation piece. `exact-from-hf` is the residual that
/// makes the Kohn-Sham assembly reproduce the Hartree-Fock total for the
/// same orbitals: minus the decomposition's self-repulsion and exchange.
struct XcFunctional {
  std::string name;
  XcKind kind = XcKind::none;
  std::function<double(const ChargeDensityField&, const DeterminantWavefunction*,
                       const QuadratureGrid&)>
      evaluate;
};

inline XcFunctional make_xc_functional(XcKind kind) {
  XcFunctional xc;
  xc.kind = kind;
  switch (kind) {
    case XcKind::none:
      xc.name = "none";
      xc.evaluate = [](const ChargeDensityField&, const DeterminantWavefunction*,
                       const QuadratureGrid&) { return 0.0; };
      break;
    case XcKind::lda_exchange:
      xc.name = "lda-exchange";
      xc.evaluate = [](const ChargeDensityField& field, const DeterminantWavefunction*,
                       const QuadratureGrid& grid) { return lda_exchange(field, grid); };
      break;
    case XcKind::exact_from_hf:
      xc.name = "exact-from-hf";
      xc.evaluate = [](const ChargeDensityField&, const DeterminantWavefunction* wf,
                       const QuadratureGrid&) {
        if (wf == nullptr) {
          throw InvalidInputError("exact-from-hf functional needs an orbital set");
        }
        const TwoElectronTensor eri(wf->basis());
        const detail::ElectronRepulsionTerms terms =
            detail::electron_repulsion_terms(*wf, eri);
        return -(terms.self + terms.exchange);
      };
      break;
  }
  return xc;
}

inline XcFunctional xc_functional_by_name(const std::string& name) {
  if (name == "none") return make_xc_functional(XcKind::none);
  if (name == "lda-exchange") return make_xc_functional(XcKind::lda_exchange);
  if (name == "exact-from-hf") return make_xc_functional(XcKind::exact_from_hf);
  throw InvalidInputError("unknown exchange-correlation functional '" + name + "'");
}

/// Perdew-Zunger self-interaction correction: removes the Hartree and
/// applied-functional self-terms orbital by orbital,
/// -sum_i [ U(rho_i) + E_xc(rho_i) ], with U the per-orbital pair repulsion
/// integral rho_i rho_i' / |x-x'| (no 1/2; this is exactly the per-orbital
/// self-count the assembled Hartree term carries).
inline double pz_self_interaction_correction(const DeterminantWavefunction& wf,
                                             const QuadratureGrid& grid,
                                             XcKind applied = XcKind::none) {
  if (applied == XcKind::exact_from_hf) {
    throw InvalidInputError(
        "self-interaction correction is undefined on top of exact-from-hf");
  }
  double correction = 0.0;
  for (std::size_t i = 0; i < wf.orbitals().size(); ++i) {
    const ChargeDensityField rho_i = single_orbital_density(wf, i);
    correction -= 2.0 * hartree_energy(rho_i, grid);
    if (applied == XcKind::lda_exchange) correction -= lda_exchange(rho_i, grid);
  }
  return correction;
}

// ---------------------------------------------------------------------------
// Kohn-Sham assembly
// ---------------------------------------------------------------------------

/// The five Kohn-Sham energy terms. hartree_term follows the same
/// orbital-pair convention as the Hartree-Fock decomposition's electron
/// repulsion (the j >= i sum, self terms counted once each), so that with
/// the exact-from-hf functional the total reproduces the Hartree-Fock total
/// identically.
struct KohnShamBreakdown {
  double ts = 0.0;
  double nucleus_nucleus = 0.0;
  double external = 0.0;
  double hartree_term = 0.0;
  double xc = 0.0;
  double total = 0.0;
};

inline KohnShamBreakdown kohn_sham_energy(const DeterminantWavefunction& wf,
                                          const NuclearFrame& frame, const XcFunctional& xc,
                                          const QuadratureGrid& grid,
                                          bool self_interaction_correction = false) {
  KohnShamBreakdown b;
  b.ts = ts_noninteracting(wf);
  b.nucleus_nucleus = frame.repulsion_energy();
  const ChargeDensityField rho = density_from_determinant(wf);
  b.external = external_energy(rho, frame, grid);
  // Orbital-pair Hartree term: (1/2)J[rho,rho] + sum_i (1/2)J[rho_i,rho_i].
  b.hartree_term = hartree_energy(rho, grid);
  for (std::size_t i = 0; i < wf.orbitals().size(); ++i) {
    b.hartree_term += hartree_energy(single_orbital_density(wf, i), grid);
  }
  b.xc = xc.evaluate(rho, &wf, grid);
  if (self_interaction_correction) {
    b.xc += pz_self_interaction_correction(wf, grid, xc.kind);
  }
  b.total = b.ts + b.nucleus_nucleus + b.external + b.hartree_term + b.xc;
  return b;
}

// ---------------------------------------------------------------------------
// Variational probe
// ---------------------------------------------------------------------------

struct VariationalProbeReport {
  int perturbation_count = 0;
  double scale = 0.0;
  int violations = 0;          // trials lowering the energy beyond 1e-10 hartree
  double worst_delta = 0.0;    // most negative observed energy change
  double mean_delta = 0.0;
  double reference_energy = 0.0;
};

namespace detail {

/// Deterministic uniform draw in [-1, 1).
inline double symmetric_draw(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0;
}

/// Perturbs the reference's spatial orbitals by `scale`, restores
/// S-orthonormality (Gram-Schmidt within each spin block, identical
/// coefficients kept for paired orbitals) and rebuilds the determinant.
inline DeterminantWavefunction perturb_reference(const DeterminantWavefunction& reference,
                                                 const Eigen::MatrixXd& S, double scale,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& orbs = reference.orbitals();
  // Detect restricted pairing (u,d alternating with identical coefficients).
  bool paired = orbs.size() % 2 == 0;
  for (std::size_t a = 0; paired && a + 1 < orbs.size(); a += 2) {
    paired = orbs[a].spin != orbs[a + 1].spin &&
             (orbs[a].coefficients.array() == orbs[a + 1].coefficients.array()).all();
  }
  std::vector<Eigen::VectorXd> spatial;
  if (paired) {
    for (std::size_t a = 0; a < orbs.size(); a += 2) spatial.push_back(orbs[a].coefficients);
  } else {
    for (const SpinOrbital& o : orbs) spatial.push_back(o.coefficients);
  }
  for (Eigen::VectorXd& c : spatial) {
    for (Eigen::Index m = 0; m < c.size(); ++m) c[m] += scale * symmetric_draw(rng);
  }
  // Gram-Schmidt under S (paired spatials occupy both spins, so they must be
  // mutually orthogonal; unpaired orbitals only need it within their spin).
  auto orthonormalize = [&S](std::vector<Eigen::VectorXd>& vecs) {
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        vecs[i] -= vecs[j].dot(S * vecs[i]) * vecs[j];
      }
      const double norm = std::sqrt(vecs[i].dot(S * vecs[i]));
      vecs[i] /= norm;
    }
  };
  std::vector<SpinOrbital> out;
  if (paired) {
    orthonormalize(spatial);
    for (const Eigen::VectorXd& c : spatial) {
      out.push_back(SpinOrbital{c, Spin::up});
      out.push_back(SpinOrbital{c, Spin::down});
    }
  } else {
    std::vector<Eigen::VectorXd> up, down;
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      (orbs[i].spin == Spin::up ? up : down).push_back(spatial[i]);
    }
    orthonormalize(up);
    orthonormalize(down);
    std::size_t iu = 0, id = 0;
    for (const SpinOrbital& o : orbs) {
      out.push_back(SpinOrbital{o.spin == Spin::up ? up[iu++] : down[id++], o.spin});
    }
  }
  return DeterminantWavefunction(reference.basis(), std::move(out));
}

}  // namespace detail

/// Evaluates the Kohn-Sham energy over randomly perturbed normalized
/// orbital sets around a converged reference. Per-trial seeds make the
/// batch schedule-independent; a violation is any trial that lands more
/// than 1e-10 hartree below the reference.
inline VariationalProbeReport variational_probe(const NuclearFrame& frame,
                                                const DeterminantWavefunction& reference,
                                                const XcFunctional& xc,
                                                const QuadratureGrid& grid, double scale,
                                                int count = 200,
                                                std::uint64_t base_seed = 20210624,
                                                bool self_interaction_correction = false) {
  if (count < 1) throw InvalidInputError("variational probe: need at least one trial");
  if (scale < 0.0) throw InvalidInputError("variational probe: negative scale");
  VariationalProbeReport report;
  report.perturbation_count = count;
  report.scale = scale;
  report.reference_energy =
      kohn_sham_energy(reference, frame, xc, grid, self_interaction_correction).total;
  const Eigen::MatrixXd S = overlap_matrix(reference.basis());

  std::vector<double> deltas(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t t) {
    const DeterminantWavefunction perturbed =
        detail::perturb_reference(reference, S, scale, base_seed + t);
    deltas[t] = kohn_sham_energy(perturbed, frame, xc, grid, self_interaction_correction)
                    .total -
                report.reference_energy;
  });
  report.worst_delta = deltas.empty() ? 0.0 : deltas.front();
  double sum = 0.0;
  for (double d : deltas) {
    sum += d;
    if (d < report.worst_delta) report.worst_delta = d;
    if (d < -1e-10) ++report.violations;
  }
  report.mean_delta = sum / static_cast<double>(count);
  return report;
}

}  // namespace cloudchem
