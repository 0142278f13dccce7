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

#include "cloudchem/density.hpp"
#include "cloudchem/errors.hpp"
#include "cloudchem/integrals.hpp"
#include "cloudchem/quadrature.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

/// Electric potential of the point nuclei, sum_k q_k / |x - r_k|.
inline double potential_from_nuclei(const NuclearFrame& frame, const Eigen::Vector3d& x) {
  double v = 0.0;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    const double d = (x - frame[k].position).norm();
    if (d < 1e-12) {
      throw SingularityError(
          "potential evaluated at nucleus " + std::to_string(k), k);
    }
    v += frame[k].charge / d;
  }
  return v;
}

namespace detail {

/// Charge enclosed within radius d of a spherical field's center,
/// 4*pi * integral_0^d rho(s) s^2 ds.
inline double spherical_enclosed_charge(const ChargeDensityField& field, double d,
                                        int nodes) {
  if (d <= 0.0) return 0.0;
  auto [s, w] = gauss_legendre_on(0.0, d, nodes);
  double q = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    q += w[i] * 4.0 * kPi * s[i] * s[i] * field.radial(s[i]);
  }
  return q;
}

/// Potential sourced by a spherical field at distance d from its center,
/// via the shell split: inner charge as a point charge, outer shells by
/// their own (constant inside) potential.
inline double spherical_potential_at(const ChargeDensityField& field, double d, int nodes,
                                     double map_radius) {
  auto [t, wt] = gauss_legendre(nodes);
  double outer = 0.0;
  const double lo = d > 0.0 ? d : 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double om = 1.0 - t[i];
    const double s = lo + map_radius * (1.0 + t[i]) / om;
    outer += wt[i] * (2.0 * map_radius / (om * om)) * 4.0 * kPi * s * field.radial(s);
  }
  if (d < 1e-12) return outer;
  return spherical_enclosed_charge(field, d, nodes) / d + outer;
}

}  // namespace detail

/// Classical interaction energy of the charge cloud with the nuclear
/// potential, integral rho^q(x) V(x) d^3x. Shares its machinery with the
/// Kohn-Sham external term; exposed here for force finite-difference tests.
inline double classical_interaction_energy(const ChargeDensityField& field,
                                           const NuclearFrame& frame,
                                           const QuadratureGrid& grid) {
  if (field.spherical() && grid.scheme == GridScheme::radial_spherical) {
    const int nodes = static_cast<int>(grid.radial_nodes.size());
    double e = 0.0;
    for (const Nucleus& nuc : frame.nuclei()) {
      const double d = (nuc.position - field.center()).norm();
      e += nuc.charge * detail::spherical_potential_at(field, d, nodes, grid.map_radius);
    }
    return e;
  }
  if (grid.scheme == GridScheme::radial_spherical) {
    throw InvalidInputError("radial grid cannot integrate a non-spherical field");
  }
  return detail::point_integral(field, grid, [&frame](const Eigen::Vector3d& x) {
    double v = 0.0;
    for (const Nucleus& nuc : frame.nuclei()) {
      const double d = (x - nuc.position).norm();
      if (d > 1e-12) v += nuc.charge / d;
    }
    return v;
  });
}

/// Hellmann-Feynman electrostatic force on nucleus k: Coulomb forces from
/// the other nuclei plus the force exerted by the clamped charge cloud.
/// Spherical clouds reduce through the shell theorem (only the charge
/// enclosed within the nucleus' radius acts, as a point charge at the
/// center); general clouds integrate over the grid nodes.
inline Eigen::Vector3d hellmann_feynman_force(const ChargeDensityField& field,
                                              const NuclearFrame& frame, std::size_t k,
                                              const QuadratureGrid& grid) {
  if (k >= frame.size()) throw InvalidInputError("force: nucleus index out of range");
  const Nucleus& nuc = frame[k];
  Eigen::Vector3d f = Eigen::Vector3d::Zero();
  for (std::size_t l = 0; l < frame.size(); ++l) {
    if (l == k) continue;
    const Eigen::Vector3d d = nuc.position - frame[l].position;
    f += nuc.charge * frame[l].charge * d / std::pow(d.norm(), 3);
  }
  if (field.spherical() && grid.scheme == GridScheme::radial_spherical) {
    const Eigen::Vector3d d = nuc.position - field.center();
    const double dist = d.norm();
    if (dist > 1e-12) {
      const double q_enc = detail::spherical_enclosed_charge(
          field, dist, static_cast<int>(grid.radial_nodes.size()));
      f += nuc.charge * q_enc * d / (dist * dist * dist);
    }
  } else if (grid.scheme == GridScheme::radial_spherical) {
    throw InvalidInputError("radial grid cannot integrate a non-spherical field");
  } else {
    for (int c = 0; c < 3; ++c) {
      f[c] += nuc.charge *
              detail::point_integral(field, grid, [&nuc, c](const Eigen::Vector3d& x) {
                const Eigen::Vector3d d = nuc.position - x;
                const double dist = d.norm();
                return dist > 1e-12 ? d[c] / (dist * dist * dist) : 0.0;
              });
    }
  }
  return f;
}

struct NucleusForce {
  Eigen::Vector3d nuclear = Eigen::Vector3d::Zero();
  Eigen::Vector3d cloud = Eigen::Vector3d::Zero();
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
};

struct ForceReport {
  std::vector<NucleusForce> forces;  // hartree/bohr, one entry per nucleus
};

inline ForceReport hellmann_feynman_forces(const ChargeDensityField& field,
                                           const NuclearFrame& frame,
                                           const QuadratureGrid& grid) {
  ForceReport report;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    NucleusForce nf;
    nf.total = hellmann_feynman_force(field, frame, k, grid);
    for (std::size_t l = 0; l < frame.size(); ++l) {
      if (l == k) continue;
      const Eigen::Vector3d d = frame[k].position - frame[l].position;
      nf.nuclear += frame[k].charge * frame[l].charge * d / std::pow(d.norm(), 3);
    }
    nf.cloud = nf.total - nf.nuclear;
    report.forces.push_back(nf);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Scaled-constants thought experiment
// ---------------------------------------------------------------------------

/// Multipliers on the electron mass and on every charge.
struct ScaledConstants {
  double mass_factor = 1.0;
  double charge_factor = 1.0;
};

/// a0' / a0 = 1 / (mass_factor * charge_factor^2); the Bohr radius is
/// hbar^2 / (m e^2).
inline double bohr_radius_ratio(const ScaledConstants& sc) {
  if (!(sc.mass_factor > 0.0) || !(sc.charge_factor > 0.0)) {
    throw InvalidInputError("scaled constants must be positive");
  }
  return 1.0 / (sc.mass_factor * sc.charge_factor * sc.charge_factor);
}

struct ScaleExperimentReport {
  double mass_factor = 1.0;
  double charge_factor = 1.0;
  double bohr_radius_ratio = 1.0;
  double exponent_before = 1.0;  // 1/bohr, in pre-scaling units
  double exponent_after = 1.0;
  double rms_before = 0.0;  // bohr (pre-scaling a0)
  double rms_after = 0.0;
  double rms_ratio = 1.0;
  bool excited_after_scaling = false;
  double ground_state_overlap = 1.0;  // <1s_old|1s_new>
};

inline NuclearFrame hydrogen_frame() {
  return NuclearFrame({Nucleus{1.0, Eigen::Vector3d::Zero(), "H"}});
}

/// Stationary-state comparison for the hydrogen ground state when masses
/// and charges are rescaled: the new ground state is a 1s orbital with
/// exponent a0/a0', so the rms charge radius sqrt(3)*a0 grows by a0'/a0.
/// The pre-scaling ground state is no longer stationary whenever the ratio
/// moves, which the excited_after_scaling flag records.
inline ScaleExperimentReport scale_experiment(const ScaledConstants& sc,
                                              const NuclearFrame& frame = hydrogen_frame()) {
  if (frame.size() != 1 || std::abs(frame[0].charge - 1.0) > 1e-12) {
    throw InvalidInputError(
        "scale experiment requires a hydrogenic system (one electron, q = 1 nucleus)");
  }
  ScaleExperimentReport r;
  r.mass_factor = sc.mass_factor;
  r.charge_factor = sc.charge_factor;
  r.bohr_radius_ratio = bohr_radius_ratio(sc);
  r.exponent_before = 1.0;
  r.exponent_after = 1.0 / r.bohr_radius_ratio;
  r.rms_before = std::sqrt(3.0);
  r.rms_after = std::sqrt(3.0) * r.bohr_radius_ratio;
  r.rms_ratio = r.bohr_radius_ratio;
  r.excited_after_scaling = r.bohr_radius_ratio != 1.0;
  r.ground_state_overlap = sto::overlap_1s(r.exponent_before, r.exponent_after);
  return r;
}

}  // namespace cloudchem
