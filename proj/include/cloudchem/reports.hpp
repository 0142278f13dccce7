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
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudchem/constants.hpp"
#include "cloudchem/dft.hpp"
#include "cloudchem/electrostatics.hpp"
#include "cloudchem/hartree_fock.hpp"

namespace cloudchem {

enum class UnitPreference { hartree, ev, both };

inline UnitPreference unit_preference_by_name(const std::string& name) {
  if (name == "hartree") return UnitPreference::hartree;
  if (name == "ev") return UnitPreference::ev;
  if (name == "both") return UnitPreference::both;
  throw InvalidInputError("unknown unit preference '" + name + "'");
}

namespace detail {

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// One energy entry in flat form, honoring the unit preference.
inline void flat_energy_line(std::string& out, const char* key, double hartree,
                             UnitPreference units) {
  if (units != UnitPreference::ev) {
    out += std::string(key) + "_hartree = " + format_value(hartree) + '\n';
  }
  if (units != UnitPreference::hartree) {
    out += std::string(key) + "_ev = " + format_value(hartree * kHartreeToEv) + '\n';
  }
}

inline nlohmann::ordered_json energy_entry(double hartree) {
  return nlohmann::ordered_json{{"hartree", hartree}, {"ev", hartree * kHartreeToEv}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// EnergyReport
// ---------------------------------------------------------------------------

inline std::string to_flat(const EnergyReport& r, UnitPreference units = UnitPreference::both) {
  std::string out;
  detail::flat_energy_line(out, "kinetic", r.kinetic, units);
  detail::flat_energy_line(out, "nucleus_nucleus", r.nucleus_nucleus, units);
  detail::flat_energy_line(out, "electron_nucleus", r.electron_nucleus, units);
  detail::flat_energy_line(out, "electron_repulsion_total", r.electron_repulsion_total, units);
  detail::flat_energy_line(out, "self_repulsion", r.self_repulsion, units);
  detail::flat_energy_line(out, "exchange", r.exchange, units);
  detail::flat_energy_line(out, "coulomb_integral", r.coulomb_integral, units);
  detail::flat_energy_line(out, "total", r.total, units);
  return out;
}

inline nlohmann::ordered_json to_json(const EnergyReport& r) {
  nlohmann::ordered_json j;
  j["kinetic"] = detail::energy_entry(r.kinetic);
  j["nucleus_nucleus"] = detail::energy_entry(r.nucleus_nucleus);
  j["electron_nucleus"] = detail::energy_entry(r.electron_nucleus);
  j["electron_repulsion_total"] = detail::energy_entry(r.electron_repulsion_total);
  j["self_repulsion"] = detail::energy_entry(r.self_repulsion);
  j["exchange"] = detail::energy_entry(r.exchange);
  j["coulomb_integral"] = detail::energy_entry(r.coulomb_integral);
  j["total"] = detail::energy_entry(r.total);
  return j;
}

// ---------------------------------------------------------------------------
// KohnShamBreakdown
// ---------------------------------------------------------------------------

inline std::string to_flat(const KohnShamBreakdown& b, const std::string& xc_name,
                           UnitPreference units = UnitPreference::both) {
  std::string out = "xc_functional = " + xc_name + '\n';
  detail::flat_energy_line(out, "ts", b.ts, units);
  detail::flat_energy_line(out, "nucleus_nucleus", b.nucleus_nucleus, units);
  detail::flat_energy_line(out, "external", b.external, units);
  detail::flat_energy_line(out, "hartree_term", b.hartree_term, units);
  detail::flat_energy_line(out, "xc", b.xc, units);
  detail::flat_energy_line(out, "total", b.total, units);
  return out;
}

inline nlohmann::ordered_json to_json(const KohnShamBreakdown& b, const std::string& xc_name) {
  nlohmann::ordered_json j;
  j["xc_functional"] = xc_name;
  j["ts"] = detail::energy_entry(b.ts);
  j["nucleus_nucleus"] = detail::energy_entry(b.nucleus_nucleus);
  j["external"] = detail::energy_entry(b.external);
  j["hartree_term"] = detail::energy_entry(b.hartree_term);
  j["xc"] = detail::energy_entry(b.xc);
  j["total"] = detail::energy_entry(b.total);
  return j;
}

// ---------------------------------------------------------------------------
// ForceReport
// ---------------------------------------------------------------------------

inline std::string to_flat(const ForceReport& r) {
  std::string out;
  const char* axes = "xyz";
  for (std::size_t k = 0; k < r.forces.size(); ++k) {
    const NucleusForce& f = r.forces[k];
    for (int c = 0; c < 3; ++c) {
      const std::string prefix = "force_" + std::to_string(k) + '_';
      out += prefix + "nuclear_" + axes[c] + " = " + detail::format_value(f.nuclear[c]) + '\n';
      out += prefix + "cloud_" + axes[c] + " = " + detail::format_value(f.cloud[c]) + '\n';
      out += prefix + "total_" + axes[c] + " = " + detail::format_value(f.total[c]) + '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ForceReport& r) {
  nlohmann::ordered_json j;
  j["unit"] = "hartree/bohr";
  j["forces"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < r.forces.size(); ++k) {
    const NucleusForce& f = r.forces[k];
    j["forces"].push_back(
        {{"nucleus", k},
         {"nuclear", {f.nuclear.x(), f.nuclear.y(), f.nuclear.z()}},
         {"cloud", {f.cloud.x(), f.cloud.y(), f.cloud.z()}},
         {"total", {f.total.x(), f.total.y(), f.total.z()}}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Scale experiment
// ---------------------------------------------------------------------------

inline std::string to_flat(const ScaleExperimentReport& r) {
  std::string out;
  out += "mass_factor = " + detail::format_value(r.mass_factor) + '\n';
  out += "charge_factor = " + detail::format_value(r.charge_factor) + '\n';
  out += "bohr_radius_ratio = " + detail::format_value(r.bohr_radius_ratio) + '\n';
  out += "exponent_before = " + detail::format_value(r.exponent_before) + '\n';
  out += "exponent_after = " + detail::format_value(r.exponent_after) + '\n';
  out += "rms_before_bohr = " + detail::format_value(r.rms_before) + '\n';
  out += "rms_after_bohr = " + detail::format_value(r.rms_after) + '\n';
  out += "rms_ratio = " + detail::format_value(r.rms_ratio) + '\n';
  out += std::string("excited_after_scaling = ") + (r.excited_after_scaling ? "true" : "false") +
         '\n';
  out += "ground_state_overlap = " + detail::format_value(r.ground_state_overlap) + '\n';
  return out;
}

inline nlohmann::ordered_json to_json(const ScaleExperimentReport& r) {
  nlohmann::ordered_json j;
  j["mass_factor"] = r.mass_factor;
  j["charge_factor"] = r.charge_factor;
  j["bohr_radius_ratio"] = r.bohr_radius_ratio;
  j["exponent_before"] = r.exponent_before;
  j["exponent_after"] = r.exponent_after;
  j["rms_before_bohr"] = r.rms_before;
  j["rms_after_bohr"] = r.rms_after;
  j["rms_ratio"] = r.rms_ratio;
  j["excited_after_scaling"] = r.excited_after_scaling;
  j["ground_state_overlap"] = r.ground_state_overlap;
  return j;
}

// ---------------------------------------------------------------------------
// Radius / dipole
// ---------------------------------------------------------------------------

struct RadiusReport {
  double rms_bohr = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

inline std::string to_flat(const RadiusReport& r) {
  std::string out = "rms_bohr = " + detail::format_value(r.rms_bohr) + '\n';
  out += "center_x = " + detail::format_value(r.center.x()) + '\n';
  out += "center_y = " + detail::format_value(r.center.y()) + '\n';
  out += "center_z = " + detail::format_value(r.center.z()) + '\n';
  return out;
}

inline nlohmann::ordered_json to_json(const RadiusReport& r) {
  return nlohmann::ordered_json{{"rms_bohr", r.rms_bohr},
                                {"center_bohr", {r.center.x(), r.center.y(), r.center.z()}}};
}

struct DipoleReport {
  Eigen::Vector3d dipole = Eigen::Vector3d::Zero();  // e*bohr
};

inline std::string to_flat(const DipoleReport& r) {
  std::string out;
  out += "dipole_x = " + detail::format_value(r.dipole.x()) + '\n';
  out += "dipole_y = " + detail::format_value(r.dipole.y()) + '\n';
  out += "dipole_z = " + detail::format_value(r.dipole.z()) + '\n';
  out += "dipole_magnitude = " + detail::format_value(r.dipole.norm()) + '\n';
  return out;
}

inline nlohmann::ordered_json to_json(const DipoleReport& r) {
  return nlohmann::ordered_json{
      {"unit", "e*bohr"},
      {"dipole", {r.dipole.x(), r.dipole.y(), r.dipole.z()}},
      {"magnitude", r.dipole.norm()}};
}

// ---------------------------------------------------------------------------
// SCF trace
// ---------------------------------------------------------------------------

inline std::string to_flat(const std::vector<ScfIterate>& trace) {
  std::string out = "# iteration energy_hartree delta_energy max_density_change commutator_max\n";
  for (const ScfIterate& it : trace) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %.17g %.17g\n", it.iteration, it.energy,
                  it.delta_energy, it.max_density_change, it.commutator_max);
    out += buf;
  }
  return out;
}

inline std::string to_flat(const VariationalProbeReport& r) {
  std::string out;
  out += "perturbation_count = " + std::to_string(r.perturbation_count) + '\n';
  out += "scale = " + detail::format_value(r.scale) + '\n';
  out += "violations = " + std::to_string(r.violations) + '\n';
  out += "worst_delta_hartree = " + detail::format_value(r.worst_delta) + '\n';
  out += "mean_delta_hartree = " + detail::format_value(r.mean_delta) + '\n';
  out += "reference_energy_hartree = " + detail::format_value(r.reference_energy) + '\n';
  return out;
}

}  // namespace cloudchem
