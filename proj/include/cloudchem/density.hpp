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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cloudchem/constants.hpp"
#include "cloudchem/errors.hpp"
#include "cloudchem/parallel.hpp"
#include "cloudchem/quadrature.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

enum class DensityProvenance { determinant, explicit_pair, synthetic };

/// The Schroedinger charge density as a callable scalar field, in units of
/// e per bohr^3 (sign-carrying: electron charge is negative, so the field is
/// nonpositive everywhere).
///
/// Fields generated from single-center s-only states are spherically
/// symmetric and expose a radial fast path that the quadrature routines use
/// to integrate the angular part analytically.
class ChargeDensityField {
 public:
  ChargeDensityField(std::function<double(const Eigen::Vector3d&)> rho, int electron_count,
                     DensityProvenance provenance, std::vector<Eigen::Vector3d> centers)
      : rho_(std::move(rho)),
        electron_count_(electron_count),
        provenance_(provenance),
        centers_(std::move(centers)) {
    if (centers_.empty()) centers_.emplace_back(Eigen::Vector3d::Zero());
  }

  double operator()(const Eigen::Vector3d& x) const { return rho_(x); }
  int electron_count() const { return electron_count_; }
  DensityProvenance provenance() const { return provenance_; }

  bool spherical() const { return static_cast<bool>(radial_); }
  const Eigen::Vector3d& center() const { return centers_.front(); }
  double radial(double r) const { return radial_(r); }

  /// Cusp centers; drive the default atom-centered grid for non-spherical fields.
  const std::vector<Eigen::Vector3d>& centers() const { return centers_; }

  void set_radial(std::function<double(double)> radial) { radial_ = std::move(radial); }

  /// Values pre-evaluated on a box grid (explicit-pair fields cache their
  /// marginalization pass here).
  struct BoxCache {
    BoxGridSpec spec;
    std::vector<double> values;
  };
  void set_box_cache(BoxCache cache) { box_cache_ = std::move(cache); }
  const std::optional<BoxCache>& box_cache() const { return box_cache_; }

 private:
  std::function<double(const Eigen::Vector3d&)> rho_;
  int electron_count_;
  DensityProvenance provenance_;
  std::vector<Eigen::Vector3d> centers_;
  std::function<double(double)> radial_;
  std::optional<BoxCache> box_cache_;
};

namespace detail {
/// Positions of the centers actually referenced by the basis, in first-use order.
inline std::vector<Eigen::Vector3d> used_centers(const StoBasis& basis) {
  std::vector<std::size_t> seen;
  std::vector<Eigen::Vector3d> centers;
  for (const StoPrimitive& p : basis.primitives()) {
    bool dup = false;
    for (std::size_t s : seen) {
      if (s == p.center) dup = true;
    }
    if (!dup) {
      seen.push_back(p.center);
      centers.push_back(basis.centers()[p.center]);
    }
  }
  return centers;
}
}  // namespace detail

/// rho^q(x) = -sum_i |chi_i(x)|^2 over the determinant's spin orbitals.
inline ChargeDensityField density_from_determinant(const DeterminantWavefunction& wf) {
  std::vector<Eigen::Vector3d> centers = detail::used_centers(wf.basis());
  ChargeDensityField field(
      [wf](const Eigen::Vector3d& x) {
        double rho = 0.0;
        for (std::size_t i = 0; i < wf.orbitals().size(); ++i) {
          const double v = wf.orbital_value(i, x);
          rho -= v * v;
        }
        return rho;
      },
      wf.electron_count(), DensityProvenance::determinant, std::move(centers));
  if (wf.basis().single_center()) {
    field.set_radial([wf](double r) {
      double rho = 0.0;
      for (std::size_t i = 0; i < wf.orbitals().size(); ++i) {
        const double v = wf.orbital_value_radial(i, r);
        rho -= v * v;
      }
      return rho;
    });
  }
  return field;
}

/// Charge density of one spin orbital of a determinant (one electron).
inline ChargeDensityField single_orbital_density(const DeterminantWavefunction& wf,
                                                 std::size_t orbital) {
  std::vector<Eigen::Vector3d> centers = detail::used_centers(wf.basis());
  ChargeDensityField field(
      [wf, orbital](const Eigen::Vector3d& x) {
        const double v = wf.orbital_value(orbital, x);
        return -v * v;
      },
      1, DensityProvenance::determinant, std::move(centers));
  if (wf.basis().single_center()) {
    field.set_radial([wf, orbital](double r) {
      const double v = wf.orbital_value_radial(orbital, r);
      return -v * v;
    });
  }
  return field;
}

// ---------------------------------------------------------------------------
// Explicit two-electron amplitudes
// ---------------------------------------------------------------------------

enum class PairSymmetry { symmetric, antisymmetric };

/// A real two-electron spatial amplitude with the box grid it is
/// normalized on, plus the declared exchange symmetry of the spatial part.
struct ExplicitPairState {
  std::function<double(const Eigen::Vector3d&, const Eigen::Vector3d&)> amplitude;
  BoxGridSpec grid;
  PairSymmetry symmetry = PairSymmetry::symmetric;
};

/// Marginal |psi|^2 with coordinate `which` held at x and the other
/// integrated over the pair's grid. Exposed so the summed-contribution form
/// of the density can be checked against the equal-terms shortcut.
inline double pair_marginal(const ExplicitPairState& pair, int which,
                            const Eigen::Vector3d& x) {
  const QuadratureGrid g = make_box_grid(pair.grid);
  double m = 0.0;
  for (std::size_t j = 0; j < g.points.size(); ++j) {
    const double a = which == 0 ? pair.amplitude(x, g.points[j])
                                : pair.amplitude(g.points[j], x);
    m += g.weights[j] * a * a;
  }
  return m;
}

/// Charge density of an explicit pair via the equal-terms reduction
/// rho^q(x) = -2 e * integral |psi(x, x2)|^2 d^3x2 (valid for symmetric and
/// antisymmetric spatial parts alike). One full marginalization pass over
/// the grid checks normalization and is cached for grid integrals.
inline ChargeDensityField density_from_explicit_pair(const ExplicitPairState& pair) {
  const QuadratureGrid g = make_box_grid(pair.grid);
  const std::size_t m = g.points.size();
  std::vector<double> marginal(m, 0.0);
  parallel_for(m, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = pair.amplitude(g.points[i], g.points[j]);
      acc += g.weights[j] * a * a;
    }
    marginal[i] = acc;
  });
  double norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) norm += g.weights[i] * marginal[i];
  if (std::abs(norm - 1.0) > 1e-6) {
    throw InvalidInputError("explicit pair amplitude is not normalized on its grid (|psi|^2 = " +
                            std::to_string(norm) + ")");
  }
  ChargeDensityField field(
      [pair](const Eigen::Vector3d& x) { return -2.0 * pair_marginal(pair, 0, x); }, 2,
      DensityProvenance::explicit_pair, {pair.grid.center});
  ChargeDensityField::BoxCache cache{pair.grid, std::move(marginal)};
  for (double& v : cache.values) v *= -2.0;
  field.set_box_cache(std::move(cache));
  return field;
}

/// Synthetic field from an arbitrary evaluator (test scaffolding and loaded
/// analytic densities).
inline ChargeDensityField make_synthetic_field(
    std::function<double(const Eigen::Vector3d&)> rho, int electron_count,
    std::vector<Eigen::Vector3d> centers = {Eigen::Vector3d::Zero()}) {
  return ChargeDensityField(std::move(rho), electron_count, DensityProvenance::synthetic,
                            std::move(centers));
}

// ---------------------------------------------------------------------------
// Expected number density
// ---------------------------------------------------------------------------

/// Pointwise rho^q / (-e); nonnegative, integrates to the electron count.
class NumberDensityField {
 public:
  explicit NumberDensityField(ChargeDensityField field) : field_(std::move(field)) {}
  double operator()(const Eigen::Vector3d& x) const { return -field_(x); }
  double radial(double r) const { return -field_.radial(r); }
  bool spherical() const { return field_.spherical(); }
  int electron_count() const { return field_.electron_count(); }
  const ChargeDensityField& charge_field() const { return field_; }

 private:
  ChargeDensityField field_;
};

inline NumberDensityField expected_number_density(const ChargeDensityField& field) {
  return NumberDensityField(field);
}

// ---------------------------------------------------------------------------
// Grid integrals
// ---------------------------------------------------------------------------

namespace detail {

/// Shell integral 4*pi * sum w r^2 rho(r) g(r) for spherical fields.
template <typename G>
double radial_shell_integral(const ChargeDensityField& field, const QuadratureGrid& grid,
                             G&& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
    const double r = grid.radial_nodes[i];
    acc += grid.radial_weights[i] * 4.0 * kPi * r * r * field.radial(r) * g(r);
  }
  return acc;
}

inline bool cache_matches(const ChargeDensityField& field, const QuadratureGrid& grid) {
  if (grid.scheme != GridScheme::uniform_box || !field.box_cache()) return false;
  const BoxGridSpec& a = field.box_cache()->spec;
  const BoxGridSpec& b = grid.box;
  return a.nx == b.nx && a.ny == b.ny && a.nz == b.nz && a.halfwidth == b.halfwidth &&
         a.center.x() == b.center.x() && a.center.y() == b.center.y() &&
         a.center.z() == b.center.z();
}

/// Generic 3D node sum of w * rho(x) * g(x).
template <typename G>
double point_integral(const ChargeDensityField& field, const QuadratureGrid& grid, G&& g) {
  if (cache_matches(field, grid)) {
    const auto& vals = field.box_cache()->values;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
      acc += grid.weights[i] * vals[i] * g(grid.points[i]);
    }
    return acc;
  }
  std::vector<double> contrib(grid.points.size());
  parallel_for(grid.points.size(), [&](std::size_t i) {
    contrib[i] = grid.weights[i] * field(grid.points[i]) * g(grid.points[i]);
  });
  double acc = 0.0;
  for (double v : contrib) acc += v;
  return acc;
}

}  // namespace detail

/// Default quadrature for a field: its radial grid when spherical, an
/// atom-centered grid over its cusp centers otherwise.
inline QuadratureGrid default_quadrature(const ChargeDensityField& field,
                                         int radial_nodes = 96) {
  if (field.spherical()) return make_radial_grid(field.center(), radial_nodes);
  return make_becke_grid(field.centers(), radial_nodes, 32, 64);
}

/// Integral of rho^q d^3x in units of e; -N within quadrature tolerance.
inline double total_charge(const ChargeDensityField& field, const QuadratureGrid& grid) {
  if (grid.scheme == GridScheme::radial_spherical) {
    if (!field.spherical()) {
      throw InvalidInputError("radial grid cannot integrate a non-spherical field");
    }
    return detail::radial_shell_integral(field, grid, [](double) { return 1.0; });
  }
  return detail::point_integral(field, grid, [](const Eigen::Vector3d&) { return 1.0; });
}

/// Charge-weighted centroid of the field.
inline Eigen::Vector3d charge_centroid(const ChargeDensityField& field,
                                       const QuadratureGrid& grid) {
  if (field.spherical()) return field.center();
  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  for (int c = 0; c < 3; ++c) {
    first[c] = detail::point_integral(field, grid,
                                      [c](const Eigen::Vector3d& x) { return x[c]; });
  }
  const double q = total_charge(field, grid);
  if (std::abs(q) < 1e-14) throw InvalidInputError("centroid of a zero-charge field");
  return first / q;
}

/// Root-mean-square charge radius about `center` (default: the
/// charge-weighted centroid): sqrt(integral (rho/-Ne) |x-center|^2).
inline double rms_charge_radius(const ChargeDensityField& field, const QuadratureGrid& grid,
                                std::optional<Eigen::Vector3d> center = std::nullopt) {
  const int n = field.electron_count();
  if (n == 0) throw InvalidInputError("rms radius of a zero-charge field");
  double second;
  if (field.spherical() && grid.scheme == GridScheme::radial_spherical) {
    const Eigen::Vector3d c = center.value_or(field.center());
    // |x-c|^2 = r^2 + 2 r.(c0-c) + |c0-c|^2 about the field center c0; the
    // cross term integrates to zero for spherical densities.
    const double shift2 = (field.center() - c).squaredNorm();
    const double m2 =
        detail::radial_shell_integral(field, grid, [](double r) { return r * r; });
    const double q =
        detail::radial_shell_integral(field, grid, [](double) { return 1.0; });
    second = m2 + shift2 * q;
  } else {
    const Eigen::Vector3d c = center.value_or(charge_centroid(field, grid));
    second = detail::point_integral(
        field, grid, [&c](const Eigen::Vector3d& x) { return (x - c).squaredNorm(); });
  }
  return std::sqrt(second / static_cast<double>(-n));
}

/// Classical dipole of the nuclei plus the electron cloud,
/// sum_k q_k r_k + integral x rho^q(x) d^3x, in e*bohr.
inline Eigen::Vector3d dipole_moment(const ChargeDensityField& field,
                                     const NuclearFrame& frame, const QuadratureGrid& grid) {
  Eigen::Vector3d mu = Eigen::Vector3d::Zero();
  for (const Nucleus& nuc : frame.nuclei()) mu += nuc.charge * nuc.position;
  if (field.spherical() && grid.scheme == GridScheme::radial_spherical) {
    // integral x rho = center * total charge for a spherical cloud
    mu += field.center() * total_charge(field, grid);
  } else {
    for (int c = 0; c < 3; ++c) {
      mu[c] += detail::point_integral(field, grid,
                                      [c](const Eigen::Vector3d& x) { return x[c]; });
    }
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Grid export
// ---------------------------------------------------------------------------

enum class ExportFormat { csv, plane_slice_csv };

struct SliceSpec {
  int axis = 2;        // 0 = x, 1 = y, 2 = z
  double value = 0.0;  // plane coordinate along that axis, bohr
};

struct ExportResult {
  std::string data_path;
  std::string sidecar_path;
  std::size_t rows = 0;
  double integrated_charge = 0.0;  // full-box export only
};

/// Writes the field on a box grid as CSV (`x,y,z,rho`, voxel order
/// x-major), or a plane slice (`u,v,rho`). A sidecar JSON records the grid
/// spec, electron count, the box-integrated total charge and the toolkit
/// version; the sidecar is the only output that carries a timestamp.
inline ExportResult export_grid(const ChargeDensityField& field, const BoxGridSpec& spec,
                                ExportFormat format, const std::string& data_path,
                                const std::string& sidecar_path,
                                const SliceSpec& slice = SliceSpec{}) {
  if (spec.nx <= 0 || spec.ny <= 0 || spec.nz <= 0) {
    throw InvalidInputError("export grid: zero-resolution axis");
  }
  std::ofstream out(data_path);
  if (!out) throw Error("cannot open '" + data_path + "' for writing");
  char buf[128];
  ExportResult result;
  result.data_path = data_path;
  result.sidecar_path = sidecar_path;

  const QuadratureGrid grid = make_box_grid(spec);
  // Full-box integrated charge is reported alongside either format.
  std::vector<double> values(grid.points.size());
  parallel_for(grid.points.size(), [&](std::size_t i) { values[i] = field(grid.points[i]); });
  double q = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) q += grid.weights[i] * values[i];
  result.integrated_charge = q;

  if (format == ExportFormat::csv) {
    out << "x,y,z,rho\n";
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", grid.points[i].x(),
                    grid.points[i].y(), grid.points[i].z(), values[i]);
      out << buf;
      ++result.rows;
    }
  } else {
    if (slice.axis < 0 || slice.axis > 2) throw InvalidInputError("slice axis must be 0..2");
    const int ua = (slice.axis + 1) % 3;
    const int va = (slice.axis + 2) % 3;
    const int nu = (ua == 0 ? spec.nx : ua == 1 ? spec.ny : spec.nz);
    const int nv = (va == 0 ? spec.nx : va == 1 ? spec.ny : spec.nz);
    out << "u,v,rho\n";
    for (int iu = 0; iu < nu; ++iu) {
      for (int iv = 0; iv < nv; ++iv) {
        Eigen::Vector3d x = spec.center;
        x[slice.axis] = slice.value;
        x[ua] = spec.center[ua] - spec.halfwidth + (iu + 0.5) * 2.0 * spec.halfwidth / nu;
        x[va] = spec.center[va] - spec.halfwidth + (iv + 0.5) * 2.0 * spec.halfwidth / nv;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x[ua], x[va], field(x));
        out << buf;
        ++result.rows;
      }
    }
  }
  out.close();
  if (!out) throw Error("failed writing '" + data_path + "'");

  nlohmann::ordered_json meta;
  meta["format"] = format == ExportFormat::csv ? "csv" : "plane-slice-csv";
  meta["columns"] = format == ExportFormat::csv ? "x,y,z,rho" : "u,v,rho";
  meta["grid"] = {{"nx", spec.nx},
                  {"ny", spec.ny},
                  {"nz", spec.nz},
                  {"halfwidth_bohr", spec.halfwidth},
                  {"center_bohr", {spec.center.x(), spec.center.y(), spec.center.z()}}};
  if (format == ExportFormat::plane_slice_csv) {
    meta["slice"] = {{"axis", slice.axis}, {"value_bohr", slice.value}};
  }
  meta["electron_count"] = field.electron_count();
  meta["box_integrated_charge_e"] = result.integrated_charge;
  meta["toolkit_version"] = kVersion;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
  meta["created_utc"] = stamp;
  std::ofstream side(sidecar_path);
  if (!side) throw Error("cannot open '" + sidecar_path + "' for writing");
  side << meta.dump(2) << '\n';
  return result;
}

}  // namespace cloudchem
