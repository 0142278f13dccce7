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

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cloudchem/cloudchem.hpp"

namespace fs = std::filesystem;
using namespace cloudchem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitQuadratureFailure = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

struct CommonOptions {
  std::string geometry_path, basis_path, orbitals_path;
  std::string out_dir = ".";
  std::string units = "both";
  int radial_nodes = 96;
};

struct ScfOptions {
  int electrons = 0;
  int max_iter = 200;
  double etol = 1e-10;
  double dtol = 1e-8;
  double damping = 0.3;
};

struct Loaded {
  NuclearFrame frame;
  StoBasis basis;
};

Loaded load_system(const CommonOptions& opt) {
  if (opt.geometry_path.empty()) throw InvalidInputError("--geometry is required");
  if (opt.basis_path.empty()) throw InvalidInputError("--basis is required");
  NuclearFrame frame = parse_geometry(read_file(opt.geometry_path));
  StoBasis basis = parse_basis(read_file(opt.basis_path), frame);
  return Loaded{std::move(frame), std::move(basis)};
}

DeterminantWavefunction load_wavefunction(const CommonOptions& opt, const StoBasis& basis) {
  if (opt.orbitals_path.empty()) throw InvalidInputError("--orbitals is required");
  return parse_orbitals(read_file(opt.orbitals_path), basis);
}

std::string out_path(const CommonOptions& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  return (fs::path(opt.out_dir) / name).string();
}

BoxGridSpec parse_grid_spec(const std::string& spec) {
  BoxGridSpec g;
  char comma = ',';
  std::istringstream ss(spec);
  if (!(ss >> g.nx >> comma >> g.ny >> comma >> g.nz >> comma >> g.halfwidth)) {
    throw InvalidInputError("--grid expects \"nx,ny,nz,halfwidth\", got '" + spec + "'");
  }
  return g;
}

/// Recomputes a quadrature-based value on a refined grid; mismatch beyond
/// the tolerance is a quadrature failure (exit 3), reported with the finer
/// estimate.
template <typename F>
double checked_quadrature(const ChargeDensityField& field, int radial_nodes, F&& evaluate,
                          const char* what) {
  const QuadratureGrid coarse = default_quadrature(field, radial_nodes);
  const QuadratureGrid fine = default_quadrature(field, radial_nodes + radial_nodes / 2);
  const double v = evaluate(coarse);
  const double r = evaluate(fine);
  if (std::abs(v - r) > 1e-8 * std::max(1.0, std::abs(r))) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge (" +
                              std::to_string(v) + " vs refined " + std::to_string(r) + ")",
                          r);
  }
  return r;
}

int run_scf(const CommonOptions& common, const ScfOptions& scf) {
  const Loaded sys = load_system(common);
  if (scf.electrons <= 0) throw InvalidInputError("--electrons is required and positive");
  ScfSettings settings;
  settings.max_iterations = scf.max_iter;
  settings.energy_tolerance = scf.etol;
  settings.density_tolerance = scf.dtol;
  settings.damping = scf.damping;
  const ScfResult result = scf_solve(sys.frame, sys.basis, scf.electrons, settings);

  write_file(out_path(common, "scf_trace.txt"), to_flat(result.trace));
  if (!result.converged) {
    std::cerr << "scf did not converge within " << scf.max_iter << " iterations\n";
    return kExitNoConvergence;
  }
  const UnitPreference units = unit_preference_by_name(common.units);
  write_file(out_path(common, "orbitals.orb"), serialize_orbitals(result.wavefunction));
  const std::string flat = to_flat(result.energy, units);
  write_file(out_path(common, "energy_report.txt"), flat);
  write_file(out_path(common, "energy_report.json"), to_json(result.energy).dump(2) + "\n");
  std::cout << "converged in " << result.iterations << " iterations\n" << flat;
  return kExitOk;
}

int run_energy(const CommonOptions& common) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const EnergyReport report = decompose_energy(sys.frame, wf);
  const UnitPreference units = unit_preference_by_name(common.units);
  const std::string flat = to_flat(report, units);
  write_file(out_path(common, "energy_report.txt"), flat);
  write_file(out_path(common, "energy_report.json"), to_json(report).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

int run_density(const CommonOptions& common, const std::string& grid_spec,
                const std::string& format, const std::string& slice_axis,
                double slice_value) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const ChargeDensityField field = density_from_determinant(wf);
  if (grid_spec.empty()) throw InvalidInputError("--grid is required for density export");
  const BoxGridSpec box = parse_grid_spec(grid_spec);

  ExportFormat fmt;
  std::string data_name;
  if (format == "csv") {
    fmt = ExportFormat::csv;
    data_name = "density.csv";
  } else if (format == "slice") {
    fmt = ExportFormat::plane_slice_csv;
    data_name = "density_slice.csv";
  } else {
    throw InvalidInputError("--format must be csv or slice");
  }
  SliceSpec slice;
  if (slice_axis == "x") {
    slice.axis = 0;
  } else if (slice_axis == "y") {
    slice.axis = 1;
  } else if (slice_axis == "z") {
    slice.axis = 2;
  } else {
    throw InvalidInputError("--slice-axis must be x, y or z");
  }
  slice.value = slice_value;

  const ExportResult result =
      export_grid(field, box, fmt, out_path(common, data_name),
                  out_path(common, "density_meta.json"), slice);
  std::cout << "rows = " << result.rows << '\n'
            << "box_integrated_charge_e = " << result.integrated_charge << '\n';
  return kExitOk;
}

int run_radius(const CommonOptions& common) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const ChargeDensityField field = density_from_determinant(wf);
  RadiusReport report;
  report.center = field.spherical()
                      ? field.center()
                      : charge_centroid(field, default_quadrature(field, common.radial_nodes));
  report.rms_bohr = checked_quadrature(
      field, common.radial_nodes,
      [&](const QuadratureGrid& g) { return rms_charge_radius(field, g); }, "rms radius");
  const std::string flat = to_flat(report);
  write_file(out_path(common, "radius_report.txt"), flat);
  write_file(out_path(common, "radius_report.json"), to_json(report).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

int run_dipole(const CommonOptions& common) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const ChargeDensityField field = density_from_determinant(wf);
  DipoleReport report;
  for (int c = 0; c < 3; ++c) {
    report.dipole[c] = checked_quadrature(
        field, common.radial_nodes,
        [&](const QuadratureGrid& g) { return dipole_moment(field, sys.frame, g)[c]; },
        "dipole");
  }
  const std::string flat = to_flat(report);
  write_file(out_path(common, "dipole_report.txt"), flat);
  write_file(out_path(common, "dipole_report.json"), to_json(report).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

int run_forces(const CommonOptions& common) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const ChargeDensityField field = density_from_determinant(wf);
  // convergence check on the total force of each nucleus
  for (std::size_t k = 0; k < sys.frame.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      checked_quadrature(
          field, common.radial_nodes,
          [&](const QuadratureGrid& g) {
            return hellmann_feynman_force(field, sys.frame, k, g)[c];
          },
          "force");
    }
  }
  const ForceReport report = hellmann_feynman_forces(
      field, sys.frame, default_quadrature(field, common.radial_nodes));
  const std::string flat = to_flat(report);
  write_file(out_path(common, "force_report.txt"), flat);
  write_file(out_path(common, "force_report.json"), to_json(report).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

int run_dft(const CommonOptions& common, const std::string& xc_name, bool sic) {
  const Loaded sys = load_system(common);
  const DeterminantWavefunction wf = load_wavefunction(common, sys.basis);
  const XcFunctional xc = xc_functional_by_name(xc_name);
  const ChargeDensityField field = density_from_determinant(wf);
  const double total = checked_quadrature(
      field, common.radial_nodes,
      [&](const QuadratureGrid& g) {
        return kohn_sham_energy(wf, sys.frame, xc, g, sic).total;
      },
      "kohn-sham energy");
  (void)total;
  const KohnShamBreakdown breakdown = kohn_sham_energy(
      wf, sys.frame, xc, default_quadrature(field, common.radial_nodes), sic);
  const std::string name = sic ? xc.name + "+sic" : xc.name;
  const UnitPreference units = unit_preference_by_name(common.units);
  const std::string flat = to_flat(breakdown, name, units);
  write_file(out_path(common, "ks_report.txt"), flat);
  write_file(out_path(common, "ks_report.json"), to_json(breakdown, name).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

int run_scale(const CommonOptions& common, double mass, double charge) {
  ScaledConstants sc{mass, charge};
  ScaleExperimentReport report;
  if (!common.geometry_path.empty()) {
    report = scale_experiment(sc, parse_geometry(read_file(common.geometry_path)));
  } else {
    report = scale_experiment(sc);
  }
  const std::string flat = to_flat(report);
  write_file(out_path(common, "scale_report.txt"), flat);
  write_file(out_path(common, "scale_report.json"), to_json(report).dump(2) + "\n");
  std::cout << flat;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cloudchem - ground-state wavefunctions, charge densities and "
               "electrostatic analysis for small atoms over Slater-type orbitals"};
  app.require_subcommand(1);

  CommonOptions common;
  ScfOptions scf;
  std::string grid_spec, format = "csv", slice_axis = "z", xc_name = "none";
  double slice_value = 0.0, mass = 1.0, charge = 1.0;
  bool sic = false;

  auto add_common = [&](CLI::App* cmd, bool orbitals) {
    cmd->add_option("--geometry", common.geometry_path, "geometry file (label charge x y z)");
    cmd->add_option("--basis", common.basis_path, "basis file (center_index zeta)");
    if (orbitals) cmd->add_option("--orbitals", common.orbitals_path, "orbital file");
    cmd->add_option("--units", common.units, "report units: hartree, ev or both");
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_option("--radial-nodes", common.radial_nodes,
                    "radial quadrature nodes (default 96)");
  };

  CLI::App* c_scf = app.add_subcommand("scf", "restricted closed-shell SCF");
  add_common(c_scf, false);
  c_scf->add_option("--electrons", scf.electrons, "even electron count")->required();
  c_scf->add_option("--max-iter", scf.max_iter, "iteration cap");
  c_scf->add_option("--etol", scf.etol, "energy tolerance, hartree");
  c_scf->add_option("--dtol", scf.dtol, "density-change tolerance");
  c_scf->add_option("--damping", scf.damping, "density mixing in [0,1)");

  CLI::App* c_energy = app.add_subcommand("energy", "energy decomposition of given orbitals");
  add_common(c_energy, true);

  CLI::App* c_density = app.add_subcommand("density", "charge density grid export");
  add_common(c_density, true);
  c_density->add_option("--grid", grid_spec, "box grid \"nx,ny,nz,halfwidth\"")->required();
  c_density->add_option("--format", format, "csv or slice");
  c_density->add_option("--slice-axis", slice_axis, "x, y or z");
  c_density->add_option("--slice-value", slice_value, "plane coordinate, bohr");

  CLI::App* c_radius = app.add_subcommand("radius", "rms charge radius");
  add_common(c_radius, true);

  CLI::App* c_dipole = app.add_subcommand("dipole", "classical dipole moment");
  add_common(c_dipole, true);

  CLI::App* c_forces = app.add_subcommand("forces", "Hellmann-Feynman forces on nuclei");
  add_common(c_forces, true);

  CLI::App* c_dft = app.add_subcommand("dft", "Kohn-Sham energy evaluation");
  add_common(c_dft, true);
  c_dft->add_option("--xc", xc_name, "none, lda-exchange or exact-from-hf");
  c_dft->add_flag("--sic", sic, "apply the Perdew-Zunger self-interaction correction");

  CLI::App* c_scale = app.add_subcommand("scale", "scaled-constants experiment");
  add_common(c_scale, false);
  c_scale->add_option("--mass", mass, "electron mass multiplier")->required();
  c_scale->add_option("--charge", charge, "charge multiplier")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (c_scf->parsed()) return run_scf(common, scf);
    if (c_energy->parsed()) return run_energy(common);
    if (c_density->parsed())
      return run_density(common, grid_spec, format, slice_axis, slice_value);
    if (c_radius->parsed()) return run_radius(common);
    if (c_dipole->parsed()) return run_dipole(common);
    if (c_forces->parsed()) return run_forces(common);
    if (c_dft->parsed()) return run_dft(common, xc_name, sic);
    if (c_scale->parsed()) return run_scale(common, mass, charge);
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << '\n';
    return kExitQuadratureFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
