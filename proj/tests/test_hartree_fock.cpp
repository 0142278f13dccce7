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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "cloudchem/cloudchem.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace cloudchem;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

void check_report_identities(const EnergyReport& r) {
  CHECK_THAT(r.total, WithinAbs(r.kinetic + r.nucleus_nucleus + r.electron_nucleus +
                                    r.electron_repulsion_total - r.self_repulsion - r.exchange,
                                1e-12));
  CHECK_THAT(r.coulomb_integral, WithinAbs(r.electron_repulsion_total - r.self_repulsion,
                                           1e-12));
  CHECK(r.kinetic > 0.0);
  CHECK(r.exchange >= 0.0);
  CHECK(r.self_repulsion > 0.0);
}

StoBasis single_zeta_basis(double zeta) {
  std::vector<Eigen::Vector3d> centers{Eigen::Vector3d::Zero()};
  return StoBasis({StoPrimitive{zeta, 0}}, centers);
}

}  // namespace

TEST_CASE("minimal-basis helium matches the scalar closed form") {
  const NuclearFrame he = helpers::helium_frame();
  for (double zeta : {27.0 / 16.0, 1.0, 1.2, 2.4}) {
    const ScfResult scf = scf_solve(he, single_zeta_basis(zeta), 2);
    REQUIRE(scf.converged);
    CHECK_THAT(scf.energy.total,
               WithinAbs(oracles::two_electron_single_zeta_energy(zeta, 2.0), 1e-10));
    check_report_identities(scf.energy);
  }
  // at the optimum zeta = 27/16 the energy is -(27/16)^2
  const ScfResult opt = scf_solve(he, single_zeta_basis(27.0 / 16.0), 2);
  CHECK_THAT(opt.energy.total, WithinAbs(-2.84765625, 1e-10));
}

TEST_CASE("helium golden run") {
  const ScfResult scf = helpers::helium_scf();
  REQUIRE(scf.converged);
  const EnergyReport& e = scf.energy;

  SECTION("the five-contribution breakdown in eV") {
    CHECK_THAT(e.electron_nucleus * kHartreeToEv, WithinAbs(-183.7, 0.1));
    CHECK_THAT(e.electron_repulsion_total * kHartreeToEv, WithinAbs(83.7, 0.1));
    CHECK_THAT(0.5 * e.self_repulsion * kHartreeToEv, WithinAbs(27.9, 0.1));
    CHECK_THAT(e.kinetic * kHartreeToEv, WithinAbs(77.9, 0.1));
    CHECK(e.exchange == 0.0);
    CHECK(e.nucleus_nucleus == 0.0);
    CHECK_THAT(e.total * kHartreeToEv, WithinAbs(-77.9, 0.1));
    check_report_identities(e);
  }

  SECTION("coefficients match the literature values") {
    const double expected[5] = {0.76838, 0.22346, 0.04082, -0.00994, 0.00230};
    const Eigen::VectorXd& c = scf.wavefunction.orbitals()[0].coefficients;
    for (int i = 0; i < 5; ++i) {
      CHECK_THAT(std::abs(c[i]), WithinAbs(std::abs(expected[i]), 5e-3));
      // largest-coefficient-positive orientation reproduces the sign pattern
      CHECK(std::signbit(c[i]) == std::signbit(expected[i]));
    }
  }

  SECTION("both spin orbitals share the spatial coefficients") {
    REQUIRE(scf.wavefunction.electron_count() == 2);
    CHECK((scf.wavefunction.orbitals()[0].coefficients.array() ==
           scf.wavefunction.orbitals()[1].coefficients.array())
              .all());
    CHECK(scf.wavefunction.orbitals()[0].spin != scf.wavefunction.orbitals()[1].spin);
  }
}

TEST_CASE("scf control flow") {
  const NuclearFrame he = helpers::helium_frame();
  const StoBasis basis = helpers::helium_basis();

  SECTION("a single iteration cannot converge helium from the core guess") {
    ScfSettings settings;
    settings.max_iterations = 1;
    const ScfResult scf = scf_solve(he, basis, 2, settings);
    CHECK_FALSE(scf.converged);
    CHECK(scf.trace.size() == 1);
    check_report_identities(scf.energy);  // identities hold for the non-converged iterate
  }

  SECTION("seeding from a converged solution converges in one iteration") {
    const ScfResult first = helpers::helium_scf();
    REQUIRE(first.converged);
    ScfSettings settings;
    settings.initial_orbitals =
        std::vector<Eigen::VectorXd>{first.wavefunction.orbitals()[0].coefficients};
    const ScfResult second = scf_solve(he, basis, 2, settings);
    CHECK(second.converged);
    CHECK(second.iterations == 1);
    CHECK_THAT(second.energy.total,
               WithinAbs(first.energy.total, settings.energy_tolerance));
  }

  SECTION("energy trace is non-increasing under the default damping") {
    const ScfResult scf = helpers::helium_scf();
    for (std::size_t i = 1; i < scf.trace.size(); ++i) {
      CHECK(scf.trace[i].energy <= scf.trace[i - 1].energy + 1e-12);
    }
    // every recorded step also reports the stationarity residual
    CHECK(scf.trace.back().commutator_max < 1e-8);
  }

  SECTION("input validation") {
    CHECK_THROWS_AS(scf_solve(he, basis, 3), InvalidInputError);   // odd count
    CHECK_THROWS_AS(scf_solve(he, basis, 0), InvalidInputError);
    CHECK_THROWS_AS(scf_solve(he, single_zeta_basis(1.0), 4), InvalidInputError);
    ScfSettings bad;
    bad.damping = 1.0;
    CHECK_THROWS_AS(scf_solve(he, basis, 2, bad), InvalidInputError);
    bad = ScfSettings{};
    bad.energy_tolerance = 0.0;
    CHECK_THROWS_AS(scf_solve(he, basis, 2, bad), InvalidInputError);
    // linearly dependent basis
    std::vector<Eigen::Vector3d> centers{Eigen::Vector3d::Zero()};
    const StoBasis dependent({StoPrimitive{1.0, 0}, StoPrimitive{1.0, 0}}, centers);
    CHECK_THROWS_AS(scf_solve(he, dependent, 2), LinearDependenceError);
  }
}

TEST_CASE("energy decomposition properties") {
  SECTION("one-electron systems have no net electron repulsion") {
    const DeterminantWavefunction wf = helpers::hydrogenic_state(1.0);
    const EnergyReport r = decompose_energy(helpers::hydrogen_frame(), wf);
    CHECK(r.electron_repulsion_total - r.self_repulsion == 0.0);
    CHECK(r.coulomb_integral == 0.0);
    CHECK(r.exchange == 0.0);
    CHECK_THAT(r.total, WithinAbs(oracles::hydrogenic_energy(1.0, 1.0), 1e-12));
  }

  SECTION("paired two-electron determinants have zero exchange") {
    const EnergyReport r = decompose_energy(helpers::helium_frame(), helpers::paired_state(1.6));
    CHECK(r.exchange == 0.0);
    check_report_identities(r);
  }

  SECTION("four-electron closed shell has positive exchange") {
    const NuclearFrame be = parse_geometry("Be 4.0 0 0 0");
    const StoBasis basis = parse_basis("0 3.5\n0 2.0\n0 1.0\n0 0.6", be);
    const ScfResult scf = scf_solve(be, basis, 4);
    REQUIRE(scf.converged);
    CHECK(scf.energy.exchange > 0.0);
    CHECK(scf.energy.coulomb_integral > 0.0);
    check_report_identities(scf.energy);
    // the trace stays non-increasing here as well
    for (std::size_t i = 1; i < scf.trace.size(); ++i) {
      CHECK(scf.trace[i].energy <= scf.trace[i - 1].energy + 1e-12);
    }
  }

  SECTION("expectation energy equals the decomposition total") {
    const ScfResult scf = helpers::helium_scf();
    CHECK_THAT(expectation_energy(helpers::helium_frame(), scf.wavefunction),
               WithinAbs(scf.energy.total, 1e-12));
  }

  SECTION("flipping the global sign of any orbital changes nothing") {
    const ScfResult scf = helpers::helium_scf();
    const EnergyReport base = scf.energy;
    for (std::size_t flip = 0; flip < 2; ++flip) {
      std::vector<SpinOrbital> orbs = scf.wavefunction.orbitals();
      orbs[flip].coefficients = -orbs[flip].coefficients;
      const EnergyReport r = decompose_energy(
          helpers::helium_frame(), DeterminantWavefunction(scf.wavefunction.basis(), orbs));
      CHECK(r.kinetic == base.kinetic);
      CHECK(r.nucleus_nucleus == base.nucleus_nucleus);
      CHECK(r.electron_nucleus == base.electron_nucleus);
      CHECK(r.electron_repulsion_total == base.electron_repulsion_total);
      CHECK(r.self_repulsion == base.self_repulsion);
      CHECK(r.exchange == base.exchange);
      CHECK(r.total == base.total);
    }
  }
}

TEST_CASE("variational behavior") {
  const ScfResult scf = helpers::helium_scf();
  const NuclearFrame he = helpers::helium_frame();
  const Eigen::MatrixXd S = overlap_matrix(scf.wavefunction.basis());
  const Eigen::VectorXd c0 = scf.wavefunction.orbitals()[0].coefficients;

  SECTION("random renormalized perturbations never lower the energy") {
    std::mt19937_64 rng(7);
    auto draw = [&] { return 2.0 * ((rng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0; };
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd c = c0;
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] += 1e-3 * draw();
      c /= std::sqrt(c.dot(S * c));
      const DeterminantWavefunction wf(
          scf.wavefunction.basis(),
          {SpinOrbital{c, Spin::up}, SpinOrbital{c, Spin::down}});
      CHECK(expectation_energy(he, wf) >= scf.energy.total - 1e-12);
    }
  }

  SECTION("scaling scan reproduces the virial ratio at its optimum") {
    const NuclearFrame frame = helpers::helium_frame();
    auto energy_at = [&](double lambda) {
      std::string btxt;
      for (double zeta : {1.41714, 2.37682, 4.39628, 6.52699, 7.94252}) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "0 %.17g\n", zeta * lambda);
        btxt += buf;
      }
      return scf_solve(frame, parse_basis(btxt, frame), 2);
    };
    // golden-section minimization of E(lambda)
    double lo = 0.85, hi = 1.15;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double ea = energy_at(a).energy.total, eb = energy_at(b).energy.total;
    while (hi - lo > 1e-9) {
      if (ea < eb) {
        hi = b;
        b = a;
        eb = ea;
        a = hi - gr * (hi - lo);
        ea = energy_at(a).energy.total;
      } else {
        lo = a;
        a = b;
        ea = eb;
        b = lo + gr * (hi - lo);
        eb = energy_at(b).energy.total;
      }
    }
    const ScfResult at_min = energy_at(0.5 * (lo + hi));
    CHECK_THAT(at_min.energy.kinetic / std::abs(at_min.energy.total), WithinAbs(1.0, 1e-6));
  }
}
