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
#include "test_helpers.hpp"

using namespace cloudchem;
using Catch::Matchers::WithinAbs;

TEST_CASE("geometry parsing") {
  SECTION("single helium nucleus") {
    const NuclearFrame frame = parse_geometry("He 2.0 0 0 0");
    REQUIRE(frame.size() == 1);
    CHECK(frame[0].charge == 2.0);
    CHECK(frame[0].position.norm() == 0.0);
    CHECK(frame[0].label == "He");
  }
  SECTION("two protons 1.4 bohr apart") {
    const NuclearFrame frame = parse_geometry("H 1.0 0 0 0\nH 1.0 0 0 1.4");
    REQUIRE(frame.size() == 2);
    CHECK((frame[0].position - frame[1].position).norm() == 1.4);
    CHECK_THAT(frame.repulsion_energy(), WithinAbs(1.0 / 1.4, 1e-15));
  }
  SECTION("comments and blank lines") {
    const NuclearFrame frame = parse_geometry("# header\n\nHe 2.0 0 0 0  # inline\n");
    REQUIRE(frame.size() == 1);
  }
  SECTION("non-positive charge is rejected with its line number") {
    try {
      parse_geometry("H 0.0 0 0 0");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SECTION("malformed line reports its line number") {
    try {
      parse_geometry("He 2.0 0 0 0\nH 1.0 0 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SECTION("duplicate positions are rejected") {
    CHECK_THROWS_AS(parse_geometry("H 1.0 0 0 0\nH 1.0 0 0 0"), ParseError);
  }
  SECTION("empty file") { CHECK_THROWS_AS(parse_geometry("# nothing\n"), ParseError); }
}

TEST_CASE("basis parsing") {
  const NuclearFrame h = helpers::hydrogen_frame();
  SECTION("single primitive") {
    const StoBasis basis = parse_basis("0 1.0", h);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].zeta == 1.0);
  }
  SECTION("helium five-exponent basis") {
    const StoBasis basis = helpers::helium_basis();
    REQUIRE(basis.size() == 5);
    CHECK(basis[0].zeta == 1.41714);
    CHECK(basis[4].zeta == 7.94252);
  }
  SECTION("non-positive exponent") { CHECK_THROWS_AS(parse_basis("0 -1.0", h), ParseError); }
  SECTION("center index out of range") { CHECK_THROWS_AS(parse_basis("1 1.0", h), ParseError); }
  SECTION("reserved angular momentum column") {
    CHECK_NOTHROW(parse_basis("0 1.0 0", h));
    CHECK_THROWS_AS(parse_basis("0 1.0 1", h), ParseError);
  }
  SECTION("linearly dependent basis is rejected") {
    CHECK_THROWS_AS(parse_basis("0 1.0\n0 1.0", h), LinearDependenceError);
  }
}

TEST_CASE("primitive normalization") {
  // self-overlap of the normalized 1s form is 1
  for (double zeta : {0.125, 0.5, 1.0, 2.37682, 7.94252, 10.0}) {
    const StoPrimitive p{zeta, 0};
    CHECK_THAT(overlap(p, p), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("orbital parsing") {
  const NuclearFrame h = helpers::hydrogen_frame();
  const StoBasis basis = parse_basis("0 1.0\n0 2.0", h);
  const Eigen::MatrixXd S = overlap_matrix(basis);

  // two S-orthonormal spatial vectors
  Eigen::VectorXd c1(2), c2(2);
  c1 << 1.0, 0.0;
  c1 /= std::sqrt(c1.dot(S * c1));
  c2 = Eigen::VectorXd::Unit(2, 1) - c1.dot(S * Eigen::VectorXd::Unit(2, 1)) * c1;
  c2 /= std::sqrt(c2.dot(S * c2));
  auto row = [](const Eigen::VectorXd& c, char spin) {
    std::string s(1, spin);
    char buf[32];
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", c[i]);
      s += std::string(" ") + buf;
    }
    return s;
  };

  SECTION("paired determinant accepted") {
    const std::string text = "2 2\n" + row(c1, 'u') + '\n' + row(c1, 'd') + '\n';
    const DeterminantWavefunction wf = parse_orbitals(text, basis);
    CHECK(wf.electron_count() == 2);
    CHECK(wf.orbitals()[0].spin == Spin::up);
    CHECK(wf.orbitals()[1].spin == Spin::down);
  }
  SECTION("same-spin duplicate rejected (Pauli at the linear-algebra level)") {
    const std::string text = "2 2\n" + row(c1, 'u') + '\n' + row(c1, 'u') + '\n';
    CHECK_THROWS_AS(parse_orbitals(text, basis), InvalidInputError);
    // the rejection coincides with the coefficient-row determinant vanishing
    Eigen::Matrix2d rows;
    rows.row(0) = c1;
    rows.row(1) = c1;
    CHECK(rows.determinant() == 0.0);
  }
  SECTION("same-spin orthogonal pair accepted, nonzero row determinant") {
    const std::string text = "2 2\n" + row(c1, 'u') + '\n' + row(c2, 'u') + '\n';
    CHECK_NOTHROW(parse_orbitals(text, basis));
    Eigen::Matrix2d rows;
    rows.row(0) = c1;
    rows.row(1) = c2;
    CHECK(std::abs(rows.determinant()) > 1e-8);
  }
  SECTION("norm violation rejected") {
    Eigen::VectorXd bad = 1.01 * c1;
    const std::string text = "1 2\n" + row(bad, 'u') + '\n';
    CHECK_THROWS_AS(parse_orbitals(text, basis), InvalidInputError);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(parse_orbitals("1 3\nu 1 0 0\n", basis), ParseError);
  }
  SECTION("bad spin label") {
    CHECK_THROWS_AS(parse_orbitals("1 2\nx 1 0\n", basis), ParseError);
  }
}

TEST_CASE("serialization round-trips") {
  SECTION("helium SCF output re-ingests bit-identically") {
    const ScfResult scf = helpers::helium_scf();
    REQUIRE(scf.converged);
    const std::string text = serialize_orbitals(scf.wavefunction);
    const DeterminantWavefunction back = parse_orbitals(text, scf.wavefunction.basis());
    for (std::size_t i = 0; i < back.orbitals().size(); ++i) {
      REQUIRE((back.orbitals()[i].coefficients.array() ==
               scf.wavefunction.orbitals()[i].coefficients.array())
                  .all());
      REQUIRE(back.orbitals()[i].spin == scf.wavefunction.orbitals()[i].spin);
    }
    CHECK(serialize_orbitals(back) == text);
  }

  SECTION("parse-serialize-parse is the identity on random valid inputs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      auto u = [&] { return (rng() >> 11) * (1.0 / 9007199254740992.0); };
      // geometry
      const int nnuc = 1 + static_cast<int>(rng() % 3);
      std::string geom;
      for (int k = 0; k < nnuc; ++k) {
        geom += "X " + std::to_string(1.0 + u() * 7.0) + ' ' + std::to_string(4.0 * k + u()) +
                ' ' + std::to_string(u()) + ' ' + std::to_string(u()) + '\n';
      }
      const NuclearFrame f1 = parse_geometry(geom);
      const NuclearFrame f2 = parse_geometry(serialize_geometry(f1));
      REQUIRE(f1.size() == f2.size());
      for (std::size_t k = 0; k < f1.size(); ++k) {
        REQUIRE(f1[k].charge == f2[k].charge);
        REQUIRE((f1[k].position.array() == f2[k].position.array()).all());
      }
      // basis (single center, distinct exponents keep S well conditioned)
      std::string btxt;
      double zeta = 0.3 + u();
      const int nb = 1 + static_cast<int>(rng() % 3);
      for (int b = 0; b < nb; ++b) {
        btxt += "0 " + std::to_string(zeta) + '\n';
        zeta *= 2.3 + u();
      }
      const StoBasis b1 = parse_basis(btxt, f1);
      const StoBasis b2 = parse_basis(serialize_basis(b1), f1);
      REQUIRE(b1.size() == b2.size());
      for (std::size_t i = 0; i < b1.size(); ++i) REQUIRE(b1[i].zeta == b2[i].zeta);
    }
  }
}
