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
StoBasis two_center_basis() {
  const NuclearFrame frame = parse_geometry("H 1.0 0 0 0\nH 1.0 0 0 1.4");
  return parse_basis("0 1.0\n1 1.0", frame);
}
}  // namespace

TEST_CASE("overlap closed form") {
  CHECK_THAT(sto::overlap_1s(1.0, 1.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(sto::overlap_1s(1.0, 2.0), WithinAbs(oracles::overlap(1.0, 2.0), 1e-10));
  SECTION("large-exponent limit decays monotonically to zero") {
    double prev = sto::overlap_1s(1.0, 5.0);
    for (double za : {10.0, 20.0, 40.0, 80.0}) {
      const double s = sto::overlap_1s(za, 1.0);
      CHECK(s < prev);
      prev = s;
    }
    CHECK(prev < 1e-3);
  }
  SECTION("different centers unsupported") {
    const StoBasis b = two_center_basis();
    CHECK_THROWS_AS(overlap(b[0], b[1]), UnsupportedGeometryError);
  }
}

TEST_CASE("kinetic closed form") {
  // equal exponents give zeta^2/2; zeta = 1 is the hydrogen virial value
  CHECK_THAT(sto::kinetic_1s(1.0, 1.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(sto::kinetic_1s(2.5, 2.5), WithinAbs(0.5 * 2.5 * 2.5, 1e-12));
  CHECK_THAT(sto::kinetic_1s(1.0, 3.0), WithinAbs(oracles::kinetic(1.0, 3.0), 1e-10));
  CHECK(sto::kinetic_1s(1.0, 3.0) == sto::kinetic_1s(3.0, 1.0));

  SECTION("kinetic matrix of the helium basis is positive definite") {
    const OneElectronMatrices m =
        one_electron_matrices(helpers::helium_basis(), helpers::helium_frame());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.T, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(m.S, Eigen::EigenvaluesOnly);
    CHECK(ss.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("nuclear attraction") {
  const NuclearFrame h = helpers::hydrogen_frame();
  const StoBasis hb = parse_basis("0 1.0", h);
  CHECK_THAT(nuclear_attraction(hb[0], hb[0], hb, h), WithinAbs(-1.0, 1e-12));

  const NuclearFrame he = helpers::helium_frame();
  for (double zeta : {0.8, 1.6875, 4.0}) {
    const StoBasis b = parse_basis("0 " + std::to_string(zeta), he);
    CHECK_THAT(nuclear_attraction(b[0], b[0], b, he), WithinRel(-2.0 * zeta, 1e-12));
  }

  SECTION("linearity: doubling every charge doubles the matrix exactly") {
    const NuclearFrame frame = parse_geometry("A 1.5 0 0 0\nB 2.5 0 0 3.0");
    const NuclearFrame doubled = parse_geometry("A 3.0 0 0 0\nB 5.0 0 0 3.0");
    const StoBasis b = parse_basis("0 1.0\n0 2.2", frame);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        CHECK(nuclear_attraction(b[i], b[j], b, doubled) ==
              2.0 * nuclear_attraction(b[i], b[j], b, frame));
      }
    }
    // diagonal is attractive
    CHECK(nuclear_attraction(b[0], b[0], b, frame) < 0.0);
  }

  SECTION("off-center attraction matches the closed form") {
    for (auto [za, zb, d] : {std::tuple{1.0, 1.0, 1.4}, std::tuple{1.3, 0.7, 2.5},
                             std::tuple{4.0, 2.0, 0.8}, std::tuple{1.0, 1.0, 12.0}}) {
      CHECK_THAT(sto::coulomb_offcenter_1s(za, zb, d),
                 WithinRel(oracles::offcenter_nuclear_closed_form(za, zb, d), 1e-10));
    }
    // approaches the on-center value as d -> 0
    CHECK_THAT(sto::coulomb_offcenter_1s(1.0, 2.0, 1e-9),
               WithinRel(sto::coulomb_center_1s(1.0, 2.0), 1e-8));
  }
}

TEST_CASE("electron repulsion") {
  CHECK_THAT(sto::eri_1s(1.0, 1.0, 1.0, 1.0), WithinAbs(0.625, 1e-14));
  SECTION("(aa|aa) scales as 5 zeta / 8") {
    for (double zeta : {0.5, 2.0, 7.94252}) {
      CHECK_THAT(sto::eri_1s(zeta, zeta, zeta, zeta), WithinRel(0.625 * zeta, 1e-12));
      CHECK_THAT(sto::eri_1s(zeta, zeta, zeta, zeta),
                 WithinRel(oracles::eri(zeta, zeta, zeta, zeta), 1e-9));
    }
  }
  SECTION("bra-ket swap symmetry is exact in the tensor") {
    const TwoElectronTensor eri(helpers::helium_basis());
    const std::size_t n = eri.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) {
            const double v = eri(i, j, k, l);
            CHECK(v == eri(j, i, k, l));
            CHECK(v == eri(i, j, l, k));
            CHECK(v == eri(k, l, i, j));
            CHECK(v == eri(l, k, j, i));
          }
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(eri(i, i, i, i) > 0.0);
  }
  SECTION("different centers unsupported") {
    const StoBasis b = two_center_basis();
    CHECK_THROWS_AS(electron_repulsion(b[0], b[0], b[0], b[1]), UnsupportedGeometryError);
    CHECK_THROWS_AS(TwoElectronTensor(b), UnsupportedGeometryError);
  }
}

TEST_CASE("property: analytic integrals match the quadrature oracle") {
  std::mt19937_64 rng(2024);
  auto sample_zeta = [&] {
    const double u = (rng() >> 11) * (1.0 / 9007199254740992.0);
    return 0.1 * std::pow(100.0, u);  // log-uniform in [0.1, 10]
  };
  for (int trial = 0; trial < 50; ++trial) {
    const double za = sample_zeta(), zb = sample_zeta();
    CAPTURE(za, zb);
    CHECK_THAT(sto::overlap_1s(za, zb), WithinRel(oracles::overlap(za, zb), 1e-8));
    CHECK_THAT(sto::kinetic_1s(za, zb), WithinRel(oracles::kinetic(za, zb), 1e-8));
    CHECK_THAT(sto::coulomb_center_1s(za, zb), WithinRel(oracles::nuclear(za, zb), 1e-8));
  }
  for (int trial = 0; trial < 12; ++trial) {
    const double za = sample_zeta(), zb = sample_zeta();
    const double zc = sample_zeta(), zd = sample_zeta();
    CAPTURE(za, zb, zc, zd);
    CHECK_THAT(sto::eri_1s(za, zb, zc, zd), WithinRel(oracles::eri(za, zb, zc, zd), 1e-8));
  }
}

TEST_CASE("coordinate scaling law") {
  // zeta -> lambda zeta multiplies T by lambda^2, Vne and (ab|cd) by lambda,
  // and leaves S unchanged
  const double za = 0.9, zb = 2.6, zc = 1.7, zd = 5.2;
  for (double lam : {2.0, 0.5, 3.0}) {
    CHECK_THAT(sto::overlap_1s(lam * za, lam * zb), WithinRel(sto::overlap_1s(za, zb), 1e-13));
    CHECK_THAT(sto::kinetic_1s(lam * za, lam * zb),
               WithinRel(lam * lam * sto::kinetic_1s(za, zb), 1e-13));
    CHECK_THAT(sto::coulomb_center_1s(lam * za, lam * zb),
               WithinRel(lam * sto::coulomb_center_1s(za, zb), 1e-13));
    CHECK_THAT(sto::eri_1s(lam * za, lam * zb, lam * zc, lam * zd),
               WithinRel(lam * sto::eri_1s(za, zb, zc, zd), 1e-13));
  }
}

TEST_CASE("two-center overlap closed form") {
  // equal exponents reduce to the textbook e^{-zR}(1 + zR + (zR)^2/3)
  for (auto [z, R] : {std::pair{1.0, 1.4}, std::pair{2.0, 0.5}, std::pair{0.7, 4.0}}) {
    const double p = z * R;
    CHECK_THAT(sto::overlap_two_center_1s(z, z, R),
               WithinRel(std::exp(-p) * (1.0 + p + p * p / 3.0), 1e-12));
  }
  // smooth through the equal-exponent series branch
  CHECK_THAT(sto::overlap_two_center_1s(1.0, 1.0 + 1e-9, 1.5),
             WithinRel(sto::overlap_two_center_1s(1.0, 1.0, 1.5), 1e-6));
  // R -> 0 recovers the same-center value
  CHECK_THAT(sto::overlap_two_center_1s(1.0, 2.0, 1e-13),
             WithinRel(sto::overlap_1s(1.0, 2.0), 1e-10));
}
