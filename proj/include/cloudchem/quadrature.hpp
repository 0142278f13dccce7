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
#include <utility>
#include <vector>

#include "cloudchem/constants.hpp"
#include "cloudchem/errors.hpp"

namespace cloudchem {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw InvalidInputError("gauss_legendre: need at least one node");
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
  return {x, w};
}

/// Gauss-Legendre rule mapped to a finite interval [lo, hi].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_on(
    double lo, double hi, int n) {
  auto [t, wt] = gauss_legendre(n);
  std::vector<double> r(t.size()), w(t.size());
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < t.size(); ++i) {
    r[i] = lo + half * (t[i] + 1.0);
    w[i] = half * wt[i];
  }
  return {r, w};
}

enum class GridScheme { radial_spherical, uniform_box, atom_centered };

/// Box grid specification: midpoint nodes over a cube of half-width
/// `halfwidth` around `center`, `nx * ny * nz` voxels.
struct BoxGridSpec {
  int nx = 0, ny = 0, nz = 0;
  double halfwidth = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

/// A quadrature grid in one of three schemes.
///
/// radial_spherical: single-center radial rule (weights for ∫f(r)dr); the
/// angular integration of spherically symmetric integrands is analytic, so
/// shell integrals carry the 4*pi*r^2 factor explicitly.
///
/// atom_centered: general 3D nodes from Becke-partitioned per-center
/// spherical product grids; handles multi-center densities.
///
/// uniform_box: midpoint voxel nodes; export and uniform test densities
/// only, never for quadrature-critical results.
struct QuadratureGrid {
  GridScheme scheme = GridScheme::radial_spherical;

  // radial_spherical
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;
  double map_radius = 3.0;  // scale of the rational map; reused by nested rules

  // uniform_box / atom_centered
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;  // bohr^3
  BoxGridSpec box;              // populated for uniform_box
};

/// Radial grid on [0, inf) via the rational map r = R(1+t)/(1-t).
inline QuadratureGrid make_radial_grid(const Eigen::Vector3d& center, int nodes = 96,
                                       double map_radius = 3.0) {
  if (nodes < 2) throw InvalidInputError("radial grid: too few nodes");
  QuadratureGrid g;
  g.scheme = GridScheme::radial_spherical;
  g.center = center;
  g.map_radius = map_radius;
  auto [t, wt] = gauss_legendre(nodes);
  g.radial_nodes.resize(t.size());
  g.radial_weights.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double om = 1.0 - t[i];
    g.radial_nodes[i] = map_radius * (1.0 + t[i]) / om;
    g.radial_weights[i] = wt[i] * 2.0 * map_radius / (om * om);
  }
  return g;
}

inline QuadratureGrid make_box_grid(const BoxGridSpec& spec) {
  if (spec.nx <= 0 || spec.ny <= 0 || spec.nz <= 0) {
    throw InvalidInputError("box grid: zero-resolution axis");
  }
  if (!(spec.halfwidth > 0.0)) throw InvalidInputError("box grid: non-positive half-width");
  QuadratureGrid g;
  g.scheme = GridScheme::uniform_box;
  g.box = spec;
  const double hx = 2.0 * spec.halfwidth / spec.nx;
  const double hy = 2.0 * spec.halfwidth / spec.ny;
  const double hz = 2.0 * spec.halfwidth / spec.nz;
  const double vol = hx * hy * hz;
  g.points.reserve(static_cast<std::size_t>(spec.nx) * spec.ny * spec.nz);
  for (int ix = 0; ix < spec.nx; ++ix) {
    for (int iy = 0; iy < spec.ny; ++iy) {
      for (int iz = 0; iz < spec.nz; ++iz) {
        g.points.emplace_back(spec.center.x() - spec.halfwidth + (ix + 0.5) * hx,
                              spec.center.y() - spec.halfwidth + (iy + 0.5) * hy,
                              spec.center.z() - spec.halfwidth + (iz + 0.5) * hz);
        g.weights.push_back(vol);
      }
    }
  }
  return g;
}

namespace detail {

/// Becke partition weight of center k at point x (three smoothstep passes).
inline double becke_weight(const std::vector<Eigen::Vector3d>& centers,
                           const Eigen::Vector3d& x, std::size_t k) {
  const std::size_t nc = centers.size();
  if (nc == 1) return 1.0;
  std::vector<double> d(nc);
  for (std::size_t i = 0; i < nc; ++i) d[i] = (x - centers[i]).norm();
  double pk = 0.0, ptot = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < nc; ++j) {
      if (i == j) continue;
      double mu = (d[i] - d[j]) / (centers[i] - centers[j]).norm();
      for (int pass = 0; pass < 3; ++pass) mu = 1.5 * mu - 0.5 * mu * mu * mu;
      p *= 0.5 * (1.0 - mu);
    }
    ptot += p;
    if (i == k) pk = p;
  }
  return ptot > 0.0 ? pk / ptot : 0.0;
}

}  // namespace detail

/// Atom-centered grid: per-center mapped radial rule x Gauss-Legendre in
/// cos(theta) x uniform phi ring, fuzzed together with Becke weights.
inline QuadratureGrid make_becke_grid(const std::vector<Eigen::Vector3d>& centers,
                                      int radial_nodes = 96, int theta_nodes = 32,
                                      int phi_nodes = 64, double map_radius = 3.0) {
  if (centers.empty()) throw InvalidInputError("atom-centered grid: no centers");
  QuadratureGrid g;
  g.scheme = GridScheme::atom_centered;
  auto [tr, wr] = gauss_legendre(radial_nodes);
  auto [ct, wt] = gauss_legendre(theta_nodes);
  const double wphi = 2.0 * kPi / phi_nodes;
  g.points.reserve(centers.size() * static_cast<std::size_t>(radial_nodes) *
                   theta_nodes * phi_nodes);
  g.weights.reserve(g.points.capacity());
  for (std::size_t k = 0; k < centers.size(); ++k) {
    for (int ir = 0; ir < radial_nodes; ++ir) {
      const double om = 1.0 - tr[static_cast<std::size_t>(ir)];
      const double r = map_radius * (1.0 + tr[static_cast<std::size_t>(ir)]) / om;
      const double wrad = wr[static_cast<std::size_t>(ir)] * 2.0 * map_radius / (om * om);
      for (int it = 0; it < theta_nodes; ++it) {
        const double cth = ct[static_cast<std::size_t>(it)];
        const double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
        for (int ip = 0; ip < phi_nodes; ++ip) {
          const double phi = wphi * ip;
          const Eigen::Vector3d x =
              centers[k] + r * Eigen::Vector3d(sth * std::cos(phi), sth * std::sin(phi), cth);
          const double w = wrad * r * r * wt[static_cast<std::size_t>(it)] * wphi *
                           detail::becke_weight(centers, x, k);
          g.points.push_back(x);
          g.weights.push_back(w);
        }
      }
    }
  }
  return g;
}

}  // namespace cloudchem
