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

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cloudchem/errors.hpp"
#include "cloudchem/integrals.hpp"
#include "cloudchem/system.hpp"

namespace cloudchem {

namespace detail {

/// Splits file content into (1-based line number, tokens) pairs, dropping
/// blank lines and '#' comments.
inline std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) out.emplace_back(number, std::move(tokens));
  }
  return out;
}

inline double parse_double(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected a number for ") + what + ", got '" + tok + "'",
                     line);
  }
  if (used != tok.size()) {
    throw ParseError(std::string("trailing characters in ") + what + " '" + tok + "'", line);
  }
  return v;
}

inline long parse_long(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + tok + "'",
                     line);
  }
  if (used != tok.size()) {
    throw ParseError(std::string("trailing characters in ") + what + " '" + tok + "'", line);
  }
  return v;
}

/// Shortest round-trip-exact decimal form of a double.
inline std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Geometry files: one nucleus per line, `label charge x y z`, bohr.
// ---------------------------------------------------------------------------

inline NuclearFrame parse_geometry(const std::string& text) {
  std::vector<Nucleus> nuclei;
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("geometry file has no data lines");
  for (const auto& [number, tokens] : lines) {
    if (tokens.size() != 5) {
      throw ParseError("expected `label charge x y z`, got " +
                           std::to_string(tokens.size()) + " fields",
                       number);
    }
    Nucleus nuc;
    nuc.label = tokens[0];
    nuc.charge = detail::parse_double(tokens[1], number, "charge");
    if (!(nuc.charge > 0.0)) throw ParseError("non-positive charge", number);
    for (int c = 0; c < 3; ++c) {
      nuc.position[c] = detail::parse_double(tokens[static_cast<std::size_t>(2 + c)],
                                             number, "coordinate");
    }
    for (const Nucleus& prev : nuclei) {
      if ((prev.position - nuc.position).norm() < 1e-12) {
        throw ParseError("duplicate nuclear position", number);
      }
    }
    nuclei.push_back(std::move(nuc));
  }
  return NuclearFrame(std::move(nuclei));
}

inline std::string serialize_geometry(const NuclearFrame& frame) {
  std::string out;
  for (const Nucleus& nuc : frame.nuclei()) {
    out += (nuc.label.empty() ? "X" : nuc.label);
    out += ' ' + detail::format_exact(nuc.charge);
    for (int c = 0; c < 3; ++c) out += ' ' + detail::format_exact(nuc.position[c]);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Basis files: `center_index zeta` per line. A third column is reserved for
// angular momentum and must be 0 when present (only 1s STOs are supported).
// ---------------------------------------------------------------------------

inline StoBasis parse_basis(const std::string& text, const NuclearFrame& frame) {
  std::vector<StoPrimitive> primitives;
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("basis file has no data lines");
  for (const auto& [number, tokens] : lines) {
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError("expected `center_index zeta [l]`", number);
    }
    const long center = detail::parse_long(tokens[0], number, "center index");
    if (center < 0 || static_cast<std::size_t>(center) >= frame.size()) {
      throw ParseError("center index " + std::to_string(center) + " out of range", number);
    }
    const double zeta = detail::parse_double(tokens[1], number, "zeta");
    if (!(zeta > 0.0)) throw ParseError("non-positive exponent", number);
    if (tokens.size() == 3 && detail::parse_long(tokens[2], number, "angular momentum") != 0) {
      throw ParseError("only 1s functions (l = 0) are supported", number);
    }
    primitives.push_back(StoPrimitive{zeta, static_cast<std::size_t>(center)});
  }
  std::vector<Eigen::Vector3d> centers;
  centers.reserve(frame.size());
  for (const Nucleus& nuc : frame.nuclei()) centers.push_back(nuc.position);
  StoBasis basis(std::move(primitives), std::move(centers));
  require_well_conditioned(overlap_matrix(basis));
  return basis;
}

inline std::string serialize_basis(const StoBasis& basis) {
  std::string out;
  for (const StoPrimitive& p : basis.primitives()) {
    out += std::to_string(p.center) + ' ' + detail::format_exact(p.zeta) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbital files: header `norb nbasis`, then per-orbital lines
// `spin c1 c2 ... c_nbasis` with spin in {u, d}.
// ---------------------------------------------------------------------------

inline DeterminantWavefunction parse_orbitals(const std::string& text,
                                              const StoBasis& basis) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("orbital file has no data lines");
  const auto& [header_line, header] = lines.front();
  if (header.size() != 2) throw ParseError("expected header `norb nbasis`", header_line);
  const long norb = detail::parse_long(header[0], header_line, "orbital count");
  const long nbasis = detail::parse_long(header[1], header_line, "basis size");
  if (norb < 1) throw ParseError("orbital count must be positive", header_line);
  if (nbasis != static_cast<long>(basis.size())) {
    throw ParseError("orbital file is over " + std::to_string(nbasis) +
                         " basis functions but the basis has " + std::to_string(basis.size()),
                     header_line);
  }
  if (static_cast<long>(lines.size()) - 1 != norb) {
    throw ParseError("expected " + std::to_string(norb) + " orbital lines, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<SpinOrbital> orbitals;
  for (long i = 0; i < norb; ++i) {
    const auto& [number, tokens] = lines[static_cast<std::size_t>(i + 1)];
    if (static_cast<long>(tokens.size()) != nbasis + 1) {
      throw ParseError("expected spin label plus " + std::to_string(nbasis) +
                           " coefficients",
                       number);
    }
    SpinOrbital orb;
    if (tokens[0] == "u") {
      orb.spin = Spin::up;
    } else if (tokens[0] == "d") {
      orb.spin = Spin::down;
    } else {
      throw ParseError("spin label must be 'u' or 'd', got '" + tokens[0] + "'", number);
    }
    orb.coefficients.resize(nbasis);
    for (long c = 0; c < nbasis; ++c) {
      orb.coefficients[c] =
          detail::parse_double(tokens[static_cast<std::size_t>(c + 1)], number, "coefficient");
    }
    orbitals.push_back(std::move(orb));
  }
  DeterminantWavefunction wf(basis, std::move(orbitals));
  validate_determinant(wf, overlap_matrix(basis), 1e-6);
  return wf;
}

inline std::string serialize_orbitals(const DeterminantWavefunction& wf) {
  std::string out = std::to_string(wf.orbitals().size()) + ' ' +
                    std::to_string(wf.basis().size()) + '\n';
  for (const SpinOrbital& orb : wf.orbitals()) {
    out += spin_label(orb.spin);
    for (Eigen::Index c = 0; c < orb.coefficients.size(); ++c) {
      out += ' ' + detail::format_exact(orb.coefficients[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace cloudchem
