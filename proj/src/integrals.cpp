// Copyright 2026 The qreact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qreact/error.hpp"
#include "qreact/fermion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qreact {

TwoElectronIntegrals::TwoElectronIntegrals(int norb)
    : n_(norb),
      data_(static_cast<std::size_t>(norb) * norb * norb * norb, 0.0) {
  if (norb < 0) throw ValidationError("negative orbital count");
}

void TwoElectronIntegrals::set_symmetric(int p, int q, int r, int s, double v) {
  (*this)(p, q, r, s) = v;
  (*this)(q, p, r, s) = v;
  (*this)(p, q, s, r) = v;
  (*this)(q, p, s, r) = v;
  (*this)(r, s, p, q) = v;
  (*this)(s, r, p, q) = v;
  (*this)(r, s, q, p) = v;
  (*this)(s, r, q, p) = v;
}

void MolecularIntegrals::validate() const {
  if (norb < 0) throw ValidationError("NORB must be non-negative");
  if (nelec < 0 || nelec > 2 * norb)
    throw ValidationError("NELEC=" + std::to_string(nelec) +
                          " outside [0, 2*NORB]");
  if (h1.rows() != norb || h1.cols() != norb || g2.norb() != norb)
    throw DimensionError("integral arrays do not match NORB");
  constexpr double tol = 1e-10;
  for (int p = 0; p < norb; ++p)
    for (int q = 0; q < norb; ++q)
      if (std::abs(h1(p, q) - h1(q, p)) > tol)
        throw ValidationError("h1 is not symmetric");
  for (int p = 0; p < norb; ++p)
    for (int q = 0; q < norb; ++q)
      for (int r = 0; r < norb; ++r)
        for (int s = 0; s < norb; ++s) {
          const double v = g2(p, q, r, s);
          if (std::abs(v - g2(q, p, r, s)) > tol ||
              std::abs(v - g2(p, q, s, r)) > tol ||
              std::abs(v - g2(r, s, p, q)) > tol)
            throw ValidationError("g2 lacks 8-fold permutation symmetry");
        }
}

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool parse_int(std::string_view tok, int& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(std::string tok, double& out) {
  // Fortran writers sometimes emit D exponents.
  std::replace(tok.begin(), tok.end(), 'D', 'E');
  std::replace(tok.begin(), tok.end(), 'd', 'e');
  const char* begin = tok.data();
  if (!tok.empty() && tok[0] == '+') ++begin;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Splits the namelist body into KEY -> values.
std::map<std::string, std::vector<std::string>> parse_namelist(
    const std::string& body) {
  std::string spaced;
  for (char c : body) {
    if (c == ',')
      spaced += ' ';
    else if (c == '=')
      spaced += " = ";
    else
      spaced += c;
  }
  std::istringstream ss(spaced);
  std::vector<std::string> toks;
  for (std::string t; ss >> t;) toks.push_back(t);

  std::map<std::string, std::vector<std::string>> kv;
  std::string key;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i + 1 < toks.size() && toks[i + 1] == "=") {
      key = upper(toks[i]);
      kv[key];
      ++i;
    } else if (!key.empty()) {
      kv[key].push_back(toks[i]);
    }
  }
  return kv;
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::string header;
  bool in_header = false;
  bool header_done = false;
  int header_line = 0;

  while (!header_done && std::getline(in, line)) {
    ++lineno;
    std::string u = upper(line);
    if (!in_header) {
      const auto pos = u.find("&FCI");
      if (pos == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected &FCI header", lineno);
      }
      in_header = true;
      header_line = lineno;
      u = u.substr(pos + 4);
    }
    std::size_t end = u.find("&END");
    if (end == std::string::npos) end = u.find("$END");
    if (end == std::string::npos) end = u.find('/');
    if (end != std::string::npos) {
      header += u.substr(0, end);
      header_done = true;
    } else {
      header += u + ' ';
    }
  }
  if (!header_done)
    throw ParseError("unterminated or missing &FCI header", header_line);

  const auto kv = parse_namelist(header);
  auto get_int = [&](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end() || it->second.empty())
      throw ParseError("header is missing " + key, header_line);
    int v = 0;
    if (!parse_int(it->second.front(), v))
      throw ParseError("header value " + key + " is not an integer",
                       header_line);
    return v;
  };

  MolecularIntegrals m;
  m.norb = get_int("NORB");
  m.nelec = get_int("NELEC");
  m.ms2 = get_int("MS2");
  if (m.norb < 0) throw ParseError("NORB must be non-negative", header_line);
  m.h1 = Eigen::MatrixXd::Zero(m.norb, m.norb);
  m.g2 = TwoElectronIntegrals(m.norb);

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != 5)
      throw ParseError("expected \"value i j k l\"", lineno);
    double v = 0;
    if (!parse_real(toks[0], v))
      throw ParseError("non-numeric integral value '" + toks[0] + "'", lineno);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      if (!parse_int(toks[k + 1], idx[k]))
        throw ParseError("non-integer index '" + toks[k + 1] + "'", lineno);
      if (idx[k] < 0 || idx[k] > m.norb)
        throw ParseError("index " + toks[k + 1] + " out of range", lineno);
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      m.e_nuc = v;
    } else if (k == 0 && l == 0) {
      if (i == 0) throw ParseError("index 0 in one-electron entry", lineno);
      // "eps i 0 0 0" orbital-energy records are informational.
      if (j == 0) continue;
      m.h1(i - 1, j - 1) = v;
      m.h1(j - 1, i - 1) = v;
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0)
        throw ParseError("index 0 in two-electron entry", lineno);
      m.g2.set_symmetric(i - 1, j - 1, k - 1, l - 1, v);
    }
  }
  if (m.nelec < 0 || m.nelec > 2 * m.norb)
    throw ParseError("NELEC outside [0, 2*NORB]", header_line);
  return m;
}

MolecularIntegrals parse_fcidump_text(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return parse_fcidump(ss);
}

MolecularIntegrals read_fcidump(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open FCIDUMP '" + path + "'");
  return parse_fcidump(f);
}

void write_fcidump(std::ostream& out, const MolecularIntegrals& m) {
  char buf[96];
  out << "&FCI NORB=" << m.norb << ",NELEC=" << m.nelec << ",MS2=" << m.ms2
      << ",\n ORBSYM=";
  for (int i = 0; i < m.norb; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%23.16e %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  const int n = m.norb;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
          const double v = m.g2(i, j, k, l);
          if (v != 0.0) emit(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (m.h1(i, j) != 0.0) emit(m.h1(i, j), i + 1, j + 1, 0, 0);
  emit(m.e_nuc, 0, 0, 0, 0);
}

ActiveSpace ActiveSpace::from_integrals(const MolecularIntegrals& m,
                                        std::vector<int> frozen,
                                        std::vector<int> active) {
  ActiveSpace a{std::move(frozen), std::move(active), 0, 0};
  const int n_act = m.nelec - 2 * static_cast<int>(a.frozen.size());
  if (n_act < 0 || (n_act + m.ms2) % 2 != 0 || n_act + m.ms2 < 0 ||
      n_act - m.ms2 < 0)
    throw ValidationError("cannot distribute " + std::to_string(n_act) +
                          " active electrons with MS2=" +
                          std::to_string(m.ms2));
  a.n_alpha = (n_act + m.ms2) / 2;
  a.n_beta = (n_act - m.ms2) / 2;
  return a;
}

ActiveIntegrals reduce_active_space(const MolecularIntegrals& m,
                                    const ActiveSpace& a) {
  std::set<int> seen;
  for (int i : a.frozen) {
    if (i < 0 || i >= m.norb)
      throw ValidationError("frozen orbital " + std::to_string(i) +
                            " out of range");
    if (!seen.insert(i).second)
      throw ValidationError("orbital " + std::to_string(i) + " listed twice");
  }
  for (int p : a.active) {
    if (p < 0 || p >= m.norb)
      throw ValidationError("active orbital " + std::to_string(p) +
                            " out of range");
    if (!seen.insert(p).second)
      throw ValidationError("orbital " + std::to_string(p) +
                            " is both frozen and active (or repeated)");
  }
  const int n_act_elec = m.nelec - 2 * static_cast<int>(a.frozen.size());
  if (a.n_alpha < 0 || a.n_beta < 0 || a.n_alpha + a.n_beta != n_act_elec)
    throw ValidationError("active electron count " +
                          std::to_string(a.n_alpha + a.n_beta) +
                          " does not equal nelec - 2*|frozen| = " +
                          std::to_string(n_act_elec));
  const int nact = static_cast<int>(a.active.size());
  if (a.n_alpha > nact || a.n_beta > nact)
    throw ValidationError("more active electrons of one spin than orbitals");

  ActiveIntegrals out;
  out.n_alpha = a.n_alpha;
  out.n_beta = a.n_beta;
  out.core_energy = m.e_nuc;
  for (int i : a.frozen) {
    out.core_energy += 2.0 * m.h1(i, i);
    for (int j : a.frozen)
      out.core_energy += 2.0 * m.g2(i, i, j, j) - m.g2(i, j, j, i);
  }

  out.h1 = Eigen::MatrixXd::Zero(nact, nact);
  out.g2 = TwoElectronIntegrals(nact);
  for (int u = 0; u < nact; ++u)
    for (int v = 0; v < nact; ++v) {
      const int p = a.active[u];
      const int q = a.active[v];
      double h = m.h1(p, q);
      for (int i : a.frozen) h += 2.0 * m.g2(i, i, p, q) - m.g2(i, p, i, q);
      out.h1(u, v) = h;
      for (int w = 0; w < nact; ++w)
        for (int x = 0; x < nact; ++x)
          out.g2(u, v, w, x) = m.g2(p, q, a.active[w], a.active[x]);
    }
  return out;
}

}  // namespace qreact
