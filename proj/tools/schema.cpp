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

#include "cli.hpp"

#include "qreact/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qreact::cli {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

Json header(std::string_view kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

}  // namespace

// ---- profiles -------------------------------------------------------------

ProfileReport profile_report(const std::vector<ProfilePoint>& points) {
  if (points.size() < 2)
    throw ValidationError("a profile needs at least 2 points, got " +
                          std::to_string(points.size()));
  ProfileReport r;
  const ProfilePoint& ref = points.front();
  for (const auto& p : points) {
    if (!std::isfinite(p.energy) || !std::isfinite(p.uncertainty) ||
        p.uncertainty < 0.0)
      throw ValidationError("profile point '" + p.label +
                            "' has a non-finite energy or invalid uncertainty");
    ProfileRow row;
    row.point = p;
    row.relative_mha = (p.energy - ref.energy) * 1000.0;
    row.relative_kcal = row.relative_mha * kKcalPerMilliHartree;
    row.relative_uncertainty_mha =
        &p == &ref ? 0.0 : std::hypot(p.uncertainty, ref.uncertainty) * 1000.0;
    r.rows.push_back(row);
  }
  return r;
}

std::string format_fixed1(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", value);
  std::string s(buf);
  if (s == "-0.0") s = "0.0";
  return s;
}

std::string render_table(const ProfileReport& report) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %20s %12s %12s %12s\n", "point",
                "energy/Ha", "rel/mHa", "+-/mHa", "rel/kcal");
  os << buf;
  for (const auto& row : report.rows) {
    char e[40];
    std::snprintf(e, sizeof e, "%.6f", row.point.energy);
    std::snprintf(buf, sizeof buf, "%-16s %20s %12s %12s %12s\n",
                  row.point.label.c_str(), e,
                  format_fixed1(row.relative_mha).c_str(),
                  format_fixed1(row.relative_uncertainty_mha).c_str(),
                  format_fixed1(row.relative_kcal).c_str());
    os << buf;
  }
  return os.str();
}

std::string render_plot_columns(const ProfileReport& report) {
  std::ostringstream os;
  os << "# coordinate label relative_mha uncertainty_mha relative_kcal\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    os << i << ' ' << row.point.label << ' ' << format_fixed1(row.relative_mha)
       << ' ' << format_fixed1(row.relative_uncertainty_mha) << ' '
       << format_fixed1(row.relative_kcal) << '\n';
  }
  return os.str();
}

// ---- files ----------------------------------------------------------------

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  out.flush();
  if (!out) throw IoError("cannot write '" + path + "'");
}

Json parse_document(const std::string& text, std::string_view kind,
                    const std::string& source) {
  return parse_document(text, std::vector<std::string_view>{kind}, source);
}

Json parse_document(const std::string& text,
                    const std::vector<std::string_view>& kinds,
                    const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": not valid JSON (byte " +
                     std::to_string(e.byte) + ")");
  }
  if (!j.is_object()) throw ParseError(source + ": expected a JSON object");
  try {
    const int version = field<int>(j, "schema_version");
    if (version != kSchemaVersion)
      throw ParseError("unsupported schema_version " + std::to_string(version));
    const auto k = field<std::string>(j, "kind");
    bool known = false;
    std::string expected;
    for (auto kind : kinds) {
      known = known || k == kind;
      expected += (expected.empty() ? "'" : " or '") + std::string(kind) + "'";
    }
    if (!known)
      throw ParseError("expected kind " + expected + ", found '" + k + "'");
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- schemas --------------------------------------------------------------

Json hamiltonian_to_json(const QubitHamiltonian& h) {
  Json j = header("qubit_hamiltonian");
  j["num_qubits"] = h.num_qubits();
  j["constant"] = h.constant();
  Json terms = Json::array();
  for (const auto& t : h.terms())
    terms.push_back(Json{{"pauli", t.pauli.str()}, {"coeff", t.coeff}});
  j["terms"] = std::move(terms);
  return j;
}

QubitHamiltonian hamiltonian_from_json(const Json& j) {
  const int n = field<int>(j, "num_qubits");
  if (n < 1 || n > 64) throw ParseError("num_qubits out of range");
  QubitHamiltonian h(n, field<double>(j, "constant"));
  const Json terms = field<Json>(j, "terms");
  if (!terms.is_array()) throw ParseError("field 'terms' must be an array");
  for (const auto& t : terms) {
    const auto letters = field<std::string>(t, "pauli");
    if (static_cast<int>(letters.size()) != n)
      throw ParseError("term '" + letters + "' does not have " +
                       std::to_string(n) + " letters");
    h.add_term(PauliString::parse(letters), field<double>(t, "coeff"));
  }
  return h;
}

Json noise_to_json(const NoiseModel& nm) {
  Json j = header("noise_model");
  Json ro = Json::array();
  for (const auto& e : nm.readout) ro.push_back(Json{{"p10", e.p10}, {"p01", e.p01}});
  j["readout"] = std::move(ro);
  j["depolarizing_1q"] = nm.depolarizing_1q;
  j["depolarizing_2q"] = nm.depolarizing_2q;
  if (nm.response) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < nm.response->rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < nm.response->cols(); ++c)
        row.push_back((*nm.response)(r, c));
      rows.push_back(std::move(row));
    }
    j["response"] = std::move(rows);
  }
  return j;
}

namespace {

Eigen::MatrixXd matrix_from_json(const Json& rows, const char* what) {
  if (!rows.is_array() || rows.empty())
    throw ParseError(std::string(what) + " must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ParseError(std::string(what) + " must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number())
        throw ParseError(std::string(what) + " entries must be numbers");
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

NoiseModel noise_from_json(const Json& j) {
  NoiseModel nm;
  if (j.contains("readout")) {
    const Json ro = field<Json>(j, "readout");
    if (!ro.is_array()) throw ParseError("field 'readout' must be an array");
    for (const auto& e : ro)
      nm.readout.push_back({field<double>(e, "p10"), field<double>(e, "p01")});
  }
  if (j.contains("depolarizing_1q"))
    nm.depolarizing_1q = field<double>(j, "depolarizing_1q");
  if (j.contains("depolarizing_2q"))
    nm.depolarizing_2q = field<double>(j, "depolarizing_2q");
  if (j.contains("response"))
    nm.response = matrix_from_json(j.at("response"), "response");
  return nm;
}

Json counts_to_json(const Counts& c) {
  Json j = header("counts");
  j["num_qubits"] = c.num_qubits;
  j["shots"] = c.shots;
  Json hist = Json::object();
  for (const auto& [bits, n] : c.histogram) hist[bits] = n;
  j["histogram"] = std::move(hist);
  return j;
}

Counts counts_from_json(const Json& j) {
  Counts c;
  c.num_qubits = field<int>(j, "num_qubits");
  if (c.num_qubits < 1 || c.num_qubits > 20)
    throw ParseError("num_qubits out of range");
  const Json hist = field<Json>(j, "histogram");
  if (!hist.is_object()) throw ParseError("field 'histogram' must be an object");
  std::uint64_t total = 0;
  for (const auto& [bits, n] : hist.items()) {
    if (static_cast<int>(bits.size()) != c.num_qubits ||
        bits.find_first_not_of("01") != std::string::npos)
      throw ParseError("histogram key '" + bits + "' is not a " +
                       std::to_string(c.num_qubits) + "-bit string");
    if (!n.is_number_unsigned())
      throw ParseError("histogram value for '" + bits +
                       "' must be a non-negative integer");
    c.histogram[bits] = n.get<std::uint64_t>();
    total += c.histogram[bits];
  }
  c.shots = j.contains("shots") ? field<std::uint64_t>(j, "shots") : total;
  if (c.shots != total)
    throw ParseError("shots " + std::to_string(c.shots) +
                     " disagrees with the histogram total " +
                     std::to_string(total));
  return c;
}

Json calibration_to_json(const CalibrationMatrix& c) {
  Json j = header("calibration");
  j["num_qubits"] = c.num_qubits;
  j["method"] = to_string(c.method);
  j["shots"] = c.shots;
  j["matrix"] = matrix_to_json(c.matrix);
  return j;
}

CalibrationMatrix calibration_from_json(const Json& j) {
  CalibrationMatrix c;
  c.num_qubits = field<int>(j, "num_qubits");
  if (c.num_qubits < 1 || c.num_qubits > 14)
    throw ParseError("num_qubits out of range");
  try {
    c.method = parse_calibration_method(field<std::string>(j, "method"));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  c.shots = field<std::uint64_t>(j, "shots");
  c.matrix = matrix_from_json(j.at("matrix"), "matrix");
  if (c.matrix.rows() != (Eigen::Index{1} << c.num_qubits))
    throw ParseError("matrix dimension does not match num_qubits");
  c.validate();
  return c;
}

Json trace_to_json(const VqeTrace& t) {
  Json j = header("vqe_trace");
  j["optimizer"] = t.optimizer;
  Json hp = Json::object();
  for (const auto& [k, v] : t.hyperparameters) hp[k] = v;
  j["hyperparameters"] = std::move(hp);
  j["seed"] = t.seed;
  j["evaluations"] = t.evaluations;
  Json records = Json::array();
  for (const auto& r : t.records)
    records.push_back(Json{{"iteration", r.iteration},
                           {"energy", r.sample.energy},
                           {"std_error", r.sample.std_error},
                           {"parameters", r.parameters}});
  j["records"] = std::move(records);
  j["final_parameters"] = t.final_parameters;
  return j;
}

VqeTrace trace_from_json(const Json& j) {
  VqeTrace t;
  t.optimizer = field<std::string>(j, "optimizer");
  t.hyperparameters = field<std::map<std::string, double>>(j, "hyperparameters");
  t.seed = field<std::uint64_t>(j, "seed");
  t.evaluations = field<std::uint64_t>(j, "evaluations");
  const Json records = field<Json>(j, "records");
  if (!records.is_array()) throw ParseError("field 'records' must be an array");
  for (const auto& r : records) {
    TraceRecord rec;
    rec.iteration = field<int>(r, "iteration");
    rec.sample.energy = field<double>(r, "energy");
    rec.sample.std_error = field<double>(r, "std_error");
    rec.parameters = field<std::vector<double>>(r, "parameters");
    t.records.push_back(std::move(rec));
  }
  t.final_parameters = field<std::vector<double>>(j, "final_parameters");
  return t;
}

}  // namespace qreact::cli
