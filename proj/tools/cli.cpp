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

#include "qreact/ansatz.hpp"
#include "qreact/error.hpp"
#include "qreact/exact.hpp"
#include "qreact/fermion.hpp"
#include "qreact/rng.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <utility>

#include "CLI11.hpp"

namespace qreact::cli {

namespace {

struct Input {
  std::string role;
  std::string path;
  std::string text;
};

Input load(const std::string& role, const std::string& path) {
  std::string text = read_file(path);
  return {role, path, std::move(text)};
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  errno = 0;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || v[0] == '-')
    throw ValidationError(std::string(name) + "='" + v +
                          "' is not a non-negative integer");
  return x;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Common {
  bool timestamp = false;
};

Json manifest(const std::string& command, const std::vector<std::string>& args,
              const std::vector<Input>& inputs, Json config, Json seeds,
              const Common& common) {
  Json m;
  m["command"] = command;
  m["argv"] = args;
  Json in = Json::array();
  for (const auto& i : inputs)
    in.push_back(Json{{"role", i.role}, {"path", i.path},
                      {"fnv1a64", fnv1a64(i.text)}});
  m["inputs"] = std::move(in);
  m["config"] = std::move(config);
  m["seeds"] = std::move(seeds);
  m["tool_version"] = kToolVersion;
  if (common.timestamp) m["timestamp"] = utc_now();
  return m;
}

std::string stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---- map ------------------------------------------------------------------

struct MapOptions {
  std::string fcidump;
  std::string output = "hamiltonian.qham";
  std::string mapping = "parity";
  bool no_taper = false;
  std::vector<int> active;
  std::vector<int> frozen;
};

void run_map(const MapOptions& o, const Common& c,
             const std::vector<std::string>& args, std::ostream& out) {
  const Input in = load("fcidump", o.fcidump);
  const MolecularIntegrals m = parse_fcidump_text(in.text);
  std::vector<int> frozen = o.frozen;
  std::vector<int> active = o.active;
  if (active.empty()) {
    if (!frozen.empty())
      throw ValidationError("--frozen requires --active");
    if (m.ms2 != 0 || m.nelec % 2 != 0)
      throw ValidationError(
          "the default HOMO/LUMO space needs a closed shell; pass --active");
    const int homo = m.nelec / 2 - 1;
    if (homo < 0 || homo + 1 >= m.norb)
      throw ValidationError("no HOMO/LUMO pair in " + std::to_string(m.norb) +
                            " orbitals with " + std::to_string(m.nelec) +
                            " electrons");
    for (int i = 0; i < homo; ++i) frozen.push_back(i);
    active = {homo, homo + 1};
  }
  const Mapping mapping = parse_mapping(o.mapping);
  const bool taper = mapping == Mapping::Parity && !o.no_taper;
  const MappedHamiltonian mh = map_integrals(
      m, ActiveSpace::from_integrals(m, frozen, active), mapping, taper);

  Json doc = hamiltonian_to_json(mh.hamiltonian);
  doc["context"] = Json{{"mapping", to_string(mh.mapping)},
                        {"tapered", mh.tapered},
                        {"n_spin_orbitals", mh.n_spin_orbitals},
                        {"n_alpha", mh.n_alpha},
                        {"n_beta", mh.n_beta}};
  Json config{{"mapping", to_string(mapping)},
              {"tapered", taper},
              {"frozen", frozen},
              {"active", active}};
  doc["manifest"] = manifest("map", args, {in}, std::move(config), Json::object(), c);
  write_file(o.output, dump(doc));
  out << "qubits=" << mh.hamiltonian.num_qubits()
      << " terms=" << mh.hamiltonian.terms().size() << "\n";
}

// ---- gates ----------------------------------------------------------------

struct GatesOptions {
  std::string ansatz;
  int qubits = 0;
  int depth = 1;
};

void run_gates(const GatesOptions& o, std::ostream& out) {
  const ResourceCounts rc =
      resource_counts(parse_ansatz_kind(o.ansatz), o.qubits, o.depth);
  out << "cnots=" << rc.cnots << " params=" << rc.params << "\n";
}

// ---- shared loaders ---------------------------------------------------------

struct LoadedHamiltonian {
  QubitHamiltonian h;
  std::optional<UccsdContext> context;
  std::string hf_bits;
};

LoadedHamiltonian load_hamiltonian(const Input& in) {
  const Json j = parse_document(in.text, "qubit_hamiltonian", in.path);
  LoadedHamiltonian out{hamiltonian_from_json(j), std::nullopt,
                        std::string(static_cast<std::size_t>(0), '0')};
  out.hf_bits.assign(static_cast<std::size_t>(out.h.num_qubits()), '0');
  if (j.contains("context")) {
    try {
      const Json& cj = j.at("context");
      UccsdContext ctx;
      const int nso = cj.at("n_spin_orbitals").get<int>();
      if (nso <= 0 || nso % 2 != 0)
        throw ParseError("context n_spin_orbitals must be even and positive");
      ctx.n_spatial = nso / 2;
      ctx.n_alpha = cj.at("n_alpha").get<int>();
      ctx.n_beta = cj.at("n_beta").get<int>();
      ctx.mapping = parse_mapping(cj.at("mapping").get<std::string>());
      ctx.tapered = cj.at("tapered").get<bool>();
      if (ctx.num_qubits() != out.h.num_qubits())
        throw ParseError("context implies " + std::to_string(ctx.num_qubits()) +
                         " qubits, Hamiltonian has " +
                         std::to_string(out.h.num_qubits()));
      out.hf_bits = hartree_fock_bits(ctx.n_alpha, ctx.n_beta, nso,
                                      ctx.mapping, ctx.tapered);
      out.context = ctx;
    } catch (const nlohmann::json::exception&) {
      throw ParseError(in.path + ": malformed context block");
    }
  }
  return out;
}

NoiseModel load_noise(const Input& in) {
  return noise_from_json(parse_document(in.text, "noise_model", in.path));
}

// ---- vqe ------------------------------------------------------------------

struct VqeOptions {
  std::string hamiltonian;
  std::string ansatz = "ry";
  int depth = 1;
  std::string optimizer;
  std::string backend = "exact";
  std::uint64_t shots = 8192;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  int iterations = 500;
  std::string noise;
  std::string mitigation = "none";
  std::string mitigation_method = "least-squares";
  std::uint64_t calibration_shots = 0;
  std::optional<std::uint64_t> calibration_max_age;
  bool group = false;
  bool analytic = false;
  bool spsa_calibrate = false;
  bool perturb = false;
  bool no_perturb = false;
  std::string hf;
  std::string label;
  std::string output = "result.json";
  std::string trace = "trace.json";
  std::string plot;
  int window = 10;
  int span = 100;
};

void run_vqe(const VqeOptions& o, const Common& c,
             const std::vector<std::string>& args, std::ostream& out) {
  std::vector<Input> inputs{load("hamiltonian", o.hamiltonian)};
  const LoadedHamiltonian lh = load_hamiltonian(inputs.front());
  const int n = lh.h.num_qubits();

  BackendConfig bc;
  bc.kind = parse_backend_kind(o.backend);
  bc.shots = o.shots;
  bc.seed = o.seed ? *o.seed : env_u64("QREACT_SEED", 0);
  const std::uint64_t threads =
      o.threads ? static_cast<std::uint64_t>(*o.threads) : env_u64("QREACT_THREADS", 1);
  if (threads < 1 || threads > 256)
    throw ValidationError("thread count must be in [1, 256]");
  bc.threads = static_cast<int>(threads);
  bc.analytic = o.analytic;
  bc.group_commuting = o.group;
  if (!o.noise.empty()) {
    inputs.push_back(load("noise", o.noise));
    bc.noise = load_noise(inputs.back());
    bc.noise.validate(n);
  }
  if (o.mitigation != "none") {
    MitigationConfig mc;
    mc.calibration = parse_calibration_method(o.mitigation);
    mc.method = parse_mitigation_method(o.mitigation_method);
    mc.shots = o.calibration_shots;
    mc.max_age_evaluations = o.calibration_max_age;
    bc.mitigation = mc;
  }
  if (bc.kind == BackendKind::Exact &&
      (bc.mitigation || bc.noise.has_readout_noise() || o.analytic))
    throw ValidationError(
        "readout noise, mitigation and --analytic need --backend sampled");

  const std::string optimizer =
      !o.optimizer.empty() ? o.optimizer
                           : (bc.kind == BackendKind::Exact ? "cg" : "spsa");
  if (optimizer != "cg" && optimizer != "spsa")
    throw ValidationError("unknown optimizer '" + optimizer + "'");
  if (optimizer == "cg" && bc.kind != BackendKind::Exact)
    throw ValidationError("--optimizer cg requires --backend exact");

  const AnsatzKind kind = parse_ansatz_kind(o.ansatz);
  const std::string hf = o.hf.empty() ? lh.hf_bits : o.hf;
  const AnsatzTemplate t = build_ansatz(kind, n, o.depth, hf, lh.context);
  if (o.perturb && o.no_perturb)
    throw ValidationError("--perturb and --no-perturb are exclusive");
  const bool perturb = o.perturb || (optimizer == "cg" && !o.no_perturb);
  const std::uint64_t init_seed = derive_seed(bc.seed, 0x696e6974);
  const std::vector<double> theta0 = initial_parameters(
      t.num_parameters, perturb ? std::optional<std::uint64_t>(init_seed) : std::nullopt);

  EnergyEstimator est(t, lh.h, bc);
  auto objective = [&](const std::vector<double>& th) { return est(th); };
  VqeTrace trace;
  FinalReport report;
  if (optimizer == "cg") {
    auto grad = [&](const std::vector<double>& th) {
      return gradient(th, t, lh.h, GradientMethod::ParameterShift).values;
    };
    trace = cg_minimize(objective, grad, theta0);
    const auto& last = trace.records.back();
    report = {last.sample.energy, 0.0, last.iteration};
  } else {
    SpsaConfig sc;
    sc.iterations = o.iterations;
    sc.seed = bc.seed;
    sc.calibrate = o.spsa_calibrate;
    trace = spsa_minimize(objective, theta0, sc);
    report = report_final(trace, o.window, o.span);
  }
  trace.seed = bc.seed;

  Json config{{"ansatz", to_string(kind)},
              {"depth", o.depth},
              {"hf_bits", hf},
              {"initial", perturb ? "zeros+perturbation" : "zeros"},
              {"optimizer", optimizer},
              {"backend", to_string(bc.kind)},
              {"shots", bc.shots},
              {"analytic", bc.analytic},
              {"group_commuting", bc.group_commuting},
              {"threads", bc.threads},
              {"noise", bc.noise.describe()},
              {"mitigation", o.mitigation},
              {"iterations", o.iterations},
              {"window", o.window},
              {"span", o.span}};
  if (bc.mitigation) {
    config["mitigation_method"] = to_string(bc.mitigation->method);
    config["calibration_shots"] = bc.mitigation->shots;
    if (bc.mitigation->max_age_evaluations)
      config["calibration_max_age"] = *bc.mitigation->max_age_evaluations;
  }
  const Json man = manifest("vqe", args, inputs, config,
                            Json{{"backend", bc.seed},
                                 {"optimizer", bc.seed},
                                 {"initial", perturb ? Json(init_seed) : Json(nullptr)}}, c);

  Json tj = trace_to_json(trace);
  tj["manifest"] = man;
  write_file(o.trace, dump(tj));

  Json rj;
  rj["schema_version"] = kSchemaVersion;
  rj["kind"] = "vqe_result";
  rj["label"] = o.label.empty() ? stem(o.hamiltonian) : o.label;
  rj["energy"] = report.energy;
  rj["uncertainty"] = report.uncertainty;
  rj["window_start"] = report.window_start;
  rj["iterations"] = trace.records.size();
  rj["evaluations"] = trace.evaluations;
  rj["calibration_rebuilds"] = est.calibration_rebuilds();
  rj["final_parameters"] = trace.final_parameters;
  rj["manifest"] = man;
  write_file(o.output, dump(rj));

  if (!o.plot.empty()) {
    std::string cols = "# iteration energy std_error\n";
    for (const auto& r : trace.records) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", r.iteration,
                    r.sample.energy, r.sample.std_error);
      cols += buf;
    }
    write_file(o.plot, cols);
  }
  out << "energy=" << fixed(report.energy, 10)
      << " uncertainty=" << fixed(report.uncertainty, 10)
      << " iterations=" << trace.records.size() << "\n";
}

// ---- exact ----------------------------------------------------------------

struct ExactOptions {
  std::string hamiltonian;
  std::string output = "exact.json";
  std::string label;
};

void run_exact(const ExactOptions& o, const Common& c,
               const std::vector<std::string>& args, std::ostream& out) {
  const Input in = load("hamiltonian", o.hamiltonian);
  const LoadedHamiltonian lh = load_hamiltonian(in);
  const SpectrumResult s = ground_state(lh.h);
  Json rj;
  rj["schema_version"] = kSchemaVersion;
  rj["kind"] = "exact_result";
  rj["label"] = o.label.empty() ? stem(o.hamiltonian) : o.label;
  rj["energy"] = s.ground_energy;
  rj["uncertainty"] = 0.0;
  rj["residual"] = s.residual;
  rj["eigenvalues"] =
      std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
  rj["manifest"] = manifest("exact", args, {in}, Json::object(), Json::object(), c);
  write_file(o.output, dump(rj));
  out << "energy=" << fixed(s.ground_energy, 12) << "\n";
}

// ---- calibrate --------------------------------------------------------------

struct CalibrateOptions {
  std::string noise;
  int qubits = 0;
  std::uint64_t shots = 8192;
  std::string method = "complete";
  std::optional<std::uint64_t> seed;
  std::string output = "calibration.json";
};

void run_calibrate(const CalibrateOptions& o, const Common& c,
                   const std::vector<std::string>& args, std::ostream& out) {
  std::vector<Input> inputs;
  NoiseModel nm;
  if (!o.noise.empty()) {
    inputs.push_back(load("noise", o.noise));
    nm = load_noise(inputs.back());
  }
  if (o.qubits < 1 || o.qubits > 14)
    throw ValidationError("--qubits must be in [1, 14]");
  nm.validate(o.qubits);
  const CalibrationMethod method = parse_calibration_method(o.method);
  const std::uint64_t seed = o.seed ? *o.seed : env_u64("QREACT_SEED", 0);
  const CalibrationMatrix cal =
      o.shots == 0
          ? analytic_calibration(o.qubits, nm, method)
          : build_calibration(o.qubits, sampling_executor(nm, seed), o.shots, method);
  Json doc = calibration_to_json(cal);
  doc["manifest"] = manifest(
      "calibrate", args, inputs,
      Json{{"qubits", o.qubits}, {"shots", o.shots}, {"method", to_string(method)}},
      Json{{"calibration", seed}}, c);
  write_file(o.output, dump(doc));
  out << "qubits=" << cal.num_qubits << " shots=" << cal.shots << "\n";
}

// ---- mitigate -------------------------------------------------------------

struct MitigateOptions {
  std::string counts;
  std::string calibration;
  std::string method = "least-squares";
  std::string output = "quasi.json";
};

void run_mitigate(const MitigateOptions& o, const Common& c,
                  const std::vector<std::string>& args, std::ostream& out) {
  const Input ci = load("counts", o.counts);
  const Input ki = load("calibration", o.calibration);
  const Counts counts = counts_from_json(parse_document(ci.text, "counts", ci.path));
  const CalibrationMatrix cal =
      calibration_from_json(parse_document(ki.text, "calibration", ki.path));
  const MitigationMethod method = parse_mitigation_method(o.method);
  const MitigationResult r = mitigate(counts, cal, method);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "quasi_distribution";
  doc["num_qubits"] = counts.num_qubits;
  doc["shots"] = counts.shots;
  doc["method"] = to_string(method);
  doc["regularized"] = r.regularized;
  Json q = Json::object();
  for (const auto& [bits, w] : r.quasi) q[bits] = w;
  doc["quasi"] = std::move(q);
  doc["manifest"] = manifest("mitigate", args, {ci, ki},
                             Json{{"method", to_string(method)}}, Json::object(), c);
  write_file(o.output, dump(doc));
  out << "outcomes=" << r.quasi.size()
      << (r.regularized ? " regularized=true" : " regularized=false") << "\n";
}

// ---- profile ----------------------------------------------------------------

struct ProfileOptions {
  std::vector<std::string> results;
  std::vector<std::string> labels;
  std::string output;
  std::string plot;
};

void run_profile(const ProfileOptions& o, const Common& c,
                 const std::vector<std::string>& args, std::ostream& out) {
  if (!o.labels.empty() && o.labels.size() != o.results.size())
    throw ValidationError("--labels needs one label per result file");
  std::vector<Input> inputs;
  std::vector<ProfilePoint> points;
  for (std::size_t i = 0; i < o.results.size(); ++i) {
    inputs.push_back(load("result", o.results[i]));
    const Json j = parse_document(inputs.back().text,
                                  std::vector<std::string_view>{"vqe_result", "exact_result"},
                                  o.results[i]);
    ProfilePoint p;
    try {
      p.label = o.labels.empty() ? j.at("label").get<std::string>() : o.labels[i];
      p.energy = j.at("energy").get<double>();
      p.uncertainty = j.at("uncertainty").get<double>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError(o.results[i] + ": missing label, energy or uncertainty");
    }
    points.push_back(std::move(p));
  }
  const ProfileReport report = profile_report(points);
  if (!o.output.empty()) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "profile";
    Json rows = Json::array();
    for (const auto& r : report.rows)
      rows.push_back(Json{{"label", r.point.label},
                          {"energy", r.point.energy},
                          {"uncertainty", r.point.uncertainty},
                          {"relative_mha", format_fixed1(r.relative_mha)},
                          {"relative_uncertainty_mha",
                           format_fixed1(r.relative_uncertainty_mha)},
                          {"relative_kcal_mol", format_fixed1(r.relative_kcal)}});
    doc["rows"] = std::move(rows);
    doc["manifest"] =
        manifest("profile", args, inputs, Json::object(), Json::object(), c);
    write_file(o.output, dump(doc));
  }
  if (!o.plot.empty()) write_file(o.plot, render_plot_columns(report));
  out << render_table(report);
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"qreact: VQE reaction-energetics simulator", "qreact"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;

  MapOptions mo;
  auto* map = app.add_subcommand("map", "FCIDUMP to qubit Hamiltonian file");
  map->add_option("-f,--fcidump", mo.fcidump, "FCIDUMP integrals")->required();
  map->add_option("-o,--output", mo.output, "Hamiltonian output file")
      ->capture_default_str();
  map->add_option("-m,--mapping", mo.mapping, "jordan-wigner | parity")
      ->capture_default_str();
  map->add_flag("--no-taper", mo.no_taper, "keep the two symmetry qubits");
  map->add_option("--active", mo.active, "active orbital indices (0-based)")
      ->delimiter(',');
  map->add_option("--frozen", mo.frozen, "frozen doubly occupied orbitals")
      ->delimiter(',');

  GatesOptions go;
  auto* gates = app.add_subcommand("gates", "ansatz resource counts");
  gates->add_option("-a,--ansatz", go.ansatz, "ry | ryrz | swaprz | uccsd")->required();
  gates->add_option("-q,--qubits", go.qubits, "register width")->required();
  gates->add_option("-d,--depth", go.depth, "layers")->capture_default_str();

  VqeOptions vo;
  auto* vqe = app.add_subcommand("vqe", "variational minimization");
  vqe->add_option("-H,--hamiltonian", vo.hamiltonian, "Hamiltonian file")->required();
  vqe->add_option("-a,--ansatz", vo.ansatz, "ry | ryrz | swaprz | uccsd")
      ->capture_default_str();
  vqe->add_option("-d,--depth", vo.depth, "layers")->capture_default_str();
  vqe->add_option("--optimizer", vo.optimizer,
                  "cg | spsa (default: cg on exact, spsa on sampled)");
  vqe->add_option("-b,--backend", vo.backend, "exact | sampled")->capture_default_str();
  vqe->add_option("-s,--shots", vo.shots, "shots per term")->capture_default_str();
  vqe->add_option("--seed", vo.seed, "master seed (default: $QREACT_SEED or 0)");
  vqe->add_option("-t,--threads", vo.threads,
                  "worker threads (default: $QREACT_THREADS or 1)");
  vqe->add_option("-i,--iterations", vo.iterations, "SPSA iterations")
      ->capture_default_str();
  vqe->add_option("-n,--noise", vo.noise, "noise model file");
  vqe->add_option("--mitigation", vo.mitigation, "none | complete | tensored")
      ->capture_default_str();
  vqe->add_option("--mitigation-method", vo.mitigation_method,
                  "least-squares | pseudo-inverse")
      ->capture_default_str();
  vqe->add_option("--calibration-shots", vo.calibration_shots,
                  "calibration shots (0: same as --shots)");
  vqe->add_option("--calibration-max-age", vo.calibration_max_age,
                  "rebuild the calibration after this many evaluations");
  vqe->add_flag("--group", vo.group, "measure qubit-wise commuting groups together");
  vqe->add_flag("--analytic", vo.analytic, "infinite-shot sampled path");
  vqe->add_flag("--spsa-calibrate", vo.spsa_calibrate,
                "calibrate the SPSA step gain before iterating");
  vqe->add_flag("--perturb", vo.perturb,
                "seeded uniform(-0.1, 0.1) start offset (default with cg)");
  vqe->add_flag("--no-perturb", vo.no_perturb,
                "start exactly at the reference determinant (default with spsa)");
  vqe->add_option("--hf", vo.hf, "reference bitstring override");
  vqe->add_option("-l,--label", vo.label, "point label (default: file stem)");
  vqe->add_option("-o,--output", vo.output, "result file")->capture_default_str();
  vqe->add_option("--trace", vo.trace, "trace file")->capture_default_str();
  vqe->add_option("--plot", vo.plot, "iteration/energy columns file");
  vqe->add_option("--window", vo.window, "report window")->capture_default_str();
  vqe->add_option("--span", vo.span, "report span")->capture_default_str();

  ExactOptions eo;
  auto* exact = app.add_subcommand("exact", "dense ground state");
  exact->add_option("-H,--hamiltonian", eo.hamiltonian, "Hamiltonian file")->required();
  exact->add_option("-o,--output", eo.output, "result file")->capture_default_str();
  exact->add_option("-l,--label", eo.label, "point label (default: file stem)");

  CalibrateOptions co;
  auto* calibrate = app.add_subcommand("calibrate", "build a readout calibration");
  calibrate->add_option("-n,--noise", co.noise, "noise model file");
  calibrate->add_option("-q,--qubits", co.qubits, "register width")->required();
  calibrate->add_option("-s,--shots", co.shots, "shots per circuit (0: analytic)")
      ->capture_default_str();
  calibrate->add_option("-m,--method", co.method, "complete | tensored")
      ->capture_default_str();
  calibrate->add_option("--seed", co.seed, "seed (default: $QREACT_SEED or 0)");
  calibrate->add_option("-o,--output", co.output, "calibration file")
      ->capture_default_str();

  MitigateOptions mi;
  auto* mitigate_cmd = app.add_subcommand("mitigate", "correct measured counts");
  mitigate_cmd->add_option("-c,--counts", mi.counts, "counts file")->required();
  mitigate_cmd->add_option("-k,--calibration", mi.calibration, "calibration file")
      ->required();
  mitigate_cmd->add_option("-m,--method", mi.method, "least-squares | pseudo-inverse")
      ->capture_default_str();
  mitigate_cmd->add_option("-o,--output", mi.output, "quasi-distribution file")
      ->capture_default_str();

  ProfileOptions po;
  auto* profile = app.add_subcommand("profile", "relative energies of result files");
  profile->add_option("results", po.results, "result files, reference first")
      ->required()
      ->expected(2, -1);
  profile->add_option("--labels", po.labels, "labels overriding the files'")
      ->delimiter(',');
  profile->add_option("-o,--output", po.output, "profile file");
  profile->add_option("--plot", po.plot, "coordinate/energy columns file");

  for (auto* sub : {map, vqe, exact, calibrate, mitigate_cmd, profile})
    sub->add_flag("--timestamp", common.timestamp,
                  "record the wall-clock time in the manifest");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    // --help and --version
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "qreact: error: " << msg << "\n";
    return kExitValidation;
  }

  try {
    if (*map) run_map(mo, common, args, out);
    else if (*gates) run_gates(go, out);
    else if (*vqe) run_vqe(vo, common, args, out);
    else if (*exact) run_exact(eo, common, args, out);
    else if (*calibrate) run_calibrate(co, common, args, out);
    else if (*mitigate_cmd) run_mitigate(mi, common, args, out);
    else if (*profile) run_profile(po, common, args, out);
    return kExitOk;
  } catch (const IoError& e) {
    err << "qreact: error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "qreact: error: " << msg << "\n";
    return kExitValidation;
  }
}

}  // namespace qreact::cli
