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

#pragma once

// Command-line surface and the versioned file schemas it reads and writes.

#include "qreact/backends.hpp"
#include "qreact/mitigation.hpp"
#include "qreact/pauli.hpp"
#include "qreact/vqe.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qreact::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr double kKcalPerMilliHartree = 0.6275095;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Runs one subcommand. `args` excludes the program name. Diagnostics go to
/// `err` as a single line; the return value is the process exit status.
int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// ---- reaction profiles ----------------------------------------------------

struct ProfilePoint {
  std::string label;
  double energy = 0.0;       // Ha
  double uncertainty = 0.0;  // Ha
};

struct ProfileRow {
  ProfilePoint point;
  double relative_mha = 0.0;
  double relative_kcal = 0.0;
  double relative_uncertainty_mha = 0.0;
};

struct ProfileReport {
  std::vector<ProfileRow> rows;
};

/// Energies relative to the first point; uncertainties combine in quadrature
/// with the reference's.
ProfileReport profile_report(const std::vector<ProfilePoint>& points);

/// Fixed-point rendering at one decimal place; never prints "-0.0".
std::string format_fixed1(double value);

/// Human-readable table and the plot-ready column text.
std::string render_table(const ProfileReport& report);
std::string render_plot_columns(const ProfileReport& report);

// ---- schemas --------------------------------------------------------------

/// 64-bit FNV-1a over raw bytes, rendered as 16 hex digits.
std::string fnv1a64(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Parses a JSON document and checks its schema version and kind.
Json parse_document(const std::string& text, std::string_view kind,
                    const std::string& source);
Json parse_document(const std::string& text,
                    const std::vector<std::string_view>& kinds,
                    const std::string& source);

Json hamiltonian_to_json(const QubitHamiltonian& h);
QubitHamiltonian hamiltonian_from_json(const Json& j);

Json noise_to_json(const NoiseModel& nm);
NoiseModel noise_from_json(const Json& j);

Json counts_to_json(const Counts& c);
Counts counts_from_json(const Json& j);

Json calibration_to_json(const CalibrationMatrix& c);
CalibrationMatrix calibration_from_json(const Json& j);

Json trace_to_json(const VqeTrace& t);
VqeTrace trace_from_json(const Json& j);

/// Pretty-printed document with a trailing newline.
std::string dump(const Json& j);

}  // namespace qreact::cli
