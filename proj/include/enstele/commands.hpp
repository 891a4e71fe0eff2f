// Copyright 2026 The enstele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command implementations behind the `enstele` executable. Each command
// builds a Report, which renders to an aligned table, CSV or JSON.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "enstele/linalg.hpp"
#include "enstele/protocol.hpp"

namespace enstele {

inline constexpr std::uint64_t kDefaultSeed = 20260116;

enum class OutputFormat { Table, Csv, Json };

/// Accepts "table", "csv" or "json"; throws std::invalid_argument otherwise.
OutputFormat parse_format(const std::string &name);

enum class Command { BellAudit, Teleport, Sweep, PautAudit, AppendixCheck };

struct RunConfig {
    double c11 = 0.5;
    double c12_re = 0.0;
    double c12_im = 0.0;
    std::string prep = "bell1";
    /// "twobits", "ping" or "preagreed". Empty selects the natural message for
    /// the preparation and bob_acts.
    std::string message;
    bool bob_acts = true;
    int resolution = 101;
    int phases = 4;
    std::size_t samples = 100;
    std::uint64_t seed = kDefaultSeed;
    OutputFormat format = OutputFormat::Table;
    double tol = tol::kEqual;

    /// Throws InvalidStateError naming the violated invariant.
    CoefficientVector coefficients() const;
};

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::pair<std::string, ComplexMatrix>> matrices;
    std::vector<std::string> notes;
    /// False when an audited quantity is outside tolerance.
    bool passed = true;
};

/// CSV carries the header and rows only. Doubles use 17 significant digits.
std::string render(const Report &report, OutputFormat format);

Report cmd_bell_audit(const RunConfig &cfg);
Report cmd_teleport(const RunConfig &cfg);
Report cmd_sweep(const RunConfig &cfg);
Report cmd_paut_audit(const RunConfig &cfg);
Report cmd_appendix_check(const RunConfig &cfg);

/// Validates the coefficients, then dispatches.
Report run_command(Command command, const RunConfig &cfg);

/// 0 when the report passed, 1 otherwise.
int exit_status(const Report &report);

inline constexpr int kExitInvalidInput = 2;

}  // namespace enstele
