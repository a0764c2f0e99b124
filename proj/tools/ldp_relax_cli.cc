// Copyright 2026 The ldp_relax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner. Each subcommand writes one CSV, to <out>/<name>.csv
// when --out is given and to stdout otherwise.
//
// Exit codes: 0 success, 1 runtime error, 2 invalid config or arguments,
// 3 a check failed in `audit`.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ldp_relax/config.hpp"
#include "ldp_relax/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitAuditFailed = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out_dir;
};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kResourceExhausted:
      return kExitInvalid;
    default:
      return kExitRuntime;
  }
}

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::StatusOr<ldp_relax::ExperimentConfig> LoadConfig(const CommonFlags& flags,
                                                       bool required) {
  ldp_relax::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    absl::StatusOr<ldp_relax::ExperimentConfig> loaded =
        ldp_relax::LoadExperimentConfig(flags.config_path);
    if (!loaded.ok()) return loaded.status();
    cfg = *std::move(loaded);
  } else if (required) {
    return absl::InvalidArgumentError("--config is required");
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.threads) cfg.threads = *flags.threads;
  return cfg;
}

absl::Status Emit(const CommonFlags& flags, const std::string& name,
                  const std::function<void(std::ostream&)>& write) {
  if (flags.out_dir.empty()) {
    write(std::cout);
    std::cout.flush();
    return std::cout ? absl::OkStatus()
                     : absl::InternalError("failed writing stdout");
  }
  std::error_code ec;
  std::filesystem::create_directories(flags.out_dir, ec);
  if (ec) {
    return absl::InternalError("cannot create " + flags.out_dir + ": " +
                               ec.message());
  }
  const std::filesystem::path path =
      std::filesystem::path(flags.out_dir) / (name + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::InternalError("cannot open " + path.string());
  write(out);
  out.close();
  if (!out) return absl::InternalError("failed writing " + path.string());
  std::cerr << "wrote " << path.string() << "\n";
  return absl::OkStatus();
}

int RunKernelTable(const CommonFlags& flags) {
  absl::StatusOr<ldp_relax::ExperimentConfig> cfg = LoadConfig(flags, false);
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<std::vector<ldp_relax::KernelTableRow>> rows =
      ldp_relax::KernelTable(cfg->kernel_table.eps_grid,
                             cfg->kernel_table.m_grid);
  if (!rows.ok()) return Fail(rows.status());
  absl::Status s = Emit(flags, "kernel_table", [&](std::ostream& out) {
    ldp_relax::WriteKernelTableCsv(*rows, out);
  });
  return s.ok() ? kExitOk : Fail(s);
}

int RunSimulate(const CommonFlags& flags, bool attacks_only) {
  absl::StatusOr<ldp_relax::ExperimentConfig> cfg = LoadConfig(flags, true);
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<ldp_relax::SimulationSetup> setup =
      ldp_relax::SimulationSetupFromConfig(*cfg);
  if (!setup.ok()) return Fail(setup.status());
  absl::StatusOr<ldp_relax::SimulationResult> result =
      ldp_relax::RunSimulation(*setup);
  if (!result.ok()) return Fail(result.status());
  absl::Status s =
      attacks_only
          ? Emit(flags, "attack_eval",
                 [&](std::ostream& out) { ldp_relax::WriteAttackCsv(*result, out); })
          : Emit(flags, "simulate", [&](std::ostream& out) {
              ldp_relax::WriteSimulationCsv(*result, out);
            });
  return s.ok() ? kExitOk : Fail(s);
}

int RunCompareRappor(const CommonFlags& flags) {
  absl::StatusOr<ldp_relax::ExperimentConfig> cfg = LoadConfig(flags, true);
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<ldp_relax::RapporSetup> setup =
      ldp_relax::RapporSetupFromConfig(*cfg);
  if (!setup.ok()) return Fail(setup.status());
  absl::StatusOr<ldp_relax::RapporComparison> result =
      ldp_relax::RunRapporComparison(*setup);
  if (!result.ok()) return Fail(result.status());
  absl::Status s = Emit(flags, "compare_rappor", [&](std::ostream& out) {
    ldp_relax::WriteRapporCsv(*result, out);
  });
  return s.ok() ? kExitOk : Fail(s);
}

int RunAudit(const CommonFlags& flags) {
  absl::StatusOr<ldp_relax::ExperimentConfig> cfg = LoadConfig(flags, false);
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<ldp_relax::AuditReport> report = ldp_relax::RunAudit(
      cfg->audit, cfg->rappor.value_or(ldp_relax::RapporSpec{}));
  if (!report.ok()) return Fail(report.status());
  absl::Status s = Emit(flags, "audit", [&](std::ostream& out) {
    ldp_relax::WriteAuditCsv(*report, out);
  });
  if (!s.ok()) return Fail(s);
  std::size_t failed = 0;
  for (const ldp_relax::AuditRow& row : report->rows) failed += !row.pass;
  std::cerr << "audit: " << report->rows.size() - failed << "/"
            << report->rows.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy relaxation of randomized response: experiments"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "JSON experiment config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "Master seed (overrides config)");
    cmd->add_option("--threads", flags.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out_dir,
                    "Output directory (default: CSV to stdout)");
    return cmd;
  };
  CLI::App* kernel_table = add_common(app.add_subcommand(
      "kernel-table", "Relaxation kernel probabilities for an eps grid"));
  CLI::App* simulate = add_common(app.add_subcommand(
      "simulate", "Per-round frequency estimates across trials"));
  CLI::App* compare = add_common(app.add_subcommand(
      "compare-rappor", "Relaxation versus RAPPOR noisy sampling"));
  CLI::App* attack = add_common(
      app.add_subcommand("attack-eval", "Inference attack error rates"));
  CLI::App* audit = add_common(
      app.add_subcommand("audit", "Exhaustive privacy checks on small grids"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*kernel_table) return RunKernelTable(flags);
  if (*simulate) return RunSimulate(flags, /*attacks_only=*/false);
  if (*attack) return RunSimulate(flags, /*attacks_only=*/true);
  if (*compare) return RunCompareRappor(flags);
  if (*audit) return RunAudit(flags);
  return kExitInvalid;
}
