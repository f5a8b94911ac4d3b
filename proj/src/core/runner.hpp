#pragma once

#include <nlohmann/json.hpp>

#include "models.hpp"

namespace gibbsline {

// Report assembly for the CLI subcommands. Each takes a resolved model and an
// options object (missing keys fall back to defaults) and returns the
// machine-readable run report. Every numeric result carries its certification
// note; timing fields are the only nondeterministic ones.
nlohmann::json run_estimate(const ResolvedModel& model, const nlohmann::json& options);
nlohmann::json run_sweep(const ResolvedModel& model, const nlohmann::json& options);
nlohmann::json run_verify_qbp(const ResolvedModel& model, const nlohmann::json& options);
nlohmann::json run_verify_lr(const ResolvedModel& model, const nlohmann::json& options);
nlohmann::json run_oracle(const ResolvedModel& model, const nlohmann::json& options);

}  // namespace gibbsline
