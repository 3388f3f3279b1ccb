#pragma once

#include <string>

#include "core/config.hpp"

namespace chainstore {

/// Status values shared with the C API and the CLI exit codes.
enum class RunStatus : int {
  Ok = 0,
  InvalidConfig = 2,
  VerificationFailed = 3,
  NumericalDegeneracy = 4,
  InternalError = 5,
};

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string message;  // human-readable status detail
  std::string json;     // machine payload (always set on success)
  std::string csv;      // tabular payload where the command has one
};

/// Executes one command ("solve", "regions", "sweep", "simulate", "verify",
/// "voi") against a config JSON document. Never throws; failures are encoded
/// in the status/message.
RunResult run_command(const std::string& command, const std::string& config_json);

}  // namespace chainstore
