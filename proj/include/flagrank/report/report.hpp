#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"
#include "flagrank/models/catalog.hpp"

namespace flagrank::report {

inline constexpr int kSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of `flagrank`.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kUnknownModel = 4,
  kInternal = 5,
};

int exit_code_for(ErrorKind kind);

/// Settings shared by all tasks. Unset fields fall back to per-task
/// arguments in the source (`task scan(samples=50)`), then to defaults.
struct Options {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> point;  // "(q1, ..., qn)"
  std::optional<std::string> dist;   // analyzed distribution; default: last declared
  bool timing = false;
};

struct Outcome {
  nlohmann::ordered_json json;
  int exit_code = kOk;
};

/// Runs `tasks` (or the model's own task list when empty; growth and
/// classify when that is empty too). Stops at the first failing task and
/// records it under "error".
Outcome analyze(const dsl::Model& model, std::vector<std::string> tasks, const Options& options,
                const std::string& model_name);

/// Machine-readable error object.
nlohmann::ordered_json error_json(const Error& e);

/// Outcome for failures before any analysis (parse errors, unknown models).
Outcome failure(const Error& e, const std::string& model_name);

std::string render_json(const nlohmann::ordered_json& report);
std::string render_text(const nlohmann::ordered_json& report);

/// Differences between a report and a catalog model's expectations; empty
/// when they agree. Lift models are compared on the lifted analysis.
std::vector<std::string> compare_expected(const models::Expected& expected,
                                          const nlohmann::ordered_json& report);

/// Tasks needed to check a catalog model's expectations.
std::vector<std::string> expectation_tasks(const models::ModelSpec& spec);

}  // namespace flagrank::report
