#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "berkdyn/error.hpp"

namespace berkdyn::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  long prime = 3;
  long precision = 60;
  std::optional<long> ext_square;
  int max_period = 4;
  std::string out;
  int jobs = 1;
};

enum ExitCode { kOk = 0, kParse = 2, kDomain = 3, kUnsupported = 4 };

struct CommandResult {
  Json report;
  int exit_code = kOk;
};

int exit_code_for(const Error& e);

/// Kind, image, periodicity up to max_period, multiplier or local degree, class.
CommandResult cmd_classify(const RunConfig& cfg, const std::string& map, const std::string& point);
/// Periodic point records of period dividing n; exit 4 when a cluster of
/// degree >= 3 stayed unsolved.
CommandResult cmd_periodic(const RunConfig& cfg, const std::string& map, int n);
/// Bifurcation scan of a family over the points listed in `points`.
CommandResult cmd_scan(const RunConfig& cfg, const std::string& family, std::istream& points, int n_max);
/// Shift-conjugacy check of the coding for z^2 + lambda0 on all words of length `len`.
CommandResult cmd_cantor(const RunConfig& cfg, const std::string& lambda, int len);

/// Byte-stable rendering used for every report.
std::string render(const Json& j);

}  // namespace berkdyn::cli
