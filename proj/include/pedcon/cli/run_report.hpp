#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedcon/report.hpp"

namespace pedcon::cli {

inline constexpr const char* kSchema = "pedcon.report/1";

enum class Status { proven, verified_to_bound, refuted, evidence_only, error };

std::string to_string(Status s);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// A cached series file that fed the computation.
struct Artifact {
  std::string path;
  std::string sha256;
  bool loaded_from_cache = false;
};

struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  Status status = Status::error;
  std::vector<Witness> witnesses;
  nlohmann::json results = nlohmann::json::object();
  std::optional<Table> table;
  std::vector<Artifact> artifacts;
  std::optional<nlohmann::json> timings;  // only when asked for; keeps output reproducible
  std::string error;
};

enum class Format { human, json, csv };

std::optional<Format> parse_format(const std::string& text);

nlohmann::json to_json(const RunReport& r);

/// Deterministic rendering. JSON is the versioned schema; CSV is the table
/// when there is one and the witness list otherwise.
std::string format_report(const RunReport& r, Format f);

/// 0 for proven, verified-to-bound and evidence-only; 1 for refuted; 2 for
/// errors.
int exit_code(Status s);

}  // namespace pedcon::cli
