#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedcon/types.hpp"

namespace pedcon {

struct Witness {
  std::int64_t index = 0;
  Integer value;
  std::string note;
};

/// Outcome of a bounded check: how many instances were tested, how many
/// failed, and the first few failures as witnesses.
struct Report {
  static constexpr std::size_t kMaxWitnesses = 16;

  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
  nlohmann::json details = nlohmann::json::object();

  void record_violation(Witness w);
};

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const Report& r);

}  // namespace pedcon
