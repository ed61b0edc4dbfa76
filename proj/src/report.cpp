#include "pedcon/report.hpp"

namespace pedcon {

void Report::record_violation(Witness w) {
  passed = false;
  ++violations;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

nlohmann::json to_json(const Witness& w) {
  // Coefficients can exceed 2^53, so values travel as decimal strings.
  return {{"index", w.index}, {"value", w.value.get_str()}, {"note", w.note}};
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& w : r.witnesses) wit.push_back(to_json(w));
  return {{"name", r.name},       {"passed", r.passed},   {"checked", r.checked},
          {"violations", r.violations}, {"witnesses", wit}, {"details", r.details}};
}

}  // namespace pedcon
