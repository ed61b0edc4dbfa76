#include "pedcon/cli/run_report.hpp"

#include <algorithm>
#include <sstream>

namespace pedcon::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_field(cells[i]);
  }
  out << '\n';
}

void write_human_table(std::ostringstream& out, const Table& t) {
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << "  " << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
    }
    out << '\n';
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::proven: return "proven";
    case Status::verified_to_bound: return "verified-to-bound";
    case Status::refuted: return "refuted";
    case Status::evidence_only: return "evidence-only";
    case Status::error: return "error";
  }
  return "error";
}

std::optional<Format> parse_format(const std::string& text) {
  if (text == "human") return Format::human;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  return std::nullopt;
}

int exit_code(Status s) {
  switch (s) {
    case Status::refuted: return 1;
    case Status::error: return 2;
    default: return 0;
  }
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& w : r.witnesses) wit.push_back(pedcon::to_json(w));
  nlohmann::json arts = nlohmann::json::array();
  for (const auto& a : r.artifacts) {
    // Whether the file was freshly written is left out so that a cold and a
    // warm run print the same bytes.
    arts.push_back({{"path", a.path}, {"sha256", a.sha256}});
  }
  nlohmann::json out = {{"schema", kSchema},     {"command", r.command}, {"parameters", r.parameters},
                        {"status", to_string(r.status)}, {"witnesses", wit}, {"results", r.results},
                        {"artifacts", arts}};
  if (r.table) out["table"] = {{"columns", r.table->columns}, {"rows", r.table->rows}};
  if (r.timings) out["timings"] = *r.timings;
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

std::string format_report(const RunReport& r, Format f) {
  std::ostringstream out;
  switch (f) {
    case Format::json:
      out << to_json(r).dump(2) << '\n';
      break;
    case Format::csv:
      if (r.table) {
        write_csv_row(out, r.table->columns);
        for (const auto& row : r.table->rows) write_csv_row(out, row);
      } else {
        write_csv_row(out, {"index", "value", "note"});
        for (const auto& w : r.witnesses) write_csv_row(out, {std::to_string(w.index), w.value.get_str(), w.note});
      }
      break;
    case Format::human: {
      out << r.command << ": " << to_string(r.status) << '\n';
      if (!r.error.empty()) out << "  error: " << r.error << '\n';
      if (!r.parameters.empty()) out << "  parameters: " << r.parameters.dump() << '\n';
      for (const auto& [key, value] : r.results.items()) {
        out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
      if (r.table) write_human_table(out, *r.table);
      if (!r.witnesses.empty()) {
        out << "  witnesses:\n";
        for (const auto& w : r.witnesses) out << "    n=" << w.index << " value=" << w.value << "  " << w.note << '\n';
      }
      for (const auto& a : r.artifacts) {
        out << "  artifact: " << a.path << " sha256=" << a.sha256 << (a.loaded_from_cache ? " (cached)" : "") << '\n';
      }
      if (r.timings) out << "  timings: " << r.timings->dump() << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace pedcon::cli
