#include "opanet/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "opanet/errors.hpp"
#include "opanet/version.hpp"

namespace opanet::csv {

std::string format_number(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_table(const sweep::CurveSet& curves, std::ostream& out) {
  for (std::size_t c = 0; c < curves.columns.size(); ++c) {
    if (c) out << ',';
    out << quote_field(curves.columns[c]);
  }
  out << '\n';
  for (std::size_t r = 0; r < curves.rows.size(); ++r) {
    bool first = true;
    if (curves.text_series) {
      out << quote_field(curves.labels[r]);
      first = false;
    }
    for (double v : curves.rows[r]) {
      if (!first) out << ',';
      out << format_number(v);
      first = false;
    }
    out << '\n';
  }
}

namespace {

nlohmann::json spec_to_json(const sweep::SweepSpec& spec) {
  nlohmann::json j;
  j["target"] = spec.target;
  j["swept"] = {{"name", spec.swept.name},
                {"min", spec.swept.min},
                {"max", spec.swept.max},
                {"steps", spec.swept.steps}};
  if (spec.series) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : spec.series->values) {
      nlohmann::json entry{{"label", v.label}};
      if (v.number) entry["value"] = *v.number;
      values.push_back(entry);
    }
    j["series"] = {{"name", spec.series->name}, {"values", values}};
  }
  j["fixed"] = spec.fixed;
  if (!spec.fixed_text.empty()) j["fixed_text"] = spec.fixed_text;
  if (!spec.preset.empty()) j["preset"] = spec.preset;
  return j;
}

nlohmann::json metadata(const sweep::CurveSet& curves,
                        const std::string& config_echo) {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["target"] = curves.spec.target;
  if (!curves.spec.preset.empty()) j["preset"] = curves.spec.preset;
  if (!curves.fiber_used.empty()) j["fiber"] = curves.fiber_used;
  j["columns"] = curves.columns;
  j["rows"] = curves.rows.size();
  j["sweep"] = spec_to_json(curves.spec);
  if (!config_echo.empty()) j["config"] = nlohmann::json::parse(config_echo);
  return j;
}

}  // namespace

std::string metadata_json(const sweep::CurveSet& curves,
                          const std::string& config_echo) {
  return metadata(curves, config_echo).dump(2) + "\n";
}

std::string table_json(const sweep::CurveSet& curves,
                       const std::string& config_echo) {
  nlohmann::json j = metadata(curves, config_echo);
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t r = 0; r < curves.rows.size(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    if (curves.text_series) row.push_back(curves.labels[r]);
    for (double v : curves.rows[r]) row.push_back(v);
    data.push_back(row);
  }
  j["data"] = data;
  return j.dump(2) + "\n";
}

WrittenFiles write_files(const sweep::CurveSet& curves,
                         const std::filesystem::path& out_dir,
                         const std::string& basename,
                         const std::string& format,
                         const std::string& config_echo) {
  if (format != "csv" && format != "json")
    throw InvalidInput("unknown output format '" + format +
                       "' (available: csv, json)");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + out_dir.string() +
                  "': " + ec.message());

  auto write_text = [](const std::filesystem::path& path,
                       const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
  };

  WrittenFiles files;
  if (format == "json") {
    files.table = out_dir / (basename + ".json");
    write_text(files.table, table_json(curves, config_echo));
    return files;
  }
  files.table = out_dir / (basename + ".csv");
  files.metadata = out_dir / (basename + ".json");
  std::ostringstream table;
  write_table(curves, table);
  write_text(files.table, table.str());
  write_text(files.metadata, metadata_json(curves, config_echo));
  return files;
}

}  // namespace opanet::csv
