#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "opanet/sweep.hpp"

namespace opanet::csv {

// Decimal text with up to 12 significant digits (printf %.12g semantics),
// independent of the global locale. Used for every number that leaves the
// tool, so identical runs produce identical bytes.
std::string format_number(double value);

// Minimal RFC 4180: fields containing commas, quotes, or line breaks are
// quoted and embedded quotes doubled. Lines end with LF.
std::string quote_field(const std::string& field);

// Header row of column names, then one line per row.
void write_table(const sweep::CurveSet& curves, std::ostream& out);

// Sidecar describing what produced the table: tool version, target, preset,
// fiber preset, the full sweep description, and the column names. A
// non-empty config_echo (JSON text) is embedded under "config" so the
// effective configuration travels with the data.
std::string metadata_json(const sweep::CurveSet& curves,
                          const std::string& config_echo = "");

// The whole table as a single JSON document (metadata plus a "data" array),
// for --format json.
std::string table_json(const sweep::CurveSet& curves,
                       const std::string& config_echo = "");

struct WrittenFiles {
  std::filesystem::path table;
  std::filesystem::path metadata;  // empty in json mode (self-describing)
};

// Writes <basename>.csv plus <basename>.json under out_dir (format "csv"),
// or a single self-describing <basename>.json (format "json"). Creates the
// directory if needed; filesystem trouble throws IoError.
WrittenFiles write_files(const sweep::CurveSet& curves,
                         const std::filesystem::path& out_dir,
                         const std::string& basename,
                         const std::string& format = "csv",
                         const std::string& config_echo = "");

}  // namespace opanet::csv
