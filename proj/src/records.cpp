#include "tas/records.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tas/error.hpp"

namespace tas::records {

using tascore::BenchmarkRecord;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [end, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && end == last;
}

bool parse_int64(std::string_view s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [end, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && end == last;
}

bool parse_int(std::string_view s, int& out) {
  std::int64_t v;
  if (!parse_int64(s, v) || v < INT_MIN || v > INT_MAX) return false;
  out = int(v);
  return true;
}

// Embed raw JSON value text into an object; wraps text that is not valid
// JSON as a JSON string so the output file always parses.
ordered_json raw_or_string(const std::string& text) {
  ordered_json v = ordered_json::parse(text, nullptr, false);
  if (v.is_discarded()) return ordered_json(text);
  return v;
}

void check_writable(const RecordFile& file) {
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    if (auto problem = validate(file.records[i]))
      throw InvalidInputError("record " + std::to_string(i) + ": " + *problem);
  }
}

}  // namespace

std::optional<std::string> validate(const BenchmarkRecord& r) {
  if (r.label.empty()) return "label is empty";
  if (r.family.empty()) return "family is empty";
  if (r.degree < 1) return "degree must be >= 1";
  if (r.dim != 2 && r.dim != 3) return "dim must be 2 or 3";
  if (!std::isfinite(r.h) || r.h <= 0.0) return "h must be finite and > 0";
  if (r.n_dofs < 1) return "n_dofs must be >= 1";
  if (!std::isfinite(r.l2_error) || r.l2_error <= 0.0)
    return "l2_error must be finite and > 0";
  if (!std::isfinite(r.time_seconds) || r.time_seconds <= 0.0)
    return "time_seconds must be finite and > 0";
  if (r.n_procs < 1) return "n_procs must be >= 1";
  return std::nullopt;
}

// ---- JSON lines -------------------------------------------------------------

void write_jsonl(std::ostream& out, const RecordFile& file) {
  check_writable(file);
  ordered_json header;
  header["schema_version"] = schema_version;
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : file.metadata) meta[key] = raw_or_string(value);
  header["metadata"] = meta;
  out << header.dump() << '\n';

  for (const BenchmarkRecord& r : file.records) {
    ordered_json j;
    j["label"] = r.label;
    j["family"] = r.family;
    j["degree"] = r.degree;
    j["dim"] = r.dim;
    j["h"] = r.h;
    j["n_dofs"] = r.n_dofs;
    j["l2_error"] = r.l2_error;
    j["time_seconds"] = r.time_seconds;
    j["n_procs"] = r.n_procs;
    if (!r.extra.empty()) {
      ordered_json extra = ordered_json::object();
      for (const auto& [key, value] : r.extra) extra[key] = raw_or_string(value);
      j["extra"] = extra;
    }
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write_jsonl: stream write failed");
}

ReadResult read_jsonl(std::istream& in) {
  ReadResult result;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (!header_seen) {
      if (j.is_discarded() || !j.is_object() || !j.contains("schema_version"))
        throw FormatError("jsonl row 1: expected a header object with "
                          "schema_version");
      if (!j["schema_version"].is_number_integer() ||
          j["schema_version"].get<int>() != schema_version)
        throw FormatError("jsonl header: unsupported schema_version " +
                          j["schema_version"].dump() + " (expected " +
                          std::to_string(schema_version) + ")");
      if (j.contains("metadata")) {
        if (!j["metadata"].is_object())
          throw FormatError("jsonl header: metadata must be an object");
        for (const auto& [key, value] : j["metadata"].items())
          result.file.metadata.emplace_back(key, value.dump());
      }
      header_seen = true;
      continue;
    }

    if (j.is_discarded() || !j.is_object()) {
      result.diagnostics.push_back({row, "not a JSON object; row skipped"});
      continue;
    }

    BenchmarkRecord r;
    std::string problem;
    auto need_string = [&](const char* key, std::string& dst) {
      if (!j.contains(key) || !j[key].is_string()) {
        if (problem.empty()) problem = std::string(key) + " missing or not a string";
        return;
      }
      dst = j[key].get<std::string>();
    };
    auto need_int = [&](const char* key, auto& dst) {
      if (!j.contains(key) || !j[key].is_number_integer()) {
        if (problem.empty()) problem = std::string(key) + " missing or not an integer";
        return;
      }
      dst = j[key].get<std::decay_t<decltype(dst)>>();
    };
    auto need_number = [&](const char* key, double& dst) {
      if (!j.contains(key) || !j[key].is_number()) {
        if (problem.empty()) problem = std::string(key) + " missing or not a number";
        return;
      }
      dst = j[key].get<double>();
    };
    need_string("label", r.label);
    need_string("family", r.family);
    need_int("degree", r.degree);
    need_int("dim", r.dim);
    need_number("h", r.h);
    need_int("n_dofs", r.n_dofs);
    need_number("l2_error", r.l2_error);
    need_number("time_seconds", r.time_seconds);
    need_int("n_procs", r.n_procs);
    if (problem.empty() && j.contains("extra")) {
      if (!j["extra"].is_object()) {
        problem = "extra is not an object";
      } else {
        for (const auto& [key, value] : j["extra"].items())
          r.extra.emplace_back(key, value.dump());
      }
    }
    if (problem.empty())
      if (auto invalid = validate(r)) problem = *invalid;
    if (!problem.empty()) {
      result.diagnostics.push_back({row, problem + "; row skipped"});
      continue;
    }
    result.file.records.push_back(std::move(r));
  }

  if (!header_seen)
    throw FormatError("jsonl: empty input; expected a header line");
  return result;
}

// ---- CSV --------------------------------------------------------------------

namespace {

bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_csv_field(std::ostream& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

// RFC 4180 parse of the whole text; quoted fields may contain separators and
// newlines.  Returns rows of fields plus the 1-based physical row each
// record started on.
struct CsvRow {
  std::size_t row = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  std::size_t line = 1, row_start = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) rows.push_back({row_start, std::move(fields)});
    fields.clear();
    row_start = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;  // handled by the following '\n'
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
    }
  }
  if (!field.empty() || !fields.empty()) end_row();
  return rows;
}

std::vector<std::string> split_header(std::string_view header) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= header.size()) {
    std::size_t comma = header.find(',', start);
    if (comma == std::string_view::npos) {
      names.emplace_back(header.substr(start));
      break;
    }
    names.emplace_back(header.substr(start, comma - start));
    start = comma + 1;
  }
  return names;
}

}  // namespace

void write_csv(std::ostream& out, const RecordFile& file) {
  check_writable(file);
  std::set<std::string> extra_keys;
  for (const BenchmarkRecord& r : file.records)
    for (const auto& [key, value] : r.extra) extra_keys.insert(key);

  out << csv_base_header;
  for (const std::string& key : extra_keys) {
    out << ',';
    write_csv_field(out, key);
  }
  out << '\n';

  for (const BenchmarkRecord& r : file.records) {
    write_csv_field(out, r.label);
    out << ',';
    write_csv_field(out, r.family);
    out << ',' << r.degree << ',' << r.dim << ',' << format_double(r.h) << ','
        << r.n_dofs << ',' << format_double(r.l2_error) << ','
        << format_double(r.time_seconds) << ',' << r.n_procs;
    for (const std::string& key : extra_keys) {
      out << ',';
      auto it = std::find_if(r.extra.begin(), r.extra.end(),
                             [&](const auto& kv) { return kv.first == key; });
      if (it != r.extra.end()) write_csv_field(out, it->second);
    }
    out << '\n';
  }
  if (!out) throw Error("write_csv: stream write failed");
}

ReadResult read_csv(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<CsvRow> rows = parse_csv(buf.str());
  if (rows.empty()) throw FormatError("csv: empty input; expected a header row");

  std::vector<std::string> base = split_header(csv_base_header);
  const std::vector<std::string>& header = rows[0].fields;
  if (header.size() < base.size())
    throw FormatError("csv header: expected at least " +
                      std::to_string(base.size()) + " columns, got " +
                      std::to_string(header.size()));
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (header[i] != base[i])
      throw FormatError("csv header: column " + std::to_string(i + 1) +
                        " is '" + header[i] + "', expected '" + base[i] + "'");
  }
  std::vector<std::string> extra_names(header.begin() + long(base.size()),
                                       header.end());

  ReadResult result;
  for (std::size_t ri = 1; ri < rows.size(); ++ri) {
    const CsvRow& row = rows[ri];
    if (row.fields.size() != header.size()) {
      result.diagnostics.push_back(
          {row.row, "expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(row.fields.size()) +
                        "; row skipped"});
      continue;
    }
    BenchmarkRecord r;
    r.label = row.fields[0];
    r.family = row.fields[1];
    std::string problem;
    auto bad = [&](const char* what) {
      if (problem.empty()) problem = std::string(what) + " is not parseable";
    };
    if (!parse_int(row.fields[2], r.degree)) bad("degree");
    if (!parse_int(row.fields[3], r.dim)) bad("dim");
    if (!parse_double(row.fields[4], r.h)) bad("h");
    if (!parse_int64(row.fields[5], r.n_dofs)) bad("n_dofs");
    if (!parse_double(row.fields[6], r.l2_error)) bad("l2_error");
    if (!parse_double(row.fields[7], r.time_seconds)) bad("time_seconds");
    if (!parse_int(row.fields[8], r.n_procs)) bad("n_procs");
    if (problem.empty()) {
      for (std::size_t e = 0; e < extra_names.size(); ++e) {
        const std::string& cell = row.fields[base.size() + e];
        if (!cell.empty()) r.extra.emplace_back(extra_names[e], cell);
      }
      if (auto invalid = validate(r)) problem = *invalid;
    }
    if (!problem.empty()) {
      result.diagnostics.push_back({row.row, problem + "; row skipped"});
      continue;
    }
    result.file.records.push_back(std::move(r));
  }
  return result;
}

// ---- path plumbing ----------------------------------------------------------

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return ext;
}

}  // namespace

void write_jsonl(const std::filesystem::path& path, const RecordFile& file) {
  auto out = open_out(path);
  write_jsonl(out, file);
}

void write_csv(const std::filesystem::path& path, const RecordFile& file) {
  auto out = open_out(path);
  write_csv(out, file);
}

ReadResult read_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_jsonl(in);
}

ReadResult read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

void write_records(const std::filesystem::path& path, const RecordFile& file) {
  std::string ext = lower_extension(path);
  if (ext == ".jsonl")
    write_jsonl(path, file);
  else if (ext == ".csv")
    write_csv(path, file);
  else
    throw FormatError("unsupported record file extension '" + ext +
                      "' (expected .jsonl or .csv)");
}

ReadResult read_records(const std::filesystem::path& path) {
  std::string ext = lower_extension(path);
  if (ext == ".jsonl") return read_jsonl(path);
  if (ext == ".csv") return read_csv(path);
  throw FormatError("unsupported record file extension '" + ext +
                    "' (expected .jsonl or .csv)");
}

}  // namespace tas::records
