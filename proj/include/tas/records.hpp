#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tas/tascore.hpp"

namespace tas::records {

// On-disk schema revision for the JSON-lines format.  The first line of a
// .jsonl record file is a header object {"schema_version": 1, "metadata":
// {...}}; every following non-empty line is one benchmark record.
inline constexpr int schema_version = 1;

// Fixed leading columns of the CSV format, in this exact order.  Extra
// annotation keys appear after these, sorted by name.
inline constexpr std::string_view csv_base_header =
    "label,family,degree,dim,h,n_dofs,l2_error,time_seconds,n_procs";

// A record collection plus free-form file metadata.  Metadata values are raw
// JSON value text, like BenchmarkRecord::extra; the CSV format has no place
// for metadata and drops it.
struct RecordFile {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<tascore::BenchmarkRecord> records;
};

// A skipped or repaired row.  `row` is the 1-based physical row in the file,
// counting the header, so the first record row is 2.
struct Diagnostic {
  std::size_t row = 0;
  std::string message;
};

// Result of reading: everything that parsed and validated, plus one
// diagnostic per row that did not.  Malformed rows are never fatal; a
// malformed or version-mismatched header is (FormatError).
struct ReadResult {
  RecordFile file;
  std::vector<Diagnostic> diagnostics;
};

// Field-level validation shared by readers and writers.  Returns the first
// problem, or nullopt for a well-formed record.
std::optional<std::string> validate(const tascore::BenchmarkRecord& record);

// Writers emit canonical files and throw InvalidInputError on the first
// invalid record.  Floating-point fields use shortest round-trip formatting.
void write_jsonl(std::ostream& out, const RecordFile& file);
void write_csv(std::ostream& out, const RecordFile& file);
void write_jsonl(const std::filesystem::path& path, const RecordFile& file);
void write_csv(const std::filesystem::path& path, const RecordFile& file);

ReadResult read_jsonl(std::istream& in);
ReadResult read_csv(std::istream& in);
ReadResult read_jsonl(const std::filesystem::path& path);
ReadResult read_csv(const std::filesystem::path& path);

// Dispatch on the file extension: .jsonl or .csv (case-insensitive), anything
// else is a FormatError.
void write_records(const std::filesystem::path& path, const RecordFile& file);
ReadResult read_records(const std::filesystem::path& path);

}  // namespace tas::records
