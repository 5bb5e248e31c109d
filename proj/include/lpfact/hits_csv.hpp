#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpfact/sieve.hpp"

namespace lpfact {

/// hits.csv: header "p,n,ord,f_id", LF endings. ord is decimal when exact and
/// ">=k" when only a lower bound is known; f_id is "f<index>".
void write_hits_csv(std::ostream& os, const std::vector<HitRecord>& records);
std::string hits_csv_string(const std::vector<HitRecord>& records);

/// Reads hits.csv. An empty stream (no header) yields no records.
std::vector<HitRecord> read_hits_csv(std::istream& is);
std::vector<HitRecord> read_hits_csv(const std::filesystem::path& path);

std::string format_valuation(const Valuation& v);
Valuation parse_valuation(const std::string& text);

/// Writes via a sibling temp file and rename, so readers never observe a
/// partially written artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lpfact
