#include "lpfact/hits_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lpfact/error.hpp"

namespace lpfact {

namespace {

template <class T>
T parse_number(std::string_view text, const char* field, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw PreconditionViolated("hits.csv", "line " + std::to_string(line) + ": bad " + field + " '" +
                                               std::string(text) + "'");
  return value;
}

}  // namespace

std::string format_valuation(const Valuation& v) {
  return v.exact ? std::to_string(v.value) : ">=" + std::to_string(v.value);
}

Valuation parse_valuation(const std::string& text) {
  if (text.rfind(">=", 0) == 0) return Valuation::at_least(parse_number<std::uint32_t>(text.substr(2), "ord", 0));
  return Valuation::exactly(parse_number<std::uint32_t>(text, "ord", 0));
}

void write_hits_csv(std::ostream& os, const std::vector<HitRecord>& records) {
  os << "p,n,ord,f_id\n";
  for (const auto& r : records) os << r.p << ',' << r.n << ',' << format_valuation(r.ord) << ",f" << r.f_id << '\n';
}

std::string hits_csv_string(const std::vector<HitRecord>& records) {
  std::ostringstream os;
  write_hits_csv(os, records);
  return os.str();
}

std::vector<HitRecord> read_hits_csv(std::istream& is) {
  std::vector<HitRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "p,n,ord,f_id")
        throw PreconditionViolated("hits.csv", "expected header 'p,n,ord,f_id', got '" + line + "'");
      continue;
    }
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cols.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 4)
      throw PreconditionViolated("hits.csv", "line " + std::to_string(lineno) + ": expected 4 columns");
    HitRecord r;
    r.p = parse_number<u64>(cols[0], "p", lineno);
    r.n = parse_number<u64>(cols[1], "n", lineno);
    const std::string ord(cols[2]);
    if (ord.rfind(">=", 0) == 0)
      r.ord = Valuation::at_least(parse_number<std::uint32_t>(cols[2].substr(2), "ord", lineno));
    else
      r.ord = Valuation::exactly(parse_number<std::uint32_t>(cols[2], "ord", lineno));
    if (cols[3].size() < 2 || cols[3][0] != 'f')
      throw PreconditionViolated("hits.csv", "line " + std::to_string(lineno) + ": bad f_id");
    r.f_id = parse_number<std::uint32_t>(cols[3].substr(1), "f_id", lineno);
    out.push_back(r);
  }
  return out;
}

std::vector<HitRecord> read_hits_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolated("hits", "cannot open " + path.string());
  return read_hits_csv(in);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lpfact
