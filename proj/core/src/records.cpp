#include "ecsym/records.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ecsym {

namespace {

std::optional<Int> parse_int(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  Int v;
  if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0) return std::nullopt;
  return v;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> out;
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

CurveRecord make_record(const std::string& name, std::size_t lineno, std::string label,
                        Int conductor, std::string iso_class, int class_index,
                        const std::vector<Int>& a) {
  try {
    RationalEC E(a[0], a[1], a[2], a[3], a[4]);
    if (label.empty()) {
      std::ostringstream os;
      os << conductor << iso_class << class_index;
      label = os.str();
    }
    return CurveRecord{std::move(label), std::move(conductor), std::move(iso_class),
                       class_index,      std::move(E),         {},
                       {}};
  } catch (const std::invalid_argument& e) {
    fail(name, lineno, e.what());
  }
}

}  // namespace

std::string CurveRecord::class_key() const {
  std::ostringstream os;
  os << conductor << iso_class;
  return os.str();
}

std::vector<CurveRecord> parse_records(std::istream& in, IngestFormat fmt,
                                       const std::string& name) {
  std::vector<CurveRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;

    if (fmt == IngestFormat::Csv && !header_seen) {
      if (line != "label,conductor,iso_class,class_index,a1,a2,a3,a4,a6")
        fail(name, lineno, "unrecognized csv header");
      header_seen = true;
      continue;
    }

    std::vector<std::string> tok =
        fmt == IngestFormat::Csv ? split_csv(line) : split_ws(line);
    std::string label;
    std::size_t base;
    if (fmt == IngestFormat::Csv) {
      if (tok.size() != 9) fail(name, lineno, "expected 9 csv fields");
      label = strip(tok[0]);
      base = 1;
    } else {
      if (tok.size() != 8 && tok.size() != 10)
        fail(name, lineno, "expected 8 fields (plus optional rank torsion)");
      base = 0;
    }

    auto cond = parse_int(strip(tok[base]));
    if (!cond || *cond <= 0) fail(name, lineno, "bad conductor field");
    std::string cls = strip(tok[base + 1]);
    if (cls.empty()) fail(name, lineno, "empty iso_class field");
    auto idx = parse_int(strip(tok[base + 2]));
    if (!idx || *idx <= 0 || !idx->fits_sint_p()) fail(name, lineno, "bad class_index field");

    std::vector<Int> a(5);
    for (int i = 0; i < 5; ++i) {
      auto v = parse_int(strip(tok[base + 3 + std::size_t(i)]));
      if (!v) fail(name, lineno, "bad coefficient field");
      a[std::size_t(i)] = *v;
    }
    out.push_back(make_record(name, lineno, std::move(label), std::move(*cond),
                              std::move(cls), int(idx->get_si()), a));
  }
  return out;
}

std::vector<CurveRecord> ingest(const std::string& path, IngestFormat fmt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_records(in, fmt, path);
}

IsogenyMatrix ingest_isogeny_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  IsogenyMatrix out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    auto tok = split_ws(line);
    if (tok.size() < 2) fail(path, lineno, "expected label and at least one degree");
    std::vector<int> row;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      auto v = parse_int(tok[i]);
      if (!v || *v < 0 || !v->fits_sint_p()) fail(path, lineno, "bad degree entry");
      row.push_back(int(v->get_si()));
    }
    if (!out.emplace(tok[0], std::move(row)).second)
      fail(path, lineno, "duplicate label " + tok[0]);
  }
  return out;
}

void audit_conductors(const std::vector<CurveRecord>& recs) {
  for (const auto& r : recs) {
    Int n = conductor(r.curve).value();
    if (n != r.conductor)
      throw std::runtime_error("conductor audit failed for " + r.label + ": file says " +
                               r.conductor.get_str() + ", recomputed " + n.get_str());
  }
}

}  // namespace ecsym
