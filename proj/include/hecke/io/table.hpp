#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/hecke_algebra.hpp"
#include "hecke/io/config.hpp"
#include "hecke/parabolic.hpp"

namespace hecke::io {

// Exported results. Elements are keyed by their normal-form words with
// letters joined by '.', the identity being "". A section holds columns
// x -> y -> polynomial; "sets" holds labels attached to elements (primes).
struct Table {
  using Column = std::map<std::string, LaurentPolynomial>;
  std::string kind;
  Json meta = Json::object();
  std::map<std::string, std::map<std::string, Column>> sections;
  std::map<std::string, std::set<std::string>> sets;

  friend bool operator==(const Table& a, const Table& b) {
    return a.kind == b.kind && a.meta == b.meta && a.sections == b.sections && a.sets == b.sets;
  }
};

inline std::string element_key(const CoxeterGroup& W, ElementId x) { return W.format(x, ".", ""); }

inline Table::Column column_of(const CoxeterGroup& W, const HeckeElement& h) {
  Table::Column c;
  for (const auto& [y, f] : h.coords) c[element_key(W, y)] = f;
  return c;
}
inline Table::Column column_of(const CoxeterGroup& W, const ParabolicElement& m) {
  Table::Column c;
  for (const auto& [y, f] : m.coords) c[element_key(W, y)] = f;
  return c;
}

// ---- Laurent polynomials ----

inline Json laurent_to_json(const LaurentPolynomial& f) {
  Json j = Json::object();
  for (const auto& [e, c] : f.terms()) {
    if (c.fits_slong_p())
      j[std::to_string(e)] = c.get_si();
    else
      j[std::to_string(e)] = c.get_str();  // big coefficients travel as strings
  }
  return j;
}

inline LaurentPolynomial laurent_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("polynomial: expected an object");
  std::map<int, mpz_class> t;
  for (const auto& [k, v] : j.items()) {
    int e = std::stoi(k);
    if (v.is_number_integer())
      t[e] += mpz_class(v.get<long>());
    else if (v.is_string())
      t[e] += mpz_class(v.get<std::string>());
    else
      throw std::invalid_argument("polynomial: coefficients must be integers");
  }
  return LaurentPolynomial::from_terms(t);
}

// CSV cell form "exp:coeff;exp:coeff", ascending exponents; "0" for zero.
inline std::string laurent_to_cell(const LaurentPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e) + ":" + c.get_str();
  }
  return out;
}

inline LaurentPolynomial laurent_from_cell(const std::string& cell) {
  std::map<int, mpz_class> t;
  if (cell == "0") return {};
  std::stringstream ss(cell);
  std::string term;
  while (std::getline(ss, term, ';')) {
    auto colon = term.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad polynomial cell '" + cell + "'");
    t[std::stoi(term.substr(0, colon))] += mpz_class(term.substr(colon + 1));
  }
  return LaurentPolynomial::from_terms(t);
}

// ---- JSON ----

inline Json table_to_json(const Table& t) {
  Json j;
  j["format"] = "hecke-table";
  j["version"] = 1;
  j["kind"] = t.kind;
  j["meta"] = t.meta;
  Json secs = Json::object();
  for (const auto& [name, cols] : t.sections) {
    Json s = Json::object();
    for (const auto& [x, col] : cols) {
      Json c = Json::object();
      for (const auto& [y, f] : col) c[y] = laurent_to_json(f);
      s[x] = c;
    }
    secs[name] = s;
  }
  j["sections"] = secs;
  Json sets = Json::object();
  for (const auto& [x, labels] : t.sets) sets[x] = labels;
  j["sets"] = sets;
  return j;
}

inline std::string table_to_json_string(const Table& t) { return table_to_json(t).dump(2) + "\n"; }

inline Table table_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "hecke-table") throw std::invalid_argument("not a hecke-table document");
  if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported table version");
  Table t;
  t.kind = j.at("kind").get<std::string>();
  t.meta = j.at("meta");
  for (const auto& [name, cols] : j.at("sections").items())
    for (const auto& [x, col] : cols.items()) {
      auto& dst = t.sections[name][x];
      for (const auto& [y, f] : col.items()) dst[y] = laurent_from_json(f);
    }
  for (const auto& [x, labels] : j.at("sets").items()) t.sets[x] = labels.get<std::set<std::string>>();
  return t;
}

// ---- CSV ----
// line 1: "# kind=<kind> meta=<compact json>"
// line 2: "section,x,y,value"
// then one row per (x, y) pair; set labels use section "#set", the label in
// column y and an empty value. Element keys never contain commas.

inline std::string table_to_csv(const Table& t) {
  std::ostringstream out;
  out << "# kind=" << t.kind << " meta=" << t.meta.dump() << "\n";
  out << "section,x,y,value\n";
  for (const auto& [name, cols] : t.sections)
    for (const auto& [x, col] : cols)
      for (const auto& [y, f] : col) out << name << ',' << x << ',' << y << ',' << laurent_to_cell(f) << "\n";
  for (const auto& [x, labels] : t.sets)
    for (const auto& l : labels) out << "#set," << x << ',' << l << ",\n";
  return out.str();
}

inline Table table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table t;
  if (!std::getline(in, line) || line.rfind("# kind=", 0) != 0) throw std::invalid_argument("csv: missing header");
  auto meta_pos = line.find(" meta=");
  if (meta_pos == std::string::npos) throw std::invalid_argument("csv: missing meta");
  t.kind = line.substr(7, meta_pos - 7);
  t.meta = Json::parse(line.substr(meta_pos + 6));
  if (!std::getline(in, line) || line != "section,x,y,value") throw std::invalid_argument("csv: missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 4) throw std::invalid_argument("csv: expected 4 fields in '" + line + "'");
    if (f[0] == "#set")
      t.sets[f[1]].insert(f[2]);
    else
      t.sections[f[0]][f[1]][f[2]] = laurent_from_cell(f[3]);
  }
  return t;
}

enum class Format { json, csv };

inline std::string export_table(const Table& t, Format f) {
  return f == Format::json ? table_to_json_string(t) : table_to_csv(t);
}
inline Table import_table(const std::string& text, Format f) {
  return f == Format::json ? table_from_json(Json::parse(text)) : table_from_csv(text);
}

inline Format format_for_path(const std::string& path, const std::string& requested) {
  if (requested == "json") return Format::json;
  if (requested == "csv") return Format::csv;
  if (!requested.empty()) throw std::invalid_argument("unknown format '" + requested + "'");
  return path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? Format::csv : Format::json;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- human-readable rows ----

// Display form of an element key: "s.t.s" -> "sts" when every letter is a
// single character, identity -> "e".
inline std::string display_key(const std::string& key) {
  if (key.empty()) return "e";
  bool single = true;
  std::size_t start = 0;
  while (start <= key.size()) {
    auto dot = key.find('.', start);
    if (dot == std::string::npos) dot = key.size();
    single = single && dot - start == 1;
    start = dot + 1;
  }
  if (!single) return key;
  std::string out;
  for (char c : key)
    if (c != '.') out += c;
  return out;
}

inline std::size_t key_length(const std::string& key) {
  return key.empty() ? 0 : static_cast<std::size_t>(std::count(key.begin(), key.end(), '.')) + 1;
}

// "b_{sts} + b_s + (v + v^-1) b_e": longest elements first.
inline std::string format_combination(const Table::Column& col, const std::string& symbol) {
  std::vector<std::string> keys;
  for (const auto& [y, f] : col) keys.push_back(y);
  std::stable_sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
    return key_length(a) != key_length(b) ? key_length(a) > key_length(b) : a < b;
  });
  std::string out;
  for (const auto& y : keys) {
    const LaurentPolynomial& f = col.at(y);
    std::string d = display_key(y);
    std::string basis = symbol + "_" + (d.size() > 1 ? "{" + d + "}" : d);
    if (!out.empty()) out += " + ";
    if (f == LaurentPolynomial(1))
      out += basis;
    else if (f.terms().size() == 1)
      out += f.to_string() + " " + basis;
    else
      out += "(" + f.to_string() + ") " + basis;
  }
  return out.empty() ? "0" : out;
}

}  // namespace hecke::io
