#pragma once

#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hecke/io/cache.hpp"
#include "hecke/io/config.hpp"
#include "hecke/io/table.hpp"
#include "hecke/p_canonical.hpp"
#include "hecke/relations.hpp"

namespace hecke::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace cli {

struct Options {
  std::string type, config, out, format, cache_dir;
  std::optional<int> cap;
  std::vector<unsigned long> primes;
  std::optional<unsigned long> p;
  unsigned threads = 0;
  bool audit = false;
  bool quiet = false;
  // per-command
  std::string subset, kind = "spherical", word, element, left, right;
};

// A loaded Coxeter system with everything hanging off it.
struct System {
  SystemConfig config;
  std::unique_ptr<CoxeterGroup> group;
  std::unique_ptr<HeckeAlgebra> hecke;
  std::unique_ptr<CachedLedgerStore> store;
  std::unique_ptr<PCanonical> pc;
  int cap = 0;

  System(SystemConfig c, const std::optional<int>& cap_flag, ResultCache* cache) : config(std::move(c)) {
    group = std::make_unique<CoxeterGroup>(config.cartan, config.names);
    hecke = std::make_unique<HeckeAlgebra>(*group);
    if (cache) store = std::make_unique<CachedLedgerStore>(*cache, *group, TieBreak::lex);
    pc = std::make_unique<PCanonical>(*hecke, TieBreak::lex, store.get());
    std::optional<int> want = cap_flag ? cap_flag : config.length_cap;
    if (config.affine) {
      if (!want) throw UsageError("affine type " + config.label + " needs an explicit --cap");
      cap = *want;
    } else {
      int full = group->length(*group->longest_element());
      cap = want ? std::min(*want, full) : full;
    }
    if (cap < 0) throw UsageError("--cap must be nonnegative");
  }

  [[nodiscard]] ElementId element(const std::string& text) const {
    return group->from_word(group->parse_word(text));
  }
  [[nodiscard]] std::string key(ElementId x) const { return element_key(*group, x); }
};

inline SystemConfig resolve_config(const std::string& type, const std::string& config_path) {
  if (!type.empty() && !config_path.empty()) throw UsageError("give either --type or --config");
  if (!config_path.empty()) return load_config(config_path);
  if (!type.empty()) return config_from_type(type);
  throw UsageError("a system is required (--type or --config)");
}

inline unsigned long required_prime(const Options& o) {
  if (!o.p) throw UsageError("-p is required");
  PCanonical::check_prime(*o.p);
  return *o.p;
}

inline std::vector<unsigned long> prime_list(const Options& o, const SystemConfig& c) {
  std::vector<unsigned long> ps = !o.primes.empty() ? o.primes : !c.primes.empty() ? c.primes : std::vector<unsigned long>{2, 3, 5};
  for (unsigned long p : ps)
    if (p == 0 || !PCanonical::is_prime(p)) throw UsageError("not a prime: " + std::to_string(p));
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

inline std::vector<Generator> parse_subset(const CoxeterGroup& W, const std::string& text) {
  std::vector<Generator> out;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) out.push_back(W.generator(name));
  }
  return out;
}

// ---- computations: each returns a table; everything printed derives from it ----

inline Table compute_kl(System& S) {
  Table t;
  t.kind = "kl";
  t.meta = {{"system", S.config.label}, {"cap", S.cap}};
  auto& sec = t.sections["h"];
  for (ElementId x : S.group->enumerate(S.cap)) sec[S.key(x)] = column_of(*S.group, S.hecke->kl_basis_element(x));
  return t;
}

inline Table compute_pkl(System& S, unsigned long p, unsigned threads) {
  Table t;
  t.kind = "pkl";
  t.meta = {{"system", S.config.label}, {"cap", S.cap}, {"p", p}};
  auto xs = S.group->enumerate(S.cap);
  S.pc->precompute(xs, threads);
  for (ElementId x : xs) {
    const auto& c = S.pc->column(x, p);
    t.sections["a"][S.key(x)] = column_of(*S.group, c.kl);
    t.sections["h"][S.key(x)] = column_of(*S.group, c.standard);
  }
  return t;
}

inline Table compute_parabolic(System& S, const std::vector<Generator>& subset, ParabolicKind kind,
                               std::optional<unsigned long> p, unsigned threads) {
  ParabolicModule m(*S.hecke, subset, kind);
  Table t;
  t.kind = "parabolic";
  Json sub = Json::array();
  for (Generator s : m.subset()) sub.push_back(S.group->names()[s]);
  t.meta = {{"system", S.config.label}, {"cap", S.cap}, {"subset", sub},
            {"module", kind == ParabolicKind::spherical ? "spherical" : "antispherical"}};
  if (p) t.meta["p"] = *p;
  auto reps = S.group->parabolic_data(subset, S.cap).min_reps;
  if (p) {
    std::vector<ElementId> need;
    for (ElementId x : reps) need.push_back(kind == ParabolicKind::spherical ? S.group->multiply(x, m.longest_parabolic()) : x);
    S.pc->precompute(need, threads);
  }
  for (ElementId x : reps) {
    if (p) {
      auto r = p_parabolic_basis(*S.pc, m, x, *p);
      t.sections["canonical"][S.key(x)] = column_of(*S.group, r.canonical);
      t.sections["standard"][S.key(x)] = column_of(*S.group, r.standard);
    } else {
      t.sections["standard"][S.key(x)] = column_of(*S.group, m.canonical_basis_element(x));
    }
  }
  return t;
}

inline Table compute_decompose(System& S, const Word& w, unsigned long p) {
  auto table = S.pc->decompose_bs(w, p);
  Table t;
  t.kind = "decompose";
  t.meta = {{"system", S.config.label}, {"word", S.group->format_word(w, ".", "")}, {"p", p}};
  auto& col = t.sections["m"][S.group->format_word(w, ".", "")];
  for (const auto& [y, by_j] : table.entries) col[S.key(y)] = table.multiplicity(y);
  return t;
}

inline Table compute_bad_primes(System& S, const std::vector<ElementId>& xs, unsigned threads) {
  Table t;
  t.kind = "bad-primes";
  t.meta = {{"system", S.config.label}, {"cap", S.cap}};
  S.pc->precompute(xs, threads);
  for (ElementId x : xs) {
    auto& labels = t.sets[S.key(x)];
    for (unsigned long q : S.pc->bad_primes(x)) labels.insert(std::to_string(q));
  }
  return t;
}

inline Table compute_torsion(System& S, const std::vector<unsigned long>& primes, unsigned threads) {
  auto rep = S.pc->torsion_report(S.cap, primes, threads);
  Table t;
  t.kind = "torsion";
  t.meta = {{"system", S.config.label}, {"cap", S.cap}, {"primes", primes},
            {"completed_length", rep.completed_length}, {"complete", rep.complete}};
  for (const auto& [q, xs] : rep.torsion)
    for (ElementId x : xs) t.sets[S.key(x)].insert(std::to_string(q));
  return t;
}

inline Table compute_compare(System& L, System& R, unsigned long p, unsigned threads) {
  if (L.config.names != R.config.names) throw UsageError("compare needs two systems with the same generator names");
  const int cap = std::min(L.cap, R.cap);
  L.cap = R.cap = cap;
  Table a = compute_pkl(L, p, threads), b = compute_pkl(R, p, threads);
  Table t;
  t.kind = "compare";
  std::set<std::string> keys;
  for (const auto& [x, c] : a.sections["a"]) keys.insert(x);
  for (const auto& [x, c] : b.sections["a"]) keys.insert(x);
  int differing = 0;
  for (const auto& x : keys) {
    auto ia = a.sections["a"].find(x);
    auto ib = b.sections["a"].find(x);
    bool same = ia != a.sections["a"].end() && ib != b.sections["a"].end() && ia->second == ib->second;
    if (same) continue;
    ++differing;
    t.sections["left"][x] = ia == a.sections["a"].end() ? Table::Column{} : ia->second;
    t.sections["right"][x] = ib == b.sections["a"].end() ? Table::Column{} : ib->second;
    auto torsion = [&](const Table::Column& c) { return c.size() > 1; };
    if (torsion(t.sections["left"][x])) t.sets[x].insert("left");
    if (torsion(t.sections["right"][x])) t.sets[x].insert("right");
  }
  t.meta = {{"left", L.config.label}, {"right", R.config.label}, {"p", p}, {"cap", cap}, {"differing", differing}};
  return t;
}

inline Table compute_verify(System& S) {
  Table t;
  t.kind = "verify";
  t.meta = {{"system", S.config.label}, {"cap", S.cap}};
  auto record = [&](const std::string& name, bool ok) { t.sets[name].insert(ok ? "pass" : "fail"); };

  RealizationRing ring(*S.group, S.config.realization);
  auto rel = verify_relations(ring);
  for (const auto& c : rel) record("relation:" + c.name, c.holds);

  auto xs = S.group->enumerate(S.cap);
  bool dual = true, degree = true, positive = true;
  for (ElementId x : xs) {
    const HeckeElement& b = S.hecke->kl_basis_element(x);
    dual = dual && S.hecke->bar(b) == b;
    for (const auto& [y, h] : b.coords) {
      positive = positive && h.has_nonnegative_coefficients();
      if (y == x)
        degree = degree && h == LaurentPolynomial(1);
      else
        degree = degree && h.exponents_within(1, S.group->length(x) - S.group->length(y));
    }
  }
  record("kl:self-duality", dual);
  record("kl:degree-bound", degree);
  record("kl:positivity", positive);
  if (!S.config.affine) record("kl:inversion", S.hecke->verify_inversion().empty());

  // Bott-Samelson characters split into p-canonical characters for every
  // reduced word (decompose_bs checks conservation itself)
  bool conservation = true;
  for (ElementId x : xs) {
    if (S.group->length(x) > std::min(S.cap, 6)) continue;
    for (unsigned long p : {0UL, 2UL, 3UL}) {
      try {
        S.pc->decompose_bs(S.group->word(x), p);
      } catch (const InternalError&) {
        conservation = false;
      }
    }
  }
  record("pcan:character-conservation", conservation);
  return t;
}

// ---- rendering ----

inline void print_rows(const Table& t, std::ostream& out) {
  if (t.kind == "kl") {
    out << "kl: " << t.sections.at("h").size() << " elements up to length " << t.meta.at("cap") << "\n";
  } else if (t.kind == "pkl") {
    for (const auto& [x, col] : t.sections.at("a")) out << display_key(x) << ": " << format_combination(col, "b") << "\n";
  } else if (t.kind == "parabolic") {
    const bool sph = t.meta.at("module") == "spherical";
    if (t.sections.contains("canonical"))
      for (const auto& [x, col] : t.sections.at("canonical"))
        out << display_key(x) << ": " << format_combination(col, sph ? "c" : "d") << "\n";
    else if (t.sections.contains("standard"))
      for (const auto& [x, col] : t.sections.at("standard"))
        out << display_key(x) << ": " << format_combination(col, sph ? "m" : "n") << "\n";
  } else if (t.kind == "decompose") {
    for (const auto& [w, col] : t.sections.at("m"))
      out << "B_{" << display_key(w) << "} = " << format_combination(col, "b") << "\n";
  } else if (t.kind == "bad-primes") {
    for (const auto& [x, ps] : t.sets) {
      out << display_key(x) << ":";
      if (ps.empty()) out << " none";
      for (const auto& q : ps) out << " " << q;
      out << "\n";
    }
  } else if (t.kind == "torsion") {
    std::map<unsigned long, std::vector<std::string>> by_p;
    for (unsigned long q : t.meta.at("primes").get<std::vector<unsigned long>>()) by_p[q];
    for (const auto& [x, ps] : t.sets)
      for (const auto& q : ps) by_p[std::stoul(q)].push_back(display_key(x));
    for (const auto& [q, xs] : by_p) {
      out << "p=" << q << ":";
      if (xs.empty()) out << " none";
      for (const auto& x : xs) out << " " << x;
      out << "\n";
    }
    if (!t.meta.at("complete").get<bool>())
      out << "incomplete: examined up to length " << t.meta.at("completed_length") << "\n";
  } else if (t.kind == "compare") {
    out << "compare " << t.meta.at("left").get<std::string>() << " vs " << t.meta.at("right").get<std::string>()
        << " at p=" << t.meta.at("p") << ": " << t.meta.at("differing") << " differing elements\n";
    if (t.sections.contains("left"))
      for (const auto& [x, col] : t.sections.at("left"))
        out << display_key(x) << ": left " << format_combination(col, "b") << " | right "
            << format_combination(t.sections.at("right").at(x), "b") << "\n";
  } else if (t.kind == "verify") {
    for (const auto& [name, v] : t.sets) out << (v.contains("pass") ? "PASS " : "FAIL ") << name << "\n";
  }
}

inline bool verify_passed(const Table& t) {
  return std::all_of(t.sets.begin(), t.sets.end(), [](const auto& kv) { return !kv.second.contains("fail"); });
}

}  // namespace cli

// Entry point of the command-line tool; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  CLI::App app{"Kazhdan-Lusztig and p-canonical bases of Hecke algebras"};
  app.require_subcommand(1);
  Options o;

  auto system_opts = [&](CLI::App* c) {
    c->add_option("--type,-t", o.type, "named Cartan type (A3, B2, C~2, ...)");
    c->add_option("--config,-c", o.config, "JSON system config");
    c->add_option("--cap", o.cap, "length cap (required for affine types)");
  };
  auto output_opts = [&](CLI::App* c) {
    c->add_option("--out,-o", o.out, "write the table here");
    c->add_option("--format", o.format, "json or csv (default: from the file name)")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--cache-dir", o.cache_dir, "result cache (default: $HECKE_CACHE)");
    c->add_flag("--audit", o.audit, "recompute cache hits and check byte equality");
    c->add_option("--threads,-j", o.threads, "worker threads (0 = all cores)");
    c->add_flag("--quiet,-q", o.quiet, "no rows on stdout");
  };

  auto* kl = app.add_subcommand("kl", "all KL polynomials h_{y,x} up to the cap");
  system_opts(kl);
  output_opts(kl);
  auto* pkl = app.add_subcommand("pkl", "p-canonical basis in the KL basis");
  system_opts(pkl);
  output_opts(pkl);
  pkl->add_option("-p", o.p, "characteristic")->required();
  auto* par = app.add_subcommand("parabolic", "(p-)canonical basis of a spherical/antispherical module");
  system_opts(par);
  output_opts(par);
  par->add_option("--subset,-I", o.subset, "comma-separated generators of the parabolic")->required();
  par->add_option("--kind", o.kind, "spherical or antispherical")->check(CLI::IsMember({"spherical", "antispherical"}));
  par->add_option("-p", o.p, "characteristic (omit for the KL version)");
  auto* dec = app.add_subcommand("decompose", "graded multiplicities of a Bott-Samelson object");
  system_opts(dec);
  output_opts(dec);
  dec->add_option("--word,-w", o.word, "expression, e.g. sts or s1.s2")->required();
  dec->add_option("-p", o.p, "characteristic")->required();
  auto* bad = app.add_subcommand("bad-primes", "primes p with pb_x != b_x");
  system_opts(bad);
  output_opts(bad);
  bad->add_option("--element,-x", o.element, "one element (default: all up to the cap)");
  auto* tor = app.add_subcommand("torsion", "elements with pb_x != b_x for each listed prime");
  system_opts(tor);
  output_opts(tor);
  tor->add_option("--primes,-P", o.primes, "primes to test")->delimiter(',');
  auto* cmp = app.add_subcommand("compare", "diff the p-canonical bases of two systems");
  output_opts(cmp);
  cmp->add_option("--left", o.left, "type name or config file")->required();
  cmp->add_option("--right", o.right, "type name or config file")->required();
  cmp->add_option("--cap", o.cap, "length cap");
  cmp->add_option("-p", o.p, "characteristic")->required();
  auto* ver = app.add_subcommand("verify", "relation, inversion and property suites");
  system_opts(ver);
  output_opts(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  // ---- setup: anything failing here is a usage error ----
  std::unique_ptr<ResultCache> cache;
  std::unique_ptr<System> S, R;
  Json args = Json::object();
  std::function<Table()> compute;
  try {
    std::string dir = o.cache_dir;
    if (dir.empty())
      if (const char* env = std::getenv("HECKE_CACHE")) dir = env;
    if (!dir.empty()) cache = std::make_unique<ResultCache>(dir);
    (void)format_for_path(o.out, o.format);
    const unsigned threads = o.threads;

    auto side = [&](const std::string& spec) {
      bool file = spec.find('/') != std::string::npos || spec.ends_with(".json");
      return file ? load_config(spec) : config_from_type(spec);
    };
    if (name == "compare") {
      S = std::make_unique<System>(side(o.left), o.cap, cache.get());
      R = std::make_unique<System>(side(o.right), o.cap, cache.get());
      unsigned long p = required_prime(o);
      args = {{"right", R->config.canonical()}, {"p", p}, {"cap", std::min(S->cap, R->cap)},
              {"labels", {S->config.label, R->config.label}}};
      compute = [&, p, threads] { return compute_compare(*S, *R, p, threads); };
    } else {
      S = std::make_unique<System>(resolve_config(o.type, o.config), o.cap, cache.get());
      args["cap"] = S->cap;
      args["label"] = S->config.label;  // echoed in the payload
      if (name == "kl") {
        compute = [&] { return compute_kl(*S); };
      } else if (name == "pkl") {
        unsigned long p = required_prime(o);
        args["p"] = p;
        compute = [&, p, threads] { return compute_pkl(*S, p, threads); };
      } else if (name == "parabolic") {
        auto subset = parse_subset(*S->group, o.subset);
        auto kind = o.kind == "antispherical" ? ParabolicKind::antispherical : ParabolicKind::spherical;
        if (!S->group->longest_element(subset)) throw UsageError("the parabolic subgroup must be finite");
        std::optional<unsigned long> p;
        if (o.p) p = required_prime(o);
        Json sub = Json::array();
        for (Generator s : subset) sub.push_back(s);
        args["subset"] = sub;
        args["kind"] = o.kind;
        args["p"] = p ? Json(*p) : Json(nullptr);
        compute = [&, subset, kind, p, threads] { return compute_parabolic(*S, subset, kind, p, threads); };
      } else if (name == "decompose") {
        Word w = S->group->parse_word(o.word);
        unsigned long p = required_prime(o);
        args["word"] = S->group->format_word(w, ".", "");
        args["p"] = p;
        compute = [&, w, p] { return compute_decompose(*S, w, p); };
      } else if (name == "bad-primes") {
        std::vector<ElementId> xs;
        if (!o.element.empty()) {
          xs.push_back(S->element(o.element));
          args["element"] = S->key(xs.front());
        } else {
          xs = S->group->enumerate(S->cap);
        }
        compute = [&, xs, threads] { return compute_bad_primes(*S, xs, threads); };
      } else if (name == "torsion") {
        auto primes = prime_list(o, S->config);
        args["primes"] = primes;
        compute = [&, primes, threads] { return compute_torsion(*S, primes, threads); };
      } else if (name == "verify") {
        if (!o.cap && !S->config.length_cap && !S->config.affine) S->cap = std::min(S->cap, 8);
        args["cap"] = S->cap;
        compute = [&] { return compute_verify(*S); };
      }
    }
  } catch (const std::invalid_argument& e) {  // includes ConfigError, UsageError
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  // ---- computation ----
  try {
    Table table;
    std::string payload;
    std::string key;
    std::optional<std::string> hit;
    if (cache) {
      key = cache->address(S->config.canonical_string(), name, args);
      hit = cache->load(key);
    }
    if (hit) {
      table = import_table(*hit, Format::json);
      payload = *hit;
      if (o.audit) {
        std::string fresh = table_to_json_string(compute());
        if (fresh != payload) throw InternalError("cache audit failed: entry " + key + " differs from recomputation");
        err << "cache: audit ok " << key << "\n";
      } else {
        err << "cache: hit " << key << "\n";
      }
    } else {
      table = compute();
      payload = table_to_json_string(table);
      if (cache) cache->store(key, payload);
    }
    if (!o.quiet) print_rows(table, out);
    if (!o.out.empty()) write_file(o.out, export_table(table, format_for_path(o.out, o.format)));
    if (name == "verify" && !verify_passed(table)) {
      err << "verify: failures present\n";
      return kExitComputation;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

}  // namespace hecke::io
