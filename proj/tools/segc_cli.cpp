// Command-line front end: parses group and tower descriptions, dispatches to
// the algebra modules and emits deterministic JSON (or tables with
// --pretty). Exit codes: 0 success, 1 domain error (machine-readable error
// object on stdout), 2 usage error.

#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "segc/error.hpp"
#include "segc/json_io.hpp"

using namespace segc;

namespace {

struct Options {
  bool pretty = false;
  long long seed = 1;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("json", "input is not valid JSON");
  return j;
}

FamilyDiagram load_family(const std::string& name_or_path) {
  for (const auto& preset : FamilyDiagram::preset_names())
    if (name_or_path == preset) return FamilyDiagram::preset(name_or_path);
  if (std::ifstream probe(name_or_path); probe.good())
    return family_from_json(read_json_input(name_or_path));
  fail("parse", "unknown family '" + name_or_path +
                    "' (not a preset and not a readable file)");
}

// ---------------------------------------------------------------------- tom

void print_tom_pretty(const TableOfMarks& t) {
  std::cout << "group of order " << t.group().order() << ", " << t.size()
            << " subgroup classes\n";
  for (int i = 0; i < t.size(); ++i) {
    std::cout << "class " << i << ": order " << t.classes()[i].order << ", "
              << t.classes()[i].members.size() << " conjugate(s)\n";
  }
  std::cout << "marks:\n";
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) std::cout << (j ? " " : "") << t.marks()[i][j];
    std::cout << "\n";
  }
}

int run_tom(const std::string& spec, const Options& opt) {
  auto t = TableOfMarks::build(parse_group(spec));
  if (opt.pretty)
    print_tom_pretty(*t);
  else
    emit(json_table_of_marks(*t));
  return 0;
}

// --------------------------------------------------------------------- spec

int run_spectrum(const std::string& spec, const Options& opt) {
  auto t = TableOfMarks::build(parse_group(spec));
  if (!opt.pretty) {
    emit(json_spectrum(*t));
    return 0;
  }
  std::cout << "prime ideals P(K, p) of the Burnside ring, grouped when equal\n";
  for (const auto& cell : prime_spectrum(*t)) {
    std::cout << "p = " << cell.p << ":";
    for (const auto& group : cell.cells) {
      std::cout << " {";
      for (size_t i = 0; i < group.size(); ++i)
        std::cout << (i ? " " : "") << "K" << group[i];
      std::cout << "}";
    }
    std::cout << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- complete

int run_complete(const std::string& spec, int horizon, const Options& opt) {
  auto ring = TableOfMarks::build(parse_group(spec));
  auto tower = augmentation_tower(ring);
  auto rep = complete(tower, horizon);
  if (!opt.pretty) {
    emit(json_completion_report(ring->group(), tower.ideal(), rep));
    return 0;
  }
  std::cout << "A/I^n for n = 1.." << horizon << ":\n";
  for (size_t n = 0; n < rep.levels.size(); ++n)
    std::cout << "  n=" << (n + 1) << ": " << group_to_string(rep.levels[n]) << "\n";
  std::cout << "structure maps surjective: " << (rep.maps_surjective ? "yes" : "no") << "\n";
  if (rep.pattern) {
    std::cout << "detected pattern (not certified): free rank " << rep.pattern->free_rank;
    for (const auto& [p, r] : rep.pattern->padic_ranks)
      std::cout << ", Z_" << p << "-rank " << r;
    for (const auto& d : rep.pattern->stable_torsion) std::cout << ", stable Z/" << d;
    std::cout << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------- pro

int run_pro(const std::string& mode, const std::string& path, const Options& opt) {
  Json in = read_json_input(path);
  int bound = in.contains("bound")
                  ? static_cast<int>(int_from_json(in.at("bound")).convert_to<long long>())
                  : kDefaultProBound;
  Json out;
  if (mode == "iso") {
    Tower source = tower_from_json(in.at("source"));
    Tower target = in.at("target") == in.at("source") ? source : tower_from_json(in.at("target"));
    auto f = morphism_from_json(in.at("map"), source, target);
    out = json_verdict(check_pro_isomorphism(f, bound));
  } else if (mode == "exact") {
    Tower sub = tower_from_json(in.at("sub"));
    Tower mid = tower_from_json(in.at("mid"));
    Tower quot = tower_from_json(in.at("quot"));
    auto f = morphism_from_json(in.at("f"), sub, mid);
    auto g = morphism_from_json(in.at("g"), mid, quot);
    out = json_verdict(check_pro_exactness(f, g, bound));
  } else if (mode == "lim") {
    Tower t = tower_from_json(in.at("tower"));
    out = json_lim_result(compute_lim(t, bound));
  } else {
    fail("parse", "unknown pro mode '" + mode + "'");
  }
  if (opt.pretty) {
    if (out.contains("status"))
      std::cout << "status: " << out["status"].get<std::string>() << "\n";
    else
      std::cout << out.dump(2) << "\n";
  } else {
    emit(out);
  }
  return 0;
}

// -------------------------------------------------------------- segal-check

int run_segal_check(const std::string& family, const std::string& object, long long m,
                    long long p, long long m_bound, long long coset_bound,
                    const Options& opt) {
  auto d = load_family(family);
  int obj = d.object_index(object);
  long long lcm = 1;
  for (int i = 0; i < d.object_count(); ++i) lcm = std::lcm(lcm, d.object(i).order());
  if (m == 0) m = 2 * lcm;
  SmOptions sm_opts;
  sm_opts.m_bound = std::max(m_bound, m);
  sm_opts.coset_bound = coset_bound;
  auto rep = segal_condition_check(d, obj, m, sm_opts);
  (void)p;  // all relevant primes are always checked; p only picks defaults elsewhere
  if (!opt.pretty) {
    emit(json_segal_report(d, rep));
    return 0;
  }
  std::cout << "object " << d.label(obj) << ", m = " << rep.m << ", im(phi) rank "
            << rep.image_phi.rank() << "\n";
  auto table = d.table(obj);
  for (const auto& lv : rep.labels) {
    std::cout << "P(K" << lv.class_index << " order " << table->classes()[lv.class_index].order
              << ", p=" << lv.p << "): image " << (lv.contains_image ? "in" : "out")
              << ", aug ideal " << (lv.contains_aug_ideal ? "in" : "out") << " -> "
              << (lv.implication_holds ? "ok" : "VIOLATION") << "\n";
  }
  std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ----------------------------------------------------------------- selftest

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
};

void check(SuiteResult& s, bool ok) {
  ++s.checks;
  if (!ok) ++s.failures;
}

SuiteResult selftest_lattice(long long seed) {
  SuiteResult s{"lattice"};
  std::mt19937_64 rng(static_cast<uint64_t>(seed));
  auto rnd = [&](long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  for (int round = 0; round < 10; ++round) {
    int n = 3;
    Mat m(n, Row(n + 1));
    for (auto& r : m)
      for (auto& v : r) v = rnd(-9, 9);
    auto base = hnf_lattice(n + 1, m);
    // a couple of random elementary row operations
    Mat p = m;
    for (int step = 0; step < 6; ++step) {
      int i = static_cast<int>(rnd(0, n - 1)), j = static_cast<int>(rnd(0, n - 1));
      if (i == j) continue;
      Int k = rnd(-3, 3);
      for (int c = 0; c <= n; ++c) p[i][c] += k * p[j][c];
    }
    check(s, hnf_lattice(n + 1, p) == base);
  }
  auto q = snf_quotient(2, hnf_lattice(2, {{2, -4}}));
  check(s, q.group.free_rank == 1 && q.group.torsion == std::vector<Int>{2});
  return s;
}

SuiteResult selftest_marks(long long seed) {
  SuiteResult s{"marks"};
  auto c2 = TableOfMarks::build(parse_group("C2"));
  check(s, c2->marks() == Mat{{2, 0}, {1, 1}});
  auto s3 = TableOfMarks::build(parse_group("S3"));
  check(s, s3->marks() == Mat{{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}});
  // independent recount of fixed cosets
  for (const auto& table : {c2, s3}) {
    const auto& g = table->group();
    for (int i = 0; i < table->size(); ++i)
      for (int j = 0; j < table->size(); ++j) {
        const auto& h = table->classes()[i].representative.elements;
        const auto& k = table->classes()[j].representative.elements;
        Int fixed = 0;
        std::set<Perm> done;
        for (const auto& x : g.elements()) {
          if (done.count(x)) continue;
          std::set<Perm> coset;
          for (const auto& e : h) coset.insert(x * e);
          done.insert(coset.begin(), coset.end());
          bool fix = true;
          for (const auto& e : k)
            if (!coset.count(e * x)) { fix = false; break; }
          if (fix) ++fixed;
        }
        check(s, table->marks()[i][j] == fixed);
      }
  }
  // ghost round trip on seeded random elements
  std::mt19937_64 rng(static_cast<uint64_t>(seed) + 1);
  for (int round = 0; round < 10; ++round) {
    Row coeffs(s3->size());
    for (auto& v : coeffs) v = static_cast<long long>(rng() % 11) - 5;
    check(s, coeffs_from_marks(*s3, mark(element_from_coeffs(s3, coeffs)).values) == coeffs);
  }
  // multiplication is the componentwise product on marks
  for (int i = 0; i < s3->size(); ++i)
    for (int j = 0; j < s3->size(); ++j) {
      auto prod = multiply(basis_element(s3, i), basis_element(s3, j));
      auto mv = mark(prod).values;
      auto mi = mark(basis_element(s3, i)).values;
      auto mj = mark(basis_element(s3, j)).values;
      bool ok = true;
      for (size_t c = 0; c < mv.size(); ++c) ok = ok && mv[c] == mi[c] * mj[c];
      check(s, ok);
    }
  return s;
}

SuiteResult selftest_mackey() {
  SuiteResult s{"mackey"};
  auto big = TableOfMarks::build(parse_group("S3"));
  for (const auto& cls : big->classes()) {
    auto small = TableOfMarks::build(as_group(cls.representative));
    for (int xi = 0; xi < small->size(); ++xi)
      for (int yi = 0; yi < big->size(); ++yi) {
        auto x = basis_element(small, xi);
        auto y = basis_element(big, yi);
        auto lhs = induction(multiply(x, restriction(y, small)), big);
        auto rhs = multiply(induction(x, big), y);
        check(s, lhs.coeffs == rhs.coeffs);
      }
  }
  return s;
}

SuiteResult selftest_promod() {
  SuiteResult s{"promod"};
  for (const char* spec : {"C2", "C3"}) {
    auto ring = TableOfMarks::build(parse_group(spec));
    auto t = augmentation_tower(ring);
    auto full = full_lattice(ring->size());
    auto f = submodule_inclusion_morphism(t, t.ideal(), full);
    auto g = quotient_projection_morphism(t, full, t.ideal());
    check(s, check_pro_exactness(f, g, 8).verified());
    check(s, check_lim1_vanishing(quotient_tower(t, full), 8).verified());
  }
  FgAbelianGroup z4{0, {4}};
  auto lim = compute_lim(constant_tower(z4), 8);
  check(s, lim.limit.has_value() && *lim.limit == z4);
  return s;
}

int run_selftest(const std::string& suite, long long seed, const Options& opt) {
  std::vector<SuiteResult> results;
  auto want = [&](const std::string& name) { return suite.empty() || suite == name; };
  if (want("lattice")) results.push_back(selftest_lattice(seed));
  if (want("marks")) results.push_back(selftest_marks(seed));
  if (want("mackey")) results.push_back(selftest_mackey());
  if (want("promod")) results.push_back(selftest_promod());
  if (results.empty()) fail("parse", "unknown suite '" + suite + "'");
  bool ok = true;
  Json suites = Json::array();
  for (const auto& r : results) {
    ok = ok && r.failures == 0;
    suites.push_back(Json{{"name", r.name},
                          {"checks", std::to_string(r.checks)},
                          {"failures", std::to_string(r.failures)}});
  }
  if (opt.pretty) {
    for (const auto& r : results)
      std::cout << r.name << ": " << (r.checks - r.failures) << "/" << r.checks << " ok\n";
    std::cout << (ok ? "all suites passed" : "FAILURES") << "\n";
  } else {
    emit(Json{{"suites", suites}, {"ok", ok}});
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Burnside rings, pro-module towers and family checks"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--pretty", opt.pretty, "human-readable tables instead of JSON");
  app.add_option("--seed", opt.seed, "seed for randomized self-test suites");

  std::string group_spec;
  auto* tom = app.add_subcommand("tom", "table of marks of a finite group");
  tom->add_option("group", group_spec, "group spec or preset")->required();

  std::string spec_group;
  auto* spectrum = app.add_subcommand("spec", "prime-ideal spectrum of the Burnside ring");
  spectrum->add_option("group", spec_group, "group spec or preset")->required();

  std::string complete_group;
  int horizon = kDefaultHorizon;
  auto* completec = app.add_subcommand("complete", "I-adic completion tower of A(G)");
  completec->add_option("group", complete_group, "group spec or preset")->required();
  completec->add_option("--horizon", horizon, "number of levels (default 10)");

  std::string pro_mode, pro_path = "-";
  auto* pro = app.add_subcommand("pro", "pro-module checks on tower descriptions");
  pro->add_option("mode", pro_mode, "iso | exact | lim")->required();
  pro->add_option("input", pro_path, "JSON file ('-' for stdin)");

  std::string family, object;
  long long m = 0, p = 2, m_bound = kDefaultMBound, coset_bound = kDefaultCosetBound;
  auto* segal = app.add_subcommand("segal-check", "prime-ideal descent over a family diagram");
  segal->add_option("family", family, "preset (Dinf, PSL2Z, SL2Z) or JSON file")->required();
  segal->add_option("--object", object, "object label or index")->required();
  segal->add_option("--m", m, "common multiple m (default 2*lcm of object orders)");
  segal->add_option("--p", p, "preferred prime (informational)");
  segal->add_option("--m-bound", m_bound, "bound on m");
  segal->add_option("--coset-bound", coset_bound, "mod-Sylow enumeration bound");

  std::string suite;
  auto* selftest = app.add_subcommand("selftest", "run the embedded invariant suites");
  selftest->add_option("--suite", suite, "lattice | marks | mackey | promod");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (tom->parsed()) return run_tom(group_spec, opt);
    if (spectrum->parsed()) return run_spectrum(spec_group, opt);
    if (completec->parsed()) return run_complete(complete_group, horizon, opt);
    if (pro->parsed()) return run_pro(pro_mode, pro_path, opt);
    if (segal->parsed())
      return run_segal_check(family, object, m, p, m_bound, coset_bound, opt);
    if (selftest->parsed()) return run_selftest(suite, opt.seed, opt);
  } catch (const Error& e) {
    emit(Json{{"error", Json{{"code", e.code()}, {"message", e.what()}}}});
    return 1;
  } catch (const std::exception& e) {
    emit(Json{{"error", Json{{"code", "internal"}, {"message", e.what()}}}});
    return 1;
  }
  return 2;
}
