#include "segc/json_io.hpp"

#include <numeric>

#include "segc/error.hpp"

namespace segc {

Json json_int(const Int& v) { return v.str(); }

Int int_from_json(const Json& j) {
  if (j.is_string()) return int_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  fail("json", "expected an integer (string or number)");
}

Json json_row(const Row& r) {
  Json out = Json::array();
  for (const auto& v : r) out.push_back(json_int(v));
  return out;
}

Row row_from_json(const Json& j) {
  if (!j.is_array()) fail("json", "expected an array of integers");
  Row out;
  for (const auto& v : j) out.push_back(int_from_json(v));
  return out;
}

Json json_matrix(const Mat& m) {
  Json out = Json::array();
  for (const auto& r : m) out.push_back(json_row(r));
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array()) fail("json", "expected a matrix (array of rows)");
  Mat out;
  for (const auto& r : j) out.push_back(row_from_json(r));
  return out;
}

Json json_perm(const Perm& p) {
  Json out = Json::array();
  for (int i = 0; i < p.degree(); ++i)
    out.push_back(std::to_string(p(static_cast<Perm::Point>(i))));
  return out;
}

Perm perm_from_json(const Json& j) {
  if (!j.is_array()) fail("json", "expected a permutation image array");
  std::vector<Perm::Point> img;
  for (const auto& v : j) {
    Int x = int_from_json(v);
    if (x < 0 || x > 65535) fail("json", "permutation image out of range");
    img.push_back(static_cast<Perm::Point>(x.convert_to<long long>()));
  }
  return Perm(std::move(img));
}

Json json_group_echo(const PermGroup& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(json_perm(p));
  return Json{{"degree", std::to_string(g.degree())},
              {"generators", gens},
              {"order", std::to_string(g.order())}};
}

Json json_abelian(const FgAbelianGroup& g) {
  Json t = Json::array();
  for (const auto& d : g.torsion) t.push_back(json_int(d));
  return Json{{"free_rank", std::to_string(g.free_rank)}, {"torsion", t},
              {"display", group_to_string(g)}};
}

FgAbelianGroup abelian_from_json(const Json& j) {
  FgAbelianGroup g;
  g.free_rank = static_cast<int>(int_from_json(j.at("free_rank")).convert_to<long long>());
  if (j.contains("torsion"))
    for (const auto& v : j.at("torsion")) g.torsion.push_back(int_from_json(v));
  for (size_t i = 0; i + 1 < g.torsion.size(); ++i)
    if (g.torsion[i + 1] % g.torsion[i] != 0)
      fail("json", "torsion coefficients must form a divisibility chain");
  for (const auto& d : g.torsion)
    if (d < 2) fail("json", "torsion coefficients must be >= 2");
  return g;
}

Json json_lattice(const IntegerLattice& l) {
  return Json{{"ambient_rank", std::to_string(l.ambient_rank)},
              {"rank", std::to_string(l.rank())},
              {"basis", json_matrix(l.basis)}};
}

Json json_verdict(const ProVerdict& v) {
  Json w = Json::array();
  for (const auto& [m, n] : v.witnesses)
    w.push_back(Json::array({std::to_string(m), std::to_string(n)}));
  Json out{{"status", status_string(v.status)},
           {"bound", std::to_string(v.bound)},
           {"witnesses", w}};
  if (v.refuted_at) out["refuted_at"] = std::to_string(*v.refuted_at);
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

Json json_pattern(const ProfinitePattern& p) {
  Json padic = Json::array();
  for (const auto& [prime, rank] : p.padic_ranks)
    padic.push_back(Json{{"p", json_int(prime)}, {"rank", std::to_string(rank)}});
  Json stable = Json::array();
  for (const auto& v : p.stable_torsion) stable.push_back(json_int(v));
  return Json{{"free_rank", std::to_string(p.free_rank)},
              {"padic", padic},
              {"stable_torsion", stable},
              {"certified", p.certified}};
}

Json json_lim_result(const LimResult& r) {
  Json out{{"stability", json_verdict(r.stability)}};
  if (r.limit) out["limit"] = json_abelian(*r.limit);
  if (r.pattern) out["pattern"] = json_pattern(*r.pattern);
  return out;
}

namespace {

IntegerLattice lattice_from_json_spec(const Json& j, const TableOfMarksPtr& ring) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "ring") return full_lattice(ring->size());
    if (s == "ideal" || s == "augmentation") return augmentation_ideal(*ring);
    fail("json", "unknown lattice spec '" + s + "'");
  }
  if (j.is_object() && j.contains("basis"))
    return hnf_lattice(ring->size(), matrix_from_json(j.at("basis")));
  fail("json", "expected a lattice spec (\"ring\", \"ideal\" or {\"basis\": ...})");
}

}  // namespace

Tower tower_from_json(const Json& j) {
  if (!j.is_object()) fail("json", "expected a tower description");
  if (j.contains("rule")) {
    std::string rule = j.at("rule").get<std::string>();
    if (rule == "iadic") {
      auto ring = TableOfMarks::build(parse_group(j.at("group").get<std::string>()));
      IntegerLattice ideal = j.contains("ideal") ? lattice_from_json_spec(j.at("ideal"), ring)
                                                 : augmentation_ideal(*ring);
      IntegerLattice module = j.contains("module") ? lattice_from_json_spec(j.at("module"), ring)
                                                   : full_lattice(ring->size());
      return quotient_tower(IdealTower(ring, ideal), module);
    }
    if (rule == "constant") return constant_tower(abelian_from_json(j));
    if (rule == "mult")
      return multiplication_tower(abelian_from_json(j.at("group")), int_from_json(j.at("k")));
    fail("json", "unknown tower rule '" + rule + "'");
  }
  if (!j.contains("levels")) fail("json", "tower needs \"levels\" or \"rule\"");
  std::vector<FgAbelianGroup> levels;
  for (const auto& l : j.at("levels")) levels.push_back(abelian_from_json(l));
  std::vector<AbelianMap> maps;
  const auto& jm = j.at("maps");
  if (jm.size() + 1 != levels.size()) fail("json", "explicit tower needs one map per step");
  for (size_t i = 0; i < jm.size(); ++i)
    maps.push_back(AbelianMap{levels[i + 1], levels[i], matrix_from_json(jm[i])});
  return explicit_tower(std::move(levels), std::move(maps));
}

StrictMorphism morphism_from_json(const Json& j, const Tower& source, const Tower& target) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "identity") {
      if (!source.same_as(target)) fail("json", "identity morphism needs equal towers");
      return StrictMorphism::identity(source);
    }
    if (s == "zero") return StrictMorphism::zero(source, target);
    fail("json", "unknown morphism '" + s + "'");
  }
  if (j.is_object() && j.contains("components")) {
    std::vector<AbelianMap> comps;
    int n = 1;
    for (const auto& c : j.at("components")) {
      comps.push_back(AbelianMap{source.level(n), target.level(n), matrix_from_json(c)});
      ++n;
    }
    return StrictMorphism::from_components(source, target, std::move(comps));
  }
  fail("json", "expected a morphism (\"identity\", \"zero\" or {\"components\": ...})");
}

FamilyDiagram family_from_json(const Json& j) {
  std::vector<PermGroup> objects;
  std::vector<std::string> labels;
  for (const auto& o : j.at("objects")) objects.push_back(parse_group(o.get<std::string>()));
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  } else {
    for (const auto& o : j.at("objects")) labels.push_back(o.get<std::string>());
  }
  std::vector<DiagramMorphism> morphisms;
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms")) {
      DiagramMorphism mo;
      mo.src = static_cast<int>(int_from_json(m.at("src")).convert_to<long long>());
      mo.dst = static_cast<int>(int_from_json(m.at("dst")).convert_to<long long>());
      if (m.contains("gen_images"))
        for (const auto& g : m.at("gen_images")) mo.gen_images.push_back(perm_from_json(g));
      morphisms.push_back(std::move(mo));
    }
  long long bound = j.contains("order_bound")
                        ? int_from_json(j.at("order_bound")).convert_to<long long>()
                        : 0;
  if (bound == 0) {
    bound = 1;
    for (const auto& o : objects) bound = std::lcm(bound, o.order());
  }
  return FamilyDiagram(std::move(objects), std::move(labels), std::move(morphisms), bound);
}

Json json_table_of_marks(const TableOfMarks& t) {
  Json classes = Json::array();
  for (const auto& c : t.classes()) {
    Json gens = Json::array();
    for (const auto& g :
         minimal_generators(t.group().degree(), c.representative.elements))
      gens.push_back(json_perm(g));
    classes.push_back(Json{{"order", std::to_string(c.order)},
                           {"size", std::to_string(c.members.size())},
                           {"generators", gens}});
  }
  return Json{{"group", json_group_echo(t.group())},
              {"classes", classes},
              {"marks", json_matrix(t.marks())}};
}

Json json_spectrum(const TableOfMarks& t) {
  Json cells = Json::array();
  for (const auto& cell : prime_spectrum(t)) {
    Json groups = Json::array();
    for (const auto& g : cell.cells) {
      Json one = Json::array();
      for (int idx : g) one.push_back(std::to_string(idx));
      groups.push_back(one);
    }
    cells.push_back(Json{{"p", json_int(cell.p)}, {"classes_merged", groups}});
  }
  Json classes = Json::array();
  for (const auto& c : t.classes())
    classes.push_back(Json{{"order", std::to_string(c.order)}});
  return Json{{"group", json_group_echo(t.group())},
              {"classes", classes},
              {"partition", cells}};
}

Json json_completion_report(const PermGroup& g, const IntegerLattice& ideal,
                            const CompletionReport& rep) {
  Json levels = Json::array();
  for (const auto& l : rep.levels) levels.push_back(json_abelian(l));
  Json out{{"group", json_group_echo(g)},
           {"ideal", json_lattice(ideal)},
           {"levels", levels},
           {"maps_surjective", rep.maps_surjective}};
  if (rep.pattern) out["pattern"] = json_pattern(*rep.pattern);
  return out;
}

Json json_segal_report(const FamilyDiagram& d, const SegalConditionReport& rep) {
  Json labels = Json::array();
  auto table = d.table(rep.object_index);
  for (const auto& lv : rep.labels) {
    Json trace{{"sm_char", json_int(lv.trace.sm_char)},
               {"sm_size", json_int(lv.trace.sm_size)},
               {"conclusion", lv.trace.conclusion}};
    if (lv.p != 0) {
      trace["msyl_size"] = json_int(lv.trace.msyl_size);
      trace["msyl_size_coprime_p"] = lv.trace.msyl_size_coprime_p;
      if (lv.trace.msyl_char) trace["msyl_char"] = json_int(*lv.trace.msyl_char);
      if (!lv.trace.msyl_note.empty()) trace["msyl_skipped"] = lv.trace.msyl_note;
    }
    labels.push_back(
        Json{{"class", std::to_string(lv.class_index)},
             {"class_order", std::to_string(table->classes()[lv.class_index].order)},
             {"p", json_int(lv.p)},
             {"contains_image", lv.contains_image},
             {"contains_augmentation_ideal", lv.contains_aug_ideal},
             {"implication", lv.implication_holds},
             {"trace", trace}});
  }
  Json primes = Json::array();
  for (const auto& p : rep.primes) primes.push_back(json_int(p));
  return Json{{"object", d.label(rep.object_index)},
              {"m", std::to_string(rep.m)},
              {"image_phi", json_lattice(rep.image_phi)},
              {"primes", primes},
              {"labels", labels},
              {"verdict", rep.pass ? "PASS" : "FAIL"}};
}

}  // namespace segc
