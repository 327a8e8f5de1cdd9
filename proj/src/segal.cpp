#include "segc/segal.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "segc/error.hpp"

namespace segc {

struct FamilyDiagram::Cache {
  std::mutex mu;
  std::map<int, TableOfMarksPtr> tables;
  std::map<int, Homomorphism> homs;
};

FamilyDiagram::FamilyDiagram(std::vector<PermGroup> objects, std::vector<std::string> labels,
                             std::vector<DiagramMorphism> morphisms, long long order_bound)
    : objects_(std::move(objects)),
      labels_(std::move(labels)),
      morphisms_(std::move(morphisms)),
      order_bound_(order_bound),
      cache_(std::make_shared<Cache>()) {
  if (labels_.size() != objects_.size()) fail("domain", "one label per object required");
  for (const auto& mo : morphisms_)
    if (mo.src < 0 || mo.src >= object_count() || mo.dst < 0 || mo.dst >= object_count())
      fail("domain", "morphism endpoint out of range");
}

const std::vector<std::string>& FamilyDiagram::preset_names() {
  static const std::vector<std::string> names = {"Dinf", "PSL2Z", "SL2Z"};
  return names;
}

FamilyDiagram FamilyDiagram::preset(const std::string& name) {
  auto triv = PermGroup();
  if (name == "Dinf") {
    // Infinite dihedral group: the trivial subgroup and two conjugacy
    // classes of reflection C2's; no nontrivial self-maps (the normalizer
    // of a reflection is the reflection itself).
    auto c2 = parse_group("C2");
    return FamilyDiagram({triv, c2, c2}, {"1", "C2", "C2'"},
                         {{0, 1, {}}, {0, 2, {}}}, 2);
  }
  if (name == "PSL2Z") {
    // Free product C2 * C3: vertex groups self-normalize, so the only
    // morphisms are the inclusions of the trivial subgroup.
    auto c2 = parse_group("C2");
    auto c3 = parse_group("C3");
    return FamilyDiagram({triv, c2, c3}, {"1", "C2", "C3"},
                         {{0, 1, {}}, {0, 2, {}}}, 6);
  }
  if (name == "SL2Z") {
    // Amalgam C4 *_{C2} C6: subgroup classes 1, C2 (the center), C3, C4,
    // C6 with the amalgam inclusions; vertex groups self-normalize, so no
    // nontrivial self-maps occur.
    auto c2 = parse_group("C2");
    auto c3 = parse_group("C3");
    auto c4 = parse_group("C4");
    auto c6 = parse_group("C6");
    Perm c4gen = c4.generators()[0];
    Perm c6gen = c6.generators()[0];
    std::vector<DiagramMorphism> morphisms = {
        {0, 1, {}}, {0, 2, {}}, {0, 3, {}}, {0, 4, {}},
        {1, 3, {c4gen * c4gen}},                  // C2 -> C4 (center of C4)
        {1, 4, {c6gen * c6gen * c6gen}},          // C2 -> C6
        {2, 4, {c6gen * c6gen}},                  // C3 -> C6
    };
    return FamilyDiagram({triv, c2, c3, c4, c6}, {"1", "C2", "C3", "C4", "C6"},
                         std::move(morphisms), 12);
  }
  fail("parse", "unknown family preset '" + name + "'");
}

int FamilyDiagram::object_index(const std::string& label_or_number) const {
  for (int i = 0; i < object_count(); ++i)
    if (labels_[i] == label_or_number) return i;
  // fall back to a numeric index
  bool digits = !label_or_number.empty();
  for (char c : label_or_number)
    if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
  if (digits) {
    int idx = std::stoi(label_or_number);
    if (idx >= 0 && idx < object_count()) return idx;
  }
  fail("domain", "no diagram object named '" + label_or_number + "'");
}

TableOfMarksPtr FamilyDiagram::table(int i) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->tables.find(i);
  if (it != cache_->tables.end()) return it->second;
  auto t = TableOfMarks::build(objects_.at(i));
  cache_->tables.emplace(i, t);
  return t;
}

const Homomorphism& FamilyDiagram::morphism_hom(int m) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->homs.find(m);
  if (it != cache_->homs.end()) return it->second;
  const auto& mo = morphisms_.at(m);
  auto hom = extend_homomorphism(objects_[mo.src], objects_[mo.dst], mo.gen_images);
  if (!hom) fail("morphism", "diagram morphism does not extend to a homomorphism");
  std::set<Perm> image(hom->element_images.begin(), hom->element_images.end());
  if (image.size() != hom->element_images.size())
    fail("morphism", "diagram morphism is not injective");
  auto [pos, ok] = cache_->homs.emplace(m, std::move(*hom));
  (void)ok;
  return pos->second;
}

FamilyDiagram FamilyDiagram::sub_diagram(const std::vector<int>& objects_kept) const {
  std::vector<int> where(object_count(), -1);
  std::vector<PermGroup> objs;
  std::vector<std::string> labs;
  for (size_t i = 0; i < objects_kept.size(); ++i) {
    where[objects_kept[i]] = static_cast<int>(i);
    objs.push_back(objects_.at(objects_kept[i]));
    labs.push_back(labels_.at(objects_kept[i]));
  }
  std::vector<DiagramMorphism> mors;
  for (const auto& mo : morphisms_)
    if (where[mo.src] >= 0 && where[mo.dst] >= 0)
      mors.push_back(DiagramMorphism{where[mo.src], where[mo.dst], mo.gen_images});
  long long bound = 1;
  for (const auto& o : objs) bound = std::lcm(bound, o.order());
  return FamilyDiagram(std::move(objs), std::move(labs), std::move(mors), bound);
}

std::vector<std::string> validate_diagram(const FamilyDiagram& d) {
  std::vector<std::string> defects;
  for (int i = 0; i < d.object_count(); ++i) {
    long long o = d.object(i).order();
    if (d.order_bound() % o != 0)
      defects.push_back("object " + d.label(i) + " has order " + std::to_string(o) +
                        " which does not divide the order bound " +
                        std::to_string(d.order_bound()));
  }
  for (size_t m = 0; m < d.morphisms().size(); ++m) {
    const auto& mo = d.morphisms()[m];
    auto hom = extend_homomorphism(d.object(mo.src), d.object(mo.dst), mo.gen_images);
    if (!hom) {
      defects.push_back("morphism " + std::to_string(m) + " does not extend to a homomorphism");
      continue;
    }
    std::set<Perm> image(hom->element_images.begin(), hom->element_images.end());
    if (image.size() != hom->element_images.size())
      defects.push_back("morphism " + std::to_string(m) + " is not injective");
  }
  if (!defects.empty()) return defects;
  // Restriction functoriality on composable generator pairs.
  for (size_t a = 0; a < d.morphisms().size(); ++a)
    for (size_t b = 0; b < d.morphisms().size(); ++b) {
      if (d.morphisms()[a].dst != d.morphisms()[b].src) continue;
      const auto& inner = d.morphism_hom(static_cast<int>(a));  // K_i -> K_j
      const auto& outer = d.morphism_hom(static_cast<int>(b));  // K_j -> K_k
      std::vector<Perm> comp_images;
      for (const auto& gi : inner.gen_images) comp_images.push_back(outer.apply(gi));
      auto comp = extend_homomorphism(inner.source, outer.target, comp_images);
      if (!comp) {
        defects.push_back("composite of morphisms " + std::to_string(a) + "," +
                          std::to_string(b) + " fails to extend");
        continue;
      }
      auto big = d.table(d.morphisms()[b].dst);
      auto mid = d.table(d.morphisms()[a].dst);
      auto small = d.table(d.morphisms()[a].src);
      auto r_comp = restriction_matrix(*big, *small, *comp);
      auto r_two = matrix_product(restriction_matrix(*big, *mid, outer),
                                  restriction_matrix(*mid, *small, inner));
      if (!matrix_equal(r_comp, r_two))
        defects.push_back("restriction functoriality fails along morphisms " +
                          std::to_string(a) + "," + std::to_string(b));
    }
  return defects;
}

LimitLattice inverse_limit(const FamilyDiagram& d, bool augmentation_ideals) {
  auto defects = validate_diagram(d);
  if (!defects.empty()) fail("domain", "invalid diagram: " + defects.front());
  std::vector<int> offsets(d.object_count(), 0);
  int total = 0;
  for (int i = 0; i < d.object_count(); ++i) {
    offsets[i] = total;
    total += d.table(i)->size();
  }
  // Constraint columns over stacked coordinates: for each morphism
  // alpha: K_i -> K_j, res_alpha(x_j) - x_i = 0, and optionally the
  // augmentation of every component.
  std::vector<Row> columns;
  for (size_t m = 0; m < d.morphisms().size(); ++m) {
    const auto& mo = d.morphisms()[m];
    auto big = d.table(mo.dst);
    auto small = d.table(mo.src);
    Mat r = restriction_matrix(*big, *small, d.morphism_hom(static_cast<int>(m)));
    for (int c = 0; c < small->size(); ++c) {
      Row col(total, 0);
      for (int b = 0; b < big->size(); ++b) col[offsets[mo.dst] + b] = r[b][c];
      col[offsets[mo.src] + c] -= 1;
      columns.push_back(std::move(col));
    }
  }
  if (augmentation_ideals) {
    for (int i = 0; i < d.object_count(); ++i) {
      Row col(total, 0);
      auto t = d.table(i);
      for (int b = 0; b < t->size(); ++b) col[offsets[i] + b] = t->marks()[b][0];
      columns.push_back(std::move(col));
    }
  }
  Mat m(total, Row(columns.size(), 0));
  for (size_t c = 0; c < columns.size(); ++c)
    for (int r = 0; r < total; ++r) m[r][c] = columns[c][r];
  Mat kernel = left_kernel(m, total);
  LimitLattice out;
  out.lattice = hnf_lattice(total, std::move(kernel));
  out.offsets = std::move(offsets);
  out.ideals = augmentation_ideals;
  return out;
}

CompatibleFamily decode_family(const FamilyDiagram& d, const LimitLattice& l, const Row& row) {
  if (static_cast<int>(row.size()) != l.lattice.ambient_rank)
    fail("dimension", "family row length mismatch");
  CompatibleFamily fam;
  for (int i = 0; i < d.object_count(); ++i) {
    auto t = d.table(i);
    Row coeffs(row.begin() + l.offsets[i], row.begin() + l.offsets[i] + t->size());
    fam.components.push_back(element_from_coeffs(t, std::move(coeffs)));
  }
  return fam;
}

bool family_is_compatible(const FamilyDiagram& d, const CompatibleFamily& x) {
  for (size_t m = 0; m < d.morphisms().size(); ++m) {
    const auto& mo = d.morphisms()[m];
    auto restricted = restriction_along(x.components[mo.dst], d.morphism_hom(static_cast<int>(m)),
                                        d.table(mo.src));
    if (restricted.coeffs != x.components[mo.src].coeffs) return false;
  }
  return true;
}

BurnsideElement phi(const FamilyDiagram& d, const CompatibleFamily& x, int object_index) {
  if (!family_is_compatible(d, x)) fail("domain", "family is not compatible");
  return x.components.at(object_index);
}

IntegerLattice phi_image(const FamilyDiagram& d, const LimitLattice& l, int object_index) {
  auto t = d.table(object_index);
  std::vector<int> coords(t->size());
  std::iota(coords.begin(), coords.end(), l.offsets[object_index]);
  return lattice_project(l.lattice, coords);
}

// ---------------------------------------------------------------------------
// [S_m] construction

Perm rho_u(const PermGroup& k, const Perm& k_element, long long m, const Perm& tau) {
  const auto& elems = k.elements();
  long long ord = static_cast<long long>(elems.size());
  if (m % ord != 0) fail("domain", "|K| must divide m");
  if (tau.degree() != m) fail("domain", "tau must be a permutation of m points");
  // Free K-set: m/|K| copies of K; point index = copy * |K| + element index.
  std::vector<Perm::Point> img(m);
  for (long long copy = 0; copy < m / ord; ++copy)
    for (long long e = 0; e < ord; ++e) {
      Perm moved = k_element * elems[e];
      auto it = std::lower_bound(elems.begin(), elems.end(), moved);
      long long me = it - elems.begin();
      img[copy * ord + e] = static_cast<Perm::Point>(copy * ord + me);
    }
  return tau * Perm(img) * tau.inverse();
}

BurnsideElement sm_component_direct(const TableOfMarksPtr& ring, long long m, const Perm& tau) {
  if (m > 5) fail("domain", "direct path enumerates m! permutations, m <= 5 only");
  const PermGroup& k = ring->group();
  if (m % k.order() != 0) fail("domain", "|K| must divide m");
  // Enumerate all m! permutations and count fixed points of each class.
  std::vector<Perm::Point> base(m);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Perm> points;
  std::vector<Perm::Point> idx = base;
  do {
    std::vector<Perm::Point> copy(idx.begin(), idx.end());
    points.emplace_back(std::move(copy));
  } while (std::next_permutation(idx.begin(), idx.end()));

  Row marks(ring->size(), 0);
  for (int c = 0; c < ring->size(); ++c) {
    auto gens = minimal_generators(k.degree(), ring->classes()[c].representative.elements);
    std::vector<Perm> rho_gens;
    for (const auto& g : gens) rho_gens.push_back(rho_u(k, g, m, tau));
    Int fixed = 0;
    for (const auto& sigma : points) {
      bool fix = true;
      for (const auto& rg : rho_gens)
        if (rg * sigma != sigma) {
          fix = false;
          break;
        }
      if (fix) ++fixed;
    }
    marks[c] = fixed;
  }
  return element_from_coeffs(ring, coeffs_from_marks(*ring, marks));
}

BurnsideElement sm_component_shortcut(const TableOfMarksPtr& ring, long long m) {
  long long ord = ring->group().order();
  if (m % ord != 0) fail("domain", "|K| must divide m");
  Row coeffs(ring->size(), 0);
  coeffs[0] = factorial(m) / ord;  // class 0 is the trivial subgroup
  return element_from_coeffs(ring, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Cosets of Syl_p(S_m)

namespace {

// Stabilizer-chain data for computing the lexicographically least element of
// a left coset sigma * U.
class MinCosetChain {
public:
  MinCosetChain(int degree, const std::vector<Perm>& u_elements) : degree_(degree) {
    std::vector<Perm> current = u_elements;
    for (int base = 0; base < degree; ++base) {
      Level lvl;
      lvl.transversal.assign(degree, Perm());
      lvl.has.assign(degree, 0);
      std::vector<Perm> stab;
      for (const auto& u : current) {
        int b = u(static_cast<Perm::Point>(base));
        if (b == base) stab.push_back(u);
        if (!lvl.has[b]) {
          lvl.has[b] = 1;
          lvl.transversal[b] = u;
        }
      }
      levels_.push_back(std::move(lvl));
      current = std::move(stab);
    }
  }

  // Least element of sigma * U in image-tuple order.
  Perm min_in_coset(const Perm& sigma) const {
    Perm acc = Perm::identity(degree_);
    Perm cur = sigma;
    for (int base = 0; base < degree_; ++base) {
      const auto& lvl = levels_[base];
      int best_point = -1;
      Perm::Point best_value = 0;
      for (int b = 0; b < degree_; ++b) {
        if (!lvl.has[b]) continue;
        Perm::Point v = cur(acc(static_cast<Perm::Point>(b)));
        if (best_point < 0 || v < best_value) {
          best_point = b;
          best_value = v;
        }
      }
      acc = acc * lvl.transversal[best_point];
    }
    return cur * acc;
  }

private:
  struct Level {
    std::vector<Perm> transversal;
    std::vector<char> has;
  };
  int degree_;
  std::vector<Level> levels_;
};

uint64_t pack_perm(const Perm& p) {
  uint64_t v = 0;
  for (int i = 0; i < p.degree(); ++i)
    v = (v << 4) | static_cast<uint64_t>(p(static_cast<Perm::Point>(i)));
  return v;
}

std::vector<Perm> symmetric_group_gens(int m) {
  std::vector<Perm> gens;
  if (m < 2) return gens;
  std::vector<Perm::Point> t(m), c(m);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (int i = 0; i < m; ++i) c[i] = static_cast<Perm::Point>((i + 1) % m);
  gens.emplace_back(std::move(t));
  gens.emplace_back(std::move(c));
  return gens;
}

}  // namespace

SylowCosets::SylowCosets(long long m, long long p, long long coset_bound) : m_(m), p_(p) {
  auto syl = sylow_of_symmetric(static_cast<int>(m), p, 1 << 20);
  sylow_ = syl.elements();
  long long nu = legendre_nu(m, p);
  Int expected = 1;
  for (long long i = 0; i < nu; ++i) expected *= p;
  if (Int(static_cast<long long>(sylow_.size())) != expected)
    fail("domain", "Sylow subgroup of S_m has unexpected order (internal error)");
  Int count = factorial(m) / static_cast<long long>(sylow_.size());
  if (count > coset_bound)
    fail("coset_bound", "coset count " + count.str() + " exceeds enumeration bound " +
                            std::to_string(coset_bound));
  long long total = count.convert_to<long long>();

  MinCosetChain chain(static_cast<int>(m), sylow_);
  std::vector<Perm> gens = symmetric_group_gens(static_cast<int>(m));
  const bool packable = m <= 16;
  std::unordered_set<uint64_t> seen_packed;
  std::set<Perm> seen_slow;
  std::queue<Perm> todo;
  Perm start = chain.min_in_coset(Perm::identity(static_cast<int>(m)));
  reps_.push_back(start);
  if (packable)
    seen_packed.insert(pack_perm(start));
  else
    seen_slow.insert(start);
  todo.push(start);
  while (!todo.empty() && static_cast<long long>(reps_.size()) < total) {
    Perm cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Perm moved = chain.min_in_coset(g * cur);
      bool fresh = packable ? seen_packed.insert(pack_perm(moved)).second
                            : seen_slow.insert(moved).second;
      if (fresh) {
        reps_.push_back(moved);
        todo.push(moved);
        if (static_cast<long long>(reps_.size()) >= total) break;
      }
    }
  }
  if (static_cast<long long>(reps_.size()) != total)
    fail("domain", "coset enumeration incomplete (internal error)");
  std::sort(reps_.begin(), reps_.end());
}

bool SylowCosets::in_sylow(const Perm& x) const {
  return std::binary_search(sylow_.begin(), sylow_.end(), x);
}

BurnsideElement sm_mod_sylow_component(const TableOfMarksPtr& ring, const SylowCosets& cosets) {
  const PermGroup& k = ring->group();
  long long m = cosets.m();
  if (m % k.order() != 0) fail("domain", "|K| must divide m");
  Perm tau = Perm::identity(static_cast<int>(m));
  Row marks(ring->size(), 0);
  for (int c = 0; c < ring->size(); ++c) {
    auto gens = minimal_generators(k.degree(), ring->classes()[c].representative.elements);
    std::vector<Perm> rho_gens;
    for (const auto& g : gens) rho_gens.push_back(rho_u(k, g, m, tau));
    Int fixed = 0;
    for (const auto& sigma : cosets.reps()) {
      Perm si = sigma.inverse();
      bool fix = true;
      for (const auto& rg : rho_gens)
        if (!cosets.in_sylow(si * rg * sigma)) {
          fix = false;
          break;
        }
      if (fix) ++fixed;
    }
    marks[c] = fixed;
  }
  return element_from_coeffs(ring, coeffs_from_marks(*ring, marks));
}

SymmetricSetElement build_sm(const FamilyDiagram& d, long long m, const SmOptions& opts) {
  if (m > opts.m_bound)
    fail("domain", "m = " + std::to_string(m) + " exceeds the configured bound " +
                       std::to_string(opts.m_bound));
  for (int i = 0; i < d.object_count(); ++i)
    if (m % d.object(i).order() != 0)
      fail("domain", "m is not a common multiple of the object orders");
  SymmetricSetElement out;
  out.m = m;
  out.variant = SmVariant::Full;
  out.set_size = factorial(m);
  for (int i = 0; i < d.object_count(); ++i) {
    auto ring = d.table(i);
    out.family.components.push_back(
        m <= 5 ? sm_component_direct(ring, m, Perm::identity(static_cast<int>(m)))
               : sm_component_shortcut(ring, m));
  }
  return out;
}

SymmetricSetElement build_sm_mod_sylow(const FamilyDiagram& d, long long m, long long p,
                                       const SmOptions& opts) {
  if (m > opts.m_bound)
    fail("domain", "m = " + std::to_string(m) + " exceeds the configured bound " +
                       std::to_string(opts.m_bound));
  for (int i = 0; i < d.object_count(); ++i)
    if (m % d.object(i).order() != 0)
      fail("domain", "m is not a common multiple of the object orders");
  SylowCosets cosets(m, p, opts.coset_bound);
  SymmetricSetElement out;
  out.m = m;
  out.variant = SmVariant::ModSylow;
  out.p = p;
  out.set_size = cosets.coset_count();
  for (int i = 0; i < d.object_count(); ++i)
    out.family.components.push_back(sm_mod_sylow_component(d.table(i), cosets));
  return out;
}

bool restriction_compatibility_check(const FamilyDiagram& d, long long m, long long p,
                                     const SmOptions& opts) {
  auto full = build_sm(d, m, opts);
  auto msyl = build_sm_mod_sylow(d, m, p, opts);
  for (size_t mi = 0; mi < d.morphisms().size(); ++mi) {
    const auto& mo = d.morphisms()[mi];
    const auto& hom = d.morphism_hom(static_cast<int>(mi));
    for (const auto* fam : {&full, &msyl}) {
      auto restricted =
          restriction_along(fam->family.components[mo.dst], hom, d.table(mo.src));
      if (restricted.coeffs != fam->family.components[mo.src].coeffs) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Condition check

namespace {

Int lattice_char_value(const TableOfMarks& t, const Row& coeffs, int class_index) {
  Int v = 0;
  for (int i = 0; i < t.size(); ++i) v += coeffs[i] * t.marks()[i][class_index];
  return v;
}

}  // namespace

SegalConditionReport segal_condition_check(const FamilyDiagram& d, int object_index, long long m,
                                           const SmOptions& opts) {
  auto defects = validate_diagram(d);
  if (!defects.empty()) fail("domain", "invalid diagram: " + defects.front());
  if (object_index < 0 || object_index >= d.object_count())
    fail("index", "object index out of range");
  for (int i = 0; i < d.object_count(); ++i)
    if (m % d.object(i).order() != 0)
      fail("domain", "m is not a common multiple of the object orders");

  SegalConditionReport rep;
  rep.object_index = object_index;
  rep.m = m;
  auto lim = inverse_limit(d, true);
  rep.image_phi = phi_image(d, lim, object_index);
  auto table = d.table(object_index);
  auto aug_ideal = augmentation_ideal(*table);

  // Relevant primes: divisors of the character values of the generators of
  // im(phi_H) and of I(H), plus one coprime witness. For any other prime p,
  // char == 0 mod p forces char == 0, which is the p = 0 case.
  std::set<long long> prime_set;
  std::set<Int> values;
  for (const auto& gen : rep.image_phi.basis)
    for (int c = 0; c < table->size(); ++c) values.insert(int_abs(lattice_char_value(*table, gen, c)));
  for (const auto& gen : aug_ideal.basis)
    for (int c = 0; c < table->size(); ++c) values.insert(int_abs(lattice_char_value(*table, gen, c)));
  for (const auto& v : values)
    for (long long pf : prime_factors(v)) prime_set.insert(pf);
  long long witness = 2;
  auto divides_some = [&](long long w) {
    for (const auto& v : values)
      if (v != 0 && v % w == 0) return true;
    return false;
  };
  while (!is_prime_ll(witness) || divides_some(witness)) ++witness;
  rep.primes.push_back(0);
  for (long long pf : prime_set) rep.primes.push_back(pf);
  rep.primes.push_back(witness);

  // [S_m] component at H via the always-available shortcut; the mod-Sylow
  // components are enumerated per prime when within the coset bound.
  auto sm_elem = sm_component_shortcut(table, m);
  Int sm_size = factorial(m);
  std::map<long long, std::optional<BurnsideElement>> msyl_elems;
  std::map<long long, Int> msyl_sizes;
  std::map<long long, std::string> msyl_notes;
  for (const auto& p : rep.primes) {
    if (p == 0) continue;
    long long pl = p.convert_to<long long>();
    long long nu = legendre_nu(m, pl);
    Int syl_order = 1;
    for (long long i = 0; i < nu; ++i) syl_order *= pl;
    msyl_sizes[pl] = factorial(m) / syl_order;
    try {
      SylowCosets cosets(m, pl, opts.coset_bound);
      msyl_elems[pl] = sm_mod_sylow_component(table, cosets);
    } catch (const Error& e) {
      if (e.code() != "coset_bound") throw;
      msyl_elems[pl] = std::nullopt;
      msyl_notes[pl] = e.what();
    }
  }

  rep.pass = true;
  for (int c = 0; c < table->size(); ++c) {
    for (const auto& p : rep.primes) {
      LabelVerdict lv;
      lv.class_index = c;
      lv.p = p;
      // (a): all generators of im(phi_H) have char_K divisible by p.
      lv.contains_image = true;
      for (const auto& gen : rep.image_phi.basis) {
        Int v = lattice_char_value(*table, gen, c);
        if ((p == 0 && v != 0) || (p != 0 && v % p != 0)) {
          lv.contains_image = false;
          break;
        }
      }
      // (b): Dress reduction.
      if (p == 0) {
        lv.contains_aug_ideal = table->classes()[c].order == 1;
      } else {
        auto res = p_residual(table->classes()[c].representative, p.convert_to<long long>());
        lv.contains_aug_ideal = res.order() == 1;
      }
      lv.implication_holds = !lv.contains_image || lv.contains_aug_ideal;
      if (!lv.implication_holds) rep.pass = false;

      // Trace of the two permutation-model elements.
      lv.trace.sm_size = sm_size;
      lv.trace.sm_char = character(sm_elem, c) - sm_size;
      bool k_trivial = table->classes()[c].order == 1;
      if (p == 0) {
        lv.trace.conclusion =
            k_trivial ? "K = 1: P(1,0) is the augmentation ideal itself"
                      : "char_K([S_m] - |S_m|) = " + lv.trace.sm_char.str() +
                            " is nonzero, so P(K,0) cannot contain the image";
      } else {
        long long pl = p.convert_to<long long>();
        lv.trace.msyl_size = msyl_sizes[pl];
        lv.trace.msyl_size_coprime_p = (msyl_sizes[pl] % pl != 0);
        if (msyl_elems[pl]) {
          lv.trace.msyl_char = character(*msyl_elems[pl], c) - msyl_sizes[pl];
        } else {
          lv.trace.msyl_note = msyl_notes[pl];
        }
        if (k_trivial) {
          lv.trace.conclusion = "K = 1: I(H) = P(1,0) is contained in P(1,p)";
        } else if (lv.trace.msyl_char && (*lv.trace.msyl_char + lv.trace.msyl_size) != 0) {
          lv.trace.conclusion =
              "S_m/Syl_p has a K-fixed coset, so K is a p-group and P(K,p) = P(1,p)";
        } else if (lv.trace.msyl_char) {
          lv.trace.conclusion = "char_K([S_m/Syl_p] - |S_m/Syl_p|) = " +
                                lv.trace.msyl_char->str() + " is prime to p, so P(K,p) " +
                                "cannot contain the image";
        } else {
          lv.trace.conclusion = "mod-Sylow fixed points not enumerated (over coset bound)";
        }
      }
      rep.labels.push_back(std::move(lv));
    }
  }
  return rep;
}

}  // namespace segc
