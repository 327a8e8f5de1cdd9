#include "segc/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include "segc/error.hpp"
#include "segc/ints.hpp"

namespace segc {

namespace {

bool sorted_contains(const std::vector<Perm>& sorted, const Perm& p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

}  // namespace

std::vector<Perm> closure(int degree, const std::vector<Perm>& seeds, long long bound) {
  std::unordered_set<Perm, PermHash> seen;
  std::queue<Perm> todo;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  todo.push(id);
  std::vector<Perm> gens;
  for (const auto& s : seeds) {
    if (s.degree() != degree) fail("parse", "generator degree mismatch");
    if (!s.is_identity()) gens.push_back(s);
  }
  for (const auto& g : gens)
    if (seen.insert(g).second) todo.push(g);
  while (!todo.empty()) {
    Perm cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Perm prod = cur * g;
      if (seen.insert(prod).second) {
        if (bound > 0 && static_cast<long long>(seen.size()) > bound)
          fail("order_bound", "group order exceeds bound " + std::to_string(bound));
        todo.push(prod);
      }
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct PermGroup::State {
  int degree = 1;
  std::vector<Perm> generators;
  long long order_bound = kDefaultOrderBound;

  mutable std::once_flag once;
  mutable std::vector<Perm> elements;
};

PermGroup::PermGroup() : PermGroup(1, {}) {}

PermGroup::PermGroup(int degree, std::vector<Perm> generators, long long order_bound)
    : state_(std::make_shared<State>()) {
  if (degree < 1) fail("parse", "degree must be >= 1");
  state_->degree = degree;
  for (auto& g : generators)
    if (g.degree() != degree) fail("parse", "generator degree mismatch");
  state_->generators = std::move(generators);
  state_->order_bound = order_bound;
}

int PermGroup::degree() const { return state_->degree; }
const std::vector<Perm>& PermGroup::generators() const { return state_->generators; }
long long PermGroup::order_bound() const { return state_->order_bound; }

const std::vector<Perm>& PermGroup::elements() const {
  std::call_once(state_->once, [this] {
    state_->elements = closure(state_->degree, state_->generators, state_->order_bound);
  });
  return state_->elements;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree()) return false;
  return sorted_contains(elements(), p);
}

bool Subgroup::contains(const Perm& p) const { return sorted_contains(elements, p); }

namespace {

PermGroup cyclic_preset(int n) {
  if (n < 1) fail("parse", "C<n> needs n >= 1");
  if (n == 1) return PermGroup(1, {});
  std::vector<Perm::Point> img(n);
  for (int i = 0; i < n; ++i) img[i] = static_cast<Perm::Point>((i + 1) % n);
  return PermGroup(n, {Perm(img)});
}

PermGroup symmetric_preset(int n) {
  if (n < 1) fail("parse", "S<n> needs n >= 1");
  if (n == 1) return PermGroup(1, {});
  std::vector<Perm::Point> t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (int i = 0; i < n; ++i) c[i] = static_cast<Perm::Point>((i + 1) % n);
  return PermGroup(n, {Perm(t), Perm(c)});
}

PermGroup alternating_preset(int n) {
  if (n < 1) fail("parse", "A<n> needs n >= 1");
  if (n <= 2) return PermGroup(std::max(n, 1), {});
  std::vector<Perm::Point> three(n);
  std::iota(three.begin(), three.end(), 0);
  three[0] = 1; three[1] = 2; three[2] = 0;
  if (n == 3) return PermGroup(3, {Perm(three)});
  std::vector<Perm::Point> big(n);
  std::iota(big.begin(), big.end(), 0);
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) big[i] = static_cast<Perm::Point>((i + 1) % n);
  } else {
    // (2 3 ... n), an (n-1)-cycle fixing point 1
    for (int i = 1; i < n; ++i) big[i] = static_cast<Perm::Point>(i == n - 1 ? 1 : i + 1);
  }
  return PermGroup(n, {Perm(three), Perm(big)});
}

PermGroup dihedral_preset(int order) {
  if (order < 2 || order % 2 != 0) fail("parse", "D<k> needs even k >= 2");
  int n = order / 2;
  if (n == 1) return cyclic_preset(2);
  if (n == 2) {
    // Klein group on four points
    auto gens = parse_cycle_generators("(1 2),(3 4)");
    return PermGroup(4, gens);
  }
  std::vector<Perm::Point> rot(n), refl(n);
  for (int i = 0; i < n; ++i) rot[i] = static_cast<Perm::Point>((i + 1) % n);
  for (int i = 0; i < n; ++i) refl[i] = static_cast<Perm::Point>((n - i) % n);
  return PermGroup(n, {Perm(rot), Perm(refl)});
}

PermGroup quaternion_preset() {
  // Regular action on {1,-1,i,-i,j,-j,k,-k}.
  std::vector<Perm::Point> pi = {2, 3, 1, 0, 6, 7, 5, 4};
  std::vector<Perm::Point> pj = {4, 5, 7, 6, 1, 0, 2, 3};
  return PermGroup(8, {Perm(pi), Perm(pj)});
}

std::optional<PermGroup> preset_group(const std::string& name) {
  if (name == "Q8") return quaternion_preset();
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'S' || name[0] == 'A' || name[0] == 'D')) {
    for (size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    long long n = std::stoll(name.substr(1));
    if (n > 65535) fail("parse", "preset parameter out of range");
    switch (name[0]) {
      case 'C': return cyclic_preset(static_cast<int>(n));
      case 'S': return symmetric_preset(static_cast<int>(n));
      case 'A': return alternating_preset(static_cast<int>(n));
      case 'D': return dihedral_preset(static_cast<int>(n));
    }
  }
  return std::nullopt;
}

}  // namespace

PermGroup parse_group(const std::string& spec, long long order_bound) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (!s.empty() && s[0] != '(') {
    auto preset = preset_group(s);
    if (!preset) fail("parse", "unknown preset group '" + s + "'");
    PermGroup g(preset->degree(), preset->generators(), order_bound);
    if (g.order() > order_bound)
      fail("order_bound", "group order exceeds bound " + std::to_string(order_bound));
    return g;
  }
  auto gens = parse_cycle_generators(spec);
  int degree = 1;
  for (const auto& g : gens) degree = std::max(degree, g.degree());
  std::vector<Perm> padded;
  for (const auto& g : gens) {
    std::vector<Perm::Point> img(degree);
    std::iota(img.begin(), img.end(), 0);
    for (int x = 0; x < g.degree(); ++x) img[x] = g(static_cast<Perm::Point>(x));
    padded.emplace_back(std::move(img));
  }
  PermGroup g(degree, padded, order_bound);
  g.elements();  // force the bound check now
  return g;
}

Subgroup make_subgroup(const PermGroup& parent, const std::vector<Perm>& gens) {
  auto elems = closure(parent.degree(), gens, parent.order());
  for (const auto& e : elems)
    if (!parent.contains(e)) fail("domain", "subgroup generator outside parent group");
  return Subgroup{parent, std::move(elems)};
}

Subgroup subgroup_from_elements(const PermGroup& parent, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (const auto& e : elements)
    if (!parent.contains(e)) fail("domain", "subgroup element outside parent group");
  return Subgroup{parent, std::move(elements)};
}

Subgroup trivial_subgroup(const PermGroup& parent) {
  return Subgroup{parent, {Perm::identity(parent.degree())}};
}

Subgroup full_subgroup(const PermGroup& parent) {
  return Subgroup{parent, parent.elements()};
}

PermGroup as_group(const Subgroup& h) {
  auto gens = minimal_generators(h.parent.degree(), h.elements);
  return PermGroup(h.parent.degree(), gens, h.parent.order_bound());
}

std::vector<Perm> minimal_generators(int degree, const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  std::vector<Perm> have = {Perm::identity(degree)};
  for (const auto& e : elements) {
    if (sorted_contains(have, e)) continue;
    gens.push_back(e);
    have = closure(degree, gens, static_cast<long long>(elements.size()));
    if (have.size() == elements.size()) break;
  }
  return gens;
}

namespace {

std::vector<Perm> conjugate_sorted(const std::vector<Perm>& elems, const Perm& x) {
  Perm xi = x.inverse();
  std::vector<Perm> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(x * e * xi);
  std::sort(out.begin(), out.end());
  return out;
}

// Cyclic subgroups of prime-power order, deduplicated; enough join partners
// to reach every subgroup.
std::vector<std::vector<Perm>> prime_power_cyclics(const PermGroup& g) {
  std::set<std::vector<Perm>> dedup;
  for (const auto& e : g.elements()) {
    if (e.is_identity()) continue;
    long long o = e.order();
    for (long long p : prime_factors(Int(o))) {
      long long q = 1;
      while (o % (q * p) == 0) q *= p;
      Perm gen = e;
      long long power = o / q;
      Perm acc = Perm::identity(g.degree());
      for (long long i = 0; i < power; ++i) acc = acc * gen;
      dedup.insert(closure(g.degree(), {acc}, g.order()));
    }
  }
  return {dedup.begin(), dedup.end()};
}

}  // namespace

std::vector<SubgroupClass> all_subgroup_classes(const PermGroup& g) {
  const auto& all = g.elements();
  long long n = static_cast<long long>(all.size());

  std::set<std::vector<Perm>> found;
  std::vector<std::vector<Perm>> frontier;
  std::vector<Perm> triv = {Perm::identity(g.degree())};
  found.insert(triv);
  frontier.push_back(triv);
  auto partners = prime_power_cyclics(g);
  for (const auto& c : partners)
    if (found.insert(c).second) frontier.push_back(c);

  while (!frontier.empty()) {
    std::vector<std::vector<Perm>> next;
    for (const auto& h : frontier) {
      for (const auto& c : partners) {
        if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
        std::vector<Perm> seed = h;
        seed.insert(seed.end(), c.begin(), c.end());
        auto joined = closure(g.degree(), seed, n);
        if (found.insert(joined).second) next.push_back(std::move(joined));
      }
    }
    frontier = std::move(next);
  }

  // Group into conjugacy classes; the class key is its least member.
  std::set<std::vector<Perm>> assigned;
  std::vector<SubgroupClass> classes;
  for (const auto& h : found) {
    if (assigned.count(h)) continue;
    std::set<std::vector<Perm>> orbit;
    for (const auto& x : all) orbit.insert(conjugate_sorted(h, x));
    SubgroupClass cls;
    cls.order = static_cast<long long>(h.size());
    for (const auto& m : orbit) {
      assigned.insert(m);
      cls.members.push_back(Subgroup{g, m});
    }
    cls.representative = cls.members.front();  // set-ordered, least key first
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.representative.elements < b.representative.elements;
  });
  return classes;
}

bool is_conjugate(const PermGroup& g, const Subgroup& a, const Subgroup& b) {
  for (const auto& e : a.elements)
    if (!g.contains(e)) fail("domain", "subgroup not contained in group");
  for (const auto& e : b.elements)
    if (!g.contains(e)) fail("domain", "subgroup not contained in group");
  if (a.elements.size() != b.elements.size()) return false;
  for (const auto& x : g.elements())
    if (conjugate_sorted(a.elements, x) == b.elements) return true;
  return false;
}

Subgroup normalizer(const PermGroup& g, const Subgroup& h) {
  std::vector<Perm> norm;
  for (const auto& x : g.elements())
    if (conjugate_sorted(h.elements, x) == h.elements) norm.push_back(x);
  return Subgroup{g, std::move(norm)};
}

Subgroup sylow_subgroup(const PermGroup& g, long long p) {
  if (!is_prime_ll(p)) fail("domain", "p must be prime");
  long long n = g.order();
  long long target = 1;
  while (n % (target * p) == 0) target *= p;
  Subgroup cur = trivial_subgroup(g);
  while (cur.order() < target) {
    Subgroup norm = normalizer(g, cur);
    bool grew = false;
    for (const auto& x : norm.elements) {
      if (cur.contains(x)) continue;
      long long xo = x.order();
      bool p_power = true;
      for (long long q = xo; q > 1; q /= p)
        if (q % p != 0) { p_power = false; break; }
      if (!p_power) continue;
      std::vector<Perm> seed = cur.elements;
      seed.push_back(x);
      auto bigger = closure(g.degree(), seed, g.order());
      long long bo = static_cast<long long>(bigger.size());
      bool bp = true;
      for (long long q = bo; q > 1; q /= p)
        if (q % p != 0) { bp = false; break; }
      if (!bp) continue;
      cur = Subgroup{g, std::move(bigger)};
      grew = true;
      break;
    }
    if (!grew) fail("domain", "Sylow search stalled (internal error)");
  }
  // Canonical choice: least element list among all conjugates.
  std::vector<Perm> best = cur.elements;
  for (const auto& x : g.elements()) {
    auto conj = conjugate_sorted(cur.elements, x);
    if (conj < best) best = conj;
  }
  return Subgroup{g, std::move(best)};
}

Subgroup p_residual(const Subgroup& h, long long p) {
  if (!is_prime_ll(p)) fail("domain", "p must be prime");
  std::vector<Perm> cur = h.elements;
  while (true) {
    std::vector<Perm> seeds;
    for (const auto& a : cur) {
      Perm ap = Perm::identity(h.parent.degree());
      for (long long i = 0; i < p; ++i) ap = ap * a;
      seeds.push_back(ap);
      Perm ai = a.inverse();
      for (const auto& b : h.elements) seeds.push_back(ai * b.inverse() * a * b);
    }
    auto next = closure(h.parent.degree(), seeds, static_cast<long long>(cur.size()));
    if (next.size() == cur.size()) return Subgroup{h.parent, std::move(next)};
    cur = std::move(next);
  }
}

PermGroup sylow_of_symmetric(int m, long long p, long long order_bound) {
  if (!is_prime_ll(p)) fail("domain", "p must be prime");
  if (m < 1) fail("domain", "m must be >= 1");
  std::vector<Perm> gens;
  auto add_wreath_block = [&](int start, int height) {
    // Iterated wreath power of C_p on p^height consecutive points.
    long long width = 1;
    for (int level = 1; level <= height; ++level) {
      width *= p;  // p^level
      long long sub = width / p;
      std::vector<Perm::Point> img(m);
      std::iota(img.begin(), img.end(), 0);
      for (long long j = 0; j < p; ++j)
        for (long long x = 0; x < sub; ++x)
          img[start + j * sub + x] = static_cast<Perm::Point>(start + ((j + 1) % p) * sub + x);
      gens.emplace_back(std::move(img));
    }
  };
  // Base-p digits of m, highest first.
  std::vector<int> digits;
  {
    int rest = m;
    while (rest > 0) {
      digits.push_back(rest % static_cast<int>(p));
      rest /= static_cast<int>(p);
    }
  }
  int start = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    long long block = 1;
    for (int k = 0; k < i; ++k) block *= p;
    for (int c = 0; c < digits[i]; ++c) {
      if (i > 0) add_wreath_block(start, i);
      start += static_cast<int>(block);
    }
  }
  PermGroup s(m, gens, order_bound);
  return s;
}

Perm Homomorphism::apply(const Perm& x) const {
  const auto& elems = source.elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), x);
  if (it == elems.end() || *it != x) fail("domain", "element outside homomorphism domain");
  return element_images[static_cast<size_t>(it - elems.begin())];
}

std::optional<Homomorphism> extend_homomorphism(const PermGroup& src, const PermGroup& dst,
                                                const std::vector<Perm>& gen_images) {
  if (gen_images.size() != src.generators().size()) return std::nullopt;
  const auto& elems = src.elements();
  auto index_of = [&](const Perm& x) {
    return static_cast<size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
  };
  std::vector<char> known(elems.size(), 0);
  std::vector<Perm> img(elems.size());
  Perm id = Perm::identity(src.degree());
  img[index_of(id)] = Perm::identity(dst.degree());
  known[index_of(id)] = 1;
  std::queue<Perm> todo;
  todo.push(id);
  while (!todo.empty()) {
    Perm cur = todo.front();
    todo.pop();
    Perm cimg = img[index_of(cur)];
    for (size_t gi = 0; gi < src.generators().size(); ++gi) {
      Perm nxt = src.generators()[gi] * cur;
      Perm nimg = gen_images[gi] * cimg;
      size_t idx = index_of(nxt);
      if (!known[idx]) {
        known[idx] = 1;
        img[idx] = nimg;
        todo.push(nxt);
      } else if (img[idx] != nimg) {
        return std::nullopt;  // inconsistent relations
      }
    }
  }
  for (const auto& k : known)
    if (!k) return std::nullopt;  // generators fail to reach (never for a group)
  // Verify multiplicativity; relation inconsistencies surface here.
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = 0; b < elems.size(); ++b) {
      Perm prod = elems[a] * elems[b];
      if (img[index_of(prod)] != img[a] * img[b]) return std::nullopt;
    }
  for (const auto& v : img)
    if (!dst.contains(v)) return std::nullopt;
  return Homomorphism{src, dst, gen_images, std::move(img)};
}

std::vector<Homomorphism> injective_homs(const PermGroup& h, const PermGroup& k) {
  std::vector<Homomorphism> out;
  if (k.order() % h.order() != 0) return out;
  auto gens = minimal_generators(h.degree(), h.elements());
  if (gens.empty()) {
    // trivial source: the unique (injective) homomorphism
    Homomorphism hom{h, k, {}, {Perm::identity(k.degree())}};
    // align with h.elements() (single identity element)
    out.push_back(std::move(hom));
    return out;
  }
  // Backtrack over generator images with matching element orders.
  std::vector<std::vector<Perm>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    long long o = gens[i].order();
    for (const auto& e : k.elements())
      if (e.order() == o) candidates[i].push_back(e);
  }
  std::vector<Perm> pick(gens.size());
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == gens.size()) {
      // The source generator list produced by minimal_generators() may differ
      // from h.generators(); extend via a source copy with these generators.
      PermGroup src(h.degree(), gens, h.order_bound());
      auto hom = extend_homomorphism(src, k, pick);
      if (!hom) return;
      std::set<Perm> image(hom->element_images.begin(), hom->element_images.end());
      if (image.size() != hom->element_images.size()) return;  // not injective
      out.push_back(std::move(*hom));
      return;
    }
    for (const auto& c : candidates[depth]) {
      pick[depth] = c;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Homomorphism& a, const Homomorphism& b) {
    return a.element_images < b.element_images;
  });
  return out;
}

}  // namespace segc
