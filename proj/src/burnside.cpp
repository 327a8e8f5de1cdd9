#include "segc/burnside.hpp"

#include <algorithm>
#include <map>

#include "segc/error.hpp"

namespace segc {

namespace {

void require_same_ring(const BurnsideElement& x, const BurnsideElement& y) {
  if (x.ring.get() != y.ring.get()) fail("domain", "elements live in different rings");
}

// Left coset representatives of h in g: the minimal element of each coset.
std::vector<Perm> coset_reps(const PermGroup& g, const std::vector<Perm>& h) {
  std::vector<Perm> reps;
  for (const auto& x : g.elements()) {
    Perm best = x;
    for (const auto& s : h) {
      Perm cand = x * s;
      if (cand < best) best = cand;
    }
    if (best == x) reps.push_back(x);
  }
  return reps;
}

}  // namespace

TableOfMarksPtr TableOfMarks::build(const PermGroup& g) {
  auto t = std::shared_ptr<TableOfMarks>(new TableOfMarks());
  t->group_ = g;
  t->classes_ = all_subgroup_classes(g);
  int n = static_cast<int>(t->classes_.size());
  t->marks_ = Mat(n, Row(n, 0));
  for (int i = 0; i < n; ++i) {
    const auto& h = t->classes_[i].representative;
    auto reps = coset_reps(g, h.elements);
    for (int j = 0; j < n; ++j) {
      const auto& k = t->classes_[j].representative;
      auto kgens = minimal_generators(g.degree(), k.elements);
      Int fixed = 0;
      for (const auto& r : reps) {
        Perm ri = r.inverse();
        bool fix = true;
        for (const auto& kg : kgens) {
          if (!std::binary_search(h.elements.begin(), h.elements.end(), ri * kg * r)) {
            fix = false;
            break;
          }
        }
        if (fix) ++fixed;
      }
      t->marks_[i][j] = fixed;
    }
  }
  return t;
}

TableOfMarksPtr TableOfMarks::unchecked(const PermGroup& g, std::vector<SubgroupClass> classes,
                                        Mat marks) {
  auto t = std::shared_ptr<TableOfMarks>(new TableOfMarks());
  t->group_ = g;
  t->classes_ = std::move(classes);
  t->marks_ = std::move(marks);
  return t;
}

int TableOfMarks::class_index(const Subgroup& h) const {
  for (int i = 0; i < size(); ++i) {
    if (classes_[i].order != h.order()) continue;
    if (is_conjugate(group_, classes_[i].representative, h)) return i;
  }
  fail("domain", "subgroup has no class in this table");
}

const StructureConstants& TableOfMarks::structure_constants() const {
  std::call_once(sc_once_, [this] {
    int n = size();
    sc_.rank = n;
    sc_.c.assign(n, std::vector<Row>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Row values(n);
        for (int k = 0; k < n; ++k) values[k] = marks_[i][k] * marks_[j][k];
        sc_.c[i][j] = coeffs_from_marks(*this, values);
      }
  });
  return sc_;
}

BurnsideElement basis_element(const TableOfMarksPtr& t, int class_index) {
  Row c(t->size(), 0);
  c[class_index] = 1;
  return BurnsideElement{t, std::move(c)};
}

BurnsideElement unit_element(const TableOfMarksPtr& t) {
  return basis_element(t, t->size() - 1);
}

BurnsideElement zero_element(const TableOfMarksPtr& t) {
  return BurnsideElement{t, Row(t->size(), 0)};
}

BurnsideElement element_from_coeffs(const TableOfMarksPtr& t, Row coeffs) {
  if (static_cast<int>(coeffs.size()) != t->size())
    fail("dimension", "coefficient vector length mismatch");
  return BurnsideElement{t, std::move(coeffs)};
}

BurnsideElement add(const BurnsideElement& x, const BurnsideElement& y) {
  require_same_ring(x, y);
  Row c = x.coeffs;
  for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs[i];
  return BurnsideElement{x.ring, std::move(c)};
}

BurnsideElement subtract(const BurnsideElement& x, const BurnsideElement& y) {
  require_same_ring(x, y);
  Row c = x.coeffs;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs[i];
  return BurnsideElement{x.ring, std::move(c)};
}

BurnsideElement scale(const Int& k, const BurnsideElement& x) {
  Row c = x.coeffs;
  for (auto& v : c) v *= k;
  return BurnsideElement{x.ring, std::move(c)};
}

MarkVector mark(const BurnsideElement& x) {
  const auto& m = x.ring->marks();
  int n = x.ring->size();
  Row values(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) values[j] += x.coeffs[i] * m[i][j];
  return MarkVector{std::move(values)};
}

Row coeffs_from_marks(const TableOfMarks& t, const Row& mark_values) {
  // Lower-triangular system: values[j] = sum_i coeffs[i] * marks[i][j];
  // back substitution from the largest class down.
  int n = t.size();
  if (static_cast<int>(mark_values.size()) != n)
    fail("dimension", "mark vector length mismatch");
  const auto& m = t.marks();
  Row coeffs(n, 0);
  for (int j = n - 1; j >= 0; --j) {
    Int acc = mark_values[j];
    for (int i = j + 1; i < n; ++i) acc -= coeffs[i] * m[i][j];
    if (m[j][j] == 0) fail("integrality", "marks diagonal is singular");
    if (acc % m[j][j] != 0)
      fail("integrality", "mark vector is not in the image of the marks matrix");
    coeffs[j] = acc / m[j][j];
  }
  return coeffs;
}

BurnsideElement multiply(const BurnsideElement& x, const BurnsideElement& y) {
  require_same_ring(x, y);
  Row mx = mark(x).values, my = mark(y).values;
  for (size_t i = 0; i < mx.size(); ++i) mx[i] *= my[i];
  return BurnsideElement{x.ring, coeffs_from_marks(*x.ring, mx)};
}

Int augmentation(const BurnsideElement& x) {
  // Character at the trivial subgroup, which is class 0.
  Int v = 0;
  for (int i = 0; i < x.ring->size(); ++i) v += x.coeffs[i] * x.ring->marks()[i][0];
  return v;
}

IntegerLattice augmentation_ideal(const TableOfMarks& t) {
  int n = t.size();
  Mat rows;
  for (int i = 0; i + 1 < n; ++i) {
    Row r(n, 0);
    r[i] = 1;
    r[n - 1] = -t.marks()[i][0];  // [G/H_i] - [G:H_i] * [G/G]
    rows.push_back(std::move(r));
  }
  return hnf_lattice(n, std::move(rows));
}

Int character(const BurnsideElement& x, int class_index) {
  Int v = 0;
  for (int i = 0; i < x.ring->size(); ++i) v += x.coeffs[i] * x.ring->marks()[i][class_index];
  return v;
}

bool prime_ideal_contains(const TableOfMarks& t, const PrimeIdealLabel& label,
                          const BurnsideElement& x) {
  if (x.ring.get() != &t) fail("domain", "element not over this table");
  Int v = character(x, label.class_index);
  if (label.p == 0) return v == 0;
  return v % label.p == 0;
}

bool prime_ideal_equal(const TableOfMarks& t, const PrimeIdealLabel& a,
                       const PrimeIdealLabel& b) {
  if (a.p != b.p) return false;
  if (a.class_index == b.class_index) return true;
  const auto& ka = t.classes()[a.class_index].representative;
  const auto& kb = t.classes()[b.class_index].representative;
  if (a.p == 0) return is_conjugate(t.group(), ka, kb);
  long long p = a.p.convert_to<long long>();
  Subgroup ra = p_residual(ka, p);
  Subgroup rb = p_residual(kb, p);
  return is_conjugate(t.group(), ra, rb);
}

std::vector<Int> spectrum_primes(const TableOfMarks& t) {
  std::vector<Int> ps = {0};
  long long order = t.group().order();
  for (long long p : prime_factors(Int(order))) ps.push_back(p);
  long long witness = 2;
  while (order % witness == 0 || !is_prime_ll(witness)) ++witness;
  ps.push_back(witness);
  return ps;
}

std::vector<SpectrumCell> prime_spectrum(const TableOfMarks& t) {
  std::vector<SpectrumCell> out;
  for (const auto& p : spectrum_primes(t)) {
    SpectrumCell cell{p, {}};
    std::vector<int> assigned(t.size(), 0);
    for (int i = 0; i < t.size(); ++i) {
      if (assigned[i]) continue;
      std::vector<int> merged = {i};
      assigned[i] = 1;
      for (int j = i + 1; j < t.size(); ++j) {
        if (assigned[j]) continue;
        if (prime_ideal_equal(t, PrimeIdealLabel{i, p}, PrimeIdealLabel{j, p})) {
          merged.push_back(j);
          assigned[j] = 1;
        }
      }
      cell.cells.push_back(std::move(merged));
    }
    out.push_back(std::move(cell));
  }
  return out;
}

namespace {

// Decomposes the H-set of cosets g/K (H acting through alpha, or directly
// when alpha is the identity inclusion) into orbits and accumulates class
// coefficients in the small ring.
Row restrict_basis_orbit_counts(const TableOfMarks& big, int big_class,
                                const TableOfMarks& small, const Homomorphism& alpha) {
  const PermGroup& g = big.group();
  const auto& k = big.classes()[big_class].representative;
  auto reps = coset_reps(g, k.elements);
  std::map<Perm, int> rep_index;
  for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);
  auto canon = [&](const Perm& x) {
    Perm best = x;
    for (const auto& s : k.elements) {
      Perm cand = x * s;
      if (cand < best) best = cand;
    }
    return best;
  };
  const auto& h_elems = alpha.source.elements();
  std::vector<char> seen(reps.size(), 0);
  Row coeffs(small.size(), 0);
  for (size_t i = 0; i < reps.size(); ++i) {
    if (seen[i]) continue;
    // Orbit of coset i under H; stabilizer read off along the way.
    std::vector<Perm> stab;
    for (const auto& h : h_elems) {
      Perm moved = canon(alpha.apply(h) * reps[i]);
      int idx = rep_index.at(moved);
      seen[idx] = 1;
      if (idx == static_cast<int>(i)) stab.push_back(h);
    }
    auto stab_sub = subgroup_from_elements(alpha.source, stab);
    coeffs[small.class_index(stab_sub)] += 1;
  }
  return coeffs;
}

Homomorphism inclusion_hom(const PermGroup& sub, const PermGroup& big) {
  std::vector<Perm> gen_images = sub.generators();
  auto hom = extend_homomorphism(sub, big, gen_images);
  if (!hom) fail("domain", "not a subgroup inclusion");
  return *hom;
}

}  // namespace

Mat restriction_matrix(const TableOfMarks& big, const TableOfMarks& small,
                       const Homomorphism& alpha) {
  Mat m(big.size());
  for (int i = 0; i < big.size(); ++i)
    m[i] = restrict_basis_orbit_counts(big, i, small, alpha);
  return m;
}

BurnsideElement restriction_along(const BurnsideElement& x, const Homomorphism& alpha,
                                  const TableOfMarksPtr& source_ring) {
  Row out(source_ring->size(), 0);
  for (int i = 0; i < x.ring->size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    Row basis = restrict_basis_orbit_counts(*x.ring, i, *source_ring, alpha);
    for (size_t j = 0; j < out.size(); ++j) out[j] += x.coeffs[i] * basis[j];
  }
  return BurnsideElement{source_ring, std::move(out)};
}

BurnsideElement restriction(const BurnsideElement& x, const TableOfMarksPtr& sub_ring) {
  const PermGroup& g = x.ring->group();
  const PermGroup& h = sub_ring->group();
  if (h.degree() != g.degree()) fail("domain", "subgroup must act on the same points");
  for (const auto& e : h.elements())
    if (!g.contains(e)) fail("domain", "not a subgroup of the ambient group");
  return restriction_along(x, inclusion_hom(h, g), sub_ring);
}

BurnsideElement induction(const BurnsideElement& x, const TableOfMarksPtr& big_ring) {
  const PermGroup& g = big_ring->group();
  const PermGroup& h = x.ring->group();
  if (h.degree() != g.degree()) fail("domain", "subgroup must act on the same points");
  for (const auto& e : h.elements())
    if (!g.contains(e)) fail("domain", "not a subgroup of the ambient group");
  Row out(big_ring->size(), 0);
  for (int i = 0; i < x.ring->size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    const auto& l = x.ring->classes()[i].representative;
    Subgroup in_g = subgroup_from_elements(g, l.elements);
    out[big_ring->class_index(in_g)] += x.coeffs[i];
  }
  return BurnsideElement{big_ring, std::move(out)};
}

}  // namespace segc
