#include "segc/abelian.hpp"

#include "segc/error.hpp"

namespace segc {

AbelianMap identity_map(const FgAbelianGroup& g) {
  return AbelianMap{g, g, identity_matrix(g.gens())};
}

AbelianMap zero_map(const FgAbelianGroup& src, const FgAbelianGroup& dst) {
  return AbelianMap{src, dst, Mat(src.gens(), Row(dst.gens(), 0))};
}

AbelianMap compose(const AbelianMap& second, const AbelianMap& first) {
  if (!(first.target == second.source)) fail("dimension", "map composition mismatch");
  // Shapes are taken from the groups, not the operand matrices, so that
  // zero-generator middle groups compose correctly.
  int s = first.source.gens(), mid = first.target.gens(), t = second.target.gens();
  Mat out(s, Row(t, 0));
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < mid; ++k) {
      if (first.matrix[i][k] == 0) continue;
      for (int j = 0; j < t; ++j) out[i][j] += first.matrix[i][k] * second.matrix[k][j];
    }
  return AbelianMap{first.source, second.target, std::move(out)};
}

bool map_well_formed(const AbelianMap& f) {
  if (static_cast<int>(f.matrix.size()) != f.source.gens()) return false;
  for (const auto& r : f.matrix)
    if (static_cast<int>(r.size()) != f.target.gens()) return false;
  auto rel = f.target.relation_lattice();
  for (size_t i = 0; i < f.source.torsion.size(); ++i) {
    Row scaled = f.matrix[i];
    for (auto& v : scaled) v *= f.source.torsion[i];
    if (!lattice_member(rel, scaled)) return false;
  }
  return true;
}

void require_well_formed(const AbelianMap& f) {
  if (!map_well_formed(f)) fail("morphism", "map does not respect torsion relations");
}

bool maps_equal(const AbelianMap& f, const AbelianMap& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) return false;
  auto rel = f.target.relation_lattice();
  for (size_t i = 0; i < f.matrix.size(); ++i) {
    Row diff = f.matrix[i];
    for (size_t j = 0; j < diff.size(); ++j) diff[j] -= g.matrix[i][j];
    if (!lattice_member(rel, diff)) return false;
  }
  return true;
}

bool map_is_zero(const AbelianMap& f) { return maps_equal(f, zero_map(f.source, f.target)); }

IntegerLattice kernel_lattice(const AbelianMap& f) {
  int s = f.source.gens();
  int t = f.target.gens();
  auto rel_t = f.target.relation_lattice();
  // Solve x*A = y*R over (x, y): left kernel of [A; -R].
  Mat stacked = f.matrix;
  for (const auto& r : rel_t.basis) {
    Row neg = r;
    for (auto& v : neg) v = -v;
    stacked.push_back(std::move(neg));
  }
  Mat ker = left_kernel(stacked, s + static_cast<int>(rel_t.basis.size()));
  Mat proj;
  for (const auto& row : ker) proj.push_back(Row(row.begin(), row.begin() + s));
  auto lat = hnf_lattice(s, std::move(proj));
  // rel(source) is contained in the kernel preimage by well-formedness.
  return lattice_sum(lat, f.source.relation_lattice());
}

IntegerLattice image_lattice(const AbelianMap& f) {
  Mat rows = f.matrix;
  auto rel = f.target.relation_lattice();
  rows.insert(rows.end(), rel.basis.begin(), rel.basis.end());
  return hnf_lattice(f.target.gens(), std::move(rows));
}

bool map_is_surjective(const AbelianMap& f) {
  return image_lattice(f) == full_lattice(f.target.gens());
}

SubquotientPresentation subquotient(const FgAbelianGroup& ambient, const IntegerLattice& sub,
                                    const IntegerLattice& inner) {
  if (sub.ambient_rank != ambient.gens() || inner.ambient_rank != ambient.gens())
    fail("dimension", "subquotient ambient mismatch");
  if (!lattice_contains(sub, inner)) fail("domain", "inner lattice not inside sub");
  // Express inner in the coordinates of sub's basis; the subquotient is
  // Z^{rank(sub)} modulo those rows.
  Mat inner_in_sub;
  for (const auto& r : inner.basis) {
    auto y = solve_left(r, sub.basis);
    if (!y) fail("domain", "inner lattice not inside sub (solve failed)");
    inner_in_sub.push_back(std::move(*y));
  }
  auto pres = snf_quotient(sub.rank(), hnf_lattice(sub.rank(), std::move(inner_in_sub)));
  SubquotientPresentation out;
  out.group = pres.group;
  out.sub_basis = sub.basis;
  out.to_group = pres.project;
  out.from_group = matrix_product(pres.lift, sub.basis);
  return out;
}

Row SubquotientPresentation::coordinates(const Row& ambient_vector) const {
  auto in_basis = solve_left(ambient_vector, sub_basis);
  if (!in_basis) fail("domain", "vector outside the presented subgroup");
  return group.normalized(row_times_matrix(*in_basis, to_group));
}

SubquotientPresentation kernel_presentation(const AbelianMap& f) {
  require_well_formed(f);
  auto ker = kernel_lattice(f);
  return subquotient(f.source, ker, f.source.relation_lattice());
}

CokernelPresentation cokernel_presentation(const AbelianMap& f) {
  require_well_formed(f);
  auto img = image_lattice(f);
  auto pres = snf_quotient(f.target.gens(), img);
  return CokernelPresentation{pres.group, pres.project, pres.lift};
}

}  // namespace segc
