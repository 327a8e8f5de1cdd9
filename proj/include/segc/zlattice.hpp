#pragma once

// Integer lattices in Hermite normal form and Smith-normal-form machinery.
// Canonical forms throughout: two lattices are equal iff their HNF matrices
// are equal, which makes ideal equality a plain comparison.

#include <optional>
#include <vector>

#include "segc/ints.hpp"

namespace segc {

// Sublattice of Z^ambient_rank spanned by the rows of `basis`, kept in row
// Hermite normal form (pivots positive, entries above pivots reduced).
struct IntegerLattice {
  int ambient_rank = 0;
  Mat basis;  // may be empty (zero lattice)

  int rank() const { return static_cast<int>(basis.size()); }
  bool operator==(const IntegerLattice& o) const = default;
};

IntegerLattice hnf_lattice(int ambient_rank, Mat rows);
IntegerLattice zero_lattice(int ambient_rank);
IntegerLattice full_lattice(int ambient_rank);

bool lattice_member(const IntegerLattice& l, const Row& x);
bool lattice_contains(const IntegerLattice& outer, const IntegerLattice& inner);
IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
// Image under deleting all coordinates except `coords` (in the given order).
IntegerLattice lattice_project(const IntegerLattice& l, const std::vector<int>& coords);

// Smith normal form with transforms: U * M * V = D, all unimodular, D
// diagonal with d_1 | d_2 | ... Inverses are tracked alongside.
struct SnfResult {
  Mat d, u, v, u_inv, v_inv;
  int rank = 0;
  std::vector<Int> diagonal;  // the nonzero d_i, divisibility chain
};
SnfResult smith_normal_form(const Mat& m);

// Basis of {x : x * M = 0}.
Mat left_kernel(const Mat& m, int rows_hint = -1);

// Solves y * M = x over the integers; nullopt when unsolvable.
std::optional<Row> solve_left(const Row& x, const Mat& m);

// Finitely generated abelian group in canonical coordinates: the first
// torsion.size() generators have orders torsion[i] (ascending divisibility),
// the remaining free_rank generators are free.
struct FgAbelianGroup {
  int free_rank = 0;
  std::vector<Int> torsion;  // each >= 2, d_1 | d_2 | ...

  int gens() const { return free_rank + static_cast<int>(torsion.size()); }
  bool is_trivial() const { return gens() == 0; }
  bool is_finite() const { return free_rank == 0; }
  Int order() const;  // 0 when infinite, 1 when trivial
  IntegerLattice relation_lattice() const;
  Row normalized(Row x) const;  // torsion coordinates reduced into [0, d_i)
  bool operator==(const FgAbelianGroup& o) const = default;
};

std::string group_to_string(const FgAbelianGroup& g);

// Quotient Z^ambient / sub together with coordinate transport:
//   class(x) = group.normalized(x * project), and `lift` maps canonical
// generators back to ambient representatives.
struct QuotientPresentation {
  FgAbelianGroup group;
  Mat project;  // ambient x gens()
  Mat lift;     // gens() x ambient
};

QuotientPresentation snf_quotient(int ambient_rank, const IntegerLattice& sub);

// Ring structure constants over a fixed basis: c[i][j] = coordinates of
// e_i * e_j.
struct StructureConstants {
  int rank = 0;
  std::vector<std::vector<Row>> c;

  Row multiply(const Row& x, const Row& y) const;
};

// HNF of the lattice generated by all products of basis vectors of a and b.
IntegerLattice lattice_product(const IntegerLattice& a, const IntegerLattice& b,
                               const StructureConstants& mul);

// Same, with b a sublattice of a direct sum of `blocks` copies of the ring
// acting componentwise (module scalar multiplication).
IntegerLattice module_product(const IntegerLattice& ideal, const IntegerLattice& module,
                              const StructureConstants& mul, int blocks);

}  // namespace segc
