#pragma once

// Burnside ring A(G) of a finite permutation group: table of marks, ghost
// ring arithmetic, character maps, augmentation ideal, the Dress prime
// spectrum, and restriction/induction.
//
// Basis convention: subgroup classes sorted by (order, canonical key), so
// the marks matrix is lower triangular with positive diagonal.

#include <memory>
#include <mutex>
#include <vector>

#include "segc/abelian.hpp"
#include "segc/group.hpp"
#include "segc/zlattice.hpp"

namespace segc {

class TableOfMarks;
using TableOfMarksPtr = std::shared_ptr<const TableOfMarks>;

class TableOfMarks {
public:
  static TableOfMarksPtr build(const PermGroup& g);

  // Diagnostic backdoor: accepts an arbitrary matrix so tests can inject a
  // corrupted marks table and watch the integrality check fire.
  static TableOfMarksPtr unchecked(const PermGroup& g, std::vector<SubgroupClass> classes,
                                   Mat marks);

  const PermGroup& group() const { return group_; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const Mat& marks() const { return marks_; }

  // Index of the class of a subgroup (conjugacy search among same-order
  // classes).
  int class_index(const Subgroup& h) const;

  // c[i][j] = coordinates of [G/H_i] * [G/H_j]; memoized, thread-safe.
  const StructureConstants& structure_constants() const;

private:
  TableOfMarks() = default;
  PermGroup group_;
  std::vector<SubgroupClass> classes_;
  Mat marks_;

  mutable std::once_flag sc_once_;
  mutable StructureConstants sc_;
};

// Virtual G-set in basis coordinates over a fixed table of marks.
struct BurnsideElement {
  TableOfMarksPtr ring;
  Row coeffs;
};

struct MarkVector {
  Row values;
};

BurnsideElement basis_element(const TableOfMarksPtr& t, int class_index);
BurnsideElement unit_element(const TableOfMarksPtr& t);   // [G/G]
BurnsideElement zero_element(const TableOfMarksPtr& t);
BurnsideElement element_from_coeffs(const TableOfMarksPtr& t, Row coeffs);

BurnsideElement add(const BurnsideElement& x, const BurnsideElement& y);
BurnsideElement subtract(const BurnsideElement& x, const BurnsideElement& y);
BurnsideElement scale(const Int& k, const BurnsideElement& x);

// Ghost map: value at class j is the number of K_j-fixed points.
MarkVector mark(const BurnsideElement& x);

// Unique preimage of the componentwise product of mark vectors; throws
// Error("integrality") if the triangular solve leaves a remainder, which
// would mean the marks table is corrupt.
BurnsideElement multiply(const BurnsideElement& x, const BurnsideElement& y);

// Solves the triangular marks system for given mark values.
Row coeffs_from_marks(const TableOfMarks& t, const Row& mark_values);

Int augmentation(const BurnsideElement& x);

// Kernel of the augmentation as a lattice in basis coordinates.
IntegerLattice augmentation_ideal(const TableOfMarks& t);

// Prime ideal P(K, p): preimage of pZ (p prime) or of 0 (p = 0) under the
// character at class K.
struct PrimeIdealLabel {
  int class_index = 0;
  Int p;  // prime or 0
};

Int character(const BurnsideElement& x, int class_index);
bool prime_ideal_contains(const TableOfMarks& t, const PrimeIdealLabel& label,
                          const BurnsideElement& x);

// Dress criterion: p != q never coincide; p = 0 compares classes; p prime
// compares classes of the p-residual subgroups.
bool prime_ideal_equal(const TableOfMarks& t, const PrimeIdealLabel& a, const PrimeIdealLabel& b);

// Labels partitioned by prime_ideal_equal, per prime. Primes considered:
// 0, the primes dividing |G| and one witness prime not dividing |G|.
struct SpectrumCell {
  Int p;
  std::vector<std::vector<int>> cells;  // class indices merged per cell
};
std::vector<SpectrumCell> prime_spectrum(const TableOfMarks& t);
std::vector<Int> spectrum_primes(const TableOfMarks& t);

// Restriction a A(G) -> A(H) along an inclusion (honest orbit decomposition,
// independent of the marks).
BurnsideElement restriction(const BurnsideElement& x, const TableOfMarksPtr& sub_ring);

// Restriction along an injective homomorphism alpha: H -> G.
BurnsideElement restriction_along(const BurnsideElement& x, const Homomorphism& alpha,
                                  const TableOfMarksPtr& source_ring);

// Induction A(H) -> A(G) on basis elements [H/L] |-> [G/L].
BurnsideElement induction(const BurnsideElement& x, const TableOfMarksPtr& big_ring);

// Matrix of restriction along alpha on basis elements (rows: big-ring basis,
// columns: small-ring basis).
Mat restriction_matrix(const TableOfMarks& big, const TableOfMarks& small,
                       const Homomorphism& alpha);

}  // namespace segc
