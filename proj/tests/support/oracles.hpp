#pragma once

// Independent brute-force oracles for the test suites. These deliberately
// avoid the library's optimized paths: subgroups are grown by joining with
// every element, marks are recounted from scratch coset sets, products are
// decomposed as honest G-sets.

#include <cstdint>
#include <vector>

#include "segc/burnside.hpp"
#include "segc/group.hpp"
#include "segc/zlattice.hpp"

namespace segc::oracle {

// Deterministic xorshift generator for property tests.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

// Every subgroup, by joining with every element (not just prime-power
// cyclic partners); sorted element lists, sorted by (order, key).
std::vector<std::vector<Perm>> all_subgroups_bruteforce(const PermGroup& g);

// |(G/H)^K| recounted from an explicit coset partition of the element list.
Int mark_count_bruteforce(const PermGroup& g, const Subgroup& h, const Subgroup& k);

// Orbit decomposition of (G/H) x (G/K) as a G-set; coefficients over the
// classes of `table`.
Row gset_product_coeffs(const TableOfMarks& table, int class_h, int class_k);

// Intersection of all normal subgroups of K with p-power index.
Subgroup p_residual_by_intersection(const Subgroup& k, long long p);

// Double-coset formula for res^G_K [G/L]: enumerate K\G/L and identify the
// stabilizer classes K cap gLg^{-1}.
Row double_coset_restriction(const TableOfMarks& big, int class_l, const TableOfMarks& small);

// Rank over Q of the row span, by fraction-free elimination (independent of
// the HNF/SNF code).
int rational_rank(Mat m);

// I^n as the span of all n-fold products of the ideal basis elements,
// multiplying through the ghost ring (independent of lattice_product).
IntegerLattice ideal_power_bruteforce(const TableOfMarksPtr& t, const IntegerLattice& ideal,
                                      int n);

}  // namespace segc::oracle
