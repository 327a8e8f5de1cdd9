#pragma once

// Finite permutation group engine: element closure, subgroup lattice,
// conjugacy of subgroups, Sylow subgroups, p-residuals and injective
// homomorphisms. Everything is immutable after construction and safe to
// share between threads.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segc/perm.hpp"

namespace segc {

inline constexpr long long kDefaultOrderBound = 10080;

class PermGroup {
public:
  PermGroup();  // trivial group on one point
  PermGroup(int degree, std::vector<Perm> generators,
            long long order_bound = kDefaultOrderBound);

  int degree() const;
  const std::vector<Perm>& generators() const;

  // Sorted element list, materialized on first use (throws Error
  // "order_bound" if the closure exceeds the bound).
  const std::vector<Perm>& elements() const;
  long long order() const { return static_cast<long long>(elements().size()); }
  bool contains(const Perm& p) const;
  long long order_bound() const;

private:
  struct State;
  std::shared_ptr<State> state_;
};

// Subgroup given by its full sorted element list inside a parent group.
struct Subgroup {
  PermGroup parent;
  std::vector<Perm> elements;  // sorted, closed, identity present

  long long order() const { return static_cast<long long>(elements.size()); }
  bool contains(const Perm& p) const;
};

struct SubgroupClass {
  Subgroup representative;          // least canonical key among members
  std::vector<Subgroup> members;    // all conjugates, sorted by key
  long long order = 0;
};

// Closure of seed permutations; throws "order_bound" when it exceeds bound.
std::vector<Perm> closure(int degree, const std::vector<Perm>& seeds, long long bound);

// Group spec grammar: comma-separated cycles over 1-based points, or a named
// preset C<n>, S<n>, A<n>, D<2n> (order 2n), Q8.
PermGroup parse_group(const std::string& spec, long long order_bound = kDefaultOrderBound);

Subgroup make_subgroup(const PermGroup& parent, const std::vector<Perm>& gens);
Subgroup subgroup_from_elements(const PermGroup& parent, std::vector<Perm> elements);
Subgroup trivial_subgroup(const PermGroup& parent);
Subgroup full_subgroup(const PermGroup& parent);

// Promotes a subgroup to a stand-alone group on the same points.
PermGroup as_group(const Subgroup& h);

// Greedy minimal generating sequence, deterministic for a fixed element list.
std::vector<Perm> minimal_generators(int degree, const std::vector<Perm>& elements);

// All conjugacy classes of subgroups, sorted by (order, canonical key of the
// representative). Complete for every finite group: subgroups are grown by
// joining with cyclic subgroups of prime-power order.
std::vector<SubgroupClass> all_subgroup_classes(const PermGroup& g);

bool is_conjugate(const PermGroup& g, const Subgroup& a, const Subgroup& b);

Subgroup normalizer(const PermGroup& g, const Subgroup& h);

// Sylow p-subgroup; among all Sylow p-subgroups the one with the
// lexicographically least element list, so the choice is canonical.
Subgroup sylow_subgroup(const PermGroup& g, long long p);

// K[p]: the smallest normal subgroup of h with p-group quotient, computed by
// the descending series K_{i+1} = <[K_i, h], p-th powers of K_i>.
Subgroup p_residual(const Subgroup& h, long long p);

// Sylow p-subgroup of the symmetric group on m points via the product of
// iterated wreath powers of C_p prescribed by the base-p digits of m.
PermGroup sylow_of_symmetric(int m, long long p, long long order_bound = kDefaultOrderBound);

// Group homomorphism tabulated on every source element.
struct Homomorphism {
  PermGroup source;
  PermGroup target;
  std::vector<Perm> gen_images;      // images of source.generators()
  std::vector<Perm> element_images;  // aligned with source.elements()

  Perm apply(const Perm& x) const;
};

// Extends generator images to a homomorphism if consistent.
std::optional<Homomorphism> extend_homomorphism(const PermGroup& src, const PermGroup& dst,
                                                const std::vector<Perm>& gen_images);

// All injective homomorphisms h -> k in a deterministic order; empty when
// |h| does not divide |k|.
std::vector<Homomorphism> injective_homs(const PermGroup& h, const PermGroup& k);

}  // namespace segc
