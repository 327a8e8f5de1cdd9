#pragma once

// Homomorphisms between finitely generated abelian groups in canonical
// coordinates, with kernels and cokernels presented exactly. A subgroup of a
// canonical group is handled as its preimage lattice in Z^gens, squeezed
// between the relation lattice and the full lattice.

#include <optional>

#include "segc/zlattice.hpp"

namespace segc {

// x |-> target.normalized(x * matrix); matrix is source.gens() x target.gens().
struct AbelianMap {
  FgAbelianGroup source;
  FgAbelianGroup target;
  Mat matrix;
};

AbelianMap identity_map(const FgAbelianGroup& g);
AbelianMap zero_map(const FgAbelianGroup& src, const FgAbelianGroup& dst);
AbelianMap compose(const AbelianMap& second, const AbelianMap& first);  // second after first

// Torsion generators must land on torsion of compatible order.
bool map_well_formed(const AbelianMap& f);
void require_well_formed(const AbelianMap& f);

// Maps agree as homomorphisms (difference lands in the target relations).
bool maps_equal(const AbelianMap& f, const AbelianMap& g);
bool map_is_zero(const AbelianMap& f);

// Preimage lattice in Z^{source.gens()} of 0, i.e. {x : x*matrix in rel(target)};
// always contains rel(source).
IntegerLattice kernel_lattice(const AbelianMap& f);

// Image as the lattice rowspan(matrix) + rel(target) in Z^{target.gens()}.
IntegerLattice image_lattice(const AbelianMap& f);

bool map_is_surjective(const AbelianMap& f);

struct CokernelPresentation {
  FgAbelianGroup group;
  Mat projection;  // target.gens() x group.gens()
  Mat lift;        // group.gens() x target.gens(): representatives of generators
};

// Presents sub/inner where rel(ambient) <= inner <= sub <= Z^{ambient.gens()}
// are preimage lattices of subgroups of `ambient`. Returns the subquotient
// group plus matrices transporting elements:
//   to_group: sub-basis coordinates -> group coordinates,
//   from_group: group generators -> Z^{ambient.gens()} representatives.
struct SubquotientPresentation {
  FgAbelianGroup group;
  Mat sub_basis;    // rows: basis of `sub` in ambient coordinates
  Mat to_group;     // sub.rank() x group.gens()
  Mat from_group;   // group.gens() x ambient.gens()

  // Coordinates of an ambient element of `sub` in the subquotient group.
  Row coordinates(const Row& ambient_vector) const;
};

SubquotientPresentation subquotient(const FgAbelianGroup& ambient, const IntegerLattice& sub,
                                    const IntegerLattice& inner);

// Kernel as a subquotient of the source (with inclusion witness from_group).
SubquotientPresentation kernel_presentation(const AbelianMap& f);
CokernelPresentation cokernel_presentation(const AbelianMap& f);

}  // namespace segc
