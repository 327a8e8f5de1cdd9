#pragma once

// Bounded-order families of finite subgroups presented as finite orbit
// category diagrams: inverse limits of Burnside rings and augmentation
// ideals, the permutation-model elements [S_m] and [S_m/Syl_p(S_m)], and the
// prime-ideal descent check that feeds the completion argument (every prime
// ideal of A(H) containing the image of the family structure map must
// contain the augmentation ideal).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segc/burnside.hpp"
#include "segc/promod.hpp"

namespace segc {

inline constexpr long long kDefaultMBound = 8;
inline constexpr long long kDefaultCosetBound = 1000000;

struct DiagramMorphism {
  int src = 0;
  int dst = 0;
  std::vector<Perm> gen_images;  // images of objects[src].generators()
};

// Finite skeleton of the orbit category of a family: conjugacy class
// representatives of the finite subgroups plus a generating set of
// subconjugation morphisms. Immutable; tables and homomorphisms are
// memoized behind a mutex.
class FamilyDiagram {
public:
  FamilyDiagram(std::vector<PermGroup> objects, std::vector<std::string> labels,
                std::vector<DiagramMorphism> morphisms, long long order_bound);

  static FamilyDiagram preset(const std::string& name);  // Dinf, PSL2Z, SL2Z
  static const std::vector<std::string>& preset_names();

  int object_count() const { return static_cast<int>(objects_.size()); }
  const PermGroup& object(int i) const { return objects_.at(i); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<DiagramMorphism>& morphisms() const { return morphisms_; }
  long long order_bound() const { return order_bound_; }

  int object_index(const std::string& label_or_number) const;
  TableOfMarksPtr table(int i) const;            // memoized
  const Homomorphism& morphism_hom(int m) const;  // memoized, validated

  FamilyDiagram sub_diagram(const std::vector<int>& objects_kept) const;

private:
  std::vector<PermGroup> objects_;
  std::vector<std::string> labels_;
  std::vector<DiagramMorphism> morphisms_;
  long long order_bound_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Defects are data, not errors; an empty list means the diagram is valid.
std::vector<std::string> validate_diagram(const FamilyDiagram& d);

// Compatible tuples in the direct sum of the objects' rings (or of their
// augmentation ideals) as an integer lattice in stacked basis coordinates.
struct LimitLattice {
  IntegerLattice lattice;
  std::vector<int> offsets;  // block offset per object
  bool ideals = false;
};

LimitLattice inverse_limit(const FamilyDiagram& d, bool augmentation_ideals);

struct CompatibleFamily {
  std::vector<BurnsideElement> components;
};

CompatibleFamily decode_family(const FamilyDiagram& d, const LimitLattice& l, const Row& row);
bool family_is_compatible(const FamilyDiagram& d, const CompatibleFamily& x);

// Structure map of the inverse limit: the component at one object.
BurnsideElement phi(const FamilyDiagram& d, const CompatibleFamily& x, int object_index);

// Image of phi at one object, as a sublattice of that object's ring.
IntegerLattice phi_image(const FamilyDiagram& d, const LimitLattice& l, int object_index);

struct SmOptions {
  long long m_bound = kDefaultMBound;
  long long coset_bound = kDefaultCosetBound;
};

enum class SmVariant { Full, ModSylow };

struct SymmetricSetElement {
  long long m = 0;
  SmVariant variant = SmVariant::Full;
  long long p = 0;     // ModSylow only
  Int set_size;        // m!  or  m!/|Syl_p(S_m)|
  CompatibleFamily family;
};

// The permutation representation K -> S_m induced by a free K-set of size m
// and the bijection u = tau o u0 (u0 the block-by-block numbering).
Perm rho_u(const PermGroup& k, const Perm& k_element, long long m, const Perm& tau);

// Class of the free K-set S_m: full m!-enumeration path.
BurnsideElement sm_component_direct(const TableOfMarksPtr& ring, long long m, const Perm& tau);
// Freeness shortcut (m!/|K|) [K/1]; agrees with the direct path.
BurnsideElement sm_component_shortcut(const TableOfMarksPtr& ring, long long m);

// Left cosets of Syl_p(S_m) in S_m with canonical minimal representatives.
class SylowCosets {
public:
  SylowCosets(long long m, long long p, long long coset_bound);
  long long m() const { return m_; }
  long long p() const { return p_; }
  Int coset_count() const { return Int(static_cast<long long>(reps_.size())); }
  const std::vector<Perm>& reps() const { return reps_; }
  const std::vector<Perm>& sylow_elements() const { return sylow_; }
  bool in_sylow(const Perm& x) const;

private:
  long long m_, p_;
  std::vector<Perm> sylow_;
  std::vector<Perm> reps_;
};

// Class of the K-set S_m/Syl_p(S_m): coset enumeration and the triangular
// marks solve. Throws Error("coset_bound") when the coset count exceeds the
// configured bound (via SylowCosets).
BurnsideElement sm_mod_sylow_component(const TableOfMarksPtr& ring, const SylowCosets& cosets);

SymmetricSetElement build_sm(const FamilyDiagram& d, long long m, const SmOptions& opts = {});
SymmetricSetElement build_sm_mod_sylow(const FamilyDiagram& d, long long m, long long p,
                                       const SmOptions& opts = {});

// True iff independently built components correspond under restriction
// along every diagram morphism (checked by orbit decomposition).
bool restriction_compatibility_check(const FamilyDiagram& d, long long m, long long p,
                                     const SmOptions& opts = {});

struct LabelTrace {
  Int sm_char;                      // char_K([S_m] - |S_m| 1)
  Int sm_size;                      // |S_m| = m!
  std::optional<Int> msyl_char;     // char_K([S_m/Syl_p] - |S_m/Syl_p| 1)
  Int msyl_size;                    // m!/|Syl_p(S_m)|
  bool msyl_size_coprime_p = false;
  std::string msyl_note;            // set when enumeration was skipped
  std::string conclusion;
};

struct LabelVerdict {
  int class_index = 0;
  Int p;
  bool contains_image = false;       // (a): P(K,p) contains im(phi_H)
  bool contains_aug_ideal = false;   // (b): P(K,p) contains I(H)
  bool implication_holds = false;    // (a) => (b)
  LabelTrace trace;
};

struct SegalConditionReport {
  int object_index = 0;
  long long m = 0;
  bool pass = false;
  IntegerLattice image_phi;
  std::vector<Int> primes;  // 0, relevant primes, one coprime witness
  std::vector<LabelVerdict> labels;
};

// Decides, for every prime-ideal label P(K,p) of A(H), whether containing
// im(phi_H) forces containing I(H); PASS means the implication holds for
// all labels. The report carries the character trace of the [S_m] elements.
SegalConditionReport segal_condition_check(const FamilyDiagram& d, int object_index,
                                           long long m, const SmOptions& opts = {});

}  // namespace segc
