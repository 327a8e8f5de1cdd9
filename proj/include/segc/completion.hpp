#pragma once

// I-adic machinery over a table-of-marks ring: ideal powers, quotient towers
// {M/I^n M}, completion reports and nilpotence bounds.

#include <memory>
#include <mutex>
#include <optional>

#include "segc/burnside.hpp"
#include "segc/promod.hpp"

namespace segc {

inline constexpr int kDefaultHorizon = 10;

// Memoized chain of ideal powers I^n inside the ring's basis coordinates.
// Copies share the memo; the type behaves as an immutable value.
class IdealTower {
public:
  IdealTower(TableOfMarksPtr ring, IntegerLattice ideal);

  const TableOfMarksPtr& ring() const;
  const IntegerLattice& ideal() const;

  // HNF of I^n; memoized, thread-safe, descending in n.
  IntegerLattice power(int n) const;

private:
  struct State;
  std::shared_ptr<State> state_;
};

IdealTower augmentation_tower(const TableOfMarksPtr& ring);

// Generated tower {M/I^n M} for a module lattice M inside blocks copies of
// the ring (blocks = M.ambient_rank / ring rank). Structure maps are the
// natural surjections; levels are presented over the basis of M.
Tower quotient_tower(const IdealTower& t, const IntegerLattice& module);

// Generated tower {M / (M' + I^n M)} for a quotient module M/M'.
Tower quotient_module_tower(const IdealTower& t, const IntegerLattice& module,
                            const IntegerLattice& submodule);

// Strict morphism {M'/I^n M'} -> {M/I^n M} induced by an inclusion M' <= M.
StrictMorphism submodule_inclusion_morphism(const IdealTower& t, const IntegerLattice& submodule,
                                            const IntegerLattice& module);

// Strict morphism {M/I^n M} -> {M/(M' + I^n M)} induced by the projection.
StrictMorphism quotient_projection_morphism(const IdealTower& t, const IntegerLattice& module,
                                            const IntegerLattice& submodule);

struct CompletionReport {
  std::vector<FgAbelianGroup> levels;           // A/I^n for n = 1..horizon
  std::optional<ProfinitePattern> pattern;      // detected, never certified
  bool maps_surjective = false;                 // checked up to the horizon
};

CompletionReport complete(const IdealTower& t, int horizon = kDefaultHorizon);

// Smallest k <= horizon with I^k <= J, nullopt when none is found.
std::optional<int> nilpotence_bound(const IdealTower& t, const IntegerLattice& quotient_ideal,
                                    int horizon = kDefaultHorizon);

}  // namespace segc
