#include "segc/completion.hpp"

#include "segc/error.hpp"

namespace segc {

struct IdealTower::State {
  TableOfMarksPtr ring;
  IntegerLattice ideal;
  std::mutex mu;
  std::vector<IntegerLattice> powers;  // powers[k] = I^{k+1}
};

IdealTower::IdealTower(TableOfMarksPtr ring, IntegerLattice ideal)
    : state_(std::make_shared<State>()) {
  if (ideal.ambient_rank != ring->size()) fail("dimension", "ideal/ring rank mismatch");
  state_->ring = std::move(ring);
  state_->ideal = std::move(ideal);
}

const TableOfMarksPtr& IdealTower::ring() const { return state_->ring; }
const IntegerLattice& IdealTower::ideal() const { return state_->ideal; }

IntegerLattice IdealTower::power(int n) const {
  if (n < 1) fail("index", "ideal powers start at 1");
  std::lock_guard<std::mutex> lock(state_->mu);
  if (state_->powers.empty()) state_->powers.push_back(state_->ideal);
  const auto& sc = state_->ring->structure_constants();
  while (static_cast<int>(state_->powers.size()) < n)
    state_->powers.push_back(lattice_product(state_->powers.back(), state_->ideal, sc));
  return state_->powers[n - 1];
}

IdealTower augmentation_tower(const TableOfMarksPtr& ring) {
  return IdealTower(ring, augmentation_ideal(*ring));
}

namespace {

// Shared plumbing for the two quotient tower shapes. Levels are quotients of
// Z^{rank(M)} (coordinates along the module basis) by the rows of
// (extra + I^n M) expressed in those coordinates.
struct ModuleLevels {
  TableOfMarksPtr ring;
  IdealTower tower;
  IntegerLattice module;
  IntegerLattice extra;  // zero lattice for {M/I^nM}; M' for {M/(M'+I^nM)}
  int blocks;

  explicit ModuleLevels(const IdealTower& t, IntegerLattice mod, IntegerLattice ext)
      : ring(t.ring()), tower(t), module(std::move(mod)), extra(std::move(ext)) {
    int rk = ring->size();
    if (module.ambient_rank % rk != 0) fail("dimension", "module rank must be a multiple of ring rank");
    blocks = module.ambient_rank / rk;
    if (extra.ambient_rank != module.ambient_rank) fail("dimension", "submodule rank mismatch");
    if (!lattice_contains(module, extra)) fail("domain", "submodule not inside module");
  }

  // Rows of (extra + I^n M) in module-basis coordinates.
  IntegerLattice denominator(int n) const {
    auto inm = module_product(tower.power(n), module, ring->structure_constants(), blocks);
    auto total = lattice_sum(inm, extra);
    Mat rows;
    for (const auto& r : total.basis) {
      auto y = solve_left(r, module.basis);
      if (!y) fail("domain", "ideal multiple escaped the module (not closed under action?)");
      rows.push_back(std::move(*y));
    }
    return hnf_lattice(module.rank(), std::move(rows));
  }

  QuotientPresentation level(int n) const { return snf_quotient(module.rank(), denominator(n)); }
};

class ModuleQuotientRule : public TowerRule {
public:
  ModuleQuotientRule(const IdealTower& t, IntegerLattice mod, IntegerLattice ext, std::string name)
      : levels_(t, std::move(mod), std::move(ext)), name_(std::move(name)) {}

  FgAbelianGroup level(int n) const override { return levels_.level(n).group; }

  AbelianMap structure_map(int n) const override {
    auto cur = levels_.level(n);
    auto prev = levels_.level(n - 1);
    Mat rows;
    for (const auto& g : cur.lift)
      rows.push_back(prev.group.normalized(row_times_matrix(g, prev.project)));
    return AbelianMap{cur.group, prev.group, std::move(rows)};
  }

  bool maps_all_surjective() const override { return true; }  // natural surjections
  bool iadic() const override { return true; }
  std::string describe() const override { return name_; }

  const ModuleLevels& levels() const { return levels_; }

private:
  ModuleLevels levels_;
  std::string name_;
};

}  // namespace

Tower quotient_tower(const IdealTower& t, const IntegerLattice& module) {
  return Tower(std::make_shared<ModuleQuotientRule>(
      t, module, zero_lattice(module.ambient_rank), "I-adic quotient tower {M/I^nM}"));
}

Tower quotient_module_tower(const IdealTower& t, const IntegerLattice& module,
                            const IntegerLattice& submodule) {
  return Tower(std::make_shared<ModuleQuotientRule>(t, module, submodule,
                                                    "I-adic quotient tower {M/(M'+I^nM)}"));
}

StrictMorphism submodule_inclusion_morphism(const IdealTower& t, const IntegerLattice& submodule,
                                            const IntegerLattice& module) {
  if (!lattice_contains(module, submodule)) fail("domain", "submodule not inside module");
  Tower source = quotient_tower(t, submodule);
  Tower target = quotient_tower(t, module);
  // M'-basis rows expressed in M-basis coordinates.
  Mat basis_change;
  for (const auto& r : submodule.basis) {
    auto y = solve_left(r, module.basis);
    if (!y) fail("domain", "submodule not inside module (solve failed)");
    basis_change.push_back(std::move(*y));
  }
  ModuleLevels src_levels(t, submodule, zero_lattice(submodule.ambient_rank));
  ModuleLevels dst_levels(t, module, zero_lattice(module.ambient_rank));
  auto component = [src_levels, dst_levels, basis_change](int n) {
    auto sp = src_levels.level(n);
    auto dp = dst_levels.level(n);
    Mat rows;
    for (const auto& g : sp.lift)
      rows.push_back(dp.group.normalized(
          row_times_matrix(row_times_matrix(g, basis_change), dp.project)));
    return AbelianMap{sp.group, dp.group, std::move(rows)};
  };
  return StrictMorphism::from_function(source, target, component);
}

StrictMorphism quotient_projection_morphism(const IdealTower& t, const IntegerLattice& module,
                                            const IntegerLattice& submodule) {
  Tower source = quotient_tower(t, module);
  Tower target = quotient_module_tower(t, module, submodule);
  ModuleLevels src_levels(t, module, zero_lattice(module.ambient_rank));
  ModuleLevels dst_levels(t, module, submodule);
  auto component = [src_levels, dst_levels](int n) {
    auto sp = src_levels.level(n);
    auto dp = dst_levels.level(n);
    Mat rows;
    for (const auto& g : sp.lift)
      rows.push_back(dp.group.normalized(row_times_matrix(g, dp.project)));
    return AbelianMap{sp.group, dp.group, std::move(rows)};
  };
  return StrictMorphism::from_function(source, target, component);
}

CompletionReport complete(const IdealTower& t, int horizon) {
  if (horizon < 4) fail("domain", "completion horizon must be >= 4");
  CompletionReport rep;
  Tower tower = quotient_tower(t, full_lattice(t.ring()->size()));
  for (int n = 1; n <= horizon; ++n) rep.levels.push_back(tower.level(n));
  rep.maps_surjective = true;
  for (int n = 2; n <= horizon; ++n)
    if (!map_is_surjective(tower.structure_map(n))) rep.maps_surjective = false;
  auto lim = compute_lim(tower, horizon);
  if (lim.pattern) {
    rep.pattern = lim.pattern;
  } else if (lim.limit) {
    // Stabilized tower: report the exact limit as a degenerate pattern.
    ProfinitePattern pat;
    pat.free_rank = lim.limit->free_rank;
    for (const auto& d : lim.limit->torsion) pat.stable_torsion.push_back(d);
    pat.certified = false;
    rep.pattern = pat;
  }
  return rep;
}

std::optional<int> nilpotence_bound(const IdealTower& t, const IntegerLattice& quotient_ideal,
                                    int horizon) {
  for (int k = 1; k <= horizon; ++k)
    if (lattice_contains(quotient_ideal, t.power(k))) return k;
  return std::nullopt;
}

}  // namespace segc
