#pragma once

// Towers of finitely generated abelian groups indexed by the positive
// integers, strict morphisms between them, pro-triviality and
// pro-isomorphism checks, pro-exactness, and inverse limits.
//
// The quantifier "for each m there is some n" is rendered finitarily: every
// check returns Verified / Refuted / Inconclusive with explicit witnesses
// and the bound it used. Refuted always rests on a certificate supplied by
// the tower's generating rule, never on bound exhaustion alone.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "segc/abelian.hpp"

namespace segc {

inline constexpr int kDefaultProBound = 12;

struct ProVerdict {
  enum class Status { Verified, Refuted, Inconclusive };
  Status status = Status::Inconclusive;
  int bound = 0;                                // effective bound used
  std::vector<std::pair<int, int>> witnesses;   // m -> n(m) for Verified
  std::optional<int> refuted_at;
  std::string detail;

  bool verified() const { return status == Status::Verified; }
  bool refuted() const { return status == Status::Refuted; }
};

std::string status_string(ProVerdict::Status s);

// Produces level n and the structure map level n -> level n-1 on demand.
// Implementations must be pure: regenerating a level is deterministic.
class TowerRule {
public:
  virtual ~TowerRule() = default;
  virtual FgAbelianGroup level(int n) const = 0;
  virtual AbelianMap structure_map(int n) const = 0;  // n >= 2
  virtual std::string describe() const = 0;

  // Optional certificates; conservative defaults mean "unknown".
  virtual std::optional<int> horizon() const { return std::nullopt; }
  virtual bool maps_all_identity() const { return false; }
  virtual bool maps_all_injective() const { return maps_all_identity(); }
  virtual bool maps_all_surjective() const { return maps_all_identity(); }
  virtual bool levels_constant() const { return maps_all_identity(); }
  // True when the rule knows the intersection of the images in any fixed
  // level is zero (e.g. multiplication by k, |k| >= 2, on a free group).
  virtual bool stable_images_trivial() const { return false; }
  // Enables profinite pattern detection in compute_lim.
  virtual bool iadic() const { return false; }
};

// Value-type handle on a rule with memoized levels and maps.
class Tower {
public:
  explicit Tower(std::shared_ptr<const TowerRule> rule);

  FgAbelianGroup level(int n) const;
  AbelianMap structure_map(int n) const;          // level n -> level n-1
  AbelianMap composite_map(int n, int m) const;   // level n -> level m, n >= m
  const TowerRule& rule() const { return *rule_; }
  std::optional<int> horizon() const { return rule_->horizon(); }
  bool same_as(const Tower& o) const { return rule_ == o.rule_; }

private:
  struct Memo {
    std::mutex mu;
    std::map<int, FgAbelianGroup> levels;
    std::map<int, AbelianMap> maps;
  };
  std::shared_ptr<const TowerRule> rule_;
  std::shared_ptr<Memo> memo_;
};

// maps[i]: level i+2 -> level i+1; horizon = levels.size().
Tower explicit_tower(std::vector<FgAbelianGroup> levels, std::vector<AbelianMap> maps);
Tower constant_tower(const FgAbelianGroup& g);
// Constant group with every structure map multiplication by k.
Tower multiplication_tower(const FgAbelianGroup& g, const Int& k);

class StrictMorphism {
public:
  enum class Kind { General, Identity, Zero };

  static StrictMorphism identity(const Tower& t);
  static StrictMorphism zero(const Tower& source, const Tower& target);
  static StrictMorphism from_components(const Tower& source, const Tower& target,
                                        std::vector<AbelianMap> components);
  static StrictMorphism from_function(const Tower& source, const Tower& target,
                                      std::function<AbelianMap(int)> component,
                                      Kind kind = Kind::General);

  const Tower& source() const { return source_; }
  const Tower& target() const { return target_; }
  AbelianMap component(int n) const;
  Kind kind() const { return kind_; }

  // Throws Error("morphism") if a commuting square fails in 2..up_to.
  void validate_squares(int up_to) const;

private:
  StrictMorphism(Tower s, Tower t, std::function<AbelianMap(int)> f, Kind k);
  Tower source_, target_;
  std::function<AbelianMap(int)> component_;
  Kind kind_;
};

// Derived towers (levelwise kernels/cokernels with induced maps).
Tower kernel_tower(const StrictMorphism& f);
Tower cokernel_tower(const StrictMorphism& f);

// For each m <= bound, searches n <= bound with zero composite map.
ProVerdict is_pro_trivial(const Tower& t, int bound = kDefaultProBound);

// im(beta^m_n) <= im(f_m) and ker(f_n) <= ker(alpha^m_n) for each m.
ProVerdict check_pro_isomorphism(const StrictMorphism& f, int bound = kDefaultProBound);

// Requires g o f = 0 levelwise; checks {ker(g_n)/im(f_n)} pro-trivial.
ProVerdict check_pro_exactness(const StrictMorphism& f, const StrictMorphism& g,
                               int bound = kDefaultProBound);

struct ProfinitePattern {
  int free_rank = 0;
  std::vector<std::pair<Int, int>> padic_ranks;  // prime -> Z_p-rank
  std::vector<Int> stable_torsion;               // prime powers, sorted
  bool certified = false;                        // always pattern-detected
};

struct LimResult {
  std::optional<FgAbelianGroup> limit;       // when the image system stabilizes
  std::optional<ProfinitePattern> pattern;   // for I-adic style towers
  ProVerdict stability;
};

LimResult compute_lim(const Tower& t, int bound = kDefaultProBound);

// Verified when all structure maps are surjective (certified by the rule or
// established up to the bound) or Mittag-Leffler stabilization is observed.
ProVerdict check_lim1_vanishing(const Tower& t, int bound = kDefaultProBound);

}  // namespace segc
