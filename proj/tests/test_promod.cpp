#include <doctest.h>

#include "segc/error.hpp"
#include "segc/promod.hpp"

using namespace segc;

namespace {

const FgAbelianGroup kZ{1, {}};
const FgAbelianGroup kZ2{0, {2}};
const FgAbelianGroup kZ4{0, {4}};
const FgAbelianGroup kZero{0, {}};

// Tower Z/2 <- Z/2 <- ... with zero structure maps, depth `len`.
Tower zero_maps_tower(int len) {
  std::vector<FgAbelianGroup> levels(len, kZ2);
  std::vector<AbelianMap> maps(len - 1, zero_map(kZ2, kZ2));
  return explicit_tower(levels, maps);
}

}  // namespace

TEST_CASE("composite maps") {
  auto t = constant_tower(kZ4);
  auto idm = t.composite_map(3, 3);
  CHECK(maps_equal(idm, identity_map(kZ4)));

  auto doubling = multiplication_tower(kZ, 2);
  auto c31 = doubling.composite_map(3, 1);
  CHECK(c31.matrix == Mat{{4}});  // two doublings

  CHECK_THROWS_AS(t.composite_map(1, 2), Error);
}

TEST_CASE("pro-triviality") {
  SUBCASE("constant nonzero tower is refuted with a certificate") {
    auto v = is_pro_trivial(constant_tower(kZ), 6);
    CHECK(v.refuted());
    CHECK(v.refuted_at == 1);
  }
  SUBCASE("zero maps verify with witness n(m) = m+1") {
    auto v = is_pro_trivial(zero_maps_tower(14), 6);
    CHECK(v.verified());
    for (const auto& [m, n] : v.witnesses) CHECK(n == m + 1);
  }
  SUBCASE("trivial levels verify immediately") {
    auto v = is_pro_trivial(constant_tower(kZero), 6);
    CHECK(v.verified());
  }
  SUBCASE("multiplication tower is refuted only with the injectivity certificate") {
    auto v = is_pro_trivial(multiplication_tower(kZ, 2), 6);
    CHECK(v.refuted());
  }
  SUBCASE("explicit nonvanishing tower stays inconclusive") {
    std::vector<FgAbelianGroup> levels(6, kZ);
    std::vector<AbelianMap> maps(5, AbelianMap{kZ, kZ, {{2}}});
    auto v = is_pro_trivial(explicit_tower(levels, maps), 6);
    CHECK(v.status == ProVerdict::Status::Inconclusive);
  }
}

TEST_CASE("pro-isomorphism checks") {
  SUBCASE("identity verifies with n(m) = m") {
    auto t = constant_tower(kZ4);
    auto v = check_pro_isomorphism(StrictMorphism::identity(t), 8);
    CHECK(v.verified());
    for (const auto& [m, n] : v.witnesses) CHECK(n == m);
  }
  SUBCASE("zero morphism from a constant tower is refuted") {
    auto t = constant_tower(kZ);
    auto v = check_pro_isomorphism(StrictMorphism::zero(t, t), 8);
    CHECK(v.refuted());
  }
  SUBCASE("commuting square violations are reported distinctly") {
    // components alternate between 1 and 0 on the constant tower Z/2
    auto t = constant_tower(kZ2);
    std::vector<AbelianMap> comps;
    for (int n = 1; n <= 8; ++n)
      comps.push_back(n % 2 == 1 ? identity_map(kZ2) : zero_map(kZ2, kZ2));
    auto f = StrictMorphism::from_components(t, t, comps);
    CHECK_THROWS_WITH_AS(check_pro_isomorphism(f, 4),
                         doctest::Contains("commuting square"), Error);
  }
}

TEST_CASE("pro-exactness") {
  const int len = 14;
  SUBCASE("levelwise exact sequences verify with n(m) = m") {
    auto sub = constant_tower(kZ2);
    auto mid = constant_tower(kZ4);
    auto quo = constant_tower(kZ2);
    auto f = StrictMorphism::from_function(
        sub, mid, [](int) { return AbelianMap{kZ2, kZ4, {{2}}}; });
    auto g = StrictMorphism::from_function(
        mid, quo, [](int) { return AbelianMap{kZ4, kZ2, {{1}}}; });
    auto v = check_pro_exactness(f, g, 6);
    CHECK(v.verified());
    for (const auto& [m, n] : v.witnesses) CHECK(n == m);
  }
  SUBCASE("pro-exact but not levelwise exact") {
    auto mid = zero_maps_tower(len);
    auto zero_end = constant_tower(kZero);
    auto f = StrictMorphism::zero(zero_end, mid);
    auto g = StrictMorphism::zero(mid, zero_end);
    auto v = check_pro_exactness(f, g, 6);
    CHECK(v.verified());
    // the defect Z/2 at each level dies one step up, never at n = m
    for (const auto& [m, n] : v.witnesses) CHECK(n == m + 1);
  }
  SUBCASE("zero maps on constant nonzero towers are refuted") {
    auto mid = constant_tower(kZ4);
    auto ends = constant_tower(kZero);
    auto v = check_pro_exactness(StrictMorphism::zero(ends, mid),
                                 StrictMorphism::zero(mid, ends), 6);
    CHECK(v.refuted());
  }
  SUBCASE("nonzero composite is an error") {
    auto t = constant_tower(kZ2);
    auto f = StrictMorphism::identity(t);
    CHECK_THROWS_WITH_AS(check_pro_exactness(f, f, 4), doctest::Contains("nonzero"),
                         Error);
  }
}

TEST_CASE("kernel and cokernel towers") {
  // f: multiplication by 2 on the constant tower Z/4
  auto t = constant_tower(kZ4);
  auto f = StrictMorphism::from_function(
      t, t, [](int) { return AbelianMap{kZ4, kZ4, {{2}}}; });
  auto ker = kernel_tower(f);
  auto coker = cokernel_tower(f);
  CHECK(ker.level(3).torsion == std::vector<Int>{2});
  CHECK(coker.level(3).torsion == std::vector<Int>{2});
  // induced maps are the identity on Z/2 (the towers are constant)
  CHECK(maps_equal(ker.structure_map(2), identity_map(ker.level(1))));
  CHECK(maps_equal(coker.structure_map(2), identity_map(coker.level(1))));
}

TEST_CASE("inverse limits") {
  SUBCASE("constant tower") {
    auto r = compute_lim(constant_tower(kZ4), 8);
    REQUIRE(r.limit.has_value());
    CHECK(*r.limit == kZ4);
    CHECK(r.stability.verified());
  }
  SUBCASE("doubling tower on Z has trivial limit, certified") {
    auto r = compute_lim(multiplication_tower(kZ, 2), 8);
    REQUIRE(r.limit.has_value());
    CHECK(r.limit->is_trivial());
    CHECK(r.stability.verified());
  }
  SUBCASE("eventually constant explicit tower") {
    // Z/2 <- Z/4 <- Z/8 <- Z/8 <- ... (natural projections, then identity)
    FgAbelianGroup z8{0, {8}};
    std::vector<FgAbelianGroup> levels = {kZ2, kZ4, z8, z8, z8, z8, z8, z8};
    std::vector<AbelianMap> maps;
    maps.push_back(AbelianMap{kZ4, kZ2, {{1}}});
    maps.push_back(AbelianMap{z8, kZ4, {{1}}});
    for (int i = 0; i < 5; ++i) maps.push_back(identity_map(z8));
    auto r = compute_lim(explicit_tower(levels, maps), 8);
    REQUIRE(r.limit.has_value());
    CHECK(*r.limit == z8);
  }
}

TEST_CASE("lim^1 vanishing") {
  SUBCASE("constant tower verifies") {
    CHECK(check_lim1_vanishing(constant_tower(kZ4), 8).verified());
  }
  SUBCASE("doubling tower is inconclusive") {
    auto v = check_lim1_vanishing(multiplication_tower(kZ, 2), 8);
    CHECK(v.status == ProVerdict::Status::Inconclusive);
  }
  SUBCASE("surjective explicit tower verifies up to the bound") {
    std::vector<FgAbelianGroup> levels = {kZ2, kZ4, kZ4, kZ4};
    std::vector<AbelianMap> maps = {AbelianMap{kZ4, kZ2, {{1}}}, identity_map(kZ4),
                                    identity_map(kZ4)};
    CHECK(check_lim1_vanishing(explicit_tower(levels, maps), 4).verified());
  }
}

TEST_CASE("six-term consistency on hand-built pro-exact sequences") {
  const int len = 14;
  struct Case {
    const char* name;
    Tower sub, mid, quo;
    StrictMorphism f, g;
  };
  std::vector<Case> cases;

  // (a) levelwise exact, eventually constant: 0 -> Z/2 -> Z/4 -> Z/2 -> 0
  {
    auto sub = constant_tower(kZ2), mid = constant_tower(kZ4), quo = constant_tower(kZ2);
    cases.push_back(Case{"levelwise exact", sub, mid, quo,
                         StrictMorphism::from_function(
                             sub, mid, [](int) { return AbelianMap{kZ2, kZ4, {{2}}}; }),
                         StrictMorphism::from_function(
                             mid, quo, [](int) { return AbelianMap{kZ4, kZ2, {{1}}}; })});
  }
  // (b) pro-exact but not exact: middle tower has zero maps
  {
    auto ends = constant_tower(kZero);
    auto mid = zero_maps_tower(len);
    cases.push_back(Case{"pro-exact not exact", ends, mid, ends,
                         StrictMorphism::zero(ends, mid), StrictMorphism::zero(mid, ends)});
  }
  // (c) Mittag-Leffler with truncated projections:
  //     Z/2^{min(n,3)-1} -> Z/2^{min(n,3)} -> Z/2
  {
    FgAbelianGroup z8{0, {8}};
    std::vector<FgAbelianGroup> mid_levels = {kZ2, kZ4, z8, z8, z8, z8};
    std::vector<AbelianMap> mid_maps = {AbelianMap{kZ4, kZ2, {{1}}},
                                        AbelianMap{z8, kZ4, {{1}}}, identity_map(z8),
                                        identity_map(z8), identity_map(z8)};
    std::vector<FgAbelianGroup> sub_levels = {kZero, kZ2, kZ4, kZ4, kZ4, kZ4};
    std::vector<AbelianMap> sub_maps = {zero_map(kZ2, kZero), AbelianMap{kZ4, kZ2, {{1}}},
                                        identity_map(kZ4), identity_map(kZ4),
                                        identity_map(kZ4)};
    std::vector<FgAbelianGroup> quo_levels(6, kZ2);
    std::vector<AbelianMap> quo_maps(5, identity_map(kZ2));
    auto sub = explicit_tower(sub_levels, sub_maps);
    auto mid = explicit_tower(mid_levels, mid_maps);
    auto quo = explicit_tower(quo_levels, quo_maps);
    // f_n: Z/2^{k-1} -> Z/2^k multiplies by 2; g_n reduces mod 2.
    std::vector<AbelianMap> f_comps = {zero_map(kZero, kZ2), AbelianMap{kZ2, kZ4, {{2}}},
                                       AbelianMap{kZ4, z8, {{2}}}, AbelianMap{kZ4, z8, {{2}}},
                                       AbelianMap{kZ4, z8, {{2}}}, AbelianMap{kZ4, z8, {{2}}}};
    std::vector<AbelianMap> g_comps = {AbelianMap{kZ2, kZ2, {{1}}}, AbelianMap{kZ4, kZ2, {{1}}},
                                       AbelianMap{z8, kZ2, {{1}}}, AbelianMap{z8, kZ2, {{1}}},
                                       AbelianMap{z8, kZ2, {{1}}}, AbelianMap{z8, kZ2, {{1}}}};
    cases.push_back(Case{"Mittag-Leffler", sub, mid, quo,
                         StrictMorphism::from_components(sub, mid, f_comps),
                         StrictMorphism::from_components(mid, quo, g_comps)});
  }

  for (auto& c : cases) {
    CAPTURE(c.name);
    int bound = 5;
    CHECK(check_pro_exactness(c.f, c.g, bound).verified());
    CHECK(check_lim1_vanishing(c.sub, bound).verified());
    auto ls = compute_lim(c.sub, bound);
    auto lm = compute_lim(c.mid, bound);
    auto lq = compute_lim(c.quo, bound);
    REQUIRE(ls.limit.has_value());
    REQUIRE(lm.limit.has_value());
    REQUIRE(lq.limit.has_value());
    // orders balance: |lim M| = |lim M'| * |lim M''| since lim^1 M' = 0
    CHECK(lm.limit->order() == ls.limit->order() * lq.limit->order());
  }
}
