#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "segc/error.hpp"
#include "segc/group.hpp"
#include "segc/ints.hpp"
#include "support/oracles.hpp"

using namespace segc;

TEST_CASE("parse_group: cycles and presets") {
  CHECK(parse_group("(1 2)").order() == 2);
  CHECK(parse_group("(1 2 3),(1 2)").order() == 6);
  CHECK(parse_group("").order() == 1);
  CHECK(parse_group("").degree() == 1);

  CHECK(parse_group("C1").order() == 1);
  CHECK(parse_group("C6").order() == 6);
  CHECK(parse_group("S4").order() == 24);
  CHECK(parse_group("A4").order() == 12);
  CHECK(parse_group("A5").order() == 60);
  CHECK(parse_group("A3").order() == 3);
  CHECK(parse_group("D8").order() == 8);
  CHECK(parse_group("D4").order() == 4);
  CHECK(parse_group("D6").order() == 6);
  CHECK(parse_group("Q8").order() == 8);
  CHECK(parse_group("S7").order() == 5040);

  CHECK_THROWS_AS(parse_group("S8"), Error);          // order 40320 > bound
  CHECK(parse_group("S8", 50000).order() == 40320);   // configurable bound
  CHECK_THROWS_AS(parse_group("Zoo"), Error);
  CHECK_THROWS_AS(parse_group("(1 2"), Error);
}

TEST_CASE("parse determinism") {
  auto a = parse_group("(1 2 3),(1 2)");
  auto b = parse_group("(1 2 3),(1 2)");
  CHECK(a.elements() == b.elements());
  auto ca = all_subgroup_classes(a);
  auto cb = all_subgroup_classes(b);
  REQUIRE(ca.size() == cb.size());
  for (size_t i = 0; i < ca.size(); ++i)
    CHECK(ca[i].representative.elements == cb[i].representative.elements);
}

TEST_CASE("subgroup classes: small groups") {
  CHECK(all_subgroup_classes(parse_group("C2")).size() == 2);

  auto s3 = all_subgroup_classes(parse_group("S3"));
  REQUIRE(s3.size() == 4);
  CHECK(s3[0].order == 1);
  CHECK(s3[1].order == 2);
  CHECK(s3[1].members.size() == 3);
  CHECK(s3[2].order == 3);
  CHECK(s3[3].order == 6);

  auto c6 = all_subgroup_classes(parse_group("C6"));
  REQUIRE(c6.size() == 4);
  CHECK(c6[0].order == 1);
  CHECK(c6[1].order == 2);
  CHECK(c6[2].order == 3);
  CHECK(c6[3].order == 6);

  CHECK(all_subgroup_classes(parse_group("A4")).size() == 5);
  CHECK(all_subgroup_classes(parse_group("D8")).size() == 8);
  CHECK(all_subgroup_classes(parse_group("S4")).size() == 11);
  CHECK(all_subgroup_classes(parse_group("Q8")).size() == 6);
}

TEST_CASE("subgroup classes agree with the exhaustive oracle") {
  for (const char* spec : {"C2", "C6", "S3", "D8", "A4", "Q8", "S4", "C12", "D12"}) {
    CAPTURE(spec);
    auto g = parse_group(spec);
    auto classes = all_subgroup_classes(g);
    auto brute = oracle::all_subgroups_bruteforce(g);
    // Lagrange and exact coverage: every subgroup appears in exactly one class.
    size_t counted = 0;
    std::set<std::vector<Perm>> from_classes;
    for (const auto& c : classes) {
      CHECK(g.order() % c.order == 0);
      counted += c.members.size();
      for (const auto& m : c.members) {
        CHECK(static_cast<long long>(m.elements.size()) == c.order);
        from_classes.insert(m.elements);
      }
    }
    CHECK(counted == brute.size());
    CHECK(from_classes.size() == brute.size());
    for (const auto& h : brute) CHECK(from_classes.count(h) == 1);
  }
}

TEST_CASE("is_conjugate") {
  auto s3 = parse_group("S3");
  auto classes = all_subgroup_classes(s3);
  const auto& c2_class = classes[1];
  REQUIRE(c2_class.members.size() == 3);
  CHECK(is_conjugate(s3, c2_class.members[0], c2_class.members[1]));
  CHECK(is_conjugate(s3, c2_class.members[0], c2_class.members[0]));
  CHECK_FALSE(is_conjugate(s3, c2_class.representative, classes[2].representative));

  auto other = parse_group("C2");
  CHECK_THROWS_AS(is_conjugate(s3, trivial_subgroup(other), trivial_subgroup(other)),
                  Error);
}

TEST_CASE("sylow subgroups") {
  auto s3 = parse_group("S3");
  CHECK(sylow_subgroup(s3, 3).order() == 3);
  CHECK(sylow_subgroup(s3, 2).order() == 2);
  CHECK(sylow_subgroup(s3, 5).order() == 1);
  CHECK_THROWS_AS(sylow_subgroup(s3, 4), Error);

  auto s4 = parse_group("S4");
  auto syl2 = sylow_subgroup(s4, 2);
  CHECK(syl2.order() == 8);
  // order-8 subgroups of S4 are dihedral: exactly 2 elements of order 4
  int order4 = 0;
  for (const auto& e : syl2.elements)
    if (e.order() == 4) ++order4;
  CHECK(order4 == 2);

  // all Sylow p-subgroups are conjugate (exhaustive over the lattice)
  for (const char* spec : {"S3", "A4", "S4", "D12"}) {
    auto g = parse_group(spec);
    for (long long p : {2, 3}) {
      auto syl = sylow_subgroup(g, p);
      CHECK(g.order() % syl.order() == 0);
      long long index = g.order() / syl.order();
      CHECK(index % p != 0);
      for (const auto& h : oracle::all_subgroups_bruteforce(g)) {
        if (static_cast<long long>(h.size()) != syl.order()) continue;
        bool p_power = true;
        for (long long q = static_cast<long long>(h.size()); q > 1; q /= p)
          if (q % p != 0) p_power = false;
        if (!p_power) continue;
        CHECK(is_conjugate(g, Subgroup{g, h}, syl));
      }
    }
  }

  // deterministic canonical choice
  auto a = sylow_subgroup(parse_group("S4"), 2);
  auto b = sylow_subgroup(parse_group("S4"), 2);
  CHECK(a.elements == b.elements);
}

TEST_CASE("p-residual subgroups") {
  auto s3 = parse_group("S3");
  auto full = full_subgroup(s3);
  auto r2 = p_residual(full, 2);
  CHECK(r2.order() == 3);  // A3
  auto r3 = p_residual(full, 3);
  CHECK(r3.order() == 6);  // S3 itself

  // any p-group has trivial p-residual
  auto d8 = parse_group("D8");
  CHECK(p_residual(full_subgroup(d8), 2).order() == 1);
  auto q8 = parse_group("Q8");
  CHECK(p_residual(full_subgroup(q8), 2).order() == 1);

  // normality and p-group quotient, plus the intersection oracle
  for (const char* spec : {"S3", "C6", "A4", "D12", "S4"}) {
    CAPTURE(spec);
    auto g = parse_group(spec);
    for (long long p : {2, 3}) {
      auto res = p_residual(full_subgroup(g), p);
      // normal
      for (const auto& x : g.elements()) {
        Perm xi = x.inverse();
        for (const auto& e : res.elements)
          CHECK(res.contains(x * e * xi));
      }
      // quotient is a p-group
      long long index = g.order() / res.order();
      while (index % p == 0) index /= p;
      CHECK(index == 1);
      auto viaint = oracle::p_residual_by_intersection(full_subgroup(g), p);
      CHECK(res.elements == viaint.elements);
    }
  }
}

TEST_CASE("injective homomorphisms") {
  auto c2 = parse_group("C2");
  auto c3 = parse_group("C3");
  auto s3 = parse_group("S3");
  CHECK(injective_homs(c2, c2).size() == 1);
  CHECK(injective_homs(c2, s3).size() == 3);
  CHECK(injective_homs(c3, c2).empty());
  CHECK(injective_homs(c3, s3).size() == 2);

  // deterministic order and genuine homomorphisms
  auto homs = injective_homs(c2, s3);
  for (size_t i = 1; i < homs.size(); ++i)
    CHECK(homs[i - 1].element_images < homs[i].element_images);
  for (const auto& h : homs)
    for (const auto& a : c2.elements())
      for (const auto& b : c2.elements())
        CHECK(h.apply(a * b) == h.apply(a) * h.apply(b));
}

TEST_CASE("sylow subgroups of symmetric groups via wreath blocks") {
  for (int m : {2, 3, 4, 5, 6, 7, 8, 12}) {
    for (long long p : {2, 3, 5}) {
      auto syl = sylow_of_symmetric(m, p, 1 << 20);
      Int expected = 1;
      for (long long i = 0; i < legendre_nu(m, p); ++i) expected *= p;
      CHECK(Int(syl.order()) == expected);
    }
  }
}
