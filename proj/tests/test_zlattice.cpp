#include <doctest.h>

#include "segc/abelian.hpp"
#include "segc/error.hpp"
#include "segc/zlattice.hpp"
#include "support/oracles.hpp"

using namespace segc;

namespace {

Mat random_matrix(oracle::Rng& rng, int rows, int cols, long long lo, long long hi) {
  Mat m(rows, Row(cols));
  for (auto& r : m)
    for (auto& v : r) v = rng.range(lo, hi);
  return m;
}

Mat random_unimodular(oracle::Rng& rng, int n) {
  // product of elementary row operations applied to the identity
  Mat u = identity_matrix(n);
  for (int step = 0; step < 4 * n; ++step) {
    int i = static_cast<int>(rng.range(0, n - 1));
    int j = static_cast<int>(rng.range(0, n - 1));
    if (i == j) continue;
    Int k = rng.range(-3, 3);
    for (int c = 0; c < n; ++c) u[i][c] += k * u[j][c];
  }
  return u;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto l1 = hnf_lattice(2, {{2, 0}, {0, 2}});
  CHECK(l1.basis == Mat{{2, 0}, {0, 2}});

  auto l2 = hnf_lattice(2, {{1, 2}, {3, 4}});
  CHECK(l2.basis == Mat{{1, 0}, {0, 2}});

  auto l3 = hnf_lattice(2, {{0, 0}});
  CHECK(l3.rank() == 0);
}

TEST_CASE("hnf canonicity under unimodular row changes") {
  oracle::Rng rng(42);
  for (int round = 0; round < 30; ++round) {
    int n = 3 + static_cast<int>(rng.range(0, 2));
    Mat m = random_matrix(rng, n, n + 1, -9, 9);
    auto base = hnf_lattice(n + 1, m);
    Mat pm = matrix_product(random_unimodular(rng, n), m);
    CHECK(hnf_lattice(n + 1, pm) == base);
  }
}

TEST_CASE("lattice membership and containment") {
  auto l = hnf_lattice(2, {{1, 2}, {3, 4}});  // index 2 in Z^2
  CHECK(lattice_member(l, {1, 0}));
  CHECK(lattice_member(l, {0, 2}));
  CHECK_FALSE(lattice_member(l, {0, 1}));
  CHECK(lattice_contains(full_lattice(2), l));
  CHECK_FALSE(lattice_contains(l, full_lattice(2)));
}

TEST_CASE("snf_quotient examples") {
  auto q1 = snf_quotient(2, hnf_lattice(2, {{2, 0}, {0, 2}}));
  CHECK(q1.group.free_rank == 0);
  CHECK(q1.group.torsion == std::vector<Int>{2, 2});

  auto q2 = snf_quotient(2, hnf_lattice(2, {{2, -4}}));
  CHECK(q2.group.free_rank == 1);
  CHECK(q2.group.torsion == std::vector<Int>{2});

  auto q3 = snf_quotient(2, zero_lattice(2));
  CHECK(q3.group.free_rank == 2);
  CHECK(q3.group.torsion.empty());
}

TEST_CASE("snf_quotient order matches the sublattice index") {
  oracle::Rng rng(7);
  for (int round = 0; round < 25; ++round) {
    int n = 2 + static_cast<int>(rng.range(0, 2));
    Mat m = random_matrix(rng, n, n, -6, 6);
    auto lat = hnf_lattice(n, m);
    if (lat.rank() != n) continue;  // not full rank
    Int det = 1;
    for (int i = 0; i < n; ++i) det *= lat.basis[i][i];  // HNF is triangular
    auto q = snf_quotient(n, lat);
    CHECK(q.group.free_rank == 0);
    CHECK(q.group.order() == int_abs(det));
  }
}

TEST_CASE("snf_quotient transport witnesses") {
  auto q = snf_quotient(2, hnf_lattice(2, {{2, -4}}));
  // class(x): generators map to unit vectors
  for (int j = 0; j < q.group.gens(); ++j) {
    Row cls = q.group.normalized(row_times_matrix(q.lift[j], q.project));
    for (int c = 0; c < q.group.gens(); ++c) CHECK(cls[c] == (c == j ? 1 : 0));
  }
  // the sublattice maps to zero
  Row cls = q.group.normalized(row_times_matrix({2, -4}, q.project));
  for (const auto& v : cls) CHECK(v == 0);
}

TEST_CASE("lattice_product over hand-built structure constants") {
  // A(C2): e0 = [C2/1], e1 = [C2/C2] = 1; e0*e0 = 2e0.
  StructureConstants sc;
  sc.rank = 2;
  sc.c = {{{2, 0}, {1, 0}}, {{1, 0}, {0, 1}}};
  auto ideal = hnf_lattice(2, {{1, -2}});  // t = [C2/1] - 2
  auto sq = lattice_product(ideal, ideal, sc);
  CHECK(sq.basis == Mat{{2, -4}});  // t^2 = -2t

  // unit lattice is an identity
  CHECK(lattice_product(full_lattice(2), ideal, sc) == ideal);
  // zero lattice absorbs
  CHECK(lattice_product(zero_lattice(2), ideal, sc).rank() == 0);
}

TEST_CASE("kernel and cokernel of abelian maps") {
  FgAbelianGroup z{1, {}};
  FgAbelianGroup z4{0, {4}};

  SUBCASE("multiplication by 2 on Z") {
    AbelianMap f{z, z, {{2}}};
    auto ker = kernel_presentation(f);
    CHECK(ker.group.is_trivial());
    auto coker = cokernel_presentation(f);
    CHECK(coker.group.free_rank == 0);
    CHECK(coker.group.torsion == std::vector<Int>{2});
  }

  SUBCASE("zero map on Z/4") {
    AbelianMap f = zero_map(z4, z4);
    auto ker = kernel_presentation(f);
    CHECK(ker.group.torsion == std::vector<Int>{4});
    auto coker = cokernel_presentation(f);
    CHECK(coker.group.torsion == std::vector<Int>{4});
  }

  SUBCASE("projection Z^2 -> Z") {
    FgAbelianGroup z2{2, {}};
    AbelianMap f{z2, z, {{1}, {0}}};
    auto ker = kernel_presentation(f);
    CHECK(ker.group.free_rank == 1);
    CHECK(ker.group.torsion.empty());
    auto coker = cokernel_presentation(f);
    CHECK(coker.group.is_trivial());
  }

  SUBCASE("torsion to torsion") {
    // Z/2 -> Z/4 by 1 |-> 2: kernel 0, cokernel Z/2
    FgAbelianGroup z2t{0, {2}};
    AbelianMap f{z2t, z4, {{2}}};
    REQUIRE(map_well_formed(f));
    auto ker = kernel_presentation(f);
    CHECK(ker.group.is_trivial());
    auto coker = cokernel_presentation(f);
    CHECK(coker.group.torsion == std::vector<Int>{2});
  }
}

TEST_CASE("well-formedness catches torsion violations") {
  FgAbelianGroup z2t{0, {2}};
  FgAbelianGroup z{1, {}};
  AbelianMap bad{z2t, z, {{1}}};  // Z/2 cannot map onto a free generator
  CHECK_FALSE(map_well_formed(bad));
  AbelianMap good{z2t, FgAbelianGroup{0, {4}}, {{2}}};
  CHECK(map_well_formed(good));
  AbelianMap bad2{z2t, FgAbelianGroup{0, {4}}, {{1}}};
  CHECK_FALSE(map_well_formed(bad2));
}

TEST_CASE("kernel/cokernel exactness bookkeeping on random maps") {
  oracle::Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    // random map Z^a -> Z^b
    int a = 2 + static_cast<int>(rng.range(0, 1));
    int b = 2 + static_cast<int>(rng.range(0, 1));
    FgAbelianGroup src{a, {}}, dst{b, {}};
    AbelianMap f{src, dst, random_matrix(rng, a, b, -4, 4)};
    auto ker = kernel_presentation(f);
    auto img = image_lattice(f);
    CHECK(ker.group.free_rank + img.rank() == a);  // rank-nullity
  }
  // finite case: |ker| * |im| = |source|
  FgAbelianGroup z8{0, {8}};
  AbelianMap f{z8, z8, {{2}}};
  auto ker = kernel_presentation(f);
  auto coker = cokernel_presentation(f);
  // im = Z/4, ker = Z/2, coker = Z/2
  CHECK(ker.group.order() * 4 == 8);
  CHECK(coker.group.order() == 2);
}

TEST_CASE("solve_left") {
  Mat m = {{2, 0}, {0, 3}};
  auto y = solve_left({4, 3}, m);
  REQUIRE(y.has_value());
  CHECK(*y == Row{2, 1});
  CHECK_FALSE(solve_left({1, 0}, m).has_value());
}
