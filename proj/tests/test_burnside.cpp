#include <doctest.h>

#include <set>

#include "segc/burnside.hpp"
#include "segc/error.hpp"
#include "support/oracles.hpp"

using namespace segc;

namespace {

BurnsideElement augmentation_kernel_generator(const TableOfMarksPtr& t) {
  // t = [G/1] - |G| * 1
  auto x = basis_element(t, 0);
  return subtract(x, scale(t->group().order(), unit_element(t)));
}

}  // namespace

TEST_CASE("table of marks: C2, S3, trivial") {
  auto c2 = TableOfMarks::build(parse_group("C2"));
  CHECK(c2->marks() == Mat{{2, 0}, {1, 1}});

  auto s3 = TableOfMarks::build(parse_group("S3"));
  CHECK(s3->marks() == Mat{{6, 0, 0, 0}, {3, 1, 0, 0}, {2, 0, 2, 0}, {1, 1, 1, 1}});

  auto triv = TableOfMarks::build(parse_group(""));
  CHECK(triv->marks() == Mat{{1}});
}

TEST_CASE("marks match the brute-force fixed point oracle") {
  for (const char* spec : {"C2", "C6", "S3", "D8", "A4"}) {
    CAPTURE(spec);
    auto t = TableOfMarks::build(parse_group(spec));
    for (int i = 0; i < t->size(); ++i) {
      // lower triangular with positive diagonal
      CHECK(t->marks()[i][i] > 0);
      for (int j = i + 1; j < t->size(); ++j) CHECK(t->marks()[i][j] == 0);
      // first column is the index
      CHECK(t->marks()[i][0] == t->group().order() / t->classes()[i].order);
      // diagonal is |N(H)|/|H|
      auto norm = normalizer(t->group(), t->classes()[i].representative);
      CHECK(t->marks()[i][i] == norm.order() / t->classes()[i].order);
      for (int j = 0; j < t->size(); ++j)
        CHECK(t->marks()[i][j] ==
              oracle::mark_count_bruteforce(t->group(), t->classes()[i].representative,
                                            t->classes()[j].representative));
    }
  }
}

TEST_CASE("mark vectors") {
  auto c2 = TableOfMarks::build(parse_group("C2"));
  CHECK(mark(basis_element(c2, 0)).values == Row{2, 0});
  CHECK(mark(unit_element(c2)).values == Row{1, 1});
  CHECK(mark(zero_element(c2)).values == Row{0, 0});
}

TEST_CASE("ghost multiplication") {
  auto c2 = TableOfMarks::build(parse_group("C2"));
  auto x = basis_element(c2, 0);
  CHECK(multiply(x, x).coeffs == Row{2, 0});  // [C2/1]^2 = 2[C2/1]
  CHECK(multiply(unit_element(c2), x).coeffs == x.coeffs);

  auto t = augmentation_kernel_generator(c2);  // [C2/1] - 2
  auto tt = multiply(t, t);
  CHECK(tt.coeffs == scale(-2, t).coeffs);  // t^2 = -2t

  auto s3 = TableOfMarks::build(parse_group("S3"));
  CHECK(multiply(unit_element(s3), basis_element(s3, 2)).coeffs ==
        basis_element(s3, 2).coeffs);
}

TEST_CASE("ghost multiplication equals the G-set product oracle") {
  for (const char* spec : {"C2", "C6", "S3", "D8"}) {
    CAPTURE(spec);
    auto t = TableOfMarks::build(parse_group(spec));
    for (int i = 0; i < t->size(); ++i)
      for (int j = i; j < t->size(); ++j)
        CHECK(multiply(basis_element(t, i), basis_element(t, j)).coeffs ==
              oracle::gset_product_coeffs(*t, i, j));
  }
}

TEST_CASE("ghost ring round trip on random elements") {
  oracle::Rng rng(3);
  for (const char* spec : {"S3", "D8", "A4"}) {
    auto t = TableOfMarks::build(parse_group(spec));
    for (int round = 0; round < 10; ++round) {
      Row coeffs(t->size());
      for (auto& v : coeffs) v = rng.range(-5, 5);
      auto x = element_from_coeffs(t, coeffs);
      CHECK(coeffs_from_marks(*t, mark(x).values) == coeffs);
    }
  }
}

TEST_CASE("random integer mark vectors: integral solve or clean failure") {
  oracle::Rng rng(17);
  auto t = TableOfMarks::build(parse_group("S3"));
  int failures = 0;
  for (int round = 0; round < 40; ++round) {
    Row values(t->size());
    for (auto& v : values) v = rng.range(-10, 10);
    try {
      Row coeffs = coeffs_from_marks(*t, values);
      CHECK(mark(element_from_coeffs(t, coeffs)).values == values);
    } catch (const Error& e) {
      CHECK(e.code() == "integrality");
      ++failures;
    }
  }
  CHECK(failures > 0);  // random vectors do violate the congruences
}

TEST_CASE("fault injection: corrupted marks table fails integrality") {
  auto good = TableOfMarks::build(parse_group("S3"));
  Mat marks = good->marks();
  marks[2][0] = 5;  // breaks the congruences
  auto bad = TableOfMarks::unchecked(good->group(), good->classes(), marks);
  auto x = basis_element(bad, 2);
  CHECK_THROWS_AS(multiply(x, x), Error);
}

TEST_CASE("augmentation") {
  auto s3 = TableOfMarks::build(parse_group("S3"));
  CHECK(augmentation(basis_element(s3, 1)) == 3);  // [S3/C2]
  CHECK(augmentation(unit_element(s3)) == 1);
  auto c2 = TableOfMarks::build(parse_group("C2"));
  CHECK(augmentation(augmentation_kernel_generator(c2)) == 0);
}

TEST_CASE("augmentation ideal") {
  auto c2 = TableOfMarks::build(parse_group("C2"));
  auto i2 = augmentation_ideal(*c2);
  CHECK(i2.basis == Mat{{1, -2}});

  auto triv = TableOfMarks::build(parse_group(""));
  CHECK(augmentation_ideal(*triv).rank() == 0);

  auto s3 = TableOfMarks::build(parse_group("S3"));
  auto i3 = augmentation_ideal(*s3);
  CHECK(i3.rank() == 3);
  // the standard basis vectors lie in it, and all have augmentation 0
  CHECK(lattice_member(i3, {1, 0, 0, -6}));
  CHECK(lattice_member(i3, {0, 1, 0, -3}));
  CHECK(lattice_member(i3, {0, 0, 1, -2}));
  for (const auto& r : i3.basis)
    CHECK(augmentation(element_from_coeffs(s3, r)) == 0);
}

TEST_CASE("prime ideal membership") {
  auto c2 = TableOfMarks::build(parse_group("C2"));
  auto t = augmentation_kernel_generator(c2);  // char_1 = 0, char_C2 = -2
  CHECK(prime_ideal_contains(*c2, PrimeIdealLabel{0, 2}, t));
  CHECK(prime_ideal_contains(*c2, PrimeIdealLabel{1, 0}, basis_element(c2, 0)));
  CHECK_FALSE(prime_ideal_contains(*c2, PrimeIdealLabel{0, 0}, unit_element(c2)));
}

TEST_CASE("Dress criterion for prime ideal coincidence") {
  auto s3 = TableOfMarks::build(parse_group("S3"));
  // classes: 0 = 1, 1 = C2, 2 = C3, 3 = S3
  CHECK(prime_ideal_equal(*s3, {0, 2}, {1, 2}));   // C2[2] = 1
  CHECK(prime_ideal_equal(*s3, {2, 2}, {3, 2}));   // S3[2] = A3 ~ C3
  CHECK_FALSE(prime_ideal_equal(*s3, {0, 2}, {2, 2}));
  CHECK_FALSE(prime_ideal_equal(*s3, {0, 2}, {0, 3}));  // p != q
  CHECK(prime_ideal_equal(*s3, {1, 0}, {1, 0}));
  CHECK_FALSE(prime_ideal_equal(*s3, {1, 0}, {2, 0}));
  // p = 3: S3[3] = S3, C3[3] = C3, C2[3] = C2: no coincidences
  CHECK_FALSE(prime_ideal_equal(*s3, {2, 3}, {3, 3}));
}

TEST_CASE("spectrum partition matches brute-force character comparison") {
  for (const char* spec : {"C2", "C4", "C6", "S3", "D8", "A4"}) {
    CAPTURE(spec);
    auto t = TableOfMarks::build(parse_group(spec));
    for (const auto& cell : prime_spectrum(*t)) {
      // brute force: columns of the marks matrix compared exactly (p = 0)
      // or mod p.
      auto same_column = [&](int a, int b) {
        for (int i = 0; i < t->size(); ++i) {
          Int va = t->marks()[i][a], vb = t->marks()[i][b];
          if (cell.p == 0 ? (va != vb) : ((va - vb) % cell.p != 0)) return false;
        }
        return true;
      };
      for (const auto& group : cell.cells)
        for (size_t x = 0; x < group.size(); ++x)
          for (size_t y = x + 1; y < group.size(); ++y)
            CHECK(same_column(group[x], group[y]));
      // distinct cells differ
      for (size_t a = 0; a < cell.cells.size(); ++a)
        for (size_t b = a + 1; b < cell.cells.size(); ++b)
          CHECK_FALSE(same_column(cell.cells[a][0], cell.cells[b][0]));
    }
  }
}

TEST_CASE("maximal chains: P(K,0) sits inside P(K,p)") {
  auto t = TableOfMarks::build(parse_group("S3"));
  for (int c = 0; c < t->size(); ++c) {
    // kernel lattice of char_K
    Mat rows;
    for (int i = 0; i < t->size(); ++i) {
      // e_i * diag - relation: use pairs e_i*m_jK - e_j*m_iK; simpler:
      // generators of the kernel of the character functional via HNF of
      // the nullspace.
      (void)i;
    }
    // direct: for each p, every element with char_K = 0 has char_K = 0 mod p.
    for (long long p : {2, 3}) {
      auto lbl0 = PrimeIdealLabel{c, 0};
      auto lblp = PrimeIdealLabel{c, p};
      oracle::Rng rng(c * 10 + p);
      for (int round = 0; round < 20; ++round) {
        Row coeffs(t->size());
        for (auto& v : coeffs) v = rng.range(-4, 4);
        auto x = element_from_coeffs(t, coeffs);
        if (prime_ideal_contains(*t, lbl0, x)) CHECK(prime_ideal_contains(*t, lblp, x));
      }
    }
  }
}

TEST_CASE("restriction by orbit decomposition") {
  auto s3 = TableOfMarks::build(parse_group("S3"));
  auto s3_classes = s3->classes();
  // C3 <= S3
  auto c3_sub = s3_classes[2].representative;
  auto c3ring = TableOfMarks::build(as_group(c3_sub));
  auto res = restriction(basis_element(s3, 1), c3ring);  // [S3/C2]
  CHECK(res.coeffs == Row{1, 0});                        // = [C3/1]

  CHECK(restriction(basis_element(s3, 1), s3).coeffs == basis_element(s3, 1).coeffs);

  auto c6 = TableOfMarks::build(parse_group("C6"));
  auto c2_sub = c6->classes()[1].representative;
  auto c2ring = TableOfMarks::build(as_group(c2_sub));
  auto res2 = restriction(basis_element(c6, 2), c2ring);  // [C6/C3]
  CHECK(res2.coeffs == Row{1, 0});                        // = [C2/1]
}

TEST_CASE("induction on basis elements") {
  auto s3 = TableOfMarks::build(parse_group("S3"));
  auto c2ring = TableOfMarks::build(as_group(s3->classes()[1].representative));
  auto ind = induction(basis_element(c2ring, 0), s3);  // [C2/1] -> [S3/1]
  CHECK(ind.coeffs == Row{1, 0, 0, 0});
  auto c3ring = TableOfMarks::build(as_group(s3->classes()[2].representative));
  auto ind2 = induction(unit_element(c3ring), s3);  // [C3/C3] -> [S3/C3]
  CHECK(ind2.coeffs == Row{0, 0, 1, 0});

  // augmentation counts points: aug(ind x) = [G:H] aug(x)
  for (int i = 0; i < c3ring->size(); ++i) {
    auto x = basis_element(c3ring, i);
    CHECK(augmentation(induction(x, s3)) == 2 * augmentation(x));
  }
}

TEST_CASE("Frobenius reciprocity and the double coset formula") {
  for (const char* spec : {"S3", "D8", "A4"}) {
    CAPTURE(spec);
    auto big = TableOfMarks::build(parse_group(spec));
    for (const auto& cls : big->classes()) {
      auto small = TableOfMarks::build(as_group(cls.representative));
      // Frobenius: ind(x * res(y)) = ind(x) * y on basis elements
      for (int xi = 0; xi < small->size(); ++xi)
        for (int yi = 0; yi < big->size(); ++yi) {
          auto x = basis_element(small, xi);
          auto y = basis_element(big, yi);
          auto lhs = induction(multiply(x, restriction(y, small)), big);
          auto rhs = multiply(induction(x, big), y);
          CHECK(lhs.coeffs == rhs.coeffs);
        }
      // double cosets: res^G_K ind [H/L] with H = K = cls
      for (int li = 0; li < small->size(); ++li) {
        auto ind = induction(basis_element(small, li), big);
        int big_class = 0;
        for (int c = 0; c < big->size(); ++c)
          if (ind.coeffs[c] == 1) big_class = c;
        auto lhs = restriction(ind, small);
        CHECK(lhs.coeffs == oracle::double_coset_restriction(*big, big_class, *small));
      }
    }
  }
}
