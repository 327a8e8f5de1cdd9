#pragma once

// Exact integer arithmetic used across the algebra kernels. Lattice entries
// grow geometrically with ideal powers, so everything algebraic runs on
// arbitrary-precision integers.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace segc {

using Int = boost::multiprecision::cpp_int;
using Row = std::vector<Int>;
using Mat = std::vector<Row>;

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Trial-division factorization; values seen here are character values and
// group orders, all small.
std::vector<long long> prime_factors(const Int& value);

// nu_p(m!) by Legendre's formula.
long long legendre_nu(long long m, long long p);

Int factorial(long long m);

Mat identity_matrix(int n);
Mat matrix_product(const Mat& a, const Mat& b);
Row row_times_matrix(const Row& x, const Mat& m);
bool matrix_equal(const Mat& a, const Mat& b);

std::string int_to_string(const Int& v);
Int int_from_string(const std::string& s);

}  // namespace segc
