#include "segc/ints.hpp"

#include "segc/error.hpp"

namespace segc {

std::vector<long long> prime_factors(const Int& value) {
  Int v = int_abs(value);
  std::vector<long long> out;
  if (v <= 1) return out;
  Int d = 2;
  while (d * d <= v) {
    if (v % d == 0) {
      out.push_back(d.convert_to<long long>());
      while (v % d == 0) v /= d;
    }
    ++d;
  }
  if (v > 1) out.push_back(v.convert_to<long long>());
  return out;
}

long long legendre_nu(long long m, long long p) {
  long long nu = 0;
  for (long long q = p; q <= m; q *= p) {
    nu += m / q;
    if (q > m / p) break;  // avoid overflow on q *= p
  }
  return nu;
}

Int factorial(long long m) {
  Int r = 1;
  for (long long i = 2; i <= m; ++i) r *= i;
  return r;
}

Mat identity_matrix(int n) {
  Mat m(n, Row(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat matrix_product(const Mat& a, const Mat& b) {
  if (a.empty()) return {};
  size_t inner = a[0].size();
  if (inner != b.size()) fail("dimension", "matrix product shape mismatch");
  size_t cols = b.empty() ? 0 : b[0].size();
  Mat out(a.size(), Row(cols, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Row row_times_matrix(const Row& x, const Mat& m) {
  if (x.size() != m.size()) fail("dimension", "row/matrix shape mismatch");
  size_t cols = m.empty() ? 0 : m[0].size();
  Row out(cols, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < cols; ++j) out[j] += x[i] * m[i][j];
  }
  return out;
}

bool matrix_equal(const Mat& a, const Mat& b) { return a == b; }

std::string int_to_string(const Int& v) { return v.str(); }

Int int_from_string(const std::string& s) {
  if (s.empty()) fail("json", "empty integer literal");
  try {
    return Int(s);
  } catch (const std::exception&) {
    fail("json", "bad integer literal: " + s);
  }
}

}  // namespace segc
