#include "segc/zlattice.hpp"

#include <algorithm>
#include <sstream>

#include "segc/error.hpp"

namespace segc {

namespace {

bool row_is_zero(const Row& r) {
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

}  // namespace

IntegerLattice hnf_lattice(int ambient_rank, Mat rows) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != ambient_rank)
      fail("dimension", "lattice generator has wrong length");
  // Integer row echelon by Euclidean elimination, column by column.
  size_t top = 0;
  for (int col = 0; col < ambient_rank && top < rows.size(); ++col) {
    while (true) {
      size_t best = rows.size();
      for (size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || int_abs(rows[r][col]) < int_abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) break;  // column clear below top
      std::swap(rows[top], rows[best]);
      bool cleared = true;
      for (size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Int q = rows[r][col] / rows[top][col];
        for (int j = 0; j < ambient_rank; ++j) rows[r][j] -= q * rows[top][j];
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) {
        if (rows[top][col] < 0)
          for (auto& v : rows[top]) v = -v;
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  // Reduce entries above each pivot into [0, pivot).
  for (size_t i = 0; i < rows.size(); ++i) {
    int pc = 0;
    while (rows[i][pc] == 0) ++pc;
    for (size_t r = 0; r < i; ++r) {
      Int q = rows[r][pc] / rows[i][pc];
      if (rows[r][pc] - q * rows[i][pc] < 0) q -= 1;  // floor division
      if (q == 0) continue;
      for (int j = 0; j < ambient_rank; ++j) rows[r][j] -= q * rows[i][j];
    }
  }
  return IntegerLattice{ambient_rank, std::move(rows)};
}

IntegerLattice zero_lattice(int ambient_rank) { return IntegerLattice{ambient_rank, {}}; }

IntegerLattice full_lattice(int ambient_rank) {
  return IntegerLattice{ambient_rank, identity_matrix(ambient_rank)};
}

bool lattice_member(const IntegerLattice& l, const Row& x) {
  if (static_cast<int>(x.size()) != l.ambient_rank) fail("dimension", "vector length mismatch");
  Row rem = x;
  for (const auto& row : l.basis) {
    int pc = 0;
    while (row[pc] == 0) ++pc;
    if (rem[pc] == 0) continue;
    if (rem[pc] % row[pc] != 0) return false;
    Int q = rem[pc] / row[pc];
    for (int j = 0; j < l.ambient_rank; ++j) rem[j] -= q * row[j];
  }
  return row_is_zero(rem);
}

bool lattice_contains(const IntegerLattice& outer, const IntegerLattice& inner) {
  if (outer.ambient_rank != inner.ambient_rank) fail("dimension", "ambient rank mismatch");
  for (const auto& r : inner.basis)
    if (!lattice_member(outer, r)) return false;
  return true;
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.ambient_rank != b.ambient_rank) fail("dimension", "ambient rank mismatch");
  Mat rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return hnf_lattice(a.ambient_rank, std::move(rows));
}

IntegerLattice lattice_project(const IntegerLattice& l, const std::vector<int>& coords) {
  Mat rows;
  for (const auto& r : l.basis) {
    Row pr;
    pr.reserve(coords.size());
    for (int c : coords) pr.push_back(r[c]);
    rows.push_back(std::move(pr));
  }
  return hnf_lattice(static_cast<int>(coords.size()), std::move(rows));
}

namespace {

struct Transforms {
  Mat u, u_inv, v, v_inv;
};

void row_swap(Mat& m, Transforms& t, size_t a, size_t b) {
  std::swap(m[a], m[b]);
  std::swap(t.u[a], t.u[b]);
  for (auto& row : t.u_inv) std::swap(row[a], row[b]);
}

void row_add(Mat& m, Transforms& t, size_t dst, size_t src, const Int& k) {
  // row_dst += k * row_src; inverse: column src of u_inv -= k * column dst.
  for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += k * m[src][j];
  for (size_t j = 0; j < t.u[dst].size(); ++j) t.u[dst][j] += k * t.u[src][j];
  for (auto& row : t.u_inv) row[src] -= k * row[dst];
}

void row_negate(Mat& m, Transforms& t, size_t a) {
  for (auto& v : m[a]) v = -v;
  for (auto& v : t.u[a]) v = -v;
  for (auto& row : t.u_inv) row[a] = -row[a];
}

void col_swap(Mat& m, Transforms& t, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
  for (auto& row : t.v) std::swap(row[a], row[b]);
  std::swap(t.v_inv[a], t.v_inv[b]);
}

void col_add(Mat& m, Transforms& t, size_t dst, size_t src, const Int& k) {
  // col_dst += k * col_src; inverse: row src of v_inv -= k * row dst.
  for (auto& row : m) row[dst] += k * row[src];
  for (auto& row : t.v) row[dst] += k * row[src];
  for (size_t j = 0; j < t.v_inv[src].size(); ++j) t.v_inv[src][j] -= k * t.v_inv[dst][j];
}

void col_negate(Mat& m, Transforms& t, size_t a) {
  for (auto& row : m) row[a] = -row[a];
  for (auto& row : t.v) row[a] = -row[a];
  for (auto& v : t.v_inv[a]) v = -v;
}

}  // namespace

SnfResult smith_normal_form(const Mat& input) {
  size_t nrows = input.size();
  size_t ncols = nrows == 0 ? 0 : input[0].size();
  for (const auto& r : input)
    if (r.size() != ncols) fail("dimension", "ragged matrix");
  Mat m = input;
  Transforms t{identity_matrix(static_cast<int>(nrows)), identity_matrix(static_cast<int>(nrows)),
               identity_matrix(static_cast<int>(ncols)), identity_matrix(static_cast<int>(ncols))};

  size_t k = 0;
  while (k < nrows && k < ncols) {
    // Find a pivot of minimal absolute value in the remaining block.
    size_t pi = nrows, pj = ncols;
    for (size_t i = k; i < nrows; ++i)
      for (size_t j = k; j < ncols; ++j) {
        if (m[i][j] == 0) continue;
        if (pi == nrows || int_abs(m[i][j]) < int_abs(m[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    if (pi == nrows) break;  // block is zero
    row_swap(m, t, k, pi);
    col_swap(m, t, k, pj);
    bool dirty = false;
    for (size_t i = k + 1; i < nrows; ++i) {
      if (m[i][k] == 0) continue;
      Int q = m[i][k] / m[k][k];
      if (q != 0) row_add(m, t, i, k, -q);
      if (m[i][k] != 0) dirty = true;
    }
    for (size_t j = k + 1; j < ncols; ++j) {
      if (m[k][j] == 0) continue;
      Int q = m[k][j] / m[k][k];
      if (q != 0) col_add(m, t, j, k, -q);
      if (m[k][j] != 0) dirty = true;
    }
    if (dirty) continue;  // smaller remainders appeared; repeat with new pivot
    // Divisibility: fold in any entry the pivot does not divide.
    bool fixed = false;
    for (size_t i = k + 1; i < nrows && !fixed; ++i)
      for (size_t j = k + 1; j < ncols && !fixed; ++j)
        if (m[i][j] % m[k][k] != 0) {
          row_add(m, t, k, i, 1);
          fixed = true;
        }
    if (fixed) continue;
    if (m[k][k] < 0) {
      row_negate(m, t, k);
    }
    ++k;
  }

  SnfResult res;
  res.d = m;
  res.u = std::move(t.u);
  res.u_inv = std::move(t.u_inv);
  res.v = std::move(t.v);
  res.v_inv = std::move(t.v_inv);
  res.rank = static_cast<int>(k);
  for (size_t i = 0; i < k; ++i) res.diagonal.push_back(m[i][i]);
  return res;
}

Mat left_kernel(const Mat& m, int rows_hint) {
  size_t nrows = rows_hint >= 0 ? static_cast<size_t>(rows_hint) : m.size();
  if (m.empty()) return identity_matrix(static_cast<int>(nrows));
  auto snf = smith_normal_form(m);
  Mat out;
  for (size_t i = snf.rank; i < m.size(); ++i) out.push_back(snf.u[i]);
  return out;
}

std::optional<Row> solve_left(const Row& x, const Mat& m) {
  if (m.empty()) return row_is_zero(x) ? std::optional<Row>(Row{}) : std::nullopt;
  if (x.size() != m[0].size()) fail("dimension", "solve_left shape mismatch");
  auto snf = smith_normal_form(m);
  Row xv = row_times_matrix(x, snf.v);
  Row w(m.size(), 0);
  for (size_t i = 0; i < xv.size(); ++i) {
    if (i < static_cast<size_t>(snf.rank)) {
      if (xv[i] % snf.d[i][i] != 0) return std::nullopt;
      w[i] = xv[i] / snf.d[i][i];
    } else if (xv[i] != 0) {
      return std::nullopt;
    }
  }
  return row_times_matrix(w, snf.u);
}

Int FgAbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

IntegerLattice FgAbelianGroup::relation_lattice() const {
  Mat rows;
  for (size_t i = 0; i < torsion.size(); ++i) {
    Row r(gens(), 0);
    r[i] = torsion[i];
    rows.push_back(std::move(r));
  }
  return hnf_lattice(gens(), std::move(rows));
}

Row FgAbelianGroup::normalized(Row x) const {
  if (static_cast<int>(x.size()) != gens()) fail("dimension", "element length mismatch");
  for (size_t i = 0; i < torsion.size(); ++i) {
    x[i] %= torsion[i];
    if (x[i] < 0) x[i] += torsion[i];
  }
  return x;
}

std::string group_to_string(const FgAbelianGroup& g) {
  std::ostringstream os;
  bool first = true;
  if (g.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (g.free_rank > 1) {
    os << "Z^" << g.free_rank;
    first = false;
  }
  for (const auto& d : g.torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

QuotientPresentation snf_quotient(int ambient_rank, const IntegerLattice& sub) {
  if (sub.ambient_rank != ambient_rank) fail("dimension", "ambient rank mismatch");
  auto snf = smith_normal_form(sub.basis);
  // Coordinates: y = x * V; torsion coords are those with d_i > 1, free
  // coords those beyond the rank.
  std::vector<int> kept;
  std::vector<Int> torsion;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.diagonal[i] > 1) {
      kept.push_back(i);
      torsion.push_back(snf.diagonal[i]);
    }
  int free_rank = ambient_rank - snf.rank;
  for (int i = snf.rank; i < ambient_rank; ++i) kept.push_back(i);

  FgAbelianGroup group{free_rank, torsion};
  Mat project(ambient_rank, Row(kept.size(), 0));
  Mat lift(kept.size(), Row(ambient_rank, 0));
  const Mat v = sub.basis.empty() ? identity_matrix(ambient_rank) : snf.v;
  const Mat v_inv = sub.basis.empty() ? identity_matrix(ambient_rank) : snf.v_inv;
  for (int r = 0; r < ambient_rank; ++r)
    for (size_t c = 0; c < kept.size(); ++c) project[r][c] = v[r][kept[c]];
  for (size_t c = 0; c < kept.size(); ++c) lift[c] = v_inv[kept[c]];
  return QuotientPresentation{std::move(group), std::move(project), std::move(lift)};
}

Row StructureConstants::multiply(const Row& x, const Row& y) const {
  if (static_cast<int>(x.size()) != rank || static_cast<int>(y.size()) != rank)
    fail("dimension", "structure-constant multiply shape mismatch");
  Row out(rank, 0);
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j) {
      if (y[j] == 0) continue;
      Int coef = x[i] * y[j];
      for (int k = 0; k < rank; ++k) out[k] += coef * c[i][j][k];
    }
  }
  return out;
}

IntegerLattice lattice_product(const IntegerLattice& a, const IntegerLattice& b,
                               const StructureConstants& mul) {
  if (a.ambient_rank != mul.rank || b.ambient_rank != mul.rank)
    fail("dimension", "lattice/ring rank mismatch");
  Mat rows;
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) rows.push_back(mul.multiply(x, y));
  return hnf_lattice(mul.rank, std::move(rows));
}

IntegerLattice module_product(const IntegerLattice& ideal, const IntegerLattice& module,
                              const StructureConstants& mul, int blocks) {
  if (ideal.ambient_rank != mul.rank) fail("dimension", "ideal/ring rank mismatch");
  if (module.ambient_rank != mul.rank * blocks) fail("dimension", "module rank mismatch");
  Mat rows;
  for (const auto& x : ideal.basis)
    for (const auto& y : module.basis) {
      Row out;
      out.reserve(module.ambient_rank);
      for (int b = 0; b < blocks; ++b) {
        Row yb(y.begin() + b * mul.rank, y.begin() + (b + 1) * mul.rank);
        Row prod = mul.multiply(x, yb);
        out.insert(out.end(), prod.begin(), prod.end());
      }
      rows.push_back(std::move(out));
    }
  return hnf_lattice(module.ambient_rank, std::move(rows));
}

}  // namespace segc
