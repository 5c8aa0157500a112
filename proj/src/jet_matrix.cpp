#include "kahler/jet_matrix.hpp"

#include <algorithm>
#include <unordered_map>

namespace kahler {

JetMatrix::JetMatrix(int rows, int cols, int n, int valid_degree)
    : rows_(rows), cols_(cols), n_(n), valid_(valid_degree),
      cells_(static_cast<std::size_t>(rows * cols), Jet(n, valid_degree)) {
  if (rows < 0 || cols < 0) throw Error(Errc::invalid_argument, "negative matrix size");
}

JetMatrix JetMatrix::identity(int size, int n, int valid_degree) {
  JetMatrix m(size, size, n, valid_degree);
  for (int i = 0; i < size; ++i) m.cells_[i * size + i] = Jet::constant(n, 1, valid_degree);
  return m;
}

JetMatrix JetMatrix::from_rows(const std::vector<std::vector<Jet>>& rows) {
  if (rows.empty() || rows[0].empty()) throw Error(Errc::invalid_argument, "empty matrix");
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows[0].size());
  int n = rows[0][0].n();
  int valid = kExact;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw Error(Errc::invalid_argument, "ragged matrix rows");
    for (const auto& j : row) {
      if (j.n() != n) throw Error(Errc::variable_mismatch, "matrix entries over different variables");
      valid = std::min(valid, j.valid_degree());
    }
  }
  JetMatrix m(r, c, n, valid);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m.cells_[i * c + k] = rows[i][k].truncated(valid);
  return m;
}

void JetMatrix::set(int r, int c, const Jet& value) {
  if (value.n() != n_) throw Error(Errc::variable_mismatch, "matrix entry over different variables");
  if (value.valid_degree() < valid_) {
    valid_ = value.valid_degree();
    for (auto& cell : cells_) cell = cell.truncated(valid_);
  }
  cells_.at(static_cast<std::size_t>(r * cols_ + c)) = value.truncated(valid_);
}

JetMatrix JetMatrix::operator*(const JetMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::invalid_argument, "matrix shapes do not compose");
  if (n_ != o.n_) throw Error(Errc::variable_mismatch, "matrices over different variables");
  int valid = std::min(valid_, o.valid_);
  JetMatrix r(rows_, o.cols_, n_, valid);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Jet acc(n_, valid);
      for (int k = 0; k < cols_; ++k) {
        const Jet& a = (*this)(i, k);
        const Jet& b = o(k, j);
        if (a.is_zero() || b.is_zero()) continue;
        acc = acc + a * b;
      }
      r.cells_[i * o.cols_ + j] = std::move(acc);
    }
  return r;
}

JetMatrix JetMatrix::operator+(const JetMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::invalid_argument, "matrix shapes differ");
  int valid = std::min(valid_, o.valid_);
  JetMatrix r(rows_, cols_, n_, valid);
  for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] + o.cells_[i];
  return r;
}

JetMatrix JetMatrix::operator-(const JetMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::invalid_argument, "matrix shapes differ");
  int valid = std::min(valid_, o.valid_);
  JetMatrix r(rows_, cols_, n_, valid);
  for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] - o.cells_[i];
  return r;
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix r(cols_, rows_, n_, valid_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.cells_[j * rows_ + i] = (*this)(i, j);
  return r;
}

JetMatrix JetMatrix::conj() const {
  JetMatrix r = *this;
  for (auto& c : r.cells_) c = c.conj();
  return r;
}

JetMatrix JetMatrix::truncated(int degree) const {
  JetMatrix r = *this;
  r.valid_ = std::min(valid_, degree);
  for (auto& c : r.cells_) c = c.truncated(r.valid_);
  return r;
}

std::vector<Rational> JetMatrix::constant_part() const {
  std::vector<Rational> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) out.push_back(c.eval0());
  return out;
}

bool JetMatrix::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Jet& j) { return j.is_zero(); });
}

Jet det(const JetMatrix& m) {
  if (!m.square()) throw Error(Errc::non_square, "determinant of a non-square matrix");
  int size = m.rows();
  if (size > 20) throw Error(Errc::invalid_argument, "matrix too large for cofactor expansion");
  // minors[mask] = det of rows [size - popcount(mask), size) restricted to columns in mask
  std::unordered_map<std::uint32_t, Jet> minors;
  minors.emplace(0u, Jet::constant(m.n(), 1, m.valid_degree()));
  for (int k = 1; k <= size; ++k) {
    std::unordered_map<std::uint32_t, Jet> next;
    int row = size - k;
    for (const auto& [mask, _] : minors) {
      for (int c = 0; c < size; ++c) {
        if (mask & (1u << c)) continue;
        std::uint32_t full = mask | (1u << c);
        if (next.count(full)) continue;
        Jet acc(m.n(), m.valid_degree());
        int position = 0;
        for (int col = 0; col < size; ++col) {
          if (!(full & (1u << col))) continue;
          const Jet& a = m(row, col);
          std::uint32_t sub = full & ~(1u << col);
          if (!a.is_zero()) {
            Jet term = a * minors.at(sub);
            acc = position % 2 == 0 ? acc + term : acc - term;
          }
          ++position;
        }
        next.emplace(full, std::move(acc));
      }
    }
    minors = std::move(next);
  }
  return minors.at((1u << size) - 1u);
}

namespace {

// Gauss-Jordan over the rationals; returns false if singular.
bool invert_rational(std::vector<Rational> a, int size, std::vector<Rational>& inv) {
  inv.assign(static_cast<std::size_t>(size * size), Rational(0));
  for (int i = 0; i < size; ++i) inv[i * size + i] = 1;
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r)
      if (a[r * size + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col)
      for (int k = 0; k < size; ++k) {
        std::swap(a[pivot * size + k], a[col * size + k]);
        std::swap(inv[pivot * size + k], inv[col * size + k]);
      }
    Rational p = a[col * size + col];
    for (int k = 0; k < size; ++k) {
      a[col * size + k] /= p;
      inv[col * size + k] /= p;
    }
    for (int r = 0; r < size; ++r) {
      if (r == col || a[r * size + col] == 0) continue;
      Rational f = a[r * size + col];
      for (int k = 0; k < size; ++k) {
        a[r * size + k] -= f * a[col * size + k];
        inv[r * size + k] -= f * inv[col * size + k];
      }
    }
  }
  return true;
}

}  // namespace

JetMatrix inverse(const JetMatrix& m) {
  if (!m.square()) throw Error(Errc::non_square, "inverse of a non-square matrix");
  int size = m.rows();
  int n = m.n();
  int valid = m.valid_degree();
  std::vector<Rational> inv0;
  if (!invert_rational(m.constant_part(), size, inv0))
    throw Error(Errc::singular, "constant part of the matrix is singular");
  JetMatrix a0(size, size, n, valid);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) a0.set(i, j, Jet::constant(n, inv0[i * size + j], valid));
  // M = M0 + N, M^-1 = sum_k (-A0 N)^k A0
  JetMatrix nonconst(size, size, n, valid);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      nonconst.set(i, j, m(i, j).filtered([](const Monomial& k) { return k.degree() > 0; }));
  if (valid >= kExact / 2 && !nonconst.is_zero())
    throw Error(Errc::invalid_argument, "inverse of a non-constant exact matrix needs a truncation");
  JetMatrix step = a0 * nonconst;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) step.set(i, j, -step(i, j));
  JetMatrix result = a0;
  JetMatrix power = a0;
  while (true) {
    power = step * power;
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

}  // namespace kahler
