#include "voa/linalg.hpp"

#include <algorithm>
#include <map>

namespace voa {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, size_t cols) {
  Matrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, size_t rows) {
  Matrix m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Vec Matrix::row(size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vec Matrix::column(size_t j) const {
  Vec v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix shape mismatch");
  Vec r(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-1); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

SparseMatrix SparseMatrix::from_triplets(size_t rows, size_t cols,
                                         const std::vector<std::tuple<size_t, size_t, Scalar>>& entries) {
  std::vector<std::map<uint32_t, Scalar>> acc(rows);
  for (const auto& [i, j, v] : entries) {
    if (i >= rows || j >= cols) throw std::out_of_range("sparse entry out of range");
    acc[i][uint32_t(j)] += v;
  }
  SparseMatrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (auto& [j, v] : acc[i])
      if (!v.is_zero()) m.data_[i].emplace_back(j, v);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& d) {
  SparseMatrix m(d.rows(), d.cols());
  for (size_t i = 0; i < d.rows(); ++i)
    for (size_t j = 0; j < d.cols(); ++j)
      if (!d(i, j).is_zero()) m.data_[i].emplace_back(uint32_t(j), d(i, j));
  return m;
}

SparseMatrix SparseMatrix::identity(size_t n) {
  SparseMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.data_[i].emplace_back(uint32_t(i), Scalar(1));
  return m;
}

size_t SparseMatrix::nonzeros() const {
  size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
}

Scalar SparseMatrix::at(size_t i, size_t j) const {
  const auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), uint32_t(j), [](const Entry& e, uint32_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return Scalar(0);
}

std::vector<std::tuple<size_t, size_t, Scalar>> SparseMatrix::triplets() const {
  std::vector<std::tuple<size_t, size_t, Scalar>> t;
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.emplace_back(i, j, v);
  return t;
}

Matrix SparseMatrix::to_dense() const {
  Matrix d(rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) d(i, j) = v;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(uint32_t(i), v);
  return t;
}

Vec SparseMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("sparse apply shape mismatch");
  Vec r(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, x] : data_[i])
      if (!v[j].is_zero()) r[i] += x * v[j];
  return r;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("sparse product shape mismatch");
  SparseMatrix r(rows_, o.cols_);
  std::vector<Scalar> acc(o.cols_);
  std::vector<char> used(o.cols_, 0);
  std::vector<uint32_t> touched;
  for (size_t i = 0; i < rows_; ++i) {
    touched.clear();
    for (const auto& [k, a] : data_[i])
      for (const auto& [j, b] : o.data_[k]) {
        if (!used[j]) {
          used[j] = 1;
          touched.push_back(j);
          acc[j] = a * b;
        } else {
          acc[j] += a * b;
        }
      }
    std::sort(touched.begin(), touched.end());
    for (uint32_t j : touched) {
      if (!acc[j].is_zero()) r.data_[i].emplace_back(j, acc[j]);
      used[j] = 0;
      acc[j] = Scalar();
    }
  }
  return r;
}

void SparseMatrix::add_scaled(const SparseMatrix& o, const Scalar& s) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sparse sum shape mismatch");
  if (s.is_zero()) return;
  for (size_t i = 0; i < rows_; ++i) {
    if (o.data_[i].empty()) continue;
    std::vector<Entry> merged;
    merged.reserve(data_[i].size() + o.data_[i].size());
    auto a = data_[i].begin(), ae = data_[i].end();
    auto b = o.data_[i].begin(), be = o.data_[i].end();
    while (a != ae || b != be) {
      if (b == be || (a != ae && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == ae || b->first < a->first) {
        merged.emplace_back(b->first, b->second * s);
        ++b;
      } else {
        Scalar v = a->second + b->second * s;
        if (!v.is_zero()) merged.emplace_back(a->first, v);
        ++a;
        ++b;
      }
    }
    data_[i] = std::move(merged);
  }
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  SparseMatrix r = *this;
  r.add_scaled(o, 1);
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  SparseMatrix r = *this;
  r.add_scaled(o, -1);
  return r;
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
  if (s.is_zero()) return SparseMatrix(rows_, cols_);
  SparseMatrix r = *this;
  for (auto& row : r.data_)
    for (auto& e : row) e.second *= s;
  return r;
}

RowEchelon rref(Matrix m) {
  RowEchelon out;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> rref_kernel(const Matrix& m) {
  RowEchelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (size_t p : e.pivots) is_pivot[p] = 1;
  std::vector<Vec> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> rref_kernel(const SparseMatrix& m) { return rref_kernel(m.to_dense()); }

RadicalQuotient quotient_by_radical(const Matrix& gram, size_t basis_size) {
  if (gram.rows() != basis_size || gram.cols() != basis_size)
    throw std::invalid_argument("Gram matrix shape mismatch");
  if (!gram.is_symmetric()) throw std::invalid_argument("asymmetric Gram matrix");
  RowEchelon e = rref(gram);
  RadicalQuotient q;
  q.new_dim = e.pivots.size();
  q.kept = e.pivots;
  std::vector<std::tuple<size_t, size_t, Scalar>> t;
  for (size_t r = 0; r < q.new_dim; ++r)
    for (size_t j = 0; j < basis_size; ++j)
      if (!e.reduced(r, j).is_zero()) t.emplace_back(r, j, e.reduced(r, j));
  q.projection = SparseMatrix::from_triplets(q.new_dim, basis_size, t);
  return q;
}

RadicalQuotient quotient_by_radical(const SparseMatrix& gram, size_t basis_size) {
  return quotient_by_radical(gram.to_dense(), basis_size);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  RowEchelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  if (e.pivots.size() < n) return std::nullopt;
  Vec x(n);
  for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, n);
  return x;
}

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  size_t n = m.rows();
  Scalar det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

MinorReport leading_minors(const Matrix& m) {
  // Elimination without row exchanges: the k-th pivot is minor_k / minor_{k-1}.
  MinorReport rep;
  Matrix a = m;
  size_t n = a.rows();
  Scalar running(1);
  for (size_t k = 0; k < n; ++k) {
    Scalar piv = a(k, k);
    if (piv.is_zero()) {
      // minor_k vanishes; report it exactly via a direct determinant
      Matrix sub(k + 1, k + 1);
      for (size_t i = 0; i <= k; ++i)
        for (size_t j = 0; j <= k; ++j) sub(i, j) = m(i, j);
      rep.minors.push_back(determinant(sub));
      rep.positive_definite = false;
      rep.first_failure = k + 1;
      return rep;
    }
    running *= piv;
    rep.minors.push_back(running);
    if (running.sign() <= 0) {
      rep.positive_definite = false;
      rep.first_failure = k + 1;
      return rep;
    }
    Scalar inv = piv.inverse();
    for (size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      Scalar f = a(i, k) * inv;
      for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return rep;
}

bool is_positive_semidefinite(const Matrix& m) {
  if (!m.is_symmetric()) return false;
  Matrix a = m;
  size_t n = a.rows();
  std::vector<char> done(n, 0);
  for (size_t step = 0; step < n; ++step) {
    // pick the largest remaining diagonal entry
    size_t best = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && (best == n || a(i, i) > a(best, best))) best = i;
    const Scalar piv = a(best, best);
    if (piv.sign() < 0) return false;
    if (piv.is_zero()) {
      // all remaining diagonals are <= 0; PSD requires the remaining block to vanish
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && !a(i, j).is_zero()) return false;
      return true;
    }
    done[best] = 1;
    Scalar inv = piv.inverse();
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, best).is_zero()) continue;
      Scalar f = a(i, best) * inv;
      for (size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(best, j);
    }
  }
  return true;
}

Scalar dot(const Vec& a, const Vec& b) {
  Scalar s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Vec& a, const Scalar& s) {
  Vec r = a;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vec& y, const Scalar& s, const Vec& x) {
  if (s.is_zero()) return;
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
}

Scalar bilinear(const Vec& x, const Matrix& g, const Vec& y) { return dot(x, g * y); }

}  // namespace voa
