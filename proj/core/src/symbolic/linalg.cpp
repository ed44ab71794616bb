#include "nilshift/symbolic/linalg.hpp"

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, RatFunc(ring_)) {}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc(ring, 1);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw MismatchError("matrix shape mismatch in +");
  Matrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw MismatchError("matrix shape mismatch in -");
  Matrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw MismatchError("matrix shape mismatch in *");
  Matrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RatFunc& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const RatFunc& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  }
  return r;
}

Matrix Matrix::operator*(const RatFunc& c) const {
  return map([&](const RatFunc& x) { return x * c; });
}

std::vector<RatFunc> Matrix::operator*(const std::vector<RatFunc>& v) const {
  if (cols_ != v.size()) throw MismatchError("matrix-vector shape mismatch");
  std::vector<RatFunc> out(rows_, RatFunc(ring_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!(*this)(i, k).is_zero() && !v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
    }
  }
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

Matrix Matrix::substitute(const std::map<std::size_t, RatFunc>& images) const {
  return map([&](const RatFunc& x) { return x.substitute(images); });
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw MismatchError("inverse of a non-square matrix");
  std::size_t n = rows_;
  Matrix a(*this), inv = identity(ring_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    std::size_t best_size = 0;
    for (std::size_t r = c; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      std::size_t size = a(r, c).num().nterms() + a(r, c).den().nterms();
      if (best == n || size < best_size) {
        best = r;
        best_size = size;
      }
    }
    if (best == n) throw MathError("singular matrix");
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(best, j), a(c, j));
        std::swap(inv(best, j), inv(c, j));
      }
    }
    RatFunc p = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(c, j).is_zero()) a(c, j) *= p;
      if (!inv(c, j).is_zero()) inv(c, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      RatFunc f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatFunc Matrix::determinant() const {
  if (rows_ != cols_) throw MismatchError("determinant of a non-square matrix");
  std::size_t n = rows_;
  Matrix a(*this);
  RatFunc det(ring_, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r) {
      if (!a(r, c).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == n) return RatFunc(ring_);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    RatFunc p = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      RatFunc f = a(r, c) * p;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

// ---------------------------------------------------------------- sparse systems over Q

void LinearSystem::reduce(Row& row, Rational& rhs) const {
  // Eliminate pivots in increasing order; pivot rows only contain larger non-pivot columns.
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    Rational f = it->second;
    std::size_t col = it->first;
    for (const auto& [k, v] : p->second.row) {
      auto [slot, inserted] = row.emplace(k, -f * v);
      if (!inserted) {
        slot->second -= f * v;
        if (slot->second == 0 && k != col) row.erase(slot);
      }
    }
    rhs -= f * p->second.rhs;
    row.erase(col);
    it = row.upper_bound(col);
  }
}

bool LinearSystem::add(const Row& input, const Rational& rhs_in) {
  ++added_;
  Row row;
  for (const auto& [k, v] : input) {
    if (k >= n_) throw MismatchError("unknown index out of range");
    if (v != 0) row[k] = v;
  }
  Rational rhs = rhs_in;
  reduce(row, rhs);
  if (row.empty()) {
    if (rhs != 0) consistent_ = false;
    return consistent_;
  }
  std::size_t col = row.begin()->first;
  Rational inv = Rational(1) / row.begin()->second;
  for (auto& [k, v] : row) v *= inv;
  rhs *= inv;
  // Keep existing pivot rows free of the new pivot column.
  for (auto& [pc, piv] : pivots_) {
    auto hit = piv.row.find(col);
    if (hit == piv.row.end()) continue;
    Rational f = hit->second;
    for (const auto& [k, v] : row) {
      auto [slot, inserted] = piv.row.emplace(k, -f * v);
      if (!inserted) {
        slot->second -= f * v;
        if (slot->second == 0) piv.row.erase(slot);
      }
    }
    piv.rhs -= f * rhs;
  }
  pivots_.emplace(col, Pivot{std::move(row), rhs});
  return consistent_;
}

std::vector<std::size_t> LinearSystem::free_unknowns() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n_; ++k) {
    if (!pivots_.count(k)) out.push_back(k);
  }
  return out;
}

std::optional<std::vector<Rational>> LinearSystem::particular_solution() const {
  if (!consistent_) return std::nullopt;
  std::vector<Rational> x(n_);
  for (const auto& [col, piv] : pivots_) x[col] = piv.rhs;
  return x;
}

std::optional<std::vector<Rational>> LinearSystem::unique_solution() const {
  if (!consistent_ || pivots_.size() != n_) return std::nullopt;
  return particular_solution();
}

std::vector<std::vector<Rational>> LinearSystem::homogeneous_basis() const {
  std::vector<std::vector<Rational>> basis;
  for (auto f : free_unknowns()) {
    std::vector<Rational> v(n_);
    v[f] = 1;
    for (const auto& [col, piv] : pivots_) {
      auto hit = piv.row.find(f);
      if (hit != piv.row.end()) v[col] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  LinearSystem sys(cols);
  for (const auto& r : rows) {
    LinearSystem::Row row;
    for (std::size_t k = 0; k < cols && k < r.size(); ++k) {
      if (r[k] != 0) row[k] = r[k];
    }
    sys.add(row, 0);
  }
  return sys.homogeneous_basis();
}

}  // namespace nilshift
