#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilshift/symbolic/ratfunc.hpp"

namespace nilshift {

/// Dense matrix over rational functions of one ring.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static Matrix identity(RingPtr ring, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  RatFunc& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const RatFunc& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const RatFunc& c) const;
  std::vector<RatFunc> operator*(const std::vector<RatFunc>& v) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;
  Matrix transpose() const;
  /// Entrywise substitution.
  Matrix substitute(const std::map<std::size_t, RatFunc>& images) const;
  /// Applies f to every entry.
  template <class F>
  Matrix map(F&& f) const {
    Matrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
    return out;
  }

  /// Gauss-Jordan inverse; throws MathError if singular.
  Matrix inverse() const;
  RatFunc determinant() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RatFunc> data_;
};

/// Sparse linear system over Q, solved by incremental Gaussian elimination.
class LinearSystem {
 public:
  using Row = std::map<std::size_t, Rational>;

  explicit LinearSystem(std::size_t unknowns) : n_(unknowns) {}

  std::size_t unknowns() const { return n_; }
  std::size_t equations_added() const { return added_; }

  /// Adds sum(row[k] * x_k) = rhs. Returns false if the system became inconsistent.
  bool add(const Row& row, const Rational& rhs);
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Unknowns not determined by the equations so far.
  std::vector<std::size_t> free_unknowns() const;

  /// The unique solution, if the system is consistent and of full rank.
  std::optional<std::vector<Rational>> unique_solution() const;

  /// A particular solution (free unknowns set to zero), if consistent.
  std::optional<std::vector<Rational>> particular_solution() const;

  /// Basis of the solution space of the homogeneous system, one vector per free unknown.
  std::vector<std::vector<Rational>> homogeneous_basis() const;

 private:
  struct Pivot {
    Row row;  // normalized with row[pivot] = 1
    Rational rhs;
  };
  std::size_t n_;
  std::size_t added_ = 0;
  bool consistent_ = true;
  std::map<std::size_t, Pivot> pivots_;

  void reduce(Row& row, Rational& rhs) const;
};

/// Basis of the right nullspace of a dense rational matrix (rows x cols).
std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

}  // namespace nilshift
