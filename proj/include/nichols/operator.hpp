#pragma once

#include <nichols/linalg.hpp>
#include <nichols/tensor.hpp>

#include <functional>
#include <stdexcept>
#include <vector>

namespace nichols {

// Linear endomorphism of V^{⊗n}; matrix rows are output words, columns input words.
class GradedOperator {
 public:
  GradedOperator() = default;
  GradedOperator(std::size_t dim, std::size_t degree, SparseMatrix m) : dim_(dim), degree_(degree), m_(std::move(m)) {
    WordIndex n = ipow(dim, degree);
    if (m_.rows() != n || m_.cols() != n) throw std::invalid_argument("operator matrix has the wrong size");
  }

  static GradedOperator identity(std::size_t dim, std::size_t degree) {
    return {dim, degree, SparseMatrix::identity(ipow(dim, degree))};
  }

  // Column w is image(basis word w).
  static GradedOperator from_images(std::size_t dim, std::size_t degree,
                                    const std::function<TensorVector(WordIndex)>& image) {
    WordIndex n = ipow(dim, degree);
    std::vector<SparseRow> cols(n);
    for (WordIndex w = 0; w < n; ++w) cols[w] = image(w).to_sparse();
    return {dim, degree, SparseMatrix::from_columns(n, cols)};
  }

  static GradedOperator from_columns(std::size_t dim, std::size_t degree, const std::vector<SparseRow>& cols) {
    return {dim, degree, SparseMatrix::from_columns(ipow(dim, degree), cols)};
  }

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const SparseMatrix& matrix() const { return m_; }

  TensorVector apply(const TensorVector& x) const {
    if (x.dim() != dim_ || x.degree() != degree_) throw std::invalid_argument("operator applied to a vector of the wrong degree");
    return TensorVector::from_sparse(dim_, degree_, m_.apply(x.to_sparse()));
  }

  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    a.check(b);
    return {a.dim_, a.degree_, a.m_ * b.m_};
  }
  friend GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) {
    a.check(b);
    return {a.dim_, a.degree_, a.m_ + b.m_};
  }
  friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) {
    a.check(b);
    return {a.dim_, a.degree_, a.m_ - b.m_};
  }
  friend GradedOperator operator*(const Scalar& s, const GradedOperator& a) { return {a.dim_, a.degree_, s * a.m_}; }

  bool operator==(const GradedOperator& o) const { return dim_ == o.dim_ && degree_ == o.degree_ && m_ == o.m_; }

 private:
  void check(const GradedOperator& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw std::invalid_argument("operator degree mismatch");
  }

  std::size_t dim_ = 1, degree_ = 0;
  SparseMatrix m_ = SparseMatrix::identity(1);
};

}  // namespace nichols
