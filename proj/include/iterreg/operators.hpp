#pragma once

#include <Eigen/SVD>
#include <algorithm>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "iterreg/common.hpp"
#include "iterreg/fourier.hpp"

namespace iterreg {

// Matrix-free linear map with forward and adjoint application. Operators are
// immutable after construction and safe to share across threads.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;

  Index rows() const { return m_; }
  Index cols() const { return n_; }

  Vector apply(const Vector& x) const {
    require(x.size() == n_, "apply: expected length " + std::to_string(n_) +
                                ", got " + std::to_string(x.size()));
    return do_apply(x);
  }

  Vector apply_adjoint(const Vector& y) const {
    require(y.size() == m_, "apply_adjoint: expected length " + std::to_string(m_) +
                                ", got " + std::to_string(y.size()));
    return do_apply_adjoint(y);
  }

protected:
  LinearOperator(Index m, Index n) : m_(m), n_(n) {
    require(m >= 1 && n >= 1, "operator dimensions must be positive");
  }

  virtual Vector do_apply(const Vector& x) const = 0;
  virtual Vector do_apply_adjoint(const Vector& y) const = 0;

private:
  Index m_, n_;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator final : public LinearOperator {
public:
  explicit DenseOperator(Matrix A) : LinearOperator(A.rows(), A.cols()), A_(std::move(A)) {}

  const Matrix& matrix() const { return A_; }

protected:
  Vector do_apply(const Vector& x) const override { return A_ * x; }
  Vector do_apply_adjoint(const Vector& y) const override { return A_.transpose() * y; }

private:
  Matrix A_;
};

// A1 (N x N) (x) A2 (M x M), applied to column-stacked M x N images:
// (A1 (x) A2) vec(X) = vec(A2 * X * A1^T).
class KroneckerOperator final : public LinearOperator {
public:
  KroneckerOperator(Matrix A1, Matrix A2)
      : LinearOperator(A1.rows() * A2.rows(), A1.cols() * A2.cols()),
        A1_(std::move(A1)),
        A2_(std::move(A2)) {
    require(A1_.rows() == A1_.cols() && A2_.rows() == A2_.cols(),
            "KroneckerOperator: factors must be square");
  }

  const Matrix& factor1() const { return A1_; }
  const Matrix& factor2() const { return A2_; }
  Index image_rows() const { return A2_.rows(); }
  Index image_cols() const { return A1_.rows(); }

protected:
  Vector do_apply(const Vector& x) const override {
    Image X = unvec(x, A2_.rows(), A1_.rows());
    return vec(Image(A2_ * X * A1_.transpose()));
  }
  Vector do_apply_adjoint(const Vector& y) const override {
    Image Y = unvec(y, A2_.rows(), A1_.rows());
    return vec(Image(A2_.transpose() * Y * A1_));
  }

private:
  Matrix A1_, A2_;
};

enum class Boundary { zero, periodic };

// 2-D convolution blur on M x N images. The PSF center sits at
// (rows/2, cols/2), integer division. Zero boundary pads with zeros;
// periodic boundary gives circular convolution, which the unitary DFT
// diagonalizes (see transfer_function).
class Blur2dOperator final : public LinearOperator {
public:
  Blur2dOperator(Image psf, Index M, Index N, Boundary boundary)
      : LinearOperator(M * N, M * N),
        psf_(std::move(psf)),
        M_(M),
        N_(N),
        boundary_(boundary) {
    require(psf_.size() > 0, "Blur2dOperator: empty PSF");
    require(psf_.rows() <= M && psf_.cols() <= N,
            "Blur2dOperator: PSF larger than image");
  }

  const Image& psf() const { return psf_; }
  Index image_rows() const { return M_; }
  Index image_cols() const { return N_; }
  Boundary boundary() const { return boundary_; }

  // Pointwise multipliers diagonalizing the periodic operator:
  // dft2(A x) = transfer .* dft2(x).
  CImage transfer_function() const {
    require(boundary_ == Boundary::periodic,
            "transfer_function: only the periodic operator is DFT-diagonal");
    Image embedded = Image::Zero(M_, N_);
    const Index cr = psf_.rows() / 2, cc = psf_.cols() / 2;
    for (Index a = 0; a < psf_.rows(); ++a)
      for (Index b = 0; b < psf_.cols(); ++b) {
        const Index i = ((a - cr) % M_ + M_) % M_;
        const Index j = ((b - cc) % N_ + N_) % N_;
        embedded(i, j) += psf_(a, b);
      }
    return std::sqrt(static_cast<double>(M_ * N_)) * dft2(embedded);
  }

protected:
  Vector do_apply(const Vector& x) const override { return convolve(x, false); }
  Vector do_apply_adjoint(const Vector& y) const override { return convolve(y, true); }

private:
  Vector convolve(const Vector& v, bool adjoint) const {
    const Image X = unvec(v, M_, N_);
    Image Y = Image::Zero(M_, N_);
    const Index cr = psf_.rows() / 2, cc = psf_.cols() / 2;
    for (Index i = 0; i < M_; ++i)
      for (Index j = 0; j < N_; ++j) {
        double acc = 0.0;
        for (Index a = 0; a < psf_.rows(); ++a)
          for (Index b = 0; b < psf_.cols(); ++b) {
            // forward: y(i,j) += h(a,b) x(i-(a-cr), j-(b-cc))
            // adjoint: y(i,j) += h(a,b) x(i+(a-cr), j+(b-cc))
            Index si = adjoint ? i + (a - cr) : i - (a - cr);
            Index sj = adjoint ? j + (b - cc) : j - (b - cc);
            if (boundary_ == Boundary::periodic) {
              si = (si % M_ + M_) % M_;
              sj = (sj % N_ + N_) % N_;
            } else if (si < 0 || si >= M_ || sj < 0 || sj >= N_) {
              continue;
            }
            acc += psf_(a, b) * X(si, sj);
          }
        Y(i, j) = acc;
      }
    return vec(Y);
  }

  Image psf_;
  Index M_, N_;
  Boundary boundary_;
};

struct SvdTriple {
  Matrix U;  // columns orthonormal
  Vector S;  // nonincreasing
  Matrix V;  // columns orthonormal
};

inline SvdTriple svd_dense(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

// SVD of A1 (x) A2 assembled from the factor SVDs. Singular values are the
// sorted products sigma1_i * sigma2_j; the MN x MN singular-vector matrices
// are never materialized. Ties break by ascending original Kronecker column
// index i*M + j, which makes the permutation deterministic.
class KroneckerSvd {
public:
  KroneckerSvd(const Matrix& A1, const Matrix& A2) {
    require(A1.rows() == A1.cols() && A2.rows() == A2.cols(),
            "kron_svd: factors must be square");
    N_ = A1.rows();
    M_ = A2.rows();
    Eigen::JacobiSVD<Matrix> s1(A1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::JacobiSVD<Matrix> s2(A2, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U1_ = s1.matrixU();
    V1_ = s1.matrixV();
    U2_ = s2.matrixU();
    V2_ = s2.matrixV();
    const Vector& sig1 = s1.singularValues();
    const Vector& sig2 = s2.singularValues();

    const Index mn = M_ * N_;
    perm_.resize(mn);
    std::iota(perm_.begin(), perm_.end(), Index{0});
    Vector prod(mn);
    for (Index i = 0; i < N_; ++i)
      for (Index j = 0; j < M_; ++j) prod(i * M_ + j) = sig1(i) * sig2(j);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&](Index a, Index b) { return prod(a) > prod(b); });
    S_.resize(mn);
    for (Index r = 0; r < mn; ++r) S_(r) = prod(perm_[r]);
  }

  const Vector& singular_values() const { return S_; }

  // Factor indices (i into A1's SVD, j into A2's) of the r-th sorted value.
  std::pair<Index, Index> factor_indices(Index r) const {
    return {perm_[r] / M_, perm_[r] % M_};
  }

  Vector left_vector(Index r) const { return kron_column(U1_, U2_, r); }
  Vector right_vector(Index r) const { return kron_column(V1_, V2_, r); }

  Index size() const { return S_.size(); }

private:
  Vector kron_column(const Matrix& X1, const Matrix& X2, Index r) const {
    const auto [i, j] = factor_indices(r);
    Vector out(M_ * N_);
    for (Index a = 0; a < N_; ++a)
      out.segment(a * M_, M_) = X1(a, i) * X2.col(j);
    return out;
  }

  Index M_, N_;
  Matrix U1_, V1_, U2_, V2_;
  Vector S_;
  std::vector<Index> perm_;
};

inline KroneckerSvd kron_svd(const Matrix& A1, const Matrix& A2) {
  return KroneckerSvd(A1, A2);
}

}  // namespace iterreg
