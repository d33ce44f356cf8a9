#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "iterreg/common.hpp"

namespace iterreg {

// Unitary DFT matrix, entries exp(i*2*pi*(j-1)*(k-1)/m)/sqrt(m). Symmetric,
// so its conjugate transpose equals its elementwise conjugate. Cached per
// size; std::map nodes are stable, so returned references stay valid.
inline const CMatrix& unitary_dft_matrix(Index m) {
  require(m >= 1, "unitary_dft_matrix: size must be positive");
  static std::map<Index, std::unique_ptr<CMatrix>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it == cache.end()) {
    auto F = std::make_unique<CMatrix>(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    const double w = 2.0 * M_PI / static_cast<double>(m);
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k) {
        // reduce j*k mod m before the trig call to keep angles small
        const double phase = w * static_cast<double>((j * k) % m);
        (*F)(j, k) = std::polar(scale, phase);
      }
    it = cache.emplace(m, std::move(F)).first;
  }
  return *it->second;
}

// Two-dimensional unitary DFT of an M x N image: conj(F_M) * B * conj(F_N).
// At desk scale the matrix-product form is exact and fast enough; no FFT
// length restrictions. Reduces to the 1-D DFT when N = 1.
inline CImage dft2(const CImage& B) {
  const CMatrix& FM = unitary_dft_matrix(B.rows());
  const CMatrix& FN = unitary_dft_matrix(B.cols());
  return FM.conjugate() * B * FN.conjugate();
}

inline CImage dft2(const Image& B) { return dft2(CImage(B.cast<std::complex<double>>())); }

// Inverse of dft2: F_M * C * F_N (the DFT matrices are unitary symmetric).
inline CImage idft2(const CImage& C) {
  const CMatrix& FM = unitary_dft_matrix(C.rows());
  const CMatrix& FN = unitary_dft_matrix(C.cols());
  return FM * C * FN;
}

// True iff C is (numerically) the spectrum of a real image:
// C(j,k) == conj(C(-j mod M, -k mod N)).
inline bool is_conjugate_symmetric(const CImage& C, double tol = 1e-8) {
  const Index M = C.rows(), N = C.cols();
  const double scale = std::max(C.norm(), 1e-300);
  for (Index j = 0; j < M; ++j)
    for (Index k = 0; k < N; ++k) {
      const Index jm = (M - j) % M, km = (N - k) % N;
      if (std::abs(C(j, k) - std::conj(C(jm, km))) > tol * scale) return false;
    }
  return true;
}

// Inverse transform that demands a real result. Throws if the input is not
// conjugate-symmetric; otherwise returns the real part (the imaginary
// residue is rounding noise).
inline Image idft2_real(const CImage& C, double tol = 1e-8) {
  require(is_conjugate_symmetric(C, tol),
          "idft2_real: spectrum is not conjugate-symmetric; no real inverse exists");
  return idft2(C).real();
}

// Column-stacking vectorization and its inverse.
inline Vector vec(const Image& B) {
  return Eigen::Map<const Vector>(B.data(), B.size());
}

inline CVector vec(const CImage& B) {
  return Eigen::Map<const CVector>(B.data(), B.size());
}

inline Image unvec(const Vector& b, Index M, Index N) {
  require(b.size() == M * N, "unvec: vector length does not equal M*N");
  return Eigen::Map<const Image>(b.data(), M, N);
}

inline CImage unvec(const CVector& b, Index M, Index N) {
  require(b.size() == M * N, "unvec: vector length does not equal M*N");
  return Eigen::Map<const CImage>(b.data(), M, N);
}

}  // namespace iterreg
