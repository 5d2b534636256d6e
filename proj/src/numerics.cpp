#include "pradar/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pradar::numerics {

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Rotate the largest component onto the positive real axis so the returned
// eigenvector is unique up to the eigenspace itself.
void canonicalize_phase(ComplexVector& v) {
  Eigen::Index imax = 0;
  double amax = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  if (amax > 0.0) v *= std::conj(v(imax)) / amax;
}

}  // namespace

EigenPair top_hermitian_eigenpair(const ComplexMatrix& h, double tol,
                                  int max_iter) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("top_hermitian_eigenpair: matrix not square");
  const Eigen::Index n = h.rows();
  if (n == 0)
    throw std::invalid_argument("top_hermitian_eigenpair: empty matrix");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(
        "top_hermitian_eigenpair: matrix not Hermitian within 1e-10");

  ComplexVector v = ComplexVector::Constant(n, Complex(1.0, 0.0));
  v /= v.norm();

  if (h.norm() <= tol) return {0.0, v, 0};

  double best_residual = std::numeric_limits<double>::infinity();
  double residual_at_check = best_residual;
  double lambda = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    ComplexVector w = h * v;
    lambda = std::real(v.dot(w));  // Rayleigh quotient; real for Hermitian h
    const double residual = (w - lambda * v).norm();
    if (residual <= tol * std::max(lambda, tol)) {
      canonicalize_phase(v);
      return {lambda, v, iter};
    }
    best_residual = std::min(best_residual, residual);
    const double wn = w.norm();
    if (wn == 0.0) {  // v is in the kernel; lambda = 0 handled above
      canonicalize_phase(v);
      return {0.0, v, iter};
    }
    v = w / wn;
    // Deterministic kick when the residual stalls (near-degenerate top pair).
    if (iter % 128 == 0) {
      if (residual > 0.9 * residual_at_check) {
        for (Eigen::Index i = 0; i < n; ++i)
          v(i) += Complex(1e-3 * std::cos(0.7 * static_cast<double>(i) + iter),
                          1e-3 * std::sin(1.3 * static_cast<double>(i)));
        v /= v.norm();
      }
      residual_at_check = residual;
    }
  }
  std::ostringstream msg;
  msg << "top_hermitian_eigenpair: no convergence after " << max_iter
      << " iterations (best residual " << best_residual << ")";
  throw std::runtime_error(msg.str());
}

}  // namespace pradar::numerics
