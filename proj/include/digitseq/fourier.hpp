#pragma once

// Fourier terms of truncated digital functions:
//
//   H^I_lambda(h, d) = q^-(lambda+m-1) sum_{u < q^(lambda+m-1)}
//                        e(sum_l alpha_l b_lambda(u + l d + i_l) - h u / q^(lambda+m-1))
//   G^I_lambda(h, d) = q^-lambda sum_{u < q^lambda}
//                        e(sum_l alpha_l b_lambda(q^(m-1)(u + l d) + i_l) - h u / q^lambda)
//
// All b-derived phases are integers mod m'; only the h u / q^lambda kernel is
// floating point.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "digitseq/digital_function.hpp"
#include "digitseq/index_space.hpp"
#include "digitseq/normality.hpp"

namespace digitseq {

using cplx = std::complex<double>;

/// e(num / den).
cplx unit_root(std::int64_t num, std::int64_t den);

/// Compensated (Neumaier) complex accumulator.
class ComplexSum {
 public:
  void add(cplx z);
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double x, double& sum, double& comp);
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

class FourierContext {
 public:
  /// Normalizes f. The alpha modulus must equal m'.
  FourierContext(const DigitalFunction& f, AlphaVector alpha);

  const DigitalFunction& function() const { return f_; }
  const AlphaVector& alpha() const { return alpha_; }
  const IndexSpace& space() const { return *space_; }
  int base() const { return f_.base(); }
  int window() const { return f_.window(); }
  int length() const { return alpha_.size(); }
  int modulus() const { return f_.modulus(); }
  std::int64_t step() const { return space_->step(); }

  /// b_j(n) mod m' for n < q^(j+m-1); cached, built on first use.
  /// Throws BudgetExceeded above the fourier-term cap.
  const std::vector<std::uint16_t>& b_table(int j) const;
  /// b_j(n) mod m' for any integer n (periodic reduction).
  int b_mod(int j, std::int64_t n) const;

  /// Phase numerator (mod m') of v^j(I, eps, delta).
  int v_phase(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j) const;
  cplx weight_v(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j) const;

 private:
  DigitalFunction f_;
  AlphaVector alpha_;
  std::shared_ptr<const IndexSpace> space_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const std::vector<std::uint16_t>>> tables_;
};

/// I must lie in the start-normalized set; lambda >= 0.
cplx fourier_H(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
               std::int64_t d);

/// I must lie in the index set.
cplx fourier_G(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
               std::int64_t d);

/// G through the weights: q^-lambda sum_u v^lambda(I, u, d) e(-h u / q^lambda).
cplx fourier_G_via_v(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
                     std::int64_t d);

/// (G^I_lambda(h, d))_{h < q^lambda} by a radix-q FFT.
std::vector<cplx> fourier_G_spectrum(const FourierContext& ctx, const IndexVector& I, int lambda,
                                     std::int64_t d);

/// Forward DFT X[h] = sum_u x[u] e(-h u / N) for N a power of q.
std::vector<cplx> dft_radix(const std::vector<cplx>& x, int q);

/// |sum_h |G^I_lambda(h, d)|^2 - 1|.
double parseval_residual(const FourierContext& ctx, const IndexVector& I, int lambda,
                         std::int64_t d);

/// |H^I_lambda(h, q^(m-1) d + delta) - q^-(m-1) sum_eps e(-h eps / q^(lambda+m-1)) G^J_lambda(h, d)|
/// with J = (i_l + l delta + eps); delta < q^(m-1).
double h_recursion_residual(const FourierContext& ctx, const IndexVector& I, int lambda,
                            std::int64_t h, std::int64_t d, std::int64_t delta);

/// |G^I_lambda(h, q^j d + delta) - q^-j sum_eps e(-h eps / q^lambda) v^j G^{T}_{lambda-j}(h, d)|
/// for 1 <= j <= lambda, delta < q^j.
double g_recursion_residual(const FourierContext& ctx, const IndexVector& I, int lambda, int j,
                            std::int64_t h, std::int64_t d, std::int64_t delta);

/// Phi^{I,I'}_{lambda,lambda'}(h) = q^-lambda' sum_{d < q^lambda'} G^I conj(G^I'), by direct summation.
cplx phi_bruteforce(const FourierContext& ctx, const IndexVector& I, const IndexVector& Ip,
                    int lambda, int lambda_prime, std::int64_t h);

}  // namespace digitseq
