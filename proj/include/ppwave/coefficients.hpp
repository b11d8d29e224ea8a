#pragma once

// Unbiased Haar coefficient estimators of the reproduction function:
//
//   beta_hat = (1/n) * [ S_lambda - (n-1) * sum_x E_U phi_lambda(x - U) ],
//
// where S_lambda is the child/parent pair sum, n the parent count and U is
// uniform on the parent window.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ppwave/haar.hpp"
#include "ppwave/process_core.hpp"

namespace ppwave {

class NoParentsError : public std::runtime_error {
 public:
  NoParentsError() : std::runtime_error("coefficient estimate undefined: no parents") {}
};

struct CoefficientField {
  IndexSet index_set;
  std::vector<double> beta_hat;
  std::vector<double> t_stat;
};

/// Evaluates beta_hat for many child samples against fixed parents.
/// Holds the cascade workspace; not thread-safe, make one per thread.
class CoefficientEstimator {
 public:
  CoefficientEstimator(const EventTrain& parents, const IndexSet& idx)
      : parents_(parents.times()),
        lo_(parents.window().lo),
        hi_(parents.window().hi),
        idx_(idx),
        cascade_(idx_),
        net_(idx_.size()),
        correction_(idx_.size()) {
    if (parents_.empty()) throw NoParentsError();
    for (const auto& lam : idx_) amplitude_.push_back(haar_amplitude(lam.j));
  }

  CoefficientEstimator(const CoefficientEstimator&) = delete;
  CoefficientEstimator& operator=(const CoefficientEstimator&) = delete;

  const IndexSet& index_set() const noexcept { return idx_; }
  std::size_t parent_count() const noexcept { return parents_.size(); }

  /// `children` sorted ascending; writes beta_hat for every lambda.
  void estimate(std::span<const double> children, std::span<double> beta) {
    cascade_.compute(children, parents_, net_);
    std::fill(correction_.begin(), correction_.end(), 0.0);
    for (double x : children) {
      // phi_lambda(x - .) is supported in [x-1; x+1]; it integrates to zero
      // when that interval is inside the parent window, and vanishes on the
      // window when the interval is outside it.
      const double a = x - 1.0, b = x + 1.0;
      if ((a >= lo_ && b <= hi_) || b < lo_ || a > hi_) continue;
      for (std::size_t p = 0; p < idx_.size(); ++p)
        correction_[p] += uniform_shift_mean(idx_[p], x, lo_, hi_);
    }
    const double n = static_cast<double>(parents_.size());
    for (std::size_t p = 0; p < idx_.size(); ++p) {
      const double pair_sum = amplitude_[p] * static_cast<double>(net_[p]);
      beta[p] = (pair_sum - (n - 1.0) * correction_[p]) / n;
    }
  }

 private:
  std::vector<double> parents_;
  double lo_, hi_;
  IndexSet idx_;
  PairCascade cascade_;
  std::vector<std::int64_t> net_;
  std::vector<double> correction_;
  std::vector<double> amplitude_;
};

/// beta_hat and T_hat = |beta_hat| for every lambda in `idx`. The parents'
/// window is taken as the support of the uniform law in the correction term.
inline CoefficientField estimate_coefficients(const EventTrain& parents,
                                              const EventTrain& children,
                                              const IndexSet& idx) {
  CoefficientEstimator est(parents, idx);
  CoefficientField f{idx, std::vector<double>(idx.size()), std::vector<double>(idx.size())};
  est.estimate(children.times(), f.beta_hat);
  for (std::size_t p = 0; p < idx.size(); ++p) f.t_stat[p] = std::abs(f.beta_hat[p]);
  return f;
}

}  // namespace ppwave
