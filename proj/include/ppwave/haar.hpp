#pragma once

// Haar wavelets phi_(j,k)(x) = 2^{j/2} psi(2^j x - k) with
// psi = 1_{(1/2;1]} - 1_{[0;1/2]}, their antiderivatives, and the dyadic
// pair cascade that sums phi_(j,k)(x - U) over all child/parent pairs.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ppwave {

struct WaveletIndex {
  int j = 0;
  long k = 0;
  friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
};

/// 2^{j/2}, the sup norm of phi_(j,k).
inline double haar_amplitude(int j) {
  return (j % 2 == 0) ? std::ldexp(1.0, j / 2) : std::ldexp(std::numbers::sqrt2, (j - 1) / 2);
}

/// Sign of psi(2^j x - k): -1 on [0;1/2], +1 on (1/2;1], 0 elsewhere.
/// 2^j x is exact, so all comparisons are against exact dyadic rationals.
inline int haar_sign(const WaveletIndex& lambda, double x) {
  const double s = std::ldexp(x, lambda.j);
  const double k = static_cast<double>(lambda.k);
  if (s < k || s > k + 1.0) return 0;
  return s <= k + 0.5 ? -1 : 1;
}

inline double haar_eval(const WaveletIndex& lambda, double x) {
  if (lambda.j < 0) throw std::invalid_argument("haar_eval: j must be >= 0");
  const int sgn = haar_sign(lambda, x);
  return sgn == 0 ? 0.0 : sgn * haar_amplitude(lambda.j);
}

/// Integral of phi_lambda over (-inf; t]: a downward tent on the support.
inline double haar_antiderivative(const WaveletIndex& lambda, double t) {
  if (lambda.j < 0) throw std::invalid_argument("haar_antiderivative: j must be >= 0");
  const double s = std::ldexp(t, lambda.j) - static_cast<double>(lambda.k);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double scale = std::ldexp(haar_amplitude(lambda.j), -lambda.j);
  return s <= 0.5 ? -scale * s : -scale * (1.0 - s);
}

/// E[phi_lambda(v - U)] for U uniform on [lo;hi].
inline double uniform_shift_mean(const WaveletIndex& lambda, double v, double lo, double hi) {
  return (haar_antiderivative(lambda, v - lo) - haar_antiderivative(lambda, v - hi)) / (hi - lo);
}

/// E[phi_lambda(v - U)] for U uniform on [0;T].
inline double uniform_shift_mean(const WaveletIndex& lambda, double v, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("uniform_shift_mean: T must be > 0");
  return uniform_shift_mean(lambda, v, 0.0, T);
}

enum class Side { two_sided, nonneg };

inline constexpr std::string_view to_string(Side s) {
  return s == Side::two_sided ? "two_sided" : "nonneg";
}

/// The finite test family: levels 0..j0 with k in {-2^j..2^j-1} (two_sided)
/// or {0..2^j-1} (nonneg). Indices are ordered by j, then k.
class IndexSet {
 public:
  IndexSet(int j0, Side side) : j0_(j0), side_(side) {
    if (j0 < 0 || j0 > 20) throw std::invalid_argument("IndexSet: j0 out of range");
    for (int j = 0; j <= j0; ++j) {
      offsets_.push_back(indices_.size());
      for (long k = k_min(j); k <= k_max(j); ++k) indices_.push_back({j, k});
    }
  }

  int j0() const noexcept { return j0_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const WaveletIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<WaveletIndex>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  long k_min(int j) const noexcept { return side_ == Side::two_sided ? -(1L << j) : 0L; }
  long k_max(int j) const noexcept { return (1L << j) - 1; }
  /// |K_j| for this side.
  long level_size(int j) const noexcept { return k_max(j) - k_min(j) + 1; }

  bool contains(const WaveletIndex& l) const noexcept {
    return l.j >= 0 && l.j <= j0_ && l.k >= k_min(l.j) && l.k <= k_max(l.j);
  }
  std::size_t position(const WaveletIndex& l) const {
    if (!contains(l)) throw std::out_of_range("IndexSet: index not in family");
    return offsets_[static_cast<std::size_t>(l.j)] + static_cast<std::size_t>(l.k - k_min(l.j));
  }

 private:
  int j0_;
  Side side_;
  std::vector<WaveletIndex> indices_;
  std::vector<std::size_t> offsets_;
};

/// S_lambda = sum over children x and parents U of phi_lambda(x - U), kept as
/// the exact integer net count (#positive-half pairs - #negative-half pairs);
/// S_lambda = 2^{j/2} * net[lambda].
struct PairSumField {
  std::vector<std::int64_t> net;

  double sum(const IndexSet& idx, std::size_t pos) const {
    return haar_amplitude(idx[pos].j) * static_cast<double>(net[pos]);
  }
};

/// Reusable workspace for the pair cascade. Pair differences in [-1;1] are
/// binned at resolution 2^{-(j0+1)}; a bottom-up pyramid over the bin counts
/// yields every net count. Differences landing exactly on a bin edge are
/// classified individually with haar_sign, so both code paths follow the
/// same half-open convention.
class PairCascade {
 public:
  explicit PairCascade(const IndexSet& idx)
      : idx_(&idx),
        finest_(idx.j0() + 1),
        levels_(static_cast<std::size_t>(finest_) + 1) {
    for (int l = 0; l <= finest_; ++l)
      levels_[static_cast<std::size_t>(l)].assign(std::size_t{1} << (l + 1), 0);
  }

  const IndexSet& index_set() const noexcept { return *idx_; }

  /// Both spans must be sorted ascending. Writes |idx| net counts into `net`.
  void compute(std::span<const double> children, std::span<const double> parents,
               std::span<std::int64_t> net) {
    assert(net.size() == idx_->size());
    auto& finest = levels_[static_cast<std::size_t>(finest_)];
    std::fill(finest.begin(), finest.end(), 0);
    boundary_.clear();

    const double half_bins = std::ldexp(1.0, finest_);
    const std::size_t np = parents.size();
    std::size_t lo = 0;
    for (double x : children) {
      while (lo < np && x - parents[lo] > 1.0) ++lo;
      for (std::size_t i = lo; i < np; ++i) {
        const double y = x - parents[i];
        if (y < -1.0) break;
        const double t = std::ldexp(y, finest_);
        const double ft = std::floor(t);
        if (ft == t) {
          boundary_.push_back(y);
        } else {
          finest[static_cast<std::size_t>(ft + half_bins)] += 1;
        }
      }
    }

    for (int l = finest_ - 1; l >= 0; --l) {
      auto& dst = levels_[static_cast<std::size_t>(l)];
      const auto& src = levels_[static_cast<std::size_t>(l) + 1];
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[2 * i] + src[2 * i + 1];
    }

    // Interval i at level l covers [-1 + i 2^{-l}; -1 + (i+1) 2^{-l}].
    for (std::size_t p = 0; p < idx_->size(); ++p) {
      const auto& lam = (*idx_)[p];
      const auto& halves = levels_[static_cast<std::size_t>(lam.j) + 1];
      const auto i = static_cast<std::size_t>(lam.k + (1L << lam.j));
      std::int64_t c = halves[2 * i + 1] - halves[2 * i];
      for (double y : boundary_) c += haar_sign(lam, y);
      net[p] = c;
    }
  }

 private:
  const IndexSet* idx_;
  int finest_;
  std::vector<std::vector<std::int64_t>> levels_;
  std::vector<double> boundary_;
};

/// Net counts for all lambda in `idx`; both spans sorted ascending.
inline PairSumField pair_cascade(std::span<const double> children,
                                 std::span<const double> parents, const IndexSet& idx) {
  PairCascade cascade(idx);
  PairSumField field;
  field.net.resize(idx.size());
  cascade.compute(children, parents, field.net);
  return field;
}

}  // namespace ppwave
