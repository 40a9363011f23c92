#ifndef FUZZY_POTTS_NUMERIC_HPP
#define FUZZY_POTTS_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fuzzy_potts {

// Streaming log-sum-exp: log(sum_i exp(a_i)) with running max-shift, so terms
// spanning hundreds of orders of magnitude accumulate without overflow.
class LogSumExp {
 public:
  void add(double log_term) {
    if (std::isinf(log_term) && log_term < 0) return;  // exp(-inf) == 0
    if (count_ == 0 || log_term > max_) {
      sum_ = (count_ == 0) ? 1.0 : sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      sum_ += std::exp(log_term - max_);
    }
    ++count_;
  }
  double value() const {
    if (count_ == 0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }
  std::int64_t count() const { return count_; }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::int64_t count_ = 0;
};

// log n! for n = 0..n_max, built once and indexed.
inline std::vector<double> log_factorial_table(std::int64_t n_max) {
  std::vector<double> t(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::int64_t n = 2; n <= n_max; ++n)
    t[static_cast<std::size_t>(n)] =
        t[static_cast<std::size_t>(n - 1)] + std::log(static_cast<double>(n));
  return t;
}

// Advances k to the next composition of sum(k) into k.size() parts.
// Starting from (M, 0, ..., 0) this visits every composition exactly once,
// ending at (0, ..., 0, M). Returns false once the last one has been seen.
inline bool next_composition(std::vector<std::int64_t>& k) {
  const std::size_t r = k.size();
  if (r <= 1) return false;
  if (k[0] > 0) {
    --k[0];
    ++k[1];
    return true;
  }
  for (std::size_t i = 1; i + 1 < r; ++i) {
    if (k[i] > 0) {
      k[0] = k[i] - 1;
      k[i] = 0;
      ++k[i + 1];
      return true;
    }
  }
  return false;
}

// Number of compositions of m into r parts, C(m+r-1, r-1), computed in
// floating point (only used for enumeration-cap checks).
inline double composition_count(std::int64_t m, int r) {
  double c = 1.0;
  for (int i = 1; i < r; ++i) c *= static_cast<double>(m + i) / i;
  return c;
}

inline bool nearly_equal(double a, double b, double rel_tol,
                         double abs_tol = 0.0) {
  const double diff = std::fabs(a - b);
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return diff <= std::max(abs_tol, rel_tol * scale);
}

}  // namespace fuzzy_potts

#endif
