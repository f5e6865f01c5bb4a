#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace fsmooth::detail {

// Neumaier-compensated accumulator. Compensation removes most rounding noise
// but the exact bit pattern still depends on the order terms arrive in, so
// estimator sums must feed it in the canonical (stored-row) order.
class CompensatedSum {
public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Runs body(i) for i in [0, count). Static index striping: each index owns its
// output slot, so results are identical for every thread count.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

// threads <= 0 means hardware concurrency.
int resolve_threads(int threads) noexcept;

}  // namespace fsmooth::detail
