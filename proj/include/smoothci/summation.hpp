#pragma once

#include <cmath>

namespace smoothci {

//! Neumaier compensated summation. Left-to-right accumulation in plain
//! double arithmetic, so results are reproducible on any IEEE-754 target.
class CompensatedSum
{
public:
  void add(double x) noexcept
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept
  {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace smoothci
