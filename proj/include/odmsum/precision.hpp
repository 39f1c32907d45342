#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace odmsum {

// Working precision, expressed as a decimal digit count. Anything below 30
// digits is promoted to 30 so that downstream code can rely on a sane floor.
class Precision {
 public:
  static constexpr long min_digits = 30;

  explicit Precision(long digits) : digits_(std::max(digits, min_digits)) {}

  long digits() const { return digits_; }

  // Binary precision handed to mpfr, with a few guard bits.
  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(
        std::ceil(static_cast<double>(digits_) * 3.3219280948873626) + 8);
  }

  // Default rule for order-K summation work: 4 digits per order keeps the
  // intermediate cancellation (which grows roughly like (mu_c/e)^K) far away
  // from the answer digits.
  static Precision for_order(long k) {
    return Precision(std::max<long>(64, 4 * k));
  }

  friend bool operator==(const Precision& a, const Precision& b) {
    return a.digits_ == b.digits_;
  }

 private:
  long digits_;
};

}  // namespace odmsum
