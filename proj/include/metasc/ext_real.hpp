#pragma once

#include <limits>
#include <string>

namespace metasc {

/// A real number that may be +infinity. Infinity is an explicit tag, so it is
/// never written to files as a float sentinel.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  /// `num / den`, with a non-positive denominator mapping to +infinity.
  static ExtReal ratio(double num, double den) {
    if (den <= 0.0) return infinity();
    return ExtReal(num / den);
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value, or +inf as a double for arithmetic.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  /// "inf" or a round-trippable decimal.
  std::string str() const;

  friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) { return a.value() < b.value(); }
  friend constexpr bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Shortest decimal text for a double that parses back to the same value.
std::string format_real(double v);

}  // namespace metasc
