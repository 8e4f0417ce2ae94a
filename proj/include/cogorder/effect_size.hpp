#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cogorder {

/// Cohen's d effect size held as an integer count of thousandths.
///
/// Every switching cost in the model is published to three decimals, so
/// sums stay exact and comparisons never depend on floating rounding.
class EffectSize {
 public:
  constexpr EffectSize() = default;

  static constexpr EffectSize from_milli(std::int64_t milli) { return EffectSize(milli); }

  /// Parses a decimal value. Throws DomainError when the value is negative or
  /// carries more than three fractional digits.
  static EffectSize from_decimal(double value);

  constexpr std::int64_t milli() const { return milli_; }
  constexpr double value() const { return static_cast<double>(milli_) / 1000.0; }

  /// Fixed three-decimal rendering, e.g. "0.495".
  std::string to_string() const;

  constexpr EffectSize& operator+=(EffectSize other) {
    milli_ += other.milli_;
    return *this;
  }
  friend constexpr EffectSize operator+(EffectSize a, EffectSize b) { return EffectSize(a.milli_ + b.milli_); }
  friend constexpr auto operator<=>(EffectSize, EffectSize) = default;

 private:
  constexpr explicit EffectSize(std::int64_t milli) : milli_(milli) {}
  std::int64_t milli_ = 0;
};

/// Renders an arbitrary thousandths count (possibly negative) with three decimals.
std::string format_milli(std::int64_t milli);

}  // namespace cogorder
