#include "cogorder/effect_size.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cogorder/error.hpp"

namespace cogorder {

EffectSize EffectSize::from_decimal(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream os;
    os << "effect size must be a nonnegative number, got " << value;
    throw DomainError(os.str());
  }
  const double scaled = value * 1000.0;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-6) {
    std::ostringstream os;
    os << "effect size " << value << " has more than three fractional digits";
    throw DomainError(os.str());
  }
  return EffectSize(static_cast<std::int64_t>(rounded));
}

std::string format_milli(std::int64_t milli) {
  const bool negative = milli < 0;
  const std::int64_t mag = negative ? -milli : milli;
  std::string frac = std::to_string(mag % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(mag / 1000) + "." + frac;
}

std::string EffectSize::to_string() const { return format_milli(milli_); }

}  // namespace cogorder
