#include "metasc/ext_real.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace metasc {

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string ExtReal::str() const { return infinite_ ? "inf" : format_real(value_); }

}  // namespace metasc
