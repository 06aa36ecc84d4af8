#include "sdr/rational.hpp"

#include <stdexcept>

#include "sdr/errors.hpp"

namespace sdr {

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + text + "'");
      return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(BigInt(text));
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty()) return Rat(BigInt(whole));
    bool neg = !whole.empty() && whole[0] == '-';
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = whole.empty() || whole == "-" || whole == "+" ? BigInt(0) : BigInt(whole);
    BigInt f(frac);
    BigInt num = w * scale;
    if (neg)
      num -= f;
    else
      num += f;
    return Rat(num, scale);
  } catch (const std::exception& e) {
    throw ParseError("bad rational literal '" + text + "': " + e.what());
  }
}

std::string format_rational(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace sdr
