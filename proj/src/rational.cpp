#include "tverberg/rational.hpp"

#include <stdexcept>

namespace tverberg {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& text) {
  const auto bad = [&text]() {
    throw std::invalid_argument("not an exact rational: \"" + text + "\"");
  };
  std::size_t i = (!text.empty() && text[0] == '-') ? 1 : 0;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    ++i;
    ++digits;
  }
  if (digits == 0) bad();
  if (i < text.size()) {
    if (text[i] != '/') bad();
    const std::string den = text.substr(i + 1);
    if (den.empty()) bad();
    for (char c : den)
      if (c < '0' || c > '9') bad();
    if (den.find_first_not_of('0') == std::string::npos)
      throw std::invalid_argument("zero denominator: \"" + text + "\"");
  }
  Rat q(text, 10);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& value) { return value.get_str(); }

std::string point_str(const RatVec& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(p[i]);
  }
  out += ")";
  return out;
}

}  // namespace tverberg
