#include "tsat/cube.h"

#include <bit>
#include <functional>

#include "tsat/error.h"

namespace tsat {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t wordCount(std::size_t width) {
  return (width + kWordBits - 1) / kWordBits;
}

void requireSameWidth(const TritCube &a, const TritCube &b) {
  if (a.width() != b.width())
    throw Error(ErrorKind::WidthMismatch,
                "cube widths " + std::to_string(a.width()) + " and " +
                    std::to_string(b.width()) + " differ");
}

} // namespace

Volume powerOfTwo(std::size_t exponent) {
  Volume v = 1;
  v <<= exponent;
  return v;
}

char tritChar(Trit t) {
  switch (t) {
  case Trit::Zero: return '0';
  case Trit::One: return '1';
  case Trit::Free: return 'x';
  }
  return '?';
}

Trit oppositeTrit(Trit t) {
  switch (t) {
  case Trit::Zero: return Trit::One;
  case Trit::One: return Trit::Zero;
  case Trit::Free: return Trit::Free;
  }
  return Trit::Free;
}

TritCube::TritCube(std::size_t width)
    : width_(width), fixed_(wordCount(width), 0), value_(wordCount(width), 0) {
  if (width == 0)
    throw Error(ErrorKind::EmptyInput, "cube width must be positive");
  if (width > kMaxWidth)
    throw Error(ErrorKind::WidthTooLarge,
                "cube width " + std::to_string(width) + " exceeds " +
                    std::to_string(kMaxWidth));
}

Trit TritCube::get(std::size_t pos) const {
  const std::uint64_t bit = std::uint64_t{1} << (pos % kWordBits);
  const std::size_t w = pos / kWordBits;
  if (!(fixed_[w] & bit))
    return Trit::Free;
  return (value_[w] & bit) ? Trit::One : Trit::Zero;
}

void TritCube::set(std::size_t pos, Trit t) {
  const std::uint64_t bit = std::uint64_t{1} << (pos % kWordBits);
  const std::size_t w = pos / kWordBits;
  switch (t) {
  case Trit::Free:
    fixed_[w] &= ~bit;
    value_[w] &= ~bit;
    break;
  case Trit::Zero:
    fixed_[w] |= bit;
    value_[w] &= ~bit;
    break;
  case Trit::One:
    fixed_[w] |= bit;
    value_[w] |= bit;
    break;
  }
}

bool TritCube::isFixed(std::size_t pos) const {
  return (fixed_[pos / kWordBits] >> (pos % kWordBits)) & 1u;
}

std::size_t TritCube::fixedCount() const {
  std::size_t n = 0;
  for (std::uint64_t w : fixed_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string TritCube::str() const {
  std::string s(width_, 'x');
  for (std::size_t i = 0; i < width_; ++i)
    s[i] = tritChar(get(i));
  return s;
}

std::size_t TritCube::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ width_;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    mix(fixed_[i]);
    mix(value_[i]);
  }
  return static_cast<std::size_t>(h);
}

TritCube parseCube(std::string_view text) {
  if (text.empty())
    throw Error(ErrorKind::EmptyInput, "empty cube text");
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch != '0' && ch != '1' && ch != 'x')
      throw Error(ErrorKind::InvalidCharacter,
                  "unexpected character '" + std::string(1, ch) +
                      "' at position " + std::to_string(i),
                  static_cast<std::ptrdiff_t>(i));
  }
  TritCube c(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '0')
      c.set(i, Trit::Zero);
    else if (text[i] == '1')
      c.set(i, Trit::One);
  }
  return c;
}

std::string formatCube(const TritCube &c) { return c.str(); }

std::string formatAssignment(const Assignment &a) {
  std::string s(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      s[i] = '1';
  return s;
}

Assignment parseAssignment(std::string_view text) {
  Assignment a(text.size(), false);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw Error(ErrorKind::InvalidCharacter,
                  "assignment characters must be 0 or 1",
                  static_cast<std::ptrdiff_t>(i));
    a[i] = text[i] == '1';
  }
  return a;
}

bool cubeContains(const TritCube &c, const Assignment &a) {
  if (a.size() != c.width())
    throw Error(ErrorKind::WidthMismatch, "assignment width differs from cube");
  for (std::size_t i = 0; i < a.size(); ++i) {
    Trit t = c.get(i);
    if (t != Trit::Free && (t == Trit::One) != a[i])
      return false;
  }
  return true;
}

Volume volume(const TritCube &c) { return powerOfTwo(c.freeCount()); }

bool overlaps(const TritCube &a, const TritCube &b) {
  requireSameWidth(a, b);
  const auto &fa = a.fixedMask(), &fb = b.fixedMask();
  const auto &va = a.valueMask(), &vb = b.valueMask();
  for (std::size_t i = 0; i < fa.size(); ++i)
    if ((fa[i] & fb[i]) & (va[i] ^ vb[i]))
      return false;
  return true;
}

std::optional<TritCube> intersect(const TritCube &a, const TritCube &b) {
  if (!overlaps(a, b))
    return std::nullopt;
  TritCube r(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    Trit ta = a.get(i);
    r.set(i, ta == Trit::Free ? b.get(i) : ta);
  }
  return r;
}

bool contains(const TritCube &outer, const TritCube &inner) {
  requireSameWidth(outer, inner);
  const auto &fo = outer.fixedMask(), &fi = inner.fixedMask();
  const auto &vo = outer.valueMask(), &vi = inner.valueMask();
  for (std::size_t i = 0; i < fo.size(); ++i) {
    if (fo[i] & ~fi[i])
      return false;
    if ((vo[i] ^ vi[i]) & fo[i])
      return false;
  }
  return true;
}

std::vector<TritCube> carve(const TritCube &b, const TritCube &a) {
  if (!overlaps(b, a))
    return {b};
  std::vector<TritCube> pieces;
  TritCube rest = b;
  for (std::size_t i = 0; i < a.width(); ++i) {
    Trit ta = a.get(i);
    if (ta == Trit::Free || rest.get(i) != Trit::Free)
      continue;
    TritCube piece = rest;
    piece.set(i, oppositeTrit(ta));
    pieces.push_back(std::move(piece));
    rest.set(i, ta);
  }
  return pieces;
}

std::optional<TritCube> tryMerge(const TritCube &a, const TritCube &b) {
  requireSameWidth(a, b);
  if (a.fixedMask() != b.fixedMask())
    return std::nullopt;
  std::size_t differing = 0;
  std::size_t where = 0;
  const auto &va = a.valueMask(), &vb = b.valueMask();
  for (std::size_t w = 0; w < va.size(); ++w) {
    std::uint64_t diff = va[w] ^ vb[w];
    differing += static_cast<std::size_t>(std::popcount(diff));
    if (diff)
      where = w * kWordBits + static_cast<std::size_t>(std::countr_zero(diff));
  }
  if (differing != 1)
    return std::nullopt;
  TritCube m = a;
  m.set(where, Trit::Free);
  return m;
}

} // namespace tsat
