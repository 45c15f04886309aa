#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tsat {

/// Exact cell counts. Volumes reach 2^N, and N goes up to 1024.
using Volume = boost::multiprecision::cpp_int;

Volume powerOfTwo(std::size_t exponent);

enum class Trit : std::uint8_t { Zero = 0, One = 1, Free = 2 };

char tritChar(Trit t);
Trit oppositeTrit(Trit t);

/// A subspace of the Boolean N-cube written as a word over {0,1,x}.
/// Position i is variable v_{i+1}; the leftmost character is v_1.
///
/// Stored as two masks: `fixed` marks the positions holding 0 or 1 and
/// `value` holds their bits. Value bits outside `fixed` are always clear, so
/// structural equality is plain mask equality. Widths up to 64 fit the inline
/// word.
class TritCube {
public:
  static constexpr std::size_t kMaxWidth = 1024;
  using Words = boost::container::small_vector<std::uint64_t, 1>;

  /// All-free cube of the given width.
  explicit TritCube(std::size_t width);

  std::size_t width() const { return width_; }
  Trit get(std::size_t pos) const;
  void set(std::size_t pos, Trit t);

  bool isFixed(std::size_t pos) const;
  std::size_t fixedCount() const;
  std::size_t freeCount() const { return width_ - fixedCount(); }

  const Words &fixedMask() const { return fixed_; }
  const Words &valueMask() const { return value_; }

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const TritCube &a, const TritCube &b) {
    return a.width_ == b.width_ && a.fixed_ == b.fixed_ &&
           a.value_ == b.value_;
  }

private:
  std::size_t width_;
  Words fixed_;
  Words value_;
};

struct TritCubeHash {
  std::size_t operator()(const TritCube &c) const { return c.hash(); }
};

/// A full assignment; element i is the value of v_{i+1}.
using Assignment = std::vector<bool>;

std::string formatAssignment(const Assignment &a);
Assignment parseAssignment(std::string_view text);

/// True when the assignment is one of the cube's cells.
bool cubeContains(const TritCube &c, const Assignment &a);

TritCube parseCube(std::string_view text);
std::string formatCube(const TritCube &c);

/// 2^(number of free positions).
Volume volume(const TritCube &c);

/// False iff some position is 0 in one cube and 1 in the other.
bool overlaps(const TritCube &a, const TritCube &b);

/// Position-wise meet; empty when the cubes are disjoint.
std::optional<TritCube> intersect(const TritCube &a, const TritCube &b);

/// True when every cell of `inner` lies in `outer`.
bool contains(const TritCube &outer, const TritCube &inner);

/// Pairwise disjoint cubes covering exactly `b \ a`. Positions are scanned
/// in ascending order; at each position where `a` is fixed and `b` is free,
/// the piece with the opposite trit is emitted and the scan continues with
/// that position pinned to `a`'s trit. The final residual lies inside `a`
/// and is dropped.
std::vector<TritCube> carve(const TritCube &b, const TritCube &a);

/// Combines two cubes that differ only at one position, where one holds 0
/// and the other 1, into the cube with 'x' there.
std::optional<TritCube> tryMerge(const TritCube &a, const TritCube &b);

} // namespace tsat
