#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tsat/cube.h"

namespace tsat {

struct TrieOps;

struct SizeMetrics {
  /// Nodes below the root (the root itself is not counted).
  std::size_t nodeCount = 0;
  /// Nodes at depth N.
  std::size_t leafCount = 0;
  /// Characters of `serialize()`, separators included.
  std::size_t serializedLength = 0;

  friend bool operator==(const SizeMetrics &, const SizeMetrics &) = default;
};

/// Sorted binary trie over trit paths holding a union of cubes.
///
/// A node at depth d branches on v_{d+1}. The trie is kept canonical after
/// every insertion:
///  - a node with an 'x' child has no '0' or '1' child;
///  - no node has '0' and '1' children with identical subtrees (such pairs
///    are folded into an 'x' child);
///  - every root-to-leaf path has length N.
/// Canonical form is unique for a given cell set, so two tries holding the
/// same cells compare equal regardless of insertion order.
class SubspaceTrie {
public:
  explicit SubspaceTrie(std::size_t width);
  ~SubspaceTrie();

  SubspaceTrie(const SubspaceTrie &other);
  SubspaceTrie &operator=(const SubspaceTrie &other);
  SubspaceTrie(SubspaceTrie &&other) noexcept;
  SubspaceTrie &operator=(SubspaceTrie &&other) noexcept;

  std::size_t width() const { return width_; }

  /// Adds the cells of `c`. Throws WidthMismatch before touching the trie.
  void insert(const TritCube &c);

  bool isEmpty() const;
  /// True iff every cell is covered; O(N) along the all-'x' path.
  bool isFull() const;

  Volume occupiedVolume() const;
  Volume solutionCount() const { return powerOfTwo(width_) - occupiedVolume(); }

  std::size_t nodeCount() const;
  std::size_t leafCount() const;
  std::size_t serializedLength() const;
  SizeMetrics sizeMetrics() const;

  /// Leaf cubes in sorted order ('0' before '1'; 'x' children stand alone).
  std::vector<TritCube> leaves() const;

  /// Pipe-compressed text: the first leaf in full, then for each following
  /// leaf the suffix starting where it diverges from the previous one.
  std::string serialize() const;
  static SubspaceTrie deserialize(std::string_view text, std::size_t width);

  /// Cells not covered by the trie, in lexicographic order (v_1 first), at
  /// most `limit` of them.
  std::vector<Assignment> enumerateSolutions(std::size_t limit) const;

  bool covers(const Assignment &a) const;

  /// Re-derives every structural invariant and cached statistic.
  bool checkCanonical() const;

  friend bool operator==(const SubspaceTrie &a, const SubspaceTrie &b);

private:
  friend struct TrieOps;
  struct Node;

  std::size_t width_;
  std::unique_ptr<Node> root_;
};

} // namespace tsat
