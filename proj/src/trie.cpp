#include "tsat/trie.h"

#include <algorithm>

#include "tsat/error.h"

namespace tsat {

struct SubspaceTrie::Node {
  std::unique_ptr<Node> zero;
  std::unique_ptr<Node> one;
  std::unique_ptr<Node> free;

  // Cached over the subtree; refreshed bottom-up by `refresh`.
  std::size_t nodes = 0; // descendants, this node excluded
  std::size_t leaves = 0;
  std::uint64_t fingerprint = 0;
  bool full = false;

  bool hasChildren() const { return zero || one || free; }
};

struct TrieOps {
  using Node = SubspaceTrie::Node;
  using NodePtr = std::unique_ptr<Node>;

  static constexpr std::uint64_t kLeafPrint = 0x51ed270b27a1f4c3ull;

  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
    h *= 0xff51afd7ed558ccdull;
    return h ^ (h >> 29);
  }

  struct Stats {
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    std::uint64_t fingerprint = 0;
    bool full = false;
  };

  static Stats leafStats() { return {0, 1, kLeafPrint, true}; }

  static Stats innerStats(const Node &n) {
    Stats s;
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    const Node *kids[3] = {n.zero.get(), n.one.get(), n.free.get()};
    for (int k = 0; k < 3; ++k) {
      const Node *c = kids[k];
      if (!c) {
        h = mix(h, 0x100u + static_cast<std::uint64_t>(k));
        continue;
      }
      s.nodes += c->nodes + 1;
      s.leaves += c->leaves;
      h = mix(h, static_cast<std::uint64_t>(k) + 1);
      h = mix(h, c->fingerprint);
    }
    s.fingerprint = h;
    s.full = n.free && n.free->full;
    return s;
  }

  static void refresh(Node &n, bool isLeaf) {
    Stats s = isLeaf ? leafStats() : innerStats(n);
    n.nodes = s.nodes;
    n.leaves = s.leaves;
    n.fingerprint = s.fingerprint;
    n.full = s.full;
  }

  static NodePtr clone(const Node &n) {
    auto c = std::make_unique<Node>();
    if (n.zero)
      c->zero = clone(*n.zero);
    if (n.one)
      c->one = clone(*n.one);
    if (n.free)
      c->free = clone(*n.free);
    c->nodes = n.nodes;
    c->leaves = n.leaves;
    c->fingerprint = n.fingerprint;
    c->full = n.full;
    return c;
  }

  static bool sameShape(const Node *a, const Node *b) {
    if (a == b)
      return true;
    if (!a || !b)
      return false;
    if (a->fingerprint != b->fingerprint || a->nodes != b->nodes ||
        a->leaves != b->leaves)
      return false;
    return sameShape(a->zero.get(), b->zero.get()) &&
           sameShape(a->one.get(), b->one.get()) &&
           sameShape(a->free.get(), b->free.get());
  }

  /// Single path following the cube's trits from `depth` to the leaf.
  static NodePtr chain(const TritCube &c, std::size_t depth) {
    const std::size_t n = c.width();
    auto leaf = std::make_unique<Node>();
    refresh(*leaf, true);
    NodePtr cur = std::move(leaf);
    for (std::size_t d = n; d-- > depth;) {
      auto parent = std::make_unique<Node>();
      switch (c.get(d)) {
      case Trit::Zero: parent->zero = std::move(cur); break;
      case Trit::One: parent->one = std::move(cur); break;
      case Trit::Free: parent->free = std::move(cur); break;
      }
      refresh(*parent, false);
      cur = std::move(parent);
    }
    return cur;
  }

  static void fold(Node &n) {
    if (n.zero && n.one && sameShape(n.zero.get(), n.one.get())) {
      n.free = std::move(n.zero);
      n.one.reset();
    }
  }

  /// `lastFixed` is one past the last fixed position of `c`; below it the
  /// cube is all 'x'.
  static void insert(Node &n, std::size_t depth, const TritCube &c,
                     std::size_t lastFixed) {
    if (n.full)
      return;
    if (depth >= lastFixed) {
      n.zero.reset();
      n.one.reset();
      n.free = chain(c, depth + 1);
      refresh(n, false);
      return;
    }
    const Trit t = c.get(depth);
    if (t != Trit::Free) {
      if (n.free) {
        n.zero = std::move(n.free);
        n.one = clone(*n.zero);
      }
      NodePtr &child = t == Trit::Zero ? n.zero : n.one;
      if (child)
        insert(*child, depth + 1, c, lastFixed);
      else
        child = chain(c, depth + 1);
    } else if (n.free) {
      insert(*n.free, depth + 1, c, lastFixed);
    } else if (!n.zero && !n.one) {
      n.free = chain(c, depth + 1);
    } else {
      for (NodePtr *child : {&n.zero, &n.one}) {
        if (*child)
          insert(**child, depth + 1, c, lastFixed);
        else
          *child = chain(c, depth + 1);
      }
    }
    fold(n);
    refresh(n, false);
  }

  static Volume volume(const Node *n, std::size_t depth, std::size_t width) {
    if (!n)
      return 0;
    if (n->full)
      return powerOfTwo(width - depth);
    if (n->free)
      return volume(n->free.get(), depth + 1, width) * 2;
    return volume(n->zero.get(), depth + 1, width) +
           volume(n->one.get(), depth + 1, width);
  }

  // Every leaf after the first diverges at exactly one node that has both a
  // '0' and a '1' child, and is written as '|' plus its (N - d) suffix.
  static std::size_t branchCost(const Node *n, std::size_t depth,
                                std::size_t width) {
    if (!n)
      return 0;
    std::size_t cost = 0;
    if (n->zero && n->one)
      cost += width - depth + 1;
    return cost + branchCost(n->zero.get(), depth + 1, width) +
           branchCost(n->one.get(), depth + 1, width) +
           branchCost(n->free.get(), depth + 1, width);
  }

  static void collectLeaves(const Node *n, std::size_t depth, TritCube &path,
                            std::vector<TritCube> &out) {
    if (!n)
      return;
    if (depth == path.width()) {
      out.push_back(path);
      return;
    }
    const std::pair<const Node *, Trit> kids[3] = {
        {n->zero.get(), Trit::Zero},
        {n->one.get(), Trit::One},
        {n->free.get(), Trit::Free}};
    for (const auto &[child, trit] : kids) {
      if (!child)
        continue;
      path.set(depth, trit);
      collectLeaves(child, depth + 1, path, out);
    }
    path.set(depth, Trit::Free);
  }

  struct Enumerator {
    std::size_t limit;
    std::size_t width;
    Assignment path;
    std::vector<Assignment> out;

    bool done() const { return out.size() >= limit; }

    void allCompletions(std::size_t depth) {
      if (done())
        return;
      if (depth == width) {
        out.push_back(path);
        return;
      }
      for (bool b : {false, true}) {
        path[depth] = b;
        allCompletions(depth + 1);
        if (done())
          return;
      }
    }

    void walk(const Node *n, std::size_t depth) {
      if (done())
        return;
      if (!n) {
        allCompletions(depth);
        return;
      }
      if (n->full)
        return;
      for (bool b : {false, true}) {
        path[depth] = b;
        const Node *next = n->free ? n->free.get()
                           : b     ? n->one.get()
                                   : n->zero.get();
        walk(next, depth + 1);
        if (done())
          return;
      }
    }
  };

  static bool matches(const Node &n, const Stats &s) {
    return n.nodes == s.nodes && n.leaves == s.leaves &&
           n.fingerprint == s.fingerprint && n.full == s.full;
  }

  static bool check(const Node &n, std::size_t depth, std::size_t width) {
    if (depth == width)
      return !n.hasChildren() && matches(n, leafStats());
    if (n.free && (n.zero || n.one))
      return false;
    if (n.zero && n.one && sameShape(n.zero.get(), n.one.get()))
      return false;
    if (depth > 0 && !n.hasChildren())
      return false;
    for (const Node *c : {n.zero.get(), n.one.get(), n.free.get()})
      if (c && !check(*c, depth + 1, width))
        return false;
    return matches(n, innerStats(n));
  }
};

SubspaceTrie::SubspaceTrie(std::size_t width)
    : width_(width), root_(std::make_unique<Node>()) {
  if (width == 0)
    throw Error(ErrorKind::EmptyInput, "trie width must be positive");
  if (width > TritCube::kMaxWidth)
    throw Error(ErrorKind::WidthTooLarge, "trie width exceeds cap");
  TrieOps::refresh(*root_, false);
}

SubspaceTrie::~SubspaceTrie() = default;

SubspaceTrie::SubspaceTrie(const SubspaceTrie &other)
    : width_(other.width_), root_(TrieOps::clone(*other.root_)) {}

SubspaceTrie &SubspaceTrie::operator=(const SubspaceTrie &other) {
  if (this != &other) {
    root_ = TrieOps::clone(*other.root_);
    width_ = other.width_;
  }
  return *this;
}

SubspaceTrie::SubspaceTrie(SubspaceTrie &&other) noexcept
    : width_(other.width_), root_(std::move(other.root_)) {
  other.root_ = std::make_unique<Node>();
}

SubspaceTrie &SubspaceTrie::operator=(SubspaceTrie &&other) noexcept {
  if (this != &other) {
    width_ = other.width_;
    root_ = std::move(other.root_);
    other.root_ = std::make_unique<Node>();
  }
  return *this;
}

void SubspaceTrie::insert(const TritCube &c) {
  if (c.width() != width_)
    throw Error(ErrorKind::WidthMismatch,
                "cube width " + std::to_string(c.width()) +
                    " does not match trie width " + std::to_string(width_));
  std::size_t lastFixed = 0;
  for (std::size_t i = width_; i-- > 0;) {
    if (c.isFixed(i)) {
      lastFixed = i + 1;
      break;
    }
  }
  TrieOps::insert(*root_, 0, c, lastFixed);
}

bool SubspaceTrie::isEmpty() const { return !root_->hasChildren(); }

bool SubspaceTrie::isFull() const {
  const Node *n = root_.get();
  for (std::size_t d = 0; d < width_; ++d) {
    if (!n->free)
      return false;
    n = n->free.get();
  }
  return true;
}

Volume SubspaceTrie::occupiedVolume() const {
  if (isEmpty())
    return 0;
  return TrieOps::volume(root_.get(), 0, width_);
}

std::size_t SubspaceTrie::nodeCount() const { return root_->nodes; }

std::size_t SubspaceTrie::leafCount() const {
  return isEmpty() ? 0 : root_->leaves;
}

std::size_t SubspaceTrie::serializedLength() const {
  if (isEmpty())
    return 0;
  return width_ + TrieOps::branchCost(root_.get(), 0, width_);
}

SizeMetrics SubspaceTrie::sizeMetrics() const {
  return {nodeCount(), leafCount(), serializedLength()};
}

std::vector<TritCube> SubspaceTrie::leaves() const {
  std::vector<TritCube> out;
  if (isEmpty())
    return out;
  TritCube path(width_);
  TrieOps::collectLeaves(root_.get(), 0, path, out);
  return out;
}

std::string SubspaceTrie::serialize() const {
  std::string text;
  std::string prev;
  for (const TritCube &leaf : leaves()) {
    std::string cur = leaf.str();
    if (prev.empty()) {
      text = cur;
    } else {
      auto diverge = static_cast<std::size_t>(
          std::mismatch(prev.begin(), prev.end(), cur.begin()).first -
          prev.begin());
      text += '|';
      text.append(cur, diverge, std::string::npos);
    }
    prev = std::move(cur);
  }
  return text;
}

SubspaceTrie SubspaceTrie::deserialize(std::string_view text,
                                       std::size_t width) {
  SubspaceTrie trie(width);
  if (text.empty())
    return trie;
  std::string expr;
  std::size_t index = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    std::string_view seg =
        text.substr(start, bar == std::string_view::npos ? bar : bar - start);
    auto bad = [&](const std::string &why) {
      return Error(ErrorKind::MalformedSegment,
                   "segment " + std::to_string(index) + ": " + why,
                   static_cast<std::ptrdiff_t>(index));
    };
    if (seg.empty())
      throw bad("empty segment");
    if (seg.find_first_not_of("01x") != std::string_view::npos)
      throw bad("characters must be 0, 1 or x");
    if (index == 0) {
      if (seg.size() != width)
        throw Error(ErrorKind::WidthMismatch,
                    "first segment has length " + std::to_string(seg.size()) +
                        ", expected " + std::to_string(width),
                    0);
      expr.assign(seg);
    } else {
      if (seg.size() > width)
        throw bad("longer than the width");
      expr.replace(width - seg.size(), seg.size(), seg);
    }
    trie.insert(parseCube(expr));
    if (bar == std::string_view::npos)
      break;
    start = bar + 1;
    ++index;
  }
  return trie;
}

std::vector<Assignment>
SubspaceTrie::enumerateSolutions(std::size_t limit) const {
  TrieOps::Enumerator e{limit, width_, Assignment(width_, false), {}};
  if (limit == 0)
    return {};
  e.walk(isEmpty() ? nullptr : root_.get(), 0);
  return std::move(e.out);
}

bool SubspaceTrie::covers(const Assignment &a) const {
  if (a.size() != width_)
    throw Error(ErrorKind::WidthMismatch, "assignment width differs from trie");
  if (isEmpty())
    return false;
  const Node *n = root_.get();
  for (std::size_t d = 0; d < width_; ++d) {
    n = n->free ? n->free.get() : a[d] ? n->one.get() : n->zero.get();
    if (!n)
      return false;
  }
  return true;
}

bool SubspaceTrie::checkCanonical() const {
  return TrieOps::check(*root_, 0, width_);
}

bool operator==(const SubspaceTrie &a, const SubspaceTrie &b) {
  return a.width_ == b.width_ &&
         TrieOps::sameShape(a.root_.get(), b.root_.get());
}

} // namespace tsat
