#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "kakeya/errors.hpp"
#include "kakeya/rational.hpp"

namespace kakeya {

// A vertex of the infinite binary tree: a finite bit string whose first
// character is '0'. Height is string length minus one, so the root "0"
// has height 0.
class Vertex {
public:
  explicit Vertex(std::string bits);
  static Vertex root() { return Vertex("0"); }

  const std::string& bits() const { return bits_; }
  unsigned height() const { return static_cast<unsigned>(bits_.size()) - 1; }
  bool is_root() const { return bits_.size() == 1; }

  Vertex parent() const;
  Vertex child(int bit) const;
  Vertex prefix(unsigned height) const;  // ancestor at the given height

  // Proper ancestor test (equal vertices are not ancestors of each other).
  bool is_ancestor_of(const Vertex& v) const;
  bool is_prefix_of(const Vertex& v) const;  // allows equality

  // Direction value sum a_i 2^-i over the bits (a_0 = 0).
  Rat slope() const;

  friend bool operator==(const Vertex& a, const Vertex& b) = default;
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    return a.bits_ <=> b.bits_;
  }

private:
  std::string bits_;
};

// Encodes slope j*2^-k as the height-k vertex a_0...a_k with
// sum a_i 2^-i = j*2^-k. Requires 0 <= j <= 2^k - 1.
Vertex encode_code(unsigned k, std::uint64_t j);

// A finite set of vertices with the implicit edge structure of the binary
// tree. Most operations require the set to be ancestor closed: each
// non-root vertex's parent is present (hence the root is present whenever
// the set is nonempty).
class DyadicTree {
public:
  DyadicTree() = default;
  explicit DyadicTree(std::set<Vertex> vertices) : verts_(std::move(vertices)) {}
  static DyadicTree from_bits(const std::vector<std::string>& bits);
  static DyadicTree complete(unsigned height);

  bool empty() const { return verts_.empty(); }
  std::size_t size() const { return verts_.size(); }
  bool contains(const Vertex& v) const { return verts_.count(v) > 0; }
  bool contains(const std::string& bits) const { return verts_.count(Vertex(bits)) > 0; }

  const std::set<Vertex>& vertices() const { return verts_; }
  auto begin() const { return verts_.begin(); }
  auto end() const { return verts_.end(); }

  unsigned max_height() const;
  bool is_ancestor_closed() const;
  bool is_subtree_of(const DyadicTree& other) const;

  bool has_child(const Vertex& v, int bit) const;
  unsigned child_count(const Vertex& v) const;
  bool is_leaf(const Vertex& v) const { return child_count(v) == 0; }
  std::vector<Vertex> leaves() const;
  std::vector<Vertex> at_height(unsigned h) const;

  void insert(const Vertex& v) { verts_.insert(v); }

  // Canonical serialization: lexicographically sorted bit strings.
  std::vector<std::string> bit_list() const;

  friend bool operator==(const DyadicTree& a, const DyadicTree& b) = default;

private:
  std::set<Vertex> verts_;
};

// Per-vertex and whole-tree split values. split(v) is the largest s such
// that some subtree rooted at v forces at least s splitting vertices onto
// every one of its maximal rays from v; split of a leaf is 0 and the tree
// value is the maximum over vertices.
struct SplitProfile {
  std::map<Vertex, unsigned> per_vertex;
  unsigned tree = 0;

  unsigned at(const Vertex& v) const;
};

// Smallest ancestor-closed tree containing S. Throws EmptySet for empty S.
DyadicTree ancestor_closure(const std::set<Vertex>& s);

// Vertices of height <= k. Requires ancestor-closed input.
DyadicTree truncate(const DyadicTree& t, unsigned k);

// Adds every trailing-zero descendant of every vertex, up to height h.
// Requires h >= max height of t (InvalidHeight otherwise).
DyadicTree extend(const DyadicTree& t, unsigned h);

// Vertices with both one-bit extensions present.
std::set<Vertex> splitting_vertices(const DyadicTree& t);

// Computes the split profile with the bottom-up recursion
//   f(leaf) = 0, f(one child) = f(child),
//   f(two children) = max(max(f0, f1), 1 + min(f0, f1)).
// Equality with the definitional supremum is gated on split_oracle.
SplitProfile split_number(const DyadicTree& t);

// 0 for a splitless tree, else 1 + order of the ancestor closure of the
// splitting vertices. A tree with value N is lacunary of every order >= N.
unsigned lacunarity_order(const DyadicTree& t);

// Bateman pruning: a subtree P of t rooted at "0" with split("0", P) = N in
// which every maximal ray from the root meets exactly one splitting vertex
// of split value j, for each j = 1..N. Deterministic: the walk to each
// level-j splitting vertex prefers the '0' child, and level-0 tails follow
// a single ray down to a leaf of t. The result is re-verified by an
// independent checker before returning. Throws InsufficientSplit when
// split(t) < N.
DyadicTree prune_bateman(const DyadicTree& t, unsigned n);

// Checker used by prune_bateman; exposed for tests.
bool check_bateman_pruning(const DyadicTree& input, const DyadicTree& pruned, unsigned n,
                           std::string* why = nullptr);

// Literal evaluation of the definitional split values: enumerates every
// rooted subtree, walks every maximal ray of each, counts splitting
// vertices, and takes the min over rays then sup over subtrees. The
// enumeration is exponential; trees above the height cap (or with more
// than ~50e6 rooted subtrees) are rejected with OracleTooLarge. Memoizes
// shapes across calls, so exhaustive sweeps over many trees stay cheap.
class SplitOracle {
public:
  explicit SplitOracle(unsigned heightCap = 5) : cap_(heightCap) {}

  SplitProfile profile(const DyadicTree& t);

private:
  int shape_value(std::uint64_t shape);
  std::uint64_t canonical(std::uint64_t shape);

  unsigned cap_;
  std::unordered_map<std::uint64_t, std::uint64_t> canonMemo_;
  std::unordered_map<std::uint64_t, int> valueMemo_;
};

// One-shot convenience wrapper around SplitOracle.
SplitProfile split_oracle(const DyadicTree& t, unsigned heightCap = 5);

}  // namespace kakeya
