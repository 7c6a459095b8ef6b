#include "kakeya/dyadic_tree.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace kakeya {

namespace {

void require_closed(const DyadicTree& t, const char* op) {
  if (!t.is_ancestor_closed())
    raise(Errc::InvalidInput, std::string(op) + " requires an ancestor-closed tree");
}

void require_nonempty(const DyadicTree& t, const char* op) {
  if (t.empty()) raise(Errc::EmptySet, std::string(op) + " requires a nonempty tree");
}

}  // namespace

Vertex::Vertex(std::string bits) : bits_(std::move(bits)) {
  if (bits_.empty()) raise(Errc::InvalidVertex, "empty bit string");
  if (bits_[0] != '0') raise(Errc::InvalidVertex, "bit string must start with 0: " + bits_);
  for (char c : bits_)
    if (c != '0' && c != '1') raise(Errc::InvalidVertex, "non-binary character in " + bits_);
}

Vertex Vertex::parent() const {
  if (is_root()) raise(Errc::InvalidVertex, "root has no parent");
  return Vertex(bits_.substr(0, bits_.size() - 1));
}

Vertex Vertex::child(int bit) const { return Vertex(bits_ + (bit ? '1' : '0')); }

Vertex Vertex::prefix(unsigned height) const {
  if (height > this->height()) raise(Errc::InvalidHeight, "prefix height above vertex height");
  return Vertex(bits_.substr(0, height + 1));
}

bool Vertex::is_ancestor_of(const Vertex& v) const {
  return bits_.size() < v.bits_.size() && v.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool Vertex::is_prefix_of(const Vertex& v) const {
  return bits_.size() <= v.bits_.size() && v.bits_.compare(0, bits_.size(), bits_) == 0;
}

Rat Vertex::slope() const {
  unsigned k = height();
  if (k == 0) return Rat(0);
  mpz_class j(bits_.substr(1), 2);
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  return Rat(j, den);
}

Vertex encode_code(unsigned k, std::uint64_t j) {
  if (k >= 63) raise(Errc::InvalidCode, "code height too large");
  if (j >= (std::uint64_t{1} << k)) raise(Errc::InvalidCode, "slope index out of range");
  std::string bits = "0";
  for (unsigned i = 0; i < k; ++i) bits += ((j >> (k - 1 - i)) & 1) ? '1' : '0';
  return Vertex(bits);
}

DyadicTree DyadicTree::from_bits(const std::vector<std::string>& bits) {
  std::set<Vertex> vs;
  for (const auto& b : bits) vs.insert(Vertex(b));
  return DyadicTree(std::move(vs));
}

DyadicTree DyadicTree::complete(unsigned height) {
  if (height > 24) raise(Errc::InvalidHeight, "complete tree too large");
  std::set<Vertex> vs;
  std::function<void(const Vertex&)> grow = [&](const Vertex& v) {
    vs.insert(v);
    if (v.height() < height) {
      grow(v.child(0));
      grow(v.child(1));
    }
  };
  grow(Vertex::root());
  return DyadicTree(std::move(vs));
}

unsigned DyadicTree::max_height() const {
  unsigned h = 0;
  for (const auto& v : verts_) h = std::max(h, v.height());
  return h;
}

bool DyadicTree::is_ancestor_closed() const {
  for (const auto& v : verts_)
    if (!v.is_root() && verts_.count(v.parent()) == 0) return false;
  return true;
}

bool DyadicTree::is_subtree_of(const DyadicTree& other) const {
  return std::includes(other.verts_.begin(), other.verts_.end(), verts_.begin(), verts_.end());
}

bool DyadicTree::has_child(const Vertex& v, int bit) const { return contains(v.child(bit)); }

unsigned DyadicTree::child_count(const Vertex& v) const {
  return (has_child(v, 0) ? 1u : 0u) + (has_child(v, 1) ? 1u : 0u);
}

std::vector<Vertex> DyadicTree::leaves() const {
  std::vector<Vertex> out;
  for (const auto& v : verts_)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

std::vector<Vertex> DyadicTree::at_height(unsigned h) const {
  std::vector<Vertex> out;
  for (const auto& v : verts_)
    if (v.height() == h) out.push_back(v);
  return out;
}

std::vector<std::string> DyadicTree::bit_list() const {
  std::vector<std::string> out;
  out.reserve(verts_.size());
  for (const auto& v : verts_) out.push_back(v.bits());
  return out;
}

unsigned SplitProfile::at(const Vertex& v) const {
  auto it = per_vertex.find(v);
  if (it == per_vertex.end()) raise(Errc::InvalidVertex, "vertex not in profile: " + v.bits());
  return it->second;
}

DyadicTree ancestor_closure(const std::set<Vertex>& s) {
  if (s.empty()) raise(Errc::EmptySet, "ancestor_closure of empty set");
  std::set<Vertex> out;
  for (const auto& v : s) {
    Vertex cur = v;
    while (out.insert(cur).second && !cur.is_root()) cur = cur.parent();
  }
  return DyadicTree(std::move(out));
}

DyadicTree truncate(const DyadicTree& t, unsigned k) {
  require_closed(t, "truncate");
  std::set<Vertex> out;
  for (const auto& v : t)
    if (v.height() <= k) out.insert(v);
  return DyadicTree(std::move(out));
}

DyadicTree extend(const DyadicTree& t, unsigned h) {
  require_closed(t, "extend");
  if (!t.empty() && h < t.max_height()) raise(Errc::InvalidHeight, "extend below max height");
  std::set<Vertex> out(t.vertices().begin(), t.vertices().end());
  for (const auto& v : t) {
    std::string bits = v.bits();
    while (bits.size() <= h) {
      bits += '0';
      out.insert(Vertex(bits));
    }
  }
  return DyadicTree(std::move(out));
}

std::set<Vertex> splitting_vertices(const DyadicTree& t) {
  require_closed(t, "splitting_vertices");
  std::set<Vertex> out;
  for (const auto& v : t)
    if (t.child_count(v) == 2) out.insert(v);
  return out;
}

SplitProfile split_number(const DyadicTree& t) {
  require_closed(t, "split_number");
  require_nonempty(t, "split_number");
  std::vector<const Vertex*> order;
  order.reserve(t.size());
  for (const auto& v : t) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](const Vertex* a, const Vertex* b) { return a->height() > b->height(); });

  SplitProfile prof;
  for (const Vertex* v : order) {
    bool l = t.has_child(*v, 0);
    bool r = t.has_child(*v, 1);
    unsigned value = 0;
    if (l && r) {
      unsigned f0 = prof.per_vertex.at(v->child(0));
      unsigned f1 = prof.per_vertex.at(v->child(1));
      value = std::max(std::max(f0, f1), 1 + std::min(f0, f1));
    } else if (l || r) {
      value = prof.per_vertex.at(v->child(l ? 0 : 1));
    }
    prof.per_vertex.emplace(*v, value);
    prof.tree = std::max(prof.tree, value);
  }
  return prof;
}

unsigned lacunarity_order(const DyadicTree& t) {
  require_closed(t, "lacunarity_order");
  require_nonempty(t, "lacunarity_order");
  DyadicTree cur = t;
  unsigned order = 0;
  for (;;) {
    std::set<Vertex> splits = splitting_vertices(cur);
    if (splits.empty()) return order;
    cur = ancestor_closure(splits);
    ++order;
  }
}

namespace {

// Level-0 tail of the pruning: a single ray from v down to a leaf of t,
// preferring the '0' child. Ending on a leaf of t keeps the pruned leaves
// equal to leaves of the input tree.
void keep_ray(const DyadicTree& t, Vertex v, std::set<Vertex>& out) {
  for (;;) {
    out.insert(v);
    if (t.has_child(v, 0)) v = v.child(0);
    else if (t.has_child(v, 1)) v = v.child(1);
    else return;
  }
}

void build_pruned(const DyadicTree& t, const SplitProfile& prof, const Vertex& from, unsigned level,
                  std::set<Vertex>& out) {
  if (level == 0) {
    keep_ray(t, from, out);
    return;
  }
  Vertex v = from;
  for (;;) {
    out.insert(v);
    bool l = t.has_child(v, 0);
    bool r = t.has_child(v, 1);
    if (l && r && prof.at(v.child(0)) + 1 >= level && prof.at(v.child(1)) + 1 >= level) {
      // both children support level-1: this is the unique splitting vertex
      // of this level on every ray through v
      build_pruned(t, prof, v.child(0), level - 1, out);
      build_pruned(t, prof, v.child(1), level - 1, out);
      return;
    }
    // descend towards a child that still supports the full level
    if (l && prof.at(v.child(0)) >= level) {
      v = v.child(0);
    } else if (r && prof.at(v.child(1)) >= level) {
      v = v.child(1);
    } else {
      raise(Errc::VerificationFailure, "pruning descent lost the required split level at " + v.bits());
    }
  }
}

}  // namespace

bool check_bateman_pruning(const DyadicTree& input, const DyadicTree& pruned, unsigned n,
                           std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (pruned.empty()) return fail("pruned tree empty");
  if (!pruned.contains(Vertex::root())) return fail("missing root");
  if (!pruned.is_ancestor_closed()) return fail("not ancestor-closed");
  if (!pruned.is_subtree_of(input)) return fail("not a subtree of the input");
  SplitProfile prof = split_number(pruned);
  if (prof.at(Vertex::root()) != n) return fail("root split value != N");
  if (prof.tree != n) return fail("tree split value != N");

  // Every maximal ray from the root must meet exactly one splitting vertex
  // of each value 1..N.
  std::vector<std::pair<Vertex, std::vector<unsigned>>> stack;
  stack.push_back({Vertex::root(), {}});
  while (!stack.empty()) {
    auto [v, levels] = stack.back();
    stack.pop_back();
    bool l = pruned.has_child(v, 0);
    bool r = pruned.has_child(v, 1);
    if (l && r) levels.push_back(prof.at(v));
    if (!l && !r) {
      std::vector<unsigned> want(n);
      for (unsigned j = 0; j < n; ++j) want[j] = j + 1;
      std::sort(levels.begin(), levels.end());
      if (levels != want) return fail("ray misses the one-split-per-level pattern at leaf " + v.bits());
      continue;
    }
    if (l) stack.push_back({v.child(0), levels});
    if (r) stack.push_back({v.child(1), levels});
  }
  return true;
}

DyadicTree prune_bateman(const DyadicTree& t, unsigned n) {
  require_closed(t, "prune_bateman");
  require_nonempty(t, "prune_bateman");
  SplitProfile prof = split_number(t);
  if (prof.tree < n) raise(Errc::InsufficientSplit, "tree split below requested N");
  std::set<Vertex> out;
  build_pruned(t, prof, Vertex::root(), n, out);
  DyadicTree result(std::move(out));
  std::string why;
  if (!check_bateman_pruning(t, result, n, &why))
    raise(Errc::VerificationFailure, "pruning checker rejected output: " + why);
  return result;
}

// ---------------------------------------------------------------------------
// Split oracle. Trees of height <= 5 are held in a 64-bit mask with heap
// indexing: the root is node 1, node i has children 2i and 2i+1, so the
// level-d descendants of node i occupy the contiguous bit range
// [i << d, (i << d) + 2^d).
// ---------------------------------------------------------------------------

namespace {

constexpr unsigned kStructuralCap = 5;
constexpr std::uint64_t kEnumerationLimit = 50'000'000;

unsigned node_index(const Vertex& v) {
  unsigned idx = 1;
  const std::string& b = v.bits();
  for (std::size_t i = 1; i < b.size(); ++i) idx = 2 * idx + (b[i] == '1' ? 1 : 0);
  return idx;
}

// Extracts the subtree rooted at `node`, re-rooted at node 1.
std::uint64_t subtree_rel(std::uint64_t m, unsigned node) {
  std::uint64_t out = 0;
  for (unsigned d = 0; (static_cast<std::uint64_t>(node) << d) <= 63; ++d) {
    unsigned width = 1u << d;
    std::uint64_t mask = (width >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    std::uint64_t chunk = (m >> (node << d)) & mask;
    out |= chunk << width;  // relative level-d range starts at bit 2^d
  }
  return out;
}

// Inverse of subtree_rel: places a relative shape under `child` (2 or 3).
std::uint64_t place_rel(std::uint64_t rel, unsigned child) {
  std::uint64_t out = 0;
  for (unsigned d = 0; (static_cast<std::uint64_t>(child) << d) <= 63; ++d) {
    unsigned width = 1u << d;
    std::uint64_t mask = (width >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    std::uint64_t chunk = (rel >> width) & mask;
    out |= chunk << (child << d);
  }
  return out;
}

bool mask_has(std::uint64_t m, unsigned i) { return i <= 63 && ((m >> i) & 1); }

// Number of rooted subtrees of the shape, saturating at the enumeration cap.
std::uint64_t count_subtrees(std::uint64_t m, unsigned i) {
  if (!mask_has(m, i)) return 0;
  std::uint64_t cl = (2 * i <= 63) ? count_subtrees(m, 2 * i) : 0;
  std::uint64_t cr = (2 * i + 1 <= 63) ? count_subtrees(m, 2 * i + 1) : 0;
  if (cl > kEnumerationLimit || cr > kEnumerationLimit) return kEnumerationLimit + 1;
  unsigned __int128 total = 1 + static_cast<unsigned __int128>(cl) + cr +
                            static_cast<unsigned __int128>(cl) * cr;
  if (total > kEnumerationLimit) return kEnumerationLimit + 1;
  return static_cast<std::uint64_t>(total);
}

// min over maximal rays from node 1 of the number of splitting vertices on
// the ray; evaluated by walking every root-to-leaf path.
int min_ray_splits(std::uint64_t m) {
  int best = std::numeric_limits<int>::max();
  struct Item {
    unsigned node;
    int splits;
  };
  Item stack[64];
  int top = 0;
  stack[top++] = {1, 0};
  while (top > 0) {
    Item it = stack[--top];
    bool l = mask_has(m, 2 * it.node);
    bool r = mask_has(m, 2 * it.node + 1);
    if (l && r) {
      stack[top++] = {2 * it.node, it.splits + 1};
      stack[top++] = {2 * it.node + 1, it.splits + 1};
    } else if (l) {
      stack[top++] = {2 * it.node, it.splits};
    } else if (r) {
      stack[top++] = {2 * it.node + 1, it.splits};
    } else {
      best = std::min(best, it.splits);
    }
  }
  return best;
}

std::vector<std::uint64_t> enumerate_subtrees(std::uint64_t m, unsigned i) {
  std::uint64_t self = std::uint64_t{1} << i;
  std::vector<std::uint64_t> left, right;
  if (mask_has(m, 2 * i)) left = enumerate_subtrees(m, 2 * i);
  if (mask_has(m, 2 * i + 1)) right = enumerate_subtrees(m, 2 * i + 1);
  std::vector<std::uint64_t> out;
  out.reserve(1 + left.size() + right.size() + left.size() * right.size());
  out.push_back(self);
  for (auto s : left) out.push_back(self | s);
  for (auto s : right) out.push_back(self | s);
  for (auto a : left)
    for (auto b : right) out.push_back(self | a | b);
  return out;
}

}  // namespace

std::uint64_t SplitOracle::canonical(std::uint64_t shape) {
  if (shape == 0) return 0;
  auto it = canonMemo_.find(shape);
  if (it != canonMemo_.end()) return it->second;
  std::uint64_t lc = canonical(subtree_rel(shape, 2));
  std::uint64_t rc = canonical(subtree_rel(shape, 3));
  if (lc < rc) std::swap(lc, rc);
  std::uint64_t res = 0b10 | place_rel(lc, 2) | place_rel(rc, 3);
  canonMemo_.emplace(shape, res);
  return res;
}

int SplitOracle::shape_value(std::uint64_t shape) {
  auto it = valueMemo_.find(shape);
  if (it != valueMemo_.end()) return it->second;
  int best = 0;
  for (std::uint64_t sub : enumerate_subtrees(shape, 1)) best = std::max(best, min_ray_splits(sub));
  valueMemo_.emplace(shape, best);
  return best;
}

SplitProfile SplitOracle::profile(const DyadicTree& t) {
  require_closed(t, "split_oracle");
  require_nonempty(t, "split_oracle");
  unsigned cap = std::min(cap_, kStructuralCap);
  if (t.max_height() > cap) raise(Errc::OracleTooLarge, "tree height above oracle cap");

  std::uint64_t mask = 0;
  for (const auto& v : t) mask |= std::uint64_t{1} << node_index(v);
  if (count_subtrees(mask, 1) > kEnumerationLimit)
    raise(Errc::OracleTooLarge, "subtree enumeration too large");

  SplitProfile prof;
  for (const auto& v : t) {
    std::uint64_t shape = canonical(subtree_rel(mask, node_index(v)));
    unsigned value = static_cast<unsigned>(shape_value(shape));
    prof.per_vertex.emplace(v, value);
    prof.tree = std::max(prof.tree, value);
  }
  return prof;
}

SplitProfile split_oracle(const DyadicTree& t, unsigned heightCap) {
  SplitOracle oracle(heightCap);
  return oracle.profile(t);
}

}  // namespace kakeya
