#include <doctest.h>

#include <functional>

#include "kakeya/dyadic_tree.hpp"
#include "random_gen.hpp"

using namespace kakeya;

namespace {

std::vector<std::string> bits_of(const DyadicTree& t) { return t.bit_list(); }

// every ordered rooted subtree of the complete tree of the given height
void for_each_closed_tree(unsigned height, const std::function<void(const DyadicTree&)>& fn) {
  std::vector<std::vector<std::vector<std::string>>> perVertex;  // lists of vertex sets per subtree
  std::function<std::vector<std::vector<std::string>>(const Vertex&)> gen =
      [&](const Vertex& v) -> std::vector<std::vector<std::string>> {
    std::vector<std::vector<std::string>> out{{v.bits()}};
    if (v.height() == height) return out;
    auto left = gen(v.child(0));
    auto right = gen(v.child(1));
    for (const auto& l : left) {
      auto s = l;
      s.push_back(v.bits());
      out.push_back(std::move(s));
    }
    for (const auto& r : right) {
      auto s = r;
      s.push_back(v.bits());
      out.push_back(std::move(s));
    }
    for (const auto& l : left) {
      for (const auto& r : right) {
        auto s = l;
        s.insert(s.end(), r.begin(), r.end());
        s.push_back(v.bits());
        out.push_back(std::move(s));
      }
    }
    return out;
  };
  for (const auto& set : gen(Vertex::root())) fn(DyadicTree::from_bits(set));
}

}  // namespace

TEST_SUITE("dyadic_tree") {

TEST_CASE("vertex basics") {
  Vertex v("0110");
  CHECK(v.height() == 3);
  CHECK(v.parent().bits() == "011");
  CHECK(v.child(1).bits() == "01101");
  CHECK(v.prefix(1).bits() == "01");
  CHECK(Vertex("0").is_root());
  CHECK(Vertex("01").is_ancestor_of(Vertex("0110")));
  CHECK(!Vertex("01").is_ancestor_of(Vertex("001")));
  CHECK(v.slope() == Rat(3, 4));
  CHECK(Vertex("0").slope() == Rat(0));
  CHECK_THROWS_AS(Vertex(""), Error);
  CHECK_THROWS_AS(Vertex("10"), Error);
  CHECK_THROWS_AS(Vertex("0a"), Error);
}

TEST_CASE("encode_code") {
  CHECK(encode_code(0, 0).bits() == "0");
  CHECK(encode_code(1, 1).bits() == "01");
  CHECK(encode_code(2, 3).bits() == "011");
  CHECK(encode_code(3, 5).slope() == Rat(5, 8));
  CHECK_THROWS_AS(encode_code(2, 4), Error);
}

TEST_CASE("ancestor_closure") {
  CHECK(bits_of(ancestor_closure({Vertex("011")})) ==
        std::vector<std::string>{"0", "01", "011"});
  CHECK(bits_of(ancestor_closure({Vertex("0")})) == std::vector<std::string>{"0"});
  CHECK(bits_of(ancestor_closure({Vertex("000"), Vertex("011")})) ==
        std::vector<std::string>{"0", "00", "000", "01", "011"});
  CHECK_THROWS_AS(ancestor_closure({}), Error);

  // idempotence on random trees
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 8);
    DyadicTree c = ancestor_closure(t.vertices());
    CHECK(c == t);  // already closed
    CHECK(ancestor_closure(c.vertices()) == c);
  }
}

TEST_CASE("truncate") {
  DyadicTree t = DyadicTree::from_bits({"0", "00", "000"});
  CHECK(bits_of(truncate(t, 1)) == std::vector<std::string>{"0", "00"});
  CHECK(truncate(t, 5) == t);
  CHECK(bits_of(truncate(DyadicTree::from_bits({"0", "00", "01", "011"}), 0)) ==
        std::vector<std::string>{"0"});
}

TEST_CASE("extend") {
  CHECK(bits_of(extend(DyadicTree::from_bits({"0", "01"}), 3)) ==
        std::vector<std::string>{"0", "00", "000", "0000", "01", "010", "0100"});
  CHECK(bits_of(extend(DyadicTree::from_bits({"0"}), 2)) ==
        std::vector<std::string>{"0", "00", "000"});
  DyadicTree c2 = DyadicTree::complete(2);
  CHECK(extend(c2, 2) == c2);
  CHECK_THROWS_AS(extend(DyadicTree::from_bits({"0", "00", "000"}), 1), Error);

  // idempotence
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 6);
    DyadicTree e = extend(t, 7);
    CHECK(extend(e, 7) == e);
  }
}

TEST_CASE("splitting_vertices") {
  CHECK(splitting_vertices(DyadicTree::from_bits({"0", "00", "000"})).empty());
  auto s = splitting_vertices(DyadicTree::from_bits({"0", "00", "01"}));
  CHECK(s == std::set<Vertex>{Vertex("0")});
  CHECK(splitting_vertices(DyadicTree::complete(2)) ==
        std::set<Vertex>{Vertex("0"), Vertex("00"), Vertex("01")});
}

TEST_CASE("split_number examples") {
  CHECK(split_number(DyadicTree::from_bits({"0", "00", "000"})).tree == 0);
  CHECK(split_number(DyadicTree::complete(3)).tree == 3);
  CHECK(split_number(DyadicTree::from_bits({"0", "00", "01", "010", "011"})).tree == 1);
  SplitProfile p = split_number(DyadicTree::complete(2));
  CHECK(p.at(Vertex("0")) == 2);
  CHECK(p.at(Vertex("00")) == 1);
  CHECK(p.at(Vertex("000")) == 0);
}

TEST_CASE("split_oracle examples") {
  CHECK(split_oracle(DyadicTree::from_bits({"0", "00", "000"})).tree == 0);
  CHECK(split_oracle(DyadicTree::complete(2)).tree == 2);
  CHECK(split_oracle(DyadicTree::from_bits({"0", "00", "01"})).tree == 1);
  CHECK_THROWS_AS(split_oracle(DyadicTree::complete(3), 2), Error);
}

TEST_CASE("split_number equals split_oracle exhaustively to height 3") {
  SplitOracle oracle;
  for_each_closed_tree(3, [&](const DyadicTree& t) {
    SplitProfile a = split_number(t);
    SplitProfile b = oracle.profile(t);
    REQUIRE(a.tree == b.tree);
    REQUIRE(a.per_vertex == b.per_vertex);
  });
}

TEST_CASE("split_number equals split_oracle on random trees of height 5") {
  SplitOracle oracle;
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 5);
    SplitProfile a = split_number(t);
    try {
      SplitProfile b = oracle.profile(t);
      REQUIRE(a.tree == b.tree);
      REQUIRE(a.per_vertex == b.per_vertex);
      ++compared;
    } catch (const Error& e) {
      // bushy height-5 trees can exceed the enumeration cap
      REQUIRE(e.code() == Errc::OracleTooLarge);
    }
  }
  CHECK(compared >= 150);
}

TEST_CASE("split monotone under truncation") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 9);
    unsigned prev = 0;
    for (unsigned k = 0; k <= t.max_height(); ++k) {
      unsigned s = split_number(truncate(t, k)).tree;
      CHECK(s >= prev);
      prev = s;
    }
  }
}

TEST_CASE("lacunarity_order examples") {
  CHECK(lacunarity_order(DyadicTree::from_bits({"0", "00"})) == 0);
  CHECK(lacunarity_order(DyadicTree::from_bits({"0", "00", "01", "000", "001"})) == 1);
  CHECK(lacunarity_order(DyadicTree::complete(2)) == 2);
}

TEST_CASE("lacunarity zero iff splitless") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 8);
    CHECK((lacunarity_order(t) == 0) == splitting_vertices(t).empty());
  }
}

TEST_CASE("extension order bounded by split plus one") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 10);
    unsigned h = std::max(t.max_height(), 10u);
    CHECK(lacunarity_order(extend(t, h)) <= split_number(t).tree + 1);
  }
}

TEST_CASE("prune_bateman examples") {
  DyadicTree c3 = DyadicTree::complete(3);
  CHECK(prune_bateman(c3, 3) == c3);

  DyadicTree t = DyadicTree::from_bits({"0", "00", "01", "010", "011"});
  DyadicTree p = prune_bateman(t, 1);
  std::string why;
  CHECK(check_bateman_pruning(t, p, 1, &why));

  DyadicTree ray = DyadicTree::from_bits({"0", "01", "011"});
  CHECK(prune_bateman(ray, 0) == ray);

  CHECK_THROWS_AS(prune_bateman(ray, 1), Error);
}

TEST_CASE("prune_bateman checker passes on random trees") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    DyadicTree t = testgen::random_tree(seed, 9);
    unsigned n = split_number(t).tree;
    for (unsigned level = 0; level <= n; ++level) {
      DyadicTree p = prune_bateman(t, level);
      std::string why;
      REQUIRE_MESSAGE(check_bateman_pruning(t, p, level, &why), why);
      REQUIRE(p.is_subtree_of(t));
    }
  }
}

TEST_CASE("checker rejects bad prunings") {
  DyadicTree c2 = DyadicTree::complete(2);
  std::string why;
  // a ray is not a level-2 pruning
  CHECK(!check_bateman_pruning(c2, DyadicTree::from_bits({"0", "00", "000"}), 2, &why));
  // the complete tree is not a level-1 pruning (each ray has two splits)
  CHECK(!check_bateman_pruning(c2, c2, 1, &why));
  // not a subtree of the input
  CHECK(!check_bateman_pruning(c2, DyadicTree::from_bits({"0", "00", "0000"}), 0, &why));
}

}  // TEST_SUITE
