#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankone/walls.hpp"

#include <vector>

using namespace rankone;

namespace {
// All words of the given length over the four letters.
std::vector<std::string> words_up_to(int len) {
  std::vector<std::string> out{""};
  std::vector<std::string> level{""};
  const char letters[4] = {'a', 'A', 'b', 'B'};
  for (int l = 0; l < len; ++l) {
    std::vector<std::string> next;
    for (const auto& w : level)
      for (char ch : letters) next.push_back(w + ch);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}
}  // namespace

TEST_CASE("parsing") {
  auto am = parse_amalgam("4,2,6");
  CHECK(am.a == 4);
  CHECK(am.c == 2);
  CHECK(am.b == 6);
  CHECK(am.generator_words == std::vector<std::string>{"a", "b"});
  auto fr = parse_amalgam("free:3");
  CHECK(fr.kind == AmalgamSpec::Kind::free_group);
  CHECK(fr.rank == 3);
  CHECK_THROWS_AS(parse_amalgam("4,6"), std::invalid_argument);
  auto bad = parse_amalgam("4,3,6");  // 3 does not divide 4
  CHECK_THROWS_AS(tree_distance(bad, "a"), std::invalid_argument);
}

TEST_CASE("free-group distances equal reduced length") {
  auto fr = parse_amalgam("free:2");
  CHECK(tree_distance(fr, "") == 0);
  CHECK(tree_distance(fr, "aA") == 0);
  CHECK(tree_distance(fr, "abAB") == 4);
  CHECK(tree_distance(fr, "abaBBBab") == 8);
  CHECK_THROWS_AS(tree_distance(fr, "xyz"), std::invalid_argument);
}

TEST_CASE("modular amalgam distances") {
  auto am = modular_amalgam();
  CHECK(tree_distance(am, "") == 0);
  CHECK(tree_distance(am, "a") == 0);    // elliptic: fixes the base vertex
  CHECK(tree_distance(am, "aa") == 0);   // central
  CHECK(tree_distance(am, "b") == 2);
  CHECK(tree_distance(am, "ab") == 2);
  for (int k = 1; k <= 5; ++k) {
    std::string w;
    for (int i = 0; i < k; ++i) w += "ab";
    CHECK(tree_distance(am, w) == 2 * k);
  }
}

TEST_CASE("wall norm is twice the tree distance") {
  for (auto spec : {modular_amalgam(), parse_amalgam("free:2")}) {
    TreeContext ctx(spec);
    for (const auto& w : words_up_to(4)) {
      auto v = wall_cocycle_norm(spec, w);
      CHECK(v.norm_sq == 2 * ctx.distance(w));
      CHECK(v.norm_sq % 2 == 0);
      // The explicit half-space indicator difference has the same norm.
      CHECK(norm_sq(ctx.cocycle(w)) == v.norm_sq);
    }
  }
}

TEST_CASE("cocycle law on finite-support functions") {
  for (auto spec : {modular_amalgam(), parse_amalgam("free:2")}) {
    TreeContext ctx(spec);
    for (const auto& g : words_up_to(2))
      for (const auto& h : words_up_to(2)) {
        auto lhs = ctx.cocycle(g + h);
        auto rhs = add(ctx.cocycle(g), ctx.translate(g, ctx.cocycle(h)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("tree triangle inequality") {
  auto am = modular_amalgam();
  TreeContext ctx(am);
  auto ws = words_up_to(3);
  for (std::size_t i = 0; i < ws.size(); i += 7)
    for (std::size_t j = 0; j < ws.size(); j += 11)
      CHECK(ctx.distance(ws[i] + ws[j]) <=
            ctx.distance(ws[i]) + ctx.distance(ws[j]));
}

TEST_CASE("fixed-point dichotomy") {
  auto fr = parse_amalgam("free:2");
  auto r = fixed_point_probe(fr, 12);
  CHECK(r.kind == ProbeResult::Kind::unbounded);
  CHECK(r.translation_length == 1);

  auto am = modular_amalgam();
  r = fixed_point_probe(am, 12);
  CHECK(r.kind == ProbeResult::Kind::unbounded);

  am.generator_words = {"a", "ab"};
  r = fixed_point_probe(am, 12);
  CHECK(r.kind == ProbeResult::Kind::unbounded);
  CHECK(r.witness == "ab");
  CHECK(r.translation_length == 2);

  am.generator_words = {"a"};  // one factor only
  r = fixed_point_probe(am, 12);
  CHECK(r.kind == ProbeResult::Kind::bounded_vertex);

  am.generator_words = {"aa"};  // central: fixes everything, vertex found
  r = fixed_point_probe(am, 12);
  CHECK(r.kind == ProbeResult::Kind::bounded_vertex);

  CHECK_THROWS_AS(fixed_point_probe(am, 2), std::invalid_argument);
}
