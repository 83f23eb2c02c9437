#include <doctest.h>

#include <set>

#include "errors.hpp"
#include "rng.hpp"
#include "surface_word.hpp"

using namespace sb;

namespace {

SurfaceWord W(const std::string& text, int genus) { return parse_surface_word(text, genus); }

}  // namespace

TEST_CASE("surface word parsing") {
  SurfaceWord w = W("x1.x2^-1", 1);
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0].index == 1);
  CHECK(w.letters[0].sign == 1);
  CHECK(w.letters[1].index == 2);
  CHECK(w.letters[1].sign == -1);

  CHECK(W("", 1).letters.empty());
  CHECK(W("x1 x2^-1", 1) == W("x1.x2^-1", 1));

  CHECK_THROWS_AS(W("x5", 2), Error);
  CHECK_THROWS_AS(W("y1", 1), Error);
  CHECK_THROWS_AS(W("x", 1), Error);
}

TEST_CASE("surface product reduces freely") {
  CHECK(sg_product(W("x1", 1), W("x1^-1", 1)).letters.empty());
  CHECK(sg_product(W("x1", 1), W("x2", 1)) == W("x1.x2", 1));
  CHECK(sg_product(W("x1.x2", 1), W("x2^-1.x1", 1)) == W("x1.x1", 1));
  CHECK_THROWS_AS(sg_product(W("x1", 1), W("x1", 2)), Error);
}

TEST_CASE("identity recognition") {
  CHECK(is_identity(W("x1.x2.x1^-1.x2^-1", 1)));
  CHECK(is_identity(W("x1.x2.x3.x4.x1^-1.x2^-1.x3^-1.x4^-1", 2)));
  CHECK(!is_identity(W("x1", 2)));
  CHECK(!is_identity(W("x1.x2", 1)));
  CHECK(is_identity(W("", 2)));
  // the relation in its printed two-sided form
  CHECK(is_identity(sg_product(W("x1.x2.x3.x4", 2), sg_inverse(W("x4.x3.x2.x1", 2)))));
}

TEST_CASE("canonical forms at genus 1") {
  CHECK(canonical_form(W("x2.x1", 1)) == W("x1.x2", 1));
  CHECK(canonical_form(W("x1.x1^-1", 1)).letters.empty());
  CHECK(to_string(canonical_form(W("x2^-1.x1.x2", 1))) == "x1");
  // canonical length equals |p| + |q|
  SplitMix64 rng(11);
  for (int t = 0; t < 200; ++t) {
    SurfaceWord w;
    w.genus = 1;
    int len = static_cast<int>(rng.below(9));
    for (int i = 0; i < len; ++i)
      w.letters.push_back({static_cast<int>(rng.below(2)) + 1, rng.coin() ? 1 : -1});
    auto e = exponent_vector(w);
    CHECK(canonical_form(w).letters.size() ==
          static_cast<size_t>(std::abs(e[0]) + std::abs(e[1])));
  }
}

TEST_CASE("genus 1 prefix closure, exhaustive |p|,|q| <= 4") {
  for (int p = -4; p <= 4; ++p) {
    for (int q = -4; q <= 4; ++q) {
      SurfaceWord w;
      w.genus = 1;
      for (int i = 0; i < std::abs(p); ++i) w.letters.push_back({1, p > 0 ? 1 : -1});
      for (int i = 0; i < std::abs(q); ++i) w.letters.push_back({2, q > 0 ? 1 : -1});
      REQUIRE(is_canonical(w));
      CHECK(noncanonical_prefixes(w).empty());
    }
  }
}

TEST_CASE("canonical form at genus 2 picks the ShortLex-least geodesic") {
  // both sides of the defining relation are geodesic; the closure search
  // must connect them and pick the smaller
  CHECK(canonical_form(W("x4.x3.x2.x1", 2)) == W("x1.x2.x3.x4", 2));
  // the bounded search oracle confirms the pair is one element
  CHECK(cayley_ball_is_identity(
      sg_product(W("x4.x3.x2.x1", 2), sg_inverse(W("x1.x2.x3.x4", 2))), 8));
  CHECK(is_canonical(W("x1.x2.x3.x4", 2)));
  CHECK(canonical_form(W("x1.x1^-1", 2)).letters.empty());
  CHECK(canonical_form(W("x3", 2)) == W("x3", 2));
}

TEST_CASE("genus 2 canonical forms are sound and idempotent") {
  SplitMix64 rng(23);
  for (int t = 0; t < 1000; ++t) {
    SurfaceWord w;
    w.genus = 2;
    int len = static_cast<int>(rng.below(13));
    for (int i = 0; i < len; ++i)
      w.letters.push_back({static_cast<int>(rng.below(4)) + 1, rng.coin() ? 1 : -1});
    SurfaceWord canon = canonical_form(w);
    CHECK(is_identity(sg_product(w, sg_inverse(canon))));
    CHECK(canonical_form(canon) == canon);
  }
}

TEST_CASE("canonical equality tracks the word problem") {
  SplitMix64 rng(37);
  for (int t = 0; t < 80; ++t) {
    SurfaceWord u;
    u.genus = 2;
    int len = static_cast<int>(rng.below(7));
    for (int i = 0; i < len; ++i)
      u.letters.push_back({static_cast<int>(rng.below(4)) + 1, rng.coin() ? 1 : -1});
    SurfaceWord v;
    v.genus = 2;
    len = static_cast<int>(rng.below(7));
    for (int i = 0; i < len; ++i)
      v.letters.push_back({static_cast<int>(rng.below(4)) + 1, rng.coin() ? 1 : -1});
    bool same = is_identity(sg_product(u, sg_inverse(v)));
    CHECK((canonical_form(u) == canonical_form(v)) == same);
  }
}

TEST_CASE("bounded search oracle agrees with the word problem at genus 2") {
  SplitMix64 rng(41);
  for (int t = 0; t < 120; ++t) {
    SurfaceWord w;
    w.genus = 2;
    int len = static_cast<int>(rng.below(9));
    for (int i = 0; i < len; ++i)
      w.letters.push_back({static_cast<int>(rng.below(4)) + 1, rng.coin() ? 1 : -1});
    CHECK(cayley_ball_is_identity(w, 8) == is_identity(w));
  }
  // trivial words of full length are still detected
  SurfaceWord r = W("x1.x2.x3.x4.x1^-1.x2^-1.x3^-1.x4^-1", 2);
  CHECK(cayley_ball_is_identity(r, 8));
}

TEST_CASE("short geodesics at genus 2 are unique up to the defining swap") {
  // the shortest relation has length 8, so distinct freely reduced words of
  // length <= 3 are distinct elements and every such word is canonical
  std::vector<SurfaceWord> ball;
  {
    SurfaceWord empty;
    empty.genus = 2;
    ball.push_back(empty);
    size_t begin = 0;
    for (int len = 1; len <= 3; ++len) {
      size_t end = ball.size();
      for (size_t t = begin; t < end; ++t)
        for (int idx = 1; idx <= 4; ++idx)
          for (int sign : {1, -1}) {
            if (!ball[t].letters.empty() && ball[t].letters.back().index == idx &&
                ball[t].letters.back().sign == -sign)
              continue;
            SurfaceWord w = ball[t];
            w.letters.push_back({idx, sign});
            ball.push_back(std::move(w));
          }
      begin = end;
    }
  }
  CHECK(ball.size() == 457);  // 1 + 8 + 56 + 392
  for (const SurfaceWord& w : ball) CHECK(canonical_form(w) == w);

  // at length 4 the only coincidences are half-relator swap mates
  size_t nonleast = 0;
  std::set<std::string> classes;
  std::vector<SurfaceWord> length4;
  for (const SurfaceWord& w : ball) {
    if (w.letters.size() != 3) continue;
    for (int idx = 1; idx <= 4; ++idx)
      for (int sign : {1, -1}) {
        if (w.letters.back().index == idx && w.letters.back().sign == -sign) continue;
        SurfaceWord v = w;
        v.letters.push_back({idx, sign});
        length4.push_back(std::move(v));
      }
  }
  CHECK(length4.size() == 2744);
  for (const SurfaceWord& w : length4) {
    SurfaceWord canon = canonical_form(w);
    CHECK(canon.letters.size() == 4);
    classes.insert(to_string(canon));
    if (!(canon == w)) {
      ++nonleast;
      CHECK(is_identity(sg_product(w, sg_inverse(canon))));
      CHECK(shortlex_compare(canon, w) < 0);
    }
  }
  CHECK(classes.size() + nonleast == length4.size());
  CHECK(nonleast == 8);  // one mate per unordered half-split of the relator
}
