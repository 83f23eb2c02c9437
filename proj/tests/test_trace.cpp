#include <doctest.h>

#include <deque>

#include "errors.hpp"
#include "rng.hpp"
#include "upsilon_graph.hpp"

using namespace sb;

namespace {

GraphPtr graph_of(std::vector<std::string> verts,
                  std::set<std::pair<std::string, std::string>> edges) {
  return std::make_shared<CommutationGraph>(std::move(verts), std::move(edges));
}

const PeripheralTable& table() {
  static PeripheralTable t = PeripheralTable::defaults(1);
  return t;
}

}  // namespace

TEST_CASE("foata blocks") {
  GraphPtr g = graph_of({"x", "y", "z"}, {{"x", "y"}});
  TraceWord xy = make_trace_word(g, {"x", "y"});
  FoataForm f = foata_normal_form(xy);
  REQUIRE(f.size() == 1);
  CHECK(f[0].size() == 2);

  TraceWord yx = make_trace_word(g, {"y", "x"});
  CHECK(foata_normal_form(yx) == f);

  GraphPtr free2 = graph_of({"x", "y"}, {});
  TraceWord xy_free = make_trace_word(free2, {"x", "y"});
  FoataForm ff = foata_normal_form(xy_free);
  REQUIRE(ff.size() == 2);
  CHECK(ff[0].size() == 1);
  CHECK(ff[1].size() == 1);

  CHECK(foata_normal_form(make_trace_word(g, {})).empty());
  // repeated letters never share a block
  TraceWord xx = make_trace_word(g, {"x", "x"});
  CHECK(foata_normal_form(xx).size() == 2);
}

TEST_CASE("trace equality") {
  GraphPtr g = graph_of({"x", "y", "z"}, {{"x", "y"}});
  CHECK(trace_equal(make_trace_word(g, {"x", "y", "z"}), make_trace_word(g, {"y", "x", "z"})));
  CHECK(!trace_equal(make_trace_word(g, {"x", "z"}), make_trace_word(g, {"z", "x"})));
  TraceWord w = make_trace_word(g, {"z", "y", "x"});
  CHECK(trace_equal(w, w));
  GraphPtr h = graph_of({"x", "y"}, {});
  CHECK_THROWS_AS(trace_equal(make_trace_word(g, {"x"}), make_trace_word(h, {"x"})), Error);
}

TEST_CASE("foata equality matches the swap closure exhaustively") {
  SplitMix64 rng(53);
  for (int t = 0; t < 40; ++t) {
    int nv = 2 + static_cast<int>(rng.below(4));
    std::vector<std::string> verts;
    for (int i = 0; i < nv; ++i) verts.push_back("v" + std::to_string(i));
    std::set<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        if (rng.coin()) edges.insert({verts[a], verts[b]});
    GraphPtr g = graph_of(verts, edges);
    int len = 1 + static_cast<int>(rng.below(6));
    std::vector<int> letters;
    for (int i = 0; i < len; ++i) letters.push_back(static_cast<int>(rng.below(nv)));
    TraceWord w{g, letters};

    std::set<std::vector<int>> closure{letters};
    std::deque<std::vector<int>> queue{letters};
    while (!queue.empty()) {
      std::vector<int> cur = queue.front();
      queue.pop_front();
      for (size_t i = 0; i + 1 < cur.size(); ++i)
        if (cur[i] != cur[i + 1] && g->adjacent(cur[i], cur[i + 1])) {
          std::vector<int> nxt = cur;
          std::swap(nxt[i], nxt[i + 1]);
          if (closure.insert(nxt).second) queue.push_back(nxt);
        }
    }
    for (const std::vector<int>& other : closure)
      CHECK(trace_equal(w, TraceWord{g, other}));
    for (int probe = 0; probe < 4; ++probe) {
      std::vector<int> other;
      for (int i = 0; i < len; ++i) other.push_back(static_cast<int>(rng.below(nv)));
      CHECK(trace_equal(w, TraceWord{g, other}) == (closure.count(other) > 0));
    }
  }
}

TEST_CASE("leading commuters certificate") {
  GraphPtr g = graph_of({"a", "b"}, {{"a", "b"}});
  TraceWord x = make_trace_word(g, {"a", "b"});
  TraceWord y = make_trace_word(g, {"b", "a"});
  auto cert = leading_commuters(x, y, 2);
  REQUIRE(cert.size() == 1);
  CHECK(cert[0] == std::make_pair(g->id_of("b"), g->id_of("a")));
  CHECK(leading_commuters(x, x, 1).empty());

  GraphPtr h = graph_of({"a", "b"}, {});
  TraceWord u = make_trace_word(h, {"a", "b"});
  CHECK(leading_commuters(u, u, 1).empty());
  CHECK_THROWS_AS(leading_commuters(u, make_trace_word(h, {"b", "a"}), 2), Error);
}

TEST_CASE("leading commuters on scrambled instances never fail") {
  SplitMix64 rng(59);
  for (int t = 0; t < 300; ++t) {
    int nv = 2 + static_cast<int>(rng.below(7));
    std::vector<std::string> verts;
    for (int i = 0; i < nv; ++i) verts.push_back("v" + std::to_string(i));
    std::set<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        if (rng.below(16) < 8) edges.insert({verts[a], verts[b]});
    GraphPtr g = graph_of(verts, edges);
    int len = 1 + static_cast<int>(rng.below(8));
    std::vector<int> letters;
    for (int i = 0; i < len; ++i) letters.push_back(static_cast<int>(rng.below(nv)));
    TraceWord x{g, letters};
    std::vector<int> scr = letters;
    for (int sw = 0; sw < 12 && scr.size() >= 2; ++sw) {
      size_t i = rng.below(scr.size() - 1);
      if (scr[i] != scr[i + 1] && g->adjacent(scr[i], scr[i + 1]))
        std::swap(scr[i], scr[i + 1]);
    }
    TraceWord y{g, scr};
    size_t k = 0;
    for (size_t i = 0; i < scr.size(); ++i)
      if (scr[i] == letters[0]) {
        k = i + 1;
        break;
      }
    REQUIRE(k >= 1);
    auto cert = leading_commuters(x, y, k);
    CHECK(cert.size() == k - 1);
  }
}

TEST_CASE("omega fragment construction") {
  const int n = 2, genus = 1;
  FreeWord empty_conj;
  empty_conj.level = 2;
  auto U = [&](const std::string& gamma) {
    return make_upsilon(empty_conj,
                        make_basis_symbol(parse_surface_word(gamma, genus), 2, 2), n);
  };
  // distinct level-2 letters never commute
  OmegaFragment frag = build_omega_fragment({U(""), U("x1")}, table());
  CHECK(frag.graph->size() == 2);
  CHECK(frag.graph->edges().empty());
  // duplicates collapse
  OmegaFragment one = build_omega_fragment({U(""), U("")}, table());
  CHECK(one.graph->size() == 1);
  // disjoint pairs at n = 4 give an edge
  FreeWord c4;
  c4.level = 4;
  UpsilonElement top = make_upsilon(c4, make_basis_symbol(parse_surface_word("", 1), 2, 4), 4);
  FreeWord c2;
  c2.level = 2;
  UpsilonElement low = make_upsilon(c2, make_basis_symbol(parse_surface_word("", 1), 2, 2), 4);
  OmegaFragment frag4 = build_omega_fragment({top, low}, table());
  CHECK(frag4.graph->edges().size() == 1);
}

TEST_CASE("phi maps hat symbols to twist conjugates") {
  const int n = 3, genus = 1;
  HatSymbol plain;
  plain.conj = parse_braid_word("", n, genus);
  plain.index = 1;
  KElement img = upsilon_from_hat(plain, n, genus, table());
  // sigma_1^2 is the (1,2) strand loop
  CHECK(upsilon_classify(img) == std::make_pair(1, 2));
  CHECK(k_key(img) == "b[;2]@3");

  // empty word maps to empty word; the map is length-preserving
  PhiResult empty = phi_iso({}, n, genus, table());
  CHECK(empty.word.letters.empty());
  PhiResult twice = phi_iso({plain, plain}, n, genus, table());
  CHECK(twice.word.letters.size() == 2);
  CHECK(twice.fragment.graph->size() == 1);

  // a handle conjugator dresses the loop
  HatSymbol dressed;
  dressed.conj = parse_braid_word("a1", n, genus);
  dressed.index = 1;
  CHECK(k_key(upsilon_from_hat(dressed, n, genus, table())) == "b[x1;2]@3");

  // sigma conjugators re-pair the loop
  HatSymbol moved;
  moved.conj = parse_braid_word("s2^-1", n, genus);
  moved.index = 1;
  CHECK(upsilon_classify(upsilon_from_hat(moved, n, genus, table())) ==
        std::make_pair(1, 3));

  // a generator fixes its own square
  HatSymbol self;
  self.conj = parse_braid_word("s1^-1", n, genus);
  self.index = 1;
  CHECK(k_key(upsilon_from_hat(self, n, genus, table())) == "b[;2]@3");

  // dressed three-letter push
  HatSymbol dressed3;
  dressed3.conj = parse_braid_word("s2", n, genus);
  dressed3.index = 1;
  KElement d3 = upsilon_from_hat(dressed3, n, genus, table());
  CHECK(upsilon_classify(d3) == std::make_pair(1, 3));
  CHECK(k_key(d3) == "b[;2]@3^-1 b[;3]@3 b[;2]@3");

  // the clean re-pairing push
  HatSymbol repaired;
  repaired.conj = parse_braid_word("s1", n, genus);
  repaired.index = 2;
  CHECK(upsilon_classify(upsilon_from_hat(repaired, n, genus, table())) ==
        std::make_pair(1, 3));

  // unsupported conjugators fail loudly: x2 x1 is not a normal form
  HatSymbol off_fragment;
  off_fragment.conj = parse_braid_word("a2 a1", n, genus);
  off_fragment.index = 1;
  CHECK_THROWS_AS(upsilon_from_hat(off_fragment, n, genus, table()), Error);
}

TEST_CASE("phi preserves trace equality on legal scrambles") {
  const int n = 4, genus = 1;
  SplitMix64 rng(61);
  BraidWord empty_conj = parse_braid_word("", n, genus);
  for (int t = 0; t < 30; ++t) {
    std::vector<HatSymbol> word;
    int len = 1 + static_cast<int>(rng.below(5));
    for (int i = 0; i < len; ++i) {
      HatSymbol s;
      s.conj = rng.coin() ? parse_braid_word("a1", n, genus) : empty_conj;
      s.index = 1 + static_cast<int>(rng.below(3));
      word.push_back(s);
    }
    PhiResult a = phi_iso(word, n, genus, table());
    CHECK(a.word.letters.size() == word.size());
    std::vector<HatSymbol> shuffled = word;
    for (int sw = 0; sw < 8 && shuffled.size() >= 2; ++sw) {
      size_t i = rng.below(shuffled.size() - 1);
      int va = a.fragment.graph->id_of(
          upsilon_key(upsilon_from_hat(shuffled[i], n, genus, table())));
      int vb = a.fragment.graph->id_of(
          upsilon_key(upsilon_from_hat(shuffled[i + 1], n, genus, table())));
      if (va != vb && a.fragment.graph->adjacent(va, vb))
        std::swap(shuffled[i], shuffled[i + 1]);
    }
    PhiResult b = phi_iso(shuffled, n, genus, table());
    CHECK(trace_equal(a.word, TraceWord{a.fragment.graph, b.word.letters}));
  }
}

TEST_CASE("graph dump format") {
  GraphPtr g = graph_of({"b", "a", "c"}, {{"a", "b"}});
  CHECK(graph_to_json(*g) == R"({"vertices":["a","b","c"],"edges":[["a","b"]]})");
  GraphPtr lone = graph_of({"v"}, {});
  CHECK(graph_to_json(*lone) == R"({"vertices":["v"],"edges":[]})");
}
