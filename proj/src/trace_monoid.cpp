#include "trace_monoid.hpp"

#include <algorithm>

#include <json.hpp>

#include "errors.hpp"

namespace sb {

CommutationGraph::CommutationGraph(std::vector<std::string> vertices,
                                   std::set<std::pair<std::string, std::string>> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  vertices_ = std::move(vertices);
  adj_.assign(vertices_.size(), std::vector<bool>(vertices_.size(), false));
  for (const auto& [a, b] : edges) {
    int ia = id_of(a), ib = id_of(b);
    if (ia < 0 || ib < 0)
      throw Error(ErrCode::Domain, "commutation_graph", "edge endpoint is not a vertex",
                  ia < 0 ? a : b);
    if (ia == ib)
      throw Error(ErrCode::Domain, "commutation_graph", "loops are not allowed", a);
    adj_[ia][ib] = adj_[ib][ia] = true;
  }
}

int CommutationGraph::id_of(const std::string& key) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), key);
  if (it == vertices_.end() || *it != key) return -1;
  return static_cast<int>(it - vertices_.begin());
}

bool CommutationGraph::adjacent(int a, int b) const {
  return adj_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

std::vector<std::pair<int, int>> CommutationGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (size_t a = 0; a < adj_.size(); ++a)
    for (size_t b = a + 1; b < adj_.size(); ++b)
      if (adj_[a][b]) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return out;
}

TraceWord make_trace_word(GraphPtr graph, const std::vector<std::string>& keys) {
  TraceWord w;
  w.graph = std::move(graph);
  for (const std::string& key : keys) {
    int id = w.graph->id_of(key);
    if (id < 0)
      throw Error(ErrCode::Domain, "make_trace_word", "letter is not a vertex", key);
    w.letters.push_back(id);
  }
  return w;
}

FoataForm foata_normal_form(const TraceWord& w) {
  const CommutationGraph& g = *w.graph;
  FoataForm blocks;
  std::vector<size_t> level(w.letters.size(), 0);
  for (size_t t = 0; t < w.letters.size(); ++t) {
    size_t lvl = 0;
    for (size_t s = 0; s < t; ++s) {
      bool dependent = w.letters[s] == w.letters[t] || !g.adjacent(w.letters[s], w.letters[t]);
      if (dependent) lvl = std::max(lvl, level[s] + 1);
    }
    level[t] = lvl;
    if (blocks.size() <= lvl) blocks.resize(lvl + 1);
    blocks[lvl].push_back(w.letters[t]);
  }
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return blocks;
}

TraceWord foata_flatten(const TraceWord& w) {
  FoataForm f = foata_normal_form(w);
  TraceWord out;
  out.graph = w.graph;
  for (const auto& block : f)
    out.letters.insert(out.letters.end(), block.begin(), block.end());
  return out;
}

bool trace_equal(const TraceWord& u, const TraceWord& v) {
  if (u.graph != v.graph && !(*u.graph == *v.graph))
    throw Error(ErrCode::Domain, "trace_equal", "graph mismatch");
  return foata_normal_form(u) == foata_normal_form(v);
}

std::vector<std::pair<int, int>> leading_commuters(const TraceWord& x, const TraceWord& y,
                                                   size_t k) {
  if (x.letters.size() != y.letters.size())
    throw Error(ErrCode::Domain, "leading_commuters", "words have different lengths");
  if (k < 1 || k > y.letters.size())
    throw Error(ErrCode::Domain, "leading_commuters", "k out of range");
  if (!trace_equal(x, y))
    throw Error(ErrCode::Domain, "leading_commuters", "words are not trace-equal");
  if (x.letters.empty())
    throw Error(ErrCode::Domain, "leading_commuters", "empty words");
  int x1 = x.letters.front();
  if (y.letters[k - 1] != x1)
    throw Error(ErrCode::Domain, "leading_commuters", "y_k differs from x_1");
  for (size_t i = 0; i + 1 < k; ++i)
    if (y.letters[i] == x1)
      throw Error(ErrCode::Domain, "leading_commuters", "x_1 occurs before position k");
  std::vector<std::pair<int, int>> cert;
  for (size_t i = 0; i + 1 < k; ++i) {
    if (!x.graph->adjacent(y.letters[i], x1))
      throw Error(ErrCode::Internal, "leading_commuters",
                  "missing edge contradicts trace equality",
                  x.graph->vertex(static_cast<size_t>(y.letters[i])));
    cert.emplace_back(y.letters[i], x1);
  }
  return cert;
}

std::string graph_to_json(const CommutationGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const std::string& v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges())
    j["edges"].push_back({g.vertex(static_cast<size_t>(a)), g.vertex(static_cast<size_t>(b))});
  return j.dump();
}

}  // namespace sb
