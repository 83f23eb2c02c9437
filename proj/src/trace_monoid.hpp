#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sb {

/// Commutation graph: vertices are opaque interned keys with a total order
/// (index order = sorted key order), edges mark commuting pairs. No loops.
class CommutationGraph {
 public:
  CommutationGraph(std::vector<std::string> vertices,
                   std::set<std::pair<std::string, std::string>> edges);

  size_t size() const { return vertices_.size(); }
  const std::string& vertex(size_t id) const { return vertices_[id]; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  int id_of(const std::string& key) const;  // -1 when absent
  bool adjacent(int a, int b) const;
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const CommutationGraph& o) const {
    return vertices_ == o.vertices_ && adj_ == o.adj_;
  }

 private:
  std::vector<std::string> vertices_;       // sorted, unique
  std::vector<std::vector<bool>> adj_;
};

using GraphPtr = std::shared_ptr<const CommutationGraph>;

struct TraceWord {
  GraphPtr graph;
  std::vector<int> letters;

  size_t size() const { return letters.size(); }
};

TraceWord make_trace_word(GraphPtr graph, const std::vector<std::string>& keys);

using FoataForm = std::vector<std::vector<int>>;

/// Unique factorization into maximal blocks of pairwise-commuting letters;
/// two words are equal in the monoid iff their forms coincide.
FoataForm foata_normal_form(const TraceWord& w);

/// The word read off a Foata form (blocks in order, sorted inside blocks).
TraceWord foata_flatten(const TraceWord& w);

bool trace_equal(const TraceWord& u, const TraceWord& v);

/// For x = x_1..x_l = y_1..y_l with y_k = x_1 and y_i != x_1 for i < k,
/// verifies that every y_i with i < k commutes with x_1 and returns the
/// witnessing edges. Violated preconditions throw; a missing edge (which the
/// engine guarantees cannot happen for genuinely equal traces) throws
/// internal.
std::vector<std::pair<int, int>> leading_commuters(const TraceWord& x, const TraceWord& y,
                                                   size_t k);

/// Dump format {"vertices":[...],"edges":[["v","w"],...]}.
std::string graph_to_json(const CommutationGraph& g);

}  // namespace sb
