#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k_element.hpp"
#include "upsilon_graph.hpp"

namespace sb {

/// Integer formal sum over tower elements, keyed by canonical serialization.
/// Zero coefficients are never stored.
struct FormalSum {
  std::map<std::string, std::pair<KElement, long long>> terms;

  void add(const KElement& e, long long c);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const FormalSum& o) const;
};

FormalSum fs_one(int n, int genus);  // 1 * identity
FormalSum fs_add(const FormalSum& p, const FormalSum& q);
FormalSum fs_scale(const FormalSum& p, long long c);
FormalSum fs_mul_left(const KElement& u, const FormalSum& p, const PeripheralTable& table);
FormalSum fs_mul_right(const FormalSum& p, const KElement& u, const PeripheralTable& table);

/// Stable fingerprint: sorted (key, coeff) pairs.
std::string fs_fingerprint(const FormalSum& p);

/// Collected product of (u_i - 1) over the word.
FormalSum nu(const std::vector<KElement>& word, int n, int genus, const PeripheralTable& table);
FormalSum nu(const TraceWord& word, const OmegaFragment& frag, int n, int genus,
             const PeripheralTable& table);

/// Independent route: sum over subindices I of (-1)^(l-|I|) * product(I).
FormalSum nu_subindex(const std::vector<KElement>& word, int n, int genus,
                      const PeripheralTable& table);

FormalSum graded_component(const FormalSum& p, long k);

/// Terms whose kappa vector is supported on S.
FormalSum kappa_filter(const FormalSum& p, const std::set<std::pair<int, int>>& S);

struct DecodeResult {
  OmegaFragment fragment;
  TraceWord word;  // Foata-flattened
};

/// Inverts nu on the fragment: reads the length off the top grade, recovers
/// the letter multiset from grade one, then peels first letters by the
/// telescoping of the subindex sums, backtracking in ShortLex order with
/// kappa-filter pruning. Raises not-in-image when no candidate survives.
DecodeResult decode(const FormalSum& p, int n, int genus, const PeripheralTable& table);

/// All words over the fragment generators with nu(word) = p and length
/// <= lmax, deduplicated by trace equality, sorted.
std::vector<TraceWord> brute_force_preimage(const FormalSum& p, const OmegaFragment& gens,
                                            int lmax, const PeripheralTable& table);

}  // namespace sb
