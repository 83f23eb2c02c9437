#pragma once

#include <string>
#include <vector>

namespace sb {

enum class BKind { Sigma, A, Tau, Delta };

/// Token of the singular braid monoid presentation: sigma_i^{±1}, a_k^{±1},
/// tau_i, delta_i. tau/delta carry no inverse.
struct BraidLetter {
  BKind kind = BKind::Sigma;
  int index = 1;
  int sign = 1;

  bool operator==(const BraidLetter&) const = default;
};

BraidLetter sig(int i, int sign = 1);
BraidLetter gen_a(int k, int sign = 1);
BraidLetter tau(int i);
BraidLetter del(int i);

struct BraidWord {
  int n = 2;
  int genus = 1;
  std::vector<BraidLetter> letters;

  bool operator==(const BraidWord& o) const {
    return n == o.n && genus == o.genus && letters == o.letters;
  }
};

/// Grammar: whitespace-separated tokens `s<i>`, `s<i>^-1`, `a<k>`, `a<k>^-1`,
/// `t<i>`, `d<i>`.
BraidWord parse_braid_word(const std::string& text, int n, int genus);
std::string to_string(const BraidWord& w);
std::string to_string(const BraidLetter& l);

bool has_singular(const BraidWord& w);
int singular_order(const BraidWord& w);

BraidWord bw_concat(const BraidWord& u, const BraidWord& v);
BraidWord bw_inverse(const BraidWord& w);  // error if singular letters present

/// Free cancellation of adjacent sigma/a inverse pairs. tau/delta block.
BraidWord free_cancel(const BraidWord& w);

/// Image under theta: sigma_i, tau_i, delta_i -> (i,i+1), a_k -> 1; the word
/// is read left to right. perm[x] is the image of strand x (0-indexed).
std::vector<int> permutation_of(const BraidWord& w);

// Generator expansions as printed in the presentation.
BraidWord expand_T(int i, int j, int n, int genus);       // 1 <= i < j <= n
BraidWord expand_a_ik(int i, int k, int n, int genus);    // 1 <= i <= n, 1 <= k <= 2g
BraidWord expand_A2(int r, int n, int genus);             // 1 <= r <= 2g
BraidWord expand_delta(int i, int n, int genus);          // sigma_i tau_i

enum class RelId {
  R0, R1, R2, R3, R4, R5, R6,
  R7, R8, R9, R10, R11, R12,
  R7p, R8p, R9p, R10p, R11p, R12p,
  ConjT,  // T_{r,s} T_{1,j} T_{r,s}^-1 rules
  ConjA,  // a_{i,k} T_{1,j} a_{i,k}^-1 rules
};

std::string to_string(RelId id);

/// One certified rewriting step: relation id, side parameters, position, and
/// direction (reverse applies right side -> left side).
struct RelationInstance {
  RelId id = RelId::R0;
  int i = 0, j = 0, r = 0, s = 0, k = 0;
  BraidLetter letter;  // R0 only: the first letter of the cancelling pair
  size_t pos = 0;
  bool reverse = false;
};

/// Printed sides (left, right) of the relation for the given parameters.
/// Throws on parameters violating the side conditions.
std::pair<BraidWord, BraidWord> relation_sides(const RelationInstance& inst, int n, int genus);

/// Replaces the matched side at inst.pos by the other side. Throws if the
/// side does not occur there.
BraidWord apply_relation(const BraidWord& w, const RelationInstance& inst);

/// Forward: tau_i -> sigma_i^-1 delta_i. Inverse mode: delta_i -> sigma_i tau_i.
BraidWord delta_substitute(const BraidWord& w, bool inverse_mode = false);

struct EtaTerm {
  int coeff = 1;
  BraidWord word;
};

/// Multiplicative expansion tau_i -> sigma_i - sigma_i^-1,
/// delta_i -> sigma_i^2 - 1. 2^d signed words, no collection; the plus
/// branch of the leftmost singular letter varies slowest.
std::vector<EtaTerm> eta_expand(const BraidWord& w);

struct SplitConjugate {
  BraidWord conj;  // non-singular prefix
  int index = 1;   // delta index
};

struct SplitResult {
  std::vector<SplitConjugate> trace;
  BraidWord braid;
  std::vector<RelationInstance> log;  // R0 insertions, replayable on the input
};

/// Writes w (delta form; tau letters rejected) as a product of left-conjugated
/// delta symbols followed by the non-singular remainder. Each logged step is
/// an R0 insertion; replaying the log on w yields literally the expansion of
/// (trace, braid).
SplitResult split_singular(const BraidWord& w);

/// The word (alpha_1 d_{i_1} alpha_1^-1)...(alpha_t d_{i_t} alpha_t^-1) braid.
BraidWord split_expansion(const SplitResult& r, int n, int genus);

}  // namespace sb
