#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "action.hpp"
#include "free_word.hpp"

namespace sb {

/// Element of the kernel tower: one reduced word per level, levels[0] at
/// level n down to levels[n-2] at level 2. Level m covers strands
/// n-m+1 .. n; its strand-j basis letters carry the global pair
/// (n-m+1, n-m+j). Equality is componentwise equality of reduced words.
struct KElement {
  int n = 2;
  int genus = 1;
  std::vector<FreeWord> levels;

  FreeWord& at_level(int m) { return levels[static_cast<size_t>(n - m)]; }
  const FreeWord& at_level(int m) const { return levels[static_cast<size_t>(n - m)]; }

  bool operator==(const KElement& o) const {
    return n == o.n && genus == o.genus && levels == o.levels;
  }
};

KElement k_identity(int n, int genus);
KElement k_from_word(const FreeWord& w, int n, int genus);
bool k_is_identity(const KElement& x);

/// Semidirect multiplication: at each level the lower part of `a` acts on
/// the level word of `b` through composed generator conjugations, then the
/// level words multiply. Raises action-undefined outside the fragment.
KElement k_multiply(const KElement& a, const KElement& b, const PeripheralTable& table);

KElement k_inverse(const KElement& a, const PeripheralTable& table);

KElement k_conjugate(const KElement& g, const KElement& x, const PeripheralTable& table);

/// Sum over levels of signed unit vectors e_{i,j}, one per basis letter.
std::map<std::pair<int, int>, long> kappa(const KElement& x);

long deg(const KElement& x);

/// The unique pair with kappa(x) = e_{i,j}; error when kappa is not a
/// positive unit vector.
std::pair<int, int> upsilon_classify(const KElement& x);

bool commutes(const KElement& u, const KElement& v, const PeripheralTable& table);

/// Canonical serialization, parseable by k_parse. "1" for the identity.
std::string k_key(const KElement& x);
KElement k_parse(const std::string& text, int n, int genus);

/// A conjugate w t w^-1 of a single basis symbol, all at one level.
struct UpsilonElement {
  int level = 2;
  int strand = 2;
  FreeWord conjugator;
  BasisSymbol core;
  KElement element;
  std::string key;
};

UpsilonElement make_upsilon(const FreeWord& conjugator, const BasisSymbol& core, int n);

/// Vertex key of an Upsilon-shaped element: conjugacy class representative
/// of its single nonzero level word, then the full reduced word.
std::string upsilon_key(const KElement& x);

}  // namespace sb
