#pragma once

#include <map>
#include <string>
#include <vector>

#include "surface_word.hpp"

namespace sb {

/// Free generator b(gamma, j) of the level-m free group: the loop of the
/// moving strand around strand j, translated by gamma. gamma is always stored
/// in canonical form, so componentwise equality is equality of generators.
struct BasisSymbol {
  SurfaceWord gamma;  // canonical
  int strand = 2;     // j, 2 <= j <= level
  int level = 2;      // m, 2 <= m <= n

  bool operator==(const BasisSymbol& o) const {
    return level == o.level && strand == o.strand && gamma == o.gamma;
  }
};

/// Total order (level, strand, ShortLex gamma); deterministic everywhere a
/// least representative is picked.
int compare(const BasisSymbol& a, const BasisSymbol& b);
bool operator<(const BasisSymbol& a, const BasisSymbol& b);

BasisSymbol make_basis_symbol(const SurfaceWord& gamma, int strand, int level);

/// Text form `b[<gamma>;<j>]@<m>`, e.g. `b[x1.x2^-1;3]@4`.
std::string to_string(const BasisSymbol& s);

struct FreeLetter {
  BasisSymbol sym;
  int sign = 1;

  bool operator==(const FreeLetter&) const = default;
};

int compare(const FreeLetter& a, const FreeLetter& b);

struct FreeWord {
  int level = 2;
  std::vector<FreeLetter> letters;

  bool operator==(const FreeWord& o) const {
    return level == o.level && letters == o.letters;
  }
  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
};

std::string to_string(const FreeWord& w);

/// Letter grammar `b[<gamma>;<j>]@<m>` with optional `^-1`, whitespace
/// separated. All letters must carry the same level.
FreeWord parse_free_word(const std::string& text, int genus, int default_level);

FreeWord free_reduce(const FreeWord& w);
FreeWord fw_concat(const FreeWord& u, const FreeWord& v);  // reduced product
FreeWord fw_inverse(const FreeWord& w);
FreeWord fw_conjugate(const FreeWord& conj, const FreeWord& w);  // conj w conj^-1

/// Cyclically reduced, lexicographically least rotation. Canonical on
/// conjugacy classes reachable by construction witnesses.
FreeWord conj_class_rep(const FreeWord& w);

/// Exponent-sum vector in the free abelianization.
std::map<BasisSymbol, int> abelianize(const FreeWord& w);

/// Letter-wise substitution rule; missing symbols raise action-undefined.
struct EndoRule {
  std::vector<std::pair<BasisSymbol, FreeWord>> images;

  const FreeWord* find(const BasisSymbol& s) const;
};

FreeWord apply_endomorphism(const EndoRule& rule, const FreeWord& w);

}  // namespace sb
