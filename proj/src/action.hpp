#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "free_word.hpp"

namespace sb {

/// Letter of an intermediate conjugation word: either the strand loop
/// T(1,m) or the handle loop a(1,k), with a sign.
struct MixedLetter {
  bool is_t = true;
  int idx = 2;  // strand m for T, handle k for a
  int sign = 1;

  bool operator==(const MixedLetter&) const = default;
};

using MixedWord = std::vector<MixedLetter>;

MixedWord mixed_inverse(const MixedWord& w);
std::string to_string(const MixedWord& w);
MixedWord parse_mixed_word(const std::string& text, int genus);

/// Conjugating generator acting on the level free group: T(r,s) with
/// 2 <= r < s <= level, or A(i,k) with 2 <= i <= level, 1 <= k <= 2g.
struct ActionGenerator {
  enum class Kind { T, A };
  Kind kind = Kind::T;
  int r = 2, s = 3;  // T
  int i = 2, k = 1;  // A
  int sign = 1;
};

std::string to_string(const ActionGenerator& z);

/// Conjugation formulas between the a-generators. The shipped default
/// carries only the built-in commutation of T(r,s), 2 <= r < s, with every
/// a(1,k); conjugation of a(1,k') by A(i,k) is undefined unless a table file
/// supplies it. Immutable after load.
class PeripheralTable {
 public:
  static PeripheralTable defaults(int genus);

  /// File format, one entry per line:
  ///   A(i,k) a(1,k') -> <tokens>
  ///   A(i,k)^-1 a(1,k') -> <tokens>
  /// RHS tokens: a(1,m), T(1,m), optional ^-1; `1` for the empty word.
  /// Blank lines and lines starting with # are ignored.
  static PeripheralTable load_file(const std::string& path, int genus);

  int genus() const { return genus_; }

  /// Word for A(i,k)^sign a(1,kprime) A(i,k)^-sign, or nullptr.
  const MixedWord* find_a(int i, int k, int sign, int kprime) const;

 private:
  int genus_ = 1;
  std::map<std::array<int, 4>, MixedWord> a_entries_;
};

/// The reduced word for z b z^-1 in the basis of the level free group.
/// Throws action-undefined when a needed table entry is missing and
/// unrepresentable when an intermediate conjugator leaves the fragment.
FreeWord act_generator(const ActionGenerator& z, const BasisSymbol& b,
                       const PeripheralTable& table);

/// Letter-wise action on a whole word.
FreeWord act_word(const ActionGenerator& z, const FreeWord& w, const PeripheralTable& table);

/// Rewrites a word over T(1,m) / a(1,k) letters into basis symbols at the
/// given level. Requires every running a-prefix at a T letter to be a normal
/// form and the total a-part to vanish.
FreeWord mixed_to_basis(const MixedWord& w, int level, int genus);

}  // namespace sb
