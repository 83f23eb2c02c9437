#include "k_element.hpp"

#include <sstream>

#include "errors.hpp"

namespace sb {

namespace {

void check_shape(const KElement& x, const char* op) {
  if (x.n < 2) throw Error(ErrCode::Domain, op, "n must be >= 2");
  if (x.levels.size() != static_cast<size_t>(x.n - 1))
    throw Error(ErrCode::Internal, op, "level vector has wrong length");
  for (int m = x.n; m >= 2; --m)
    if (x.at_level(m).level != m)
      throw Error(ErrCode::Internal, op, "level word tagged with wrong level");
}

/// Conjugation by the level-m letter l on the level-M word w (m < M): the
/// letter is gamma-conj of the strand loop, so the generator sequence is
/// A(r,k)-prefix, T(r,s)^sign, inverse A-suffix with r = M-m+1, s = M-m+j.
FreeWord act_letter(const FreeLetter& l, int m, FreeWord w, const PeripheralTable& table) {
  const int M = w.level;
  const int r = M - m + 1;
  const int s = M - m + l.sym.strand;
  std::vector<ActionGenerator> seq;
  for (const SurfaceLetter& gl : l.sym.gamma.letters) {
    ActionGenerator g;
    g.kind = ActionGenerator::Kind::A;
    g.i = r;
    g.k = gl.index;
    g.sign = gl.sign;
    seq.push_back(g);
  }
  {
    ActionGenerator g;
    g.kind = ActionGenerator::Kind::T;
    g.r = r;
    g.s = s;
    g.sign = l.sign;
    seq.push_back(g);
  }
  for (auto it = l.sym.gamma.letters.rbegin(); it != l.sym.gamma.letters.rend(); ++it) {
    ActionGenerator g;
    g.kind = ActionGenerator::Kind::A;
    g.i = r;
    g.k = it->index;
    g.sign = -it->sign;
    seq.push_back(g);
  }
  // conj by a product applies the rightmost factor first
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) w = act_word(*it, w, table);
  return w;
}

/// Applies the conjugation action of a's levels 2..M-1 to the level-M word w.
FreeWord act_lower(const KElement& a, int M, FreeWord w, const PeripheralTable& table) {
  for (int m = 2; m < M; ++m) {
    const FreeWord& word = a.at_level(m);
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it)
      w = act_letter(*it, m, std::move(w), table);
  }
  return w;
}

}  // namespace

KElement k_identity(int n, int genus) {
  if (n < 2) throw Error(ErrCode::Domain, "k_identity", "n must be >= 2");
  KElement x;
  x.n = n;
  x.genus = genus;
  x.levels.resize(static_cast<size_t>(n - 1));
  for (int m = n; m >= 2; --m) x.at_level(m).level = m;
  return x;
}

KElement k_from_word(const FreeWord& w, int n, int genus) {
  if (w.level < 2 || w.level > n)
    throw Error(ErrCode::Domain, "k_from_word", "word level out of 2..n",
                std::to_string(w.level));
  KElement x = k_identity(n, genus);
  x.at_level(w.level) = free_reduce(w);
  return x;
}

bool k_is_identity(const KElement& x) {
  for (const FreeWord& w : x.levels)
    if (!w.letters.empty()) return false;
  return true;
}

KElement k_multiply(const KElement& a, const KElement& b, const PeripheralTable& table) {
  if (a.n != b.n || a.genus != b.genus)
    throw Error(ErrCode::Domain, "k_multiply", "level mismatch");
  check_shape(a, "k_multiply");
  check_shape(b, "k_multiply");
  KElement out = k_identity(a.n, a.genus);
  for (int M = a.n; M >= 2; --M) {
    FreeWord acted = act_lower(a, M, b.at_level(M), table);
    out.at_level(M) = fw_concat(a.at_level(M), acted);
  }
  return out;
}

KElement k_inverse(const KElement& a, const PeripheralTable& table) {
  check_shape(a, "k_inverse");
  KElement inv = k_identity(a.n, a.genus);
  for (int M = 2; M <= a.n; ++M)
    inv.at_level(M) = act_lower(inv, M, fw_inverse(a.at_level(M)), table);
  return inv;
}

KElement k_conjugate(const KElement& g, const KElement& x, const PeripheralTable& table) {
  return k_multiply(k_multiply(g, x, table), k_inverse(g, table), table);
}

std::map<std::pair<int, int>, long> kappa(const KElement& x) {
  std::map<std::pair<int, int>, long> v;
  for (int m = x.n; m >= 2; --m) {
    const int base = x.n - m + 1;
    for (const FreeLetter& l : x.at_level(m).letters) {
      auto key = std::make_pair(base, x.n - m + l.sym.strand);
      v[key] += l.sign;
      if (v[key] == 0) v.erase(key);
    }
  }
  return v;
}

long deg(const KElement& x) {
  long d = 0;
  for (const FreeWord& w : x.levels)
    for (const FreeLetter& l : w.letters) d += l.sign;
  return d;
}

std::pair<int, int> upsilon_classify(const KElement& x) {
  auto v = kappa(x);
  if (v.size() != 1 || v.begin()->second != 1)
    throw Error(ErrCode::Domain, "upsilon_classify", "not an Upsilon element in the fragment",
                k_key(x));
  return v.begin()->first;
}

bool commutes(const KElement& u, const KElement& v, const PeripheralTable& table) {
  return k_multiply(u, v, table) == k_multiply(v, u, table);
}

std::string k_key(const KElement& x) {
  std::string out;
  for (int m = x.n; m >= 2; --m) {
    const FreeWord& w = x.at_level(m);
    if (w.letters.empty()) continue;
    if (!out.empty()) out += ' ';
    out += to_string(w);
  }
  return out.empty() ? "1" : out;
}

KElement k_parse(const std::string& text, int n, int genus) {
  KElement x = k_identity(n, genus);
  if (text == "1") return x;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.rfind('@') == std::string::npos)
      throw Error(ErrCode::Parse, "k_parse", "letter needs an explicit @level", tok);
    FreeWord one = parse_free_word(tok, genus, 0);
    if (one.letters.size() != 1)
      throw Error(ErrCode::Parse, "k_parse", "malformed letter", tok);
    const FreeLetter& l = one.letters.front();
    if (l.sym.level < 2 || l.sym.level > n)
      throw Error(ErrCode::Parse, "k_parse", "level out of 2..n", tok);
    x.at_level(l.sym.level).letters.push_back(l);
  }
  for (int m = n; m >= 2; --m) x.at_level(m) = free_reduce(x.at_level(m));
  return x;
}

UpsilonElement make_upsilon(const FreeWord& conjugator, const BasisSymbol& core, int n) {
  if (conjugator.level != core.level)
    throw Error(ErrCode::Domain, "make_upsilon", "conjugator and core levels differ");
  UpsilonElement u;
  u.level = core.level;
  u.strand = core.strand;
  u.conjugator = free_reduce(conjugator);
  u.core = core;
  FreeWord body;
  body.level = core.level;
  body.letters.push_back({core, 1});
  FreeWord word = fw_conjugate(u.conjugator, body);
  u.element = k_from_word(word, n, core.gamma.genus);
  upsilon_classify(u.element);  // sanity: kappa must be a positive unit vector
  u.key = upsilon_key(u.element);
  return u;
}

std::string upsilon_key(const KElement& x) {
  const FreeWord* only = nullptr;
  for (const FreeWord& w : x.levels) {
    if (w.letters.empty()) continue;
    if (only)
      throw Error(ErrCode::Domain, "upsilon_key", "element spans several levels", k_key(x));
    only = &w;
  }
  if (!only)
    throw Error(ErrCode::Domain, "upsilon_key", "identity is not an Upsilon element");
  return to_string(conj_class_rep(*only)) + " | " + k_key(x);
}

}  // namespace sb
