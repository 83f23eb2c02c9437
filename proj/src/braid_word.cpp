#include "braid_word.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace sb {

BraidLetter sig(int i, int sign) { return {BKind::Sigma, i, sign}; }
BraidLetter gen_a(int k, int sign) { return {BKind::A, k, sign}; }
BraidLetter tau(int i) { return {BKind::Tau, i, 1}; }
BraidLetter del(int i) { return {BKind::Delta, i, 1}; }

namespace {

void validate_letter(const BraidLetter& l, int n, int genus, const char* op,
                     const std::string& token) {
  switch (l.kind) {
    case BKind::Sigma:
    case BKind::Tau:
    case BKind::Delta:
      if (l.index < 1 || l.index > n - 1)
        throw Error(ErrCode::Parse, op, "strand index out of 1..n-1", token);
      break;
    case BKind::A:
      if (l.index < 1 || l.index > 2 * genus)
        throw Error(ErrCode::Parse, op, "handle index out of 1..2g", token);
      break;
  }
  if ((l.kind == BKind::Tau || l.kind == BKind::Delta) && l.sign != 1)
    throw Error(ErrCode::Parse, op, "singular letters have no inverse", token);
}

}  // namespace

BraidWord parse_braid_word(const std::string& text, int n, int genus) {
  if (n < 2) throw Error(ErrCode::Domain, "parse_braid_word", "n must be >= 2");
  if (genus < 1) throw Error(ErrCode::Domain, "parse_braid_word", "genus must be >= 1");
  BraidWord w;
  w.n = n;
  w.genus = genus;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    std::string body = tok;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body = body.substr(0, body.size() - 3);
    }
    if (body.size() < 2)
      throw Error(ErrCode::Parse, "parse_braid_word", "malformed token", tok);
    BKind kind;
    switch (body[0]) {
      case 's': kind = BKind::Sigma; break;
      case 'a': kind = BKind::A; break;
      case 't': kind = BKind::Tau; break;
      case 'd': kind = BKind::Delta; break;
      default:
        throw Error(ErrCode::Parse, "parse_braid_word", "malformed token", tok);
    }
    int idx = 0;
    for (size_t i = 1; i < body.size(); ++i) {
      if (body[i] < '0' || body[i] > '9')
        throw Error(ErrCode::Parse, "parse_braid_word", "malformed token", tok);
      idx = idx * 10 + (body[i] - '0');
    }
    BraidLetter l{kind, idx, sign};
    validate_letter(l, n, genus, "parse_braid_word", tok);
    w.letters.push_back(l);
  }
  return w;
}

std::string to_string(const BraidLetter& l) {
  std::string out;
  switch (l.kind) {
    case BKind::Sigma: out = "s"; break;
    case BKind::A: out = "a"; break;
    case BKind::Tau: out = "t"; break;
    case BKind::Delta: out = "d"; break;
  }
  out += std::to_string(l.index);
  if (l.sign < 0) out += "^-1";
  return out;
}

std::string to_string(const BraidWord& w) {
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += to_string(w.letters[i]);
  }
  return out;
}

bool has_singular(const BraidWord& w) {
  for (const BraidLetter& l : w.letters)
    if (l.kind == BKind::Tau || l.kind == BKind::Delta) return true;
  return false;
}

int singular_order(const BraidWord& w) {
  int d = 0;
  for (const BraidLetter& l : w.letters)
    if (l.kind == BKind::Tau || l.kind == BKind::Delta) ++d;
  return d;
}

BraidWord bw_concat(const BraidWord& u, const BraidWord& v) {
  if (u.n != v.n || u.genus != v.genus)
    throw Error(ErrCode::Domain, "bw_concat", "parameter mismatch");
  BraidWord w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

BraidWord bw_inverse(const BraidWord& w) {
  BraidWord r;
  r.n = w.n;
  r.genus = w.genus;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->kind == BKind::Tau || it->kind == BKind::Delta)
      throw Error(ErrCode::Domain, "bw_inverse", "singular letter has no inverse",
                  to_string(*it));
    r.letters.push_back({it->kind, it->index, -it->sign});
  }
  return r;
}

BraidWord free_cancel(const BraidWord& w) {
  BraidWord out;
  out.n = w.n;
  out.genus = w.genus;
  for (const BraidLetter& l : w.letters) {
    bool invertible = l.kind == BKind::Sigma || l.kind == BKind::A;
    if (invertible && !out.letters.empty() && out.letters.back().kind == l.kind &&
        out.letters.back().index == l.index && out.letters.back().sign == -l.sign)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

std::vector<int> permutation_of(const BraidWord& w) {
  std::vector<int> p(w.n);
  std::iota(p.begin(), p.end(), 0);
  for (const BraidLetter& l : w.letters) {
    if (l.kind == BKind::A) continue;
    int i = l.index - 1;  // swaps strands i, i+1 (0-indexed)
    // compose on the right: p_new[x] = p_old[t[x]]
    std::swap(p[i], p[i + 1]);
  }
  return p;
}

BraidWord expand_T(int i, int j, int n, int genus) {
  if (!(1 <= i && i < j && j <= n))
    throw Error(ErrCode::Domain, "expand_T", "need 1 <= i < j <= n",
                std::to_string(i) + "," + std::to_string(j));
  BraidWord w;
  w.n = n;
  w.genus = genus;
  for (int t = i; t <= j - 2; ++t) w.letters.push_back(sig(t));
  w.letters.push_back(sig(j - 1));
  w.letters.push_back(sig(j - 1));
  for (int t = j - 2; t >= i; --t) w.letters.push_back(sig(t, -1));
  return w;
}

BraidWord expand_a_ik(int i, int k, int n, int genus) {
  if (i < 1 || i > n)
    throw Error(ErrCode::Domain, "expand_a_ik", "need 1 <= i <= n", std::to_string(i));
  if (k < 1 || k > 2 * genus)
    throw Error(ErrCode::Domain, "expand_a_ik", "need 1 <= k <= 2g", std::to_string(k));
  BraidWord w;
  w.n = n;
  w.genus = genus;
  int s = (k % 2 == 1) ? -1 : 1;
  for (int t = i - 1; t >= 1; --t) w.letters.push_back(sig(t, s));
  w.letters.push_back(gen_a(k));
  for (int t = 1; t <= i - 1; ++t) w.letters.push_back(sig(t, s));
  return w;
}

BraidWord expand_A2(int r, int n, int genus) {
  if (r < 1 || r > 2 * genus)
    throw Error(ErrCode::Domain, "expand_A2", "need 1 <= r <= 2g", std::to_string(r));
  BraidWord w;
  w.n = n;
  w.genus = genus;
  w.letters.push_back(sig(1, -1));
  for (int t = 1; t <= r - 1; ++t) w.letters.push_back(gen_a(t));
  for (int t = r + 1; t <= 2 * genus; ++t) w.letters.push_back(gen_a(t, -1));
  w.letters.push_back(sig(1, -1));
  return w;
}

BraidWord expand_delta(int i, int n, int genus) {
  if (i < 1 || i > n - 1)
    throw Error(ErrCode::Domain, "expand_delta", "need 1 <= i <= n-1", std::to_string(i));
  BraidWord w;
  w.n = n;
  w.genus = genus;
  w.letters.push_back(sig(i));
  w.letters.push_back(tau(i));
  return w;
}

std::string to_string(RelId id) {
  switch (id) {
    case RelId::R0: return "R0";
    case RelId::R1: return "R1";
    case RelId::R2: return "R2";
    case RelId::R3: return "R3";
    case RelId::R4: return "R4";
    case RelId::R5: return "R5";
    case RelId::R6: return "R6";
    case RelId::R7: return "R7";
    case RelId::R8: return "R8";
    case RelId::R9: return "R9";
    case RelId::R10: return "R10";
    case RelId::R11: return "R11";
    case RelId::R12: return "R12";
    case RelId::R7p: return "R7'";
    case RelId::R8p: return "R8'";
    case RelId::R9p: return "R9'";
    case RelId::R10p: return "R10'";
    case RelId::R11p: return "R11'";
    case RelId::R12p: return "R12'";
    case RelId::ConjT: return "conj-T";
    case RelId::ConjA: return "conj-A";
  }
  return "?";
}

namespace {

BraidWord empty_word(int n, int genus) {
  BraidWord w;
  w.n = n;
  w.genus = genus;
  return w;
}

BraidWord from_letters(std::vector<BraidLetter> ls, int n, int genus) {
  BraidWord w;
  w.n = n;
  w.genus = genus;
  w.letters = std::move(ls);
  return w;
}

void require(bool cond, const char* what, const RelationInstance& inst) {
  if (!cond)
    throw Error(ErrCode::Domain, "relation_sides",
                std::string("side condition violated for ") + to_string(inst.id) + ": " + what);
}

BraidLetter singular(int i, bool primed) { return primed ? del(i) : tau(i); }

// Rules for T_{r,s} T_{1,j} T_{r,s}^-1 expressed over the generators
// T_{1,*}; returned as braid words.
BraidWord conj_t_rhs(int r, int s, int j, int n, int genus) {
  auto T = [&](int m, int sign) {
    BraidWord t = expand_T(1, m, n, genus);
    return sign > 0 ? t : bw_inverse(t);
  };
  BraidWord out = empty_word(n, genus);
  auto app = [&](const BraidWord& x) { out = bw_concat(out, x); };
  if (j < r || j > s) {
    app(T(j, 1));
  } else if (j == r) {
    app(T(j, -1)); app(T(s, -1)); app(T(j, 1)); app(T(s, 1)); app(T(j, 1));
  } else if (j < s) {
    app(T(r, -1)); app(T(s, -1)); app(T(r, 1)); app(T(s, 1)); app(T(j, 1));
    app(T(s, -1)); app(T(r, -1)); app(T(s, 1)); app(T(r, 1));
  } else {  // j == s
    app(T(r, -1)); app(T(j, 1)); app(T(r, 1));
  }
  return out;
}

// Rules for a_{i,k} T_{1,j} a_{i,k}^-1 over T_{1,*} and a_{1,k} = a_k.
BraidWord conj_a_rhs(int i, int k, int j, int n, int genus) {
  auto T = [&](int m, int sign) {
    BraidWord t = expand_T(1, m, n, genus);
    return sign > 0 ? t : bw_inverse(t);
  };
  BraidWord a = from_letters({gen_a(k)}, n, genus);
  BraidWord ai = from_letters({gen_a(k, -1)}, n, genus);
  BraidWord out = empty_word(n, genus);
  auto app = [&](const BraidWord& x) { out = bw_concat(out, x); };
  bool odd = (k % 2 == 1);
  if (i > j) {
    app(T(j, 1));
  } else if (i == j) {
    if (odd) {
      for (int m = j - 1; m >= 2; --m) app(T(m, 1));
      app(ai); app(T(j, 1)); app(a);
      for (int m = 2; m <= j - 1; ++m) app(T(m, -1));
    } else {
      app(ai);
      for (int m = 2; m <= j - 1; ++m) app(T(m, -1));
      app(a);
      app(ai); app(T(j, 1)); app(a);
      app(ai);
      for (int m = j - 1; m >= 2; --m) app(T(m, 1));
      app(a);
    }
  } else {  // 2 <= i < j
    if (odd) {
      app(T(i, -1)); app(T(j, 1)); app(T(i, 1));
    } else {
      app(ai);
      for (int m = 2; m <= i - 1; ++m) app(T(m, -1));
      app(T(i, 1));
      for (int m = i - 1; m >= 2; --m) app(T(m, 1));
      app(a);
      app(T(j, 1));
      app(ai);
      for (int m = 2; m <= i - 1; ++m) app(T(m, -1));
      app(T(i, -1));
      for (int m = i - 1; m >= 2; --m) app(T(m, 1));
      app(a);
    }
  }
  return out;
}

}  // namespace

std::pair<BraidWord, BraidWord> relation_sides(const RelationInstance& inst, int n, int genus) {
  const int i = inst.i, j = inst.j, r = inst.r, s = inst.s, k = inst.k;
  auto W = [&](std::vector<BraidLetter> ls) { return from_letters(std::move(ls), n, genus); };
  bool primed = false;
  switch (inst.id) {
    case RelId::R0: {
      const BraidLetter& l = inst.letter;
      require(l.kind == BKind::Sigma || l.kind == BKind::A, "letter must be invertible", inst);
      validate_letter(l, n, genus, "relation_sides", to_string(l));
      return {W({l, {l.kind, l.index, -l.sign}}), W({})};
    }
    case RelId::R1:
      require(std::abs(i - j) >= 2 && i >= 1 && j >= 1 && i <= n - 1 && j <= n - 1,
              "|i-j| >= 2", inst);
      return {W({sig(i), sig(j)}), W({sig(j), sig(i)})};
    case RelId::R2:
      require(1 <= i && i <= n - 2, "1 <= i <= n-2", inst);
      return {W({sig(i), sig(i + 1), sig(i)}), W({sig(i + 1), sig(i), sig(i + 1)})};
    case RelId::R3: {
      BraidWord lhs = empty_word(n, genus);
      for (int t = 1; t <= 2 * genus; ++t) lhs.letters.push_back(gen_a(t));
      for (int t = 1; t <= 2 * genus; ++t) lhs.letters.push_back(gen_a(t, -1));
      BraidWord rhs = empty_word(n, genus);
      for (int t = 1; t <= n - 2; ++t) rhs.letters.push_back(sig(t));
      rhs.letters.push_back(sig(n - 1));
      rhs.letters.push_back(sig(n - 1));
      for (int t = n - 2; t >= 1; --t) rhs.letters.push_back(sig(t));
      return {lhs, rhs};
    }
    case RelId::R4: {
      require(1 <= r && r <= 2 * genus && 1 <= s && s <= 2 * genus && r != s,
              "1 <= r,s <= 2g, r != s", inst);
      BraidWord a2 = expand_A2(s, n, genus);
      return {bw_concat(W({gen_a(r)}), a2), bw_concat(a2, W({gen_a(r)}))};
    }
    case RelId::R5: {
      require(1 <= r && r <= 2 * genus, "1 <= r <= 2g", inst);
      BraidWord prefix = empty_word(n, genus);
      for (int t = 1; t <= r; ++t) prefix.letters.push_back(gen_a(t));
      BraidWord a2 = expand_A2(r, n, genus);
      BraidWord lhs = bw_concat(prefix, a2);
      BraidWord rhs = bw_concat(bw_concat(W({sig(1), sig(1)}), a2), prefix);
      return {lhs, rhs};
    }
    case RelId::R6:
      require(1 <= r && r <= 2 * genus && 2 <= i && i <= n - 1,
              "1 <= r <= 2g, 2 <= i <= n-1", inst);
      return {W({gen_a(r), sig(i)}), W({sig(i), gen_a(r)})};
    case RelId::R7p: primed = true; [[fallthrough]];
    case RelId::R7:
      require(std::abs(i - j) >= 2 && i >= 1 && j >= 1 && i <= n - 1 && j <= n - 1,
              "|i-j| >= 2", inst);
      return {W({sig(i), singular(j, primed)}), W({singular(j, primed), sig(i)})};
    case RelId::R8p: primed = true; [[fallthrough]];
    case RelId::R8:
      require(std::abs(i - j) >= 2 && i >= 1 && j >= 1 && i <= n - 1 && j <= n - 1,
              "|i-j| >= 2", inst);
      return {W({singular(i, primed), singular(j, primed)}),
              W({singular(j, primed), singular(i, primed)})};
    case RelId::R9p: primed = true; [[fallthrough]];
    case RelId::R9:
      require(1 <= i && i <= n - 1, "1 <= i <= n-1", inst);
      return {W({sig(i), singular(i, primed)}), W({singular(i, primed), sig(i)})};
    case RelId::R10p: primed = true; [[fallthrough]];
    case RelId::R10:
      require(std::abs(i - j) == 1 && i >= 1 && j >= 1 && i <= n - 1 && j <= n - 1,
              "|i-j| = 1", inst);
      return {W({sig(i), sig(j), singular(i, primed)}),
              W({singular(j, primed), sig(i), sig(j)})};
    case RelId::R11p: primed = true; [[fallthrough]];
    case RelId::R11: {
      require(1 <= i && i <= n - 1 && 1 <= r && r <= 2 * genus,
              "1 <= i <= n-1, 1 <= r <= 2g", inst);
      BraidWord air = expand_a_ik(i, r, n, genus);
      BraidWord ai1r = expand_a_ik(i + 1, r, n, genus);
      BraidWord lhs = bw_concat(bw_concat(bw_concat(bw_concat(air, ai1r),
                                                    W({singular(i, primed)})),
                                          bw_inverse(ai1r)),
                                bw_inverse(air));
      return {lhs, W({singular(i, primed)})};
    }
    case RelId::R12p: primed = true; [[fallthrough]];
    case RelId::R12: {
      require(1 <= i && i <= n - 1 && 1 <= j && j <= n && j != i && j != i + 1 &&
                  1 <= r && r <= 2 * genus,
              "j != i, i+1", inst);
      BraidWord ajr = expand_a_ik(j, r, n, genus);
      return {bw_concat(W({singular(i, primed)}), ajr),
              bw_concat(ajr, W({singular(i, primed)}))};
    }
    case RelId::ConjT: {
      require(2 <= r && r < s && s <= n && 2 <= j && j <= n, "2 <= r < s <= n, 2 <= j <= n",
              inst);
      BraidWord trs = expand_T(r, s, n, genus);
      BraidWord lhs = bw_concat(bw_concat(trs, expand_T(1, j, n, genus)), bw_inverse(trs));
      return {lhs, conj_t_rhs(r, s, j, n, genus)};
    }
    case RelId::ConjA: {
      require(2 <= i && i <= n && 1 <= k && k <= 2 * genus && 2 <= j && j <= n,
              "2 <= i <= n, 1 <= k <= 2g, 2 <= j <= n", inst);
      BraidWord aik = expand_a_ik(i, k, n, genus);
      BraidWord lhs = bw_concat(bw_concat(aik, expand_T(1, j, n, genus)), bw_inverse(aik));
      return {lhs, conj_a_rhs(i, k, j, n, genus)};
    }
  }
  throw Error(ErrCode::Internal, "relation_sides", "unhandled relation id");
}

BraidWord apply_relation(const BraidWord& w, const RelationInstance& inst) {
  auto [lhs, rhs] = relation_sides(inst, w.n, w.genus);
  const BraidWord& from = inst.reverse ? rhs : lhs;
  const BraidWord& to = inst.reverse ? lhs : rhs;
  if (inst.pos > w.letters.size() || inst.pos + from.letters.size() > w.letters.size())
    throw Error(ErrCode::Domain, "apply_relation", "side does not match at position",
                to_string(inst.id));
  for (size_t t = 0; t < from.letters.size(); ++t)
    if (!(w.letters[inst.pos + t] == from.letters[t]))
      throw Error(ErrCode::Domain, "apply_relation", "side does not match at position",
                  to_string(inst.id));
  BraidWord out;
  out.n = w.n;
  out.genus = w.genus;
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + inst.pos);
  out.letters.insert(out.letters.end(), to.letters.begin(), to.letters.end());
  out.letters.insert(out.letters.end(), w.letters.begin() + inst.pos + from.letters.size(),
                     w.letters.end());
  return out;
}

BraidWord delta_substitute(const BraidWord& w, bool inverse_mode) {
  BraidWord out;
  out.n = w.n;
  out.genus = w.genus;
  for (const BraidLetter& l : w.letters) {
    if (!inverse_mode && l.kind == BKind::Tau) {
      out.letters.push_back(sig(l.index, -1));
      out.letters.push_back(del(l.index));
    } else if (inverse_mode && l.kind == BKind::Delta) {
      out.letters.push_back(sig(l.index));
      out.letters.push_back(tau(l.index));
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::vector<EtaTerm> eta_expand(const BraidWord& w) {
  std::vector<size_t> singular_pos;
  for (size_t t = 0; t < w.letters.size(); ++t)
    if (w.letters[t].kind == BKind::Tau || w.letters[t].kind == BKind::Delta)
      singular_pos.push_back(t);
  const size_t d = singular_pos.size();
  if (d > 24)
    throw Error(ErrCode::Domain, "eta_expand", "too many singular letters");
  std::vector<EtaTerm> terms;
  terms.reserve(size_t(1) << d);
  for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
    EtaTerm term;
    term.word.n = w.n;
    term.word.genus = w.genus;
    term.coeff = 1;
    size_t si = 0;
    for (size_t t = 0; t < w.letters.size(); ++t) {
      const BraidLetter& l = w.letters[t];
      if (l.kind != BKind::Tau && l.kind != BKind::Delta) {
        term.word.letters.push_back(l);
        continue;
      }
      // bit 0 = plus branch; leftmost singular letter is the highest bit
      bool minus = (mask >> (d - 1 - si)) & 1;
      ++si;
      if (l.kind == BKind::Tau) {
        term.word.letters.push_back(sig(l.index, minus ? -1 : 1));
      } else if (!minus) {
        term.word.letters.push_back(sig(l.index));
        term.word.letters.push_back(sig(l.index));
      }
      if (minus) term.coeff = -term.coeff;
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

SplitResult split_singular(const BraidWord& w) {
  for (const BraidLetter& l : w.letters)
    if (l.kind == BKind::Tau)
      throw Error(ErrCode::Domain, "split_singular", "tau present; run delta_substitute first",
                  to_string(l));
  SplitResult res;
  res.braid.n = w.n;
  res.braid.genus = w.genus;

  BraidWord current = w;   // evolves as the log is applied
  size_t cursor = 0;       // position in `current` of the next unprocessed letter
  BraidWord alpha;         // non-singular letters of w seen so far
  alpha.n = w.n;
  alpha.genus = w.genus;

  for (const BraidLetter& l : w.letters) {
    if (l.kind != BKind::Delta) {
      res.braid.letters.push_back(l);
      alpha.letters.push_back(l);
      ++cursor;
      continue;
    }
    res.trace.push_back({alpha, l.index});
    // Insert alpha^-1 alpha after the delta, one cancelling pair at a time,
    // outermost pair first so every insertion is adjacent: g delta = (g
    // delta g^-1) g.
    size_t delta_pos = cursor;
    for (size_t t = alpha.letters.size(); t-- > 0;) {
      const BraidLetter& g = alpha.letters[t];
      RelationInstance step;
      step.id = RelId::R0;
      step.letter = {g.kind, g.index, -g.sign};
      step.pos = delta_pos + 1 + (alpha.letters.size() - 1 - t);
      step.reverse = true;
      res.log.push_back(step);
      current = apply_relation(current, step);
    }
    cursor = delta_pos + 1 + 2 * alpha.letters.size();
  }
  return res;
}

BraidWord split_expansion(const SplitResult& r, int n, int genus) {
  BraidWord out;
  out.n = n;
  out.genus = genus;
  for (const SplitConjugate& c : r.trace) {
    out = bw_concat(out, c.conj);
    out.letters.push_back(del(c.index));
    out = bw_concat(out, bw_inverse(c.conj));
  }
  return bw_concat(out, r.braid);
}

}  // namespace sb
