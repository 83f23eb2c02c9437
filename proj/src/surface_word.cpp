#include "surface_word.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"

namespace sb {

namespace {

void check_genus(int genus, const char* op) {
  if (genus < 1) throw Error(ErrCode::Domain, op, "genus must be >= 1");
}

int letter_rank(const SurfaceLetter& l) {
  // x1 < x1^-1 < x2 < x2^-1 < ...
  return 2 * (l.index - 1) + (l.sign < 0 ? 1 : 0);
}

}  // namespace

SurfaceWord parse_surface_word(const std::string& text, int genus) {
  check_genus(genus, "parse_surface_word");
  SurfaceWord w;
  w.genus = genus;
  std::string tok;
  std::vector<std::string> tokens;
  for (char c : text) {
    if (c == '.' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!tok.empty()) tokens.push_back(tok), tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  if (!tok.empty()) tokens.push_back(tok);

  for (const std::string& t : tokens) {
    int sign = 1;
    std::string body = t;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body = body.substr(0, body.size() - 3);
    }
    if (body.size() < 2 || body[0] != 'x')
      throw Error(ErrCode::Parse, "parse_surface_word", "malformed token", t);
    int idx = 0;
    for (size_t i = 1; i < body.size(); ++i) {
      if (body[i] < '0' || body[i] > '9')
        throw Error(ErrCode::Parse, "parse_surface_word", "malformed token", t);
      idx = idx * 10 + (body[i] - '0');
    }
    if (idx < 1 || idx > 2 * genus)
      throw Error(ErrCode::Parse, "parse_surface_word", "index out of 1..2g", t);
    w.letters.push_back({idx, sign});
  }
  return w;
}

std::string to_string(const SurfaceWord& w) {
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += '.';
    out += 'x';
    out += std::to_string(w.letters[i].index);
    if (w.letters[i].sign < 0) out += "^-1";
  }
  return out;
}

SurfaceWord sg_free_reduce(SurfaceWord w) {
  std::vector<SurfaceLetter> out;
  for (const SurfaceLetter& l : w.letters) {
    if (!out.empty() && out.back().index == l.index && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  w.letters = std::move(out);
  w.canonical = false;
  return w;
}

SurfaceWord sg_product(const SurfaceWord& u, const SurfaceWord& v) {
  if (u.genus != v.genus)
    throw Error(ErrCode::Domain, "sg_product", "genus mismatch");
  SurfaceWord w;
  w.genus = u.genus;
  w.letters = u.letters;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return sg_free_reduce(std::move(w));
}

SurfaceWord sg_inverse(const SurfaceWord& w) {
  SurfaceWord r;
  r.genus = w.genus;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back({it->index, -it->sign});
  return r;
}

int shortlex_compare(const SurfaceWord& a, const SurfaceWord& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size() ? -1 : 1;
  for (size_t i = 0; i < a.letters.size(); ++i) {
    int ra = letter_rank(a.letters[i]);
    int rb = letter_rank(b.letters[i]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  return 0;
}

std::vector<long> exponent_vector(const SurfaceWord& w) {
  std::vector<long> v(2 * w.genus, 0);
  for (const SurfaceLetter& l : w.letters) v[l.index - 1] += l.sign;
  return v;
}

namespace {

// ---- genus >= 2 machinery ------------------------------------------------

using Letters = std::vector<SurfaceLetter>;

// Relator x_1 x_2 ... x_2g x_1^-1 x_2^-1 ... x_2g^-1, length 4g.
Letters relator(int genus) {
  Letters r;
  for (int k = 1; k <= 2 * genus; ++k) r.push_back({k, 1});
  for (int k = 1; k <= 2 * genus; ++k) r.push_back({k, -1});
  return r;
}

Letters invert(const Letters& w) {
  Letters r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->index, -it->sign});
  return r;
}

// All cyclic rotations of the relator and its inverse.
std::vector<Letters> relator_rotations(int genus) {
  std::vector<Letters> rots;
  Letters r = relator(genus);
  Letters ri = invert(r);
  for (const Letters* base : {&r, &ri}) {
    for (size_t s = 0; s < base->size(); ++s) {
      Letters rot;
      rot.reserve(base->size());
      for (size_t i = 0; i < base->size(); ++i)
        rot.push_back((*base)[(s + i) % base->size()]);
      rots.push_back(std::move(rot));
    }
  }
  std::sort(rots.begin(), rots.end(), [](const Letters& a, const Letters& b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(),
        [](const SurfaceLetter& x, const SurfaceLetter& y) { return letter_rank(x) < letter_rank(y); });
  });
  rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
  return rots;
}

Letters reduce_letters(const Letters& in) {
  Letters out;
  for (const SurfaceLetter& l : in) {
    if (!out.empty() && out.back().index == l.index && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

size_t match_length(const Letters& w, size_t pos, const Letters& pattern) {
  size_t n = 0;
  while (pos + n < w.size() && n < pattern.size() && w[pos + n] == pattern[n]) ++n;
  return n;
}

// Replace w[pos..pos+len) (a prefix of `pattern`) by the inverse of the
// complementary suffix, then freely reduce.
Letters swap_complement(const Letters& w, size_t pos, size_t len, const Letters& pattern) {
  Letters repl;
  for (size_t i = pattern.size(); i-- > len;) repl.push_back({pattern[i].index, -pattern[i].sign});
  Letters out;
  out.insert(out.end(), w.begin(), w.begin() + pos);
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), w.begin() + pos + len, w.end());
  return reduce_letters(out);
}

// One pass of Dehn's algorithm: leftmost position, longest match of length
// > 2g among relator rotations, replaced by the shorter complement. Iterates
// to a fixed point.
Letters dehn_reduce(Letters w, const std::vector<Letters>& rots, int genus) {
  const size_t half = static_cast<size_t>(2 * genus);
  w = reduce_letters(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t pos = 0; pos < w.size() && !changed; ++pos) {
      size_t best_len = 0;
      const Letters* best_pat = nullptr;
      for (const Letters& pat : rots) {
        size_t len = match_length(w, pos, pat);
        if (len > half && len > best_len) {
          best_len = len;
          best_pat = &pat;
        }
      }
      if (best_pat) {
        w = swap_complement(w, pos, best_len, *best_pat);
        changed = true;
      }
    }
  }
  return w;
}

std::string letters_key(const Letters& w) {
  std::string k;
  k.reserve(w.size() * 3);
  for (const SurfaceLetter& l : w) {
    k += static_cast<char>('0' + l.index);
    k += l.sign > 0 ? '+' : '-';
  }
  return k;
}

// Closure of the Dehn-reduced form under length-preserving half-relator
// swaps. If a swap shortens the word the whole search restarts from the
// shorter word. Returns the full set of same-length representatives.
std::vector<Letters> geodesic_closure(Letters start, const std::vector<Letters>& rots, int genus) {
  const size_t half = static_cast<size_t>(2 * genus);
restart:
  std::set<std::string> seen;
  std::deque<Letters> queue;
  std::vector<Letters> out;
  seen.insert(letters_key(start));
  queue.push_back(start);
  while (!queue.empty()) {
    Letters cur = queue.front();
    queue.pop_front();
    out.push_back(cur);
    for (size_t pos = 0; pos + half <= cur.size(); ++pos) {
      for (const Letters& pat : rots) {
        if (match_length(cur, pos, pat) < half) continue;
        Letters next = swap_complement(cur, pos, half, pat);
        if (next.size() < cur.size()) {
          start = dehn_reduce(next, rots, genus);
          goto restart;
        }
        next = dehn_reduce(next, rots, genus);
        if (next.size() < cur.size()) {
          start = next;
          goto restart;
        }
        std::string key = letters_key(next);
        if (seen.insert(key).second) queue.push_back(next);
      }
    }
  }
  return out;
}

struct CanonicalCache {
  std::mutex mu;
  std::unordered_map<std::string, SurfaceWord> map;
};

CanonicalCache& canonical_cache() {
  static CanonicalCache cache;
  return cache;
}

SurfaceWord canonical_genus1(const SurfaceWord& w) {
  std::vector<long> e = exponent_vector(w);
  SurfaceWord r;
  r.genus = 1;
  for (int k = 1; k <= 2; ++k) {
    long c = e[k - 1];
    for (long i = 0; i < std::abs(c); ++i) r.letters.push_back({k, c > 0 ? 1 : -1});
  }
  r.canonical = true;
  return r;
}

}  // namespace

bool is_identity(const SurfaceWord& w) {
  if (w.genus == 1) {
    std::vector<long> e = exponent_vector(w);
    return e[0] == 0 && e[1] == 0;
  }
  std::vector<Letters> rots = relator_rotations(w.genus);
  Letters r = dehn_reduce(w.letters, rots, w.genus);
  return r.empty();
}

SurfaceWord canonical_form(const SurfaceWord& w) {
  if (w.genus == 1) return canonical_genus1(w);

  std::string cache_key = std::to_string(w.genus) + "|" + letters_key(w.letters);
  {
    auto& cache = canonical_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.map.find(cache_key);
    if (it != cache.map.end()) return it->second;
  }

  std::vector<Letters> rots = relator_rotations(w.genus);
  Letters start = dehn_reduce(w.letters, rots, w.genus);
  std::vector<Letters> closure = geodesic_closure(start, rots, w.genus);

  SurfaceWord best;
  best.genus = w.genus;
  bool have = false;
  for (const Letters& cand : closure) {
    SurfaceWord c;
    c.genus = w.genus;
    c.letters = cand;
    if (!have || shortlex_compare(c, best) < 0) {
      best = c;
      have = true;
    }
  }
  best.canonical = true;

  {
    auto& cache = canonical_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.map.emplace(cache_key, best);
  }
  return best;
}

bool is_canonical(const SurfaceWord& w) {
  return canonical_form(w) == w;
}

std::vector<SurfaceWord> noncanonical_prefixes(const SurfaceWord& w) {
  std::vector<SurfaceWord> bad;
  SurfaceWord prefix;
  prefix.genus = w.genus;
  for (const SurfaceLetter& l : w.letters) {
    prefix.letters.push_back(l);
    if (!is_canonical(prefix)) bad.push_back(prefix);
  }
  return bad;
}

bool cayley_ball_is_identity(const SurfaceWord& w, int radius) {
  if (w.genus == 1) {
    // The abelian case needs no search.
    std::vector<long> e = exponent_vector(w);
    return e[0] == 0 && e[1] == 0;
  }
  Letters start = reduce_letters(w.letters);
  if (static_cast<int>(start.size()) > radius)
    throw Error(ErrCode::Domain, "cayley_ball_is_identity", "word longer than radius");
  if (start.empty()) return true;

  std::vector<Letters> rots = relator_rotations(w.genus);
  std::set<std::string> seen;
  std::deque<Letters> queue;
  seen.insert(letters_key(start));
  queue.push_back(start);
  while (!queue.empty()) {
    Letters cur = queue.front();
    queue.pop_front();
    for (size_t pos = 0; pos < cur.size(); ++pos) {
      for (const Letters& pat : rots) {
        size_t maxlen = match_length(cur, pos, pat);
        for (size_t len = 1; len <= maxlen; ++len) {
          Letters next = swap_complement(cur, pos, len, pat);
          if (next.empty()) return true;
          if (static_cast<int>(next.size()) > radius) continue;
          std::string key = letters_key(next);
          if (seen.insert(key).second) queue.push_back(next);
        }
      }
    }
  }
  return false;
}

bool cayley_ball_confirms_unequal(const SurfaceWord& u, const SurfaceWord& v, int radius) {
  SurfaceWord q = sg_product(u, sg_inverse(v));
  return !cayley_ball_is_identity(q, radius);
}

}  // namespace sb
