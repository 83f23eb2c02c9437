#include "free_word.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace sb {

int compare(const BasisSymbol& a, const BasisSymbol& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.strand != b.strand) return a.strand < b.strand ? -1 : 1;
  return shortlex_compare(a.gamma, b.gamma);
}

bool operator<(const BasisSymbol& a, const BasisSymbol& b) { return compare(a, b) < 0; }

int compare(const FreeLetter& a, const FreeLetter& b) {
  int c = compare(a.sym, b.sym);
  if (c != 0) return c;
  if (a.sign != b.sign) return a.sign > b.sign ? -1 : 1;  // +1 before -1
  return 0;
}

BasisSymbol make_basis_symbol(const SurfaceWord& gamma, int strand, int level) {
  if (level < 2)
    throw Error(ErrCode::Domain, "make_basis_symbol", "level must be >= 2",
                std::to_string(level));
  if (strand < 2 || strand > level)
    throw Error(ErrCode::Domain, "make_basis_symbol", "strand out of 2..level",
                std::to_string(strand));
  BasisSymbol s;
  s.gamma = gamma.canonical ? gamma : canonical_form(gamma);
  s.strand = strand;
  s.level = level;
  return s;
}

std::string to_string(const BasisSymbol& s) {
  return "b[" + to_string(s.gamma) + ";" + std::to_string(s.strand) + "]@" +
         std::to_string(s.level);
}

std::string to_string(const FreeWord& w) {
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += to_string(w.letters[i].sym);
    if (w.letters[i].sign < 0) out += "^-1";
  }
  return out;
}

FreeWord parse_free_word(const std::string& text, int genus, int default_level) {
  FreeWord w;
  w.level = default_level;
  std::istringstream in(text);
  std::string tok;
  bool level_set = false;
  while (in >> tok) {
    int sign = 1;
    std::string body = tok;
    if (body.size() > 3 && body.substr(body.size() - 3) == "^-1") {
      sign = -1;
      body = body.substr(0, body.size() - 3);
    }
    if (body.size() < 5 || body.substr(0, 2) != "b[")
      throw Error(ErrCode::Parse, "parse_free_word", "malformed symbol", tok);
    size_t semi = body.find(';');
    size_t close = body.find(']', semi == std::string::npos ? 0 : semi);
    if (semi == std::string::npos || close == std::string::npos)
      throw Error(ErrCode::Parse, "parse_free_word", "malformed symbol", tok);
    std::string gamma_text = body.substr(2, semi - 2);
    std::string strand_text = body.substr(semi + 1, close - semi - 1);
    int level = default_level;
    if (close + 1 < body.size()) {
      if (body[close + 1] != '@')
        throw Error(ErrCode::Parse, "parse_free_word", "malformed symbol", tok);
      level = std::stoi(body.substr(close + 2));
    }
    int strand = 0;
    try {
      strand = std::stoi(strand_text);
    } catch (const std::exception&) {
      throw Error(ErrCode::Parse, "parse_free_word", "malformed strand", tok);
    }
    SurfaceWord gamma = parse_surface_word(gamma_text, genus);
    BasisSymbol sym = make_basis_symbol(gamma, strand, level);
    if (!level_set) {
      w.level = level;
      level_set = true;
    } else if (level != w.level) {
      throw Error(ErrCode::Domain, "parse_free_word", "mixed levels", tok);
    }
    w.letters.push_back({sym, sign});
  }
  return w;
}

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  out.level = w.level;
  for (const FreeLetter& l : w.letters) {
    if (l.sym.level != w.level)
      throw Error(ErrCode::Domain, "free_reduce", "mixed levels", to_string(l.sym));
    if (!out.letters.empty() && out.letters.back().sym == l.sym &&
        out.letters.back().sign == -l.sign)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

FreeWord fw_concat(const FreeWord& u, const FreeWord& v) {
  if (u.level != v.level)
    throw Error(ErrCode::Domain, "fw_concat", "mixed levels");
  FreeWord w;
  w.level = u.level;
  w.letters = u.letters;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return free_reduce(w);
}

FreeWord fw_inverse(const FreeWord& w) {
  FreeWord r;
  r.level = w.level;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back({it->sym, -it->sign});
  return r;
}

FreeWord fw_conjugate(const FreeWord& conj, const FreeWord& w) {
  return fw_concat(fw_concat(conj, w), fw_inverse(conj));
}

FreeWord conj_class_rep(const FreeWord& w) {
  FreeWord r = free_reduce(w);
  if (r.letters.empty())
    throw Error(ErrCode::Domain, "conj_class_rep", "empty word");
  // Cyclic reduction.
  while (r.letters.size() >= 2 && r.letters.front().sym == r.letters.back().sym &&
         r.letters.front().sign == -r.letters.back().sign) {
    r.letters.pop_back();
    r.letters.erase(r.letters.begin());
  }
  if (r.letters.empty())
    throw Error(ErrCode::Domain, "conj_class_rep", "word is trivial after cyclic reduction");
  // Least rotation.
  const size_t n = r.letters.size();
  size_t best = 0;
  for (size_t s = 1; s < n; ++s) {
    for (size_t i = 0; i < n; ++i) {
      int c = compare(r.letters[(s + i) % n], r.letters[(best + i) % n]);
      if (c < 0) {
        best = s;
        break;
      }
      if (c > 0) break;
    }
  }
  FreeWord out;
  out.level = r.level;
  for (size_t i = 0; i < n; ++i) out.letters.push_back(r.letters[(best + i) % n]);
  return out;
}

std::map<BasisSymbol, int> abelianize(const FreeWord& w) {
  std::map<BasisSymbol, int> sums;
  for (const FreeLetter& l : w.letters) {
    int& c = sums[l.sym];
    c += l.sign;
    if (c == 0) sums.erase(l.sym);
  }
  return sums;
}

const FreeWord* EndoRule::find(const BasisSymbol& s) const {
  for (const auto& [sym, img] : images)
    if (sym == s) return &img;
  return nullptr;
}

FreeWord apply_endomorphism(const EndoRule& rule, const FreeWord& w) {
  FreeWord out;
  out.level = w.level;
  for (const FreeLetter& l : w.letters) {
    const FreeWord* img = rule.find(l.sym);
    if (!img)
      throw Error(ErrCode::ActionUndefined, "apply_endomorphism", "no rule for symbol",
                  to_string(l.sym));
    if (l.sign > 0)
      out.letters.insert(out.letters.end(), img->letters.begin(), img->letters.end());
    else {
      FreeWord inv = fw_inverse(*img);
      out.letters.insert(out.letters.end(), inv.letters.begin(), inv.letters.end());
    }
  }
  return free_reduce(out);
}

}  // namespace sb
