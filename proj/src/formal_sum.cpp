#include "formal_sum.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "errors.hpp"

namespace sb {

void FormalSum::add(const KElement& e, long long c) {
  if (c == 0) return;
  std::string key = k_key(e);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(std::move(key), std::make_pair(e, c));
    return;
  }
  it->second.second += c;
  if (it->second.second == 0) terms.erase(it);
}

bool FormalSum::operator==(const FormalSum& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto a = terms.begin();
  auto b = o.terms.begin();
  for (; a != terms.end(); ++a, ++b)
    if (a->first != b->first || a->second.second != b->second.second) return false;
  return true;
}

FormalSum fs_one(int n, int genus) {
  FormalSum p;
  p.add(k_identity(n, genus), 1);
  return p;
}

FormalSum fs_add(const FormalSum& p, const FormalSum& q) {
  FormalSum r = p;
  for (const auto& [key, term] : q.terms) r.add(term.first, term.second);
  return r;
}

FormalSum fs_scale(const FormalSum& p, long long c) {
  FormalSum r;
  if (c == 0) return r;
  for (const auto& [key, term] : p.terms) r.add(term.first, term.second * c);
  return r;
}

FormalSum fs_mul_left(const KElement& u, const FormalSum& p, const PeripheralTable& table) {
  FormalSum r;
  for (const auto& [key, term] : p.terms)
    r.add(k_multiply(u, term.first, table), term.second);
  return r;
}

FormalSum fs_mul_right(const FormalSum& p, const KElement& u, const PeripheralTable& table) {
  FormalSum r;
  for (const auto& [key, term] : p.terms)
    r.add(k_multiply(term.first, u, table), term.second);
  return r;
}

std::string fs_fingerprint(const FormalSum& p) {
  std::string out;
  for (const auto& [key, term] : p.terms) {
    out += std::to_string(term.second);
    out += '*';
    out += key;
    out += ';';
  }
  return out;
}

FormalSum nu(const std::vector<KElement>& word, int n, int genus,
             const PeripheralTable& table) {
  FormalSum p = fs_one(n, genus);
  for (const KElement& u : word)
    p = fs_add(fs_mul_right(p, u, table), fs_scale(p, -1));
  return p;
}

FormalSum nu(const TraceWord& word, const OmegaFragment& frag, int n, int genus,
             const PeripheralTable& table) {
  std::vector<KElement> elems;
  for (int id : word.letters) elems.push_back(frag.element_of(id));
  return nu(elems, n, genus, table);
}

FormalSum nu_subindex(const std::vector<KElement>& word, int n, int genus,
                      const PeripheralTable& table) {
  const size_t l = word.size();
  if (l > 20)
    throw Error(ErrCode::Domain, "nu_subindex", "word too long for subset expansion");
  FormalSum p;
  for (size_t mask = 0; mask < (size_t(1) << l); ++mask) {
    KElement prod = k_identity(n, genus);
    int q = 0;
    for (size_t t = 0; t < l; ++t) {
      if ((mask >> t) & 1) {
        prod = k_multiply(prod, word[t], table);
        ++q;
      }
    }
    long long sign = ((static_cast<int>(l) - q) % 2 == 0) ? 1 : -1;
    p.add(prod, sign);
  }
  return p;
}

FormalSum graded_component(const FormalSum& p, long k) {
  FormalSum r;
  for (const auto& [key, term] : p.terms)
    if (deg(term.first) == k) r.add(term.first, term.second);
  return r;
}

FormalSum kappa_filter(const FormalSum& p, const std::set<std::pair<int, int>>& S) {
  FormalSum r;
  for (const auto& [key, term] : p.terms) {
    bool ok = true;
    for (const auto& [pair, c] : kappa(term.first))
      if (!S.count(pair)) {
        ok = false;
        break;
      }
    if (ok) r.add(term.first, term.second);
  }
  return r;
}

namespace {

long top_grade(const FormalSum& p) {
  long l = 0;
  for (const auto& [key, term] : p.terms) l = std::max(l, deg(term.first));
  return l;
}

// S_q = (-1)^(l-q) P_q; the subindex sums all have positive coefficients.
std::optional<std::vector<FormalSum>> subindex_sums(const FormalSum& p, long l) {
  std::vector<FormalSum> S(static_cast<size_t>(l) + 1);
  for (const auto& [key, term] : p.terms) {
    long q = deg(term.first);
    if (q < 0 || q > l) return std::nullopt;
    long long sign = ((l - q) % 2 == 0) ? 1 : -1;
    S[static_cast<size_t>(q)].add(term.first, sign * term.second);
  }
  for (const FormalSum& s : S)
    for (const auto& [key, term] : s.terms)
      if (term.second < 0) return std::nullopt;
  return S;
}

// Telescoping peel of a candidate first letter u: S'_q = S_q - u S'_{q-1},
// valid only when every intermediate sum stays nonnegative and the top
// telescopes to zero.
std::optional<FormalSum> deflate(const std::vector<FormalSum>& S, const KElement& u,
                                 int n, int genus, const PeripheralTable& table) {
  const long l = static_cast<long>(S.size()) - 1;
  std::vector<FormalSum> Sp(static_cast<size_t>(l));
  Sp[0] = fs_one(n, genus);
  for (long q = 1; q < l; ++q) {
    FormalSum t = fs_add(S[static_cast<size_t>(q)],
                         fs_scale(fs_mul_left(u, Sp[static_cast<size_t>(q - 1)], table), -1));
    for (const auto& [key, term] : t.terms)
      if (term.second < 0) return std::nullopt;
    Sp[static_cast<size_t>(q)] = std::move(t);
  }
  if (!(fs_mul_left(u, Sp[static_cast<size_t>(l - 1)], table) == S[static_cast<size_t>(l)]))
    return std::nullopt;
  FormalSum q;
  for (long t = 0; t < l; ++t) {
    long long sign = ((l - 1 - t) % 2 == 0) ? 1 : -1;
    q = fs_add(q, fs_scale(Sp[static_cast<size_t>(t)], sign));
  }
  return q;
}

struct Decoder {
  int n;
  int genus;
  const PeripheralTable& table;
  std::unordered_map<std::string, bool> failed;  // fingerprints seen to fail

  std::optional<std::vector<KElement>> run(const FormalSum& p, long l) {
    if (l == 0)
      return p == fs_one(n, genus) ? std::optional<std::vector<KElement>>({std::vector<KElement>{}})
                                   : std::nullopt;
    std::string fp = fs_fingerprint(p);
    if (auto it = failed.find(fp); it != failed.end()) return std::nullopt;

    auto S = subindex_sums(p, l);
    if (!S) {
      failed.emplace(std::move(fp), true);
      return std::nullopt;
    }
    // Letter multiset from grade one.
    const FormalSum& S1 = (*S)[1];
    long long total = 0;
    for (const auto& [key, term] : S1.terms) total += term.second;
    if (total != l) {
      failed.emplace(std::move(fp), true);
      return std::nullopt;
    }
    // Candidates in ShortLex order of their canonical vertex keys; with
    // several strand pairs present, a candidate must also lead its own pair
    // block (kappa-filtered subsum).
    std::vector<std::pair<std::string, const KElement*>> candidates;
    std::set<std::pair<int, int>> pairs;
    for (const auto& [key, term] : S1.terms) {
      auto pr = unit_kappa(term.first);
      if (!pr) {
        failed.emplace(std::move(fp), true);
        return std::nullopt;
      }
      pairs.insert(*pr);
      candidates.emplace_back(upsilon_key(term.first), &term.first);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [ukey, uptr] : candidates) {
      const KElement& u = *uptr;
      if (pairs.size() > 1 && !leads_pair_block(p, u, l)) continue;
      auto rest = deflate(*S, u, n, genus, table);
      if (!rest) continue;
      auto sub = run(*rest, l - 1);
      if (sub) {
        sub->insert(sub->begin(), u);
        return sub;
      }
    }
    failed.emplace(std::move(fp), true);
    return std::nullopt;
  }

  static std::optional<std::pair<int, int>> unit_kappa(const KElement& x) {
    auto v = kappa(x);
    if (v.size() != 1 || v.begin()->second != 1) return std::nullopt;
    return v.begin()->first;
  }

  bool leads_pair_block(const FormalSum& p, const KElement& u, long l) {
    auto pr = unit_kappa(u);
    if (!pr) return false;
    FormalSum f = kappa_filter(p, {*pr});
    long pc = top_grade(f);
    if (pc <= 0) return false;
    // nu of the pair subword equals the filtered sum times (-1)^(l-pc).
    long long sign = ((l - pc) % 2 == 0) ? 1 : -1;
    auto sums = subindex_sums(fs_scale(f, sign), pc);
    if (!sums) return false;
    return deflate(*sums, u, n, genus, table).has_value();
  }
};

}  // namespace

DecodeResult decode(const FormalSum& p, int n, int genus, const PeripheralTable& table) {
  if (p.is_zero())
    throw Error(ErrCode::NotInImage, "decode", "zero sum is not in the image");
  long l = top_grade(p);
  {
    FormalSum top = graded_component(p, l);
    if (top.terms.size() != 1 || top.terms.begin()->second.second != 1)
      throw Error(ErrCode::NotInImage, "decode", "top grade is not a single unit term");
  }
  Decoder dec{n, genus, table, {}};
  auto letters = dec.run(p, l);
  if (!letters)
    throw Error(ErrCode::NotInImage, "decode", "no candidate letter sequence survives");

  DecodeResult res;
  res.fragment = build_omega_fragment(*letters, table);
  std::vector<std::string> keys;
  for (const KElement& u : *letters) keys.push_back(upsilon_key(u));
  res.word = foata_flatten(make_trace_word(res.fragment.graph, keys));
  return res;
}

std::vector<TraceWord> brute_force_preimage(const FormalSum& p, const OmegaFragment& gens,
                                            int lmax, const PeripheralTable& table) {
  if (gens.elements.empty())
    throw Error(ErrCode::Domain, "brute_force_preimage", "no generators");
  const KElement& probe = gens.elements.front();
  const int n = probe.n, genus = probe.genus;

  std::vector<TraceWord> hits;
  std::set<std::string> seen;  // foata keys

  std::vector<int> word;
  FormalSum prefix = fs_one(n, genus);

  auto record = [&]() {
    TraceWord t;
    t.graph = gens.graph;
    t.letters = word;
    TraceWord flat = foata_flatten(t);
    std::string key;
    for (int id : flat.letters) key += std::to_string(id) + ",";
    if (seen.insert(key).second) hits.push_back(flat);
  };

  std::function<void(const FormalSum&, int)> rec = [&](const FormalSum& sum, int depth) {
    if (sum == p) record();
    if (depth == lmax) return;
    for (size_t id = 0; id < gens.elements.size(); ++id) {
      word.push_back(static_cast<int>(id));
      FormalSum next = fs_add(fs_mul_right(sum, gens.elements[id], table), fs_scale(sum, -1));
      rec(next, depth + 1);
      word.pop_back();
    }
  };
  rec(prefix, 0);

  std::sort(hits.begin(), hits.end(), [](const TraceWord& a, const TraceWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  });
  return hits;
}

}  // namespace sb
