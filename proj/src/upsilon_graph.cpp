#include "upsilon_graph.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"

namespace sb {

namespace {

OmegaFragment build_from_keyed(std::map<std::string, KElement> by_key,
                               const PeripheralTable& table) {
  std::vector<std::string> keys;
  std::vector<KElement> elems;
  for (auto& [key, elem] : by_key) {
    keys.push_back(key);
    elems.push_back(elem);
  }
  std::set<std::pair<std::string, std::string>> edges;
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = a + 1; b < elems.size(); ++b)
      if (commutes(elems[a], elems[b], table)) edges.insert({keys[a], keys[b]});
  OmegaFragment frag;
  frag.graph = std::make_shared<CommutationGraph>(keys, edges);
  frag.elements.resize(elems.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    int id = frag.graph->id_of(keys[i]);
    frag.elements[static_cast<size_t>(id)] = elems[i];
  }
  return frag;
}

}  // namespace

OmegaFragment build_omega_fragment(const std::vector<UpsilonElement>& gens,
                                   const PeripheralTable& table) {
  std::map<std::string, KElement> by_key;
  for (const UpsilonElement& g : gens) by_key.emplace(g.key, g.element);
  return build_from_keyed(std::move(by_key), table);
}

OmegaFragment build_omega_fragment(const std::vector<KElement>& elems,
                                   const PeripheralTable& table) {
  std::map<std::string, KElement> by_key;
  for (const KElement& e : elems) by_key.emplace(upsilon_key(e), e);
  return build_from_keyed(std::move(by_key), table);
}

std::string to_string(const HatSymbol& s) {
  std::string conj = to_string(s.conj);
  return "(" + (conj.empty() ? std::string() : conj + " ") + "d" + std::to_string(s.index) +
         (conj.empty() ? std::string() : " " + to_string(bw_inverse(s.conj))) + ")";
}

namespace {

// Letters of a single-level word as global strand pairs: level m covers
// strands n-m+1..n, strand j sits at global n-m+j.

FreeWord single_letter(const SurfaceWord& gamma, int base, int s_glob, int n) {
  const int level = n - base + 1;
  FreeWord w;
  w.level = level;
  w.letters.push_back({make_basis_symbol(gamma, s_glob - base + 1, level), 1});
  return w;
}

FreeWord word_at(const std::vector<std::pair<SurfaceWord, std::pair<int, int>>>& sletters,
                 const std::vector<int>& signs, int n) {
  // all letters must share one base
  int base = sletters.front().second.first;
  FreeWord out;
  out.level = n - base + 1;
  for (size_t t = 0; t < sletters.size(); ++t) {
    if (sletters[t].second.first != base)
      throw Error(ErrCode::Unrepresentable, "phi_iso",
                  "conjugation scatters letters across levels");
    out.letters.push_back({make_basis_symbol(sletters[t].first,
                                             sletters[t].second.second - base + 1,
                                             n - base + 1),
                           signs[t]});
  }
  return out;
}

/// sigma_j^sign conjugation of one trivial-or-gamma letter with global pair
/// (r, s). Returns letters (gamma, pair) with signs.
void push_sigma_letter(int j, int sign, const SurfaceWord& gamma, int r, int s, int lsign,
                       std::vector<std::pair<SurfaceWord, std::pair<int, int>>>& out_letters,
                       std::vector<int>& out_signs) {
  const bool trivial = gamma.letters.empty();
  auto emit = [&](const SurfaceWord& g, int rr, int ss, int sg) {
    out_letters.push_back({g, {rr, ss}});
    out_signs.push_back(sg);
  };
  auto unsupported = [&]() {
    throw Error(ErrCode::Unrepresentable, "phi_iso",
                "sigma conjugation leaves the fragment",
                "s" + std::to_string(j) + (sign < 0 ? "^-1" : ""));
  };
  // disjoint from the pair, outside or strictly inside: commutes (handle
  // loops of the base strand also commute when j+1 < r or j > r)
  if ((j + 1 < r) || (j > s) || (r < j && j + 1 < s)) {
    emit(gamma, r, s, lsign);
    return;
  }
  if (!trivial && j <= r) unsupported();
  if (j == r - 1 && sign > 0) {
    emit(gamma, r - 1, s, lsign);
    return;
  }
  if (j == r - 1 && sign < 0) {
    // T_{r-1,r}^-1 T_{r-1,s} T_{r-1,r}, inverted when the letter is
    if (lsign > 0) {
      emit(gamma, r - 1, r, -1);
      emit(gamma, r - 1, s, 1);
      emit(gamma, r - 1, r, 1);
    } else {
      emit(gamma, r - 1, r, -1);
      emit(gamma, r - 1, s, -1);
      emit(gamma, r - 1, r, 1);
    }
    return;
  }
  if (j == r) {
    if (r + 1 == s) {
      emit(gamma, r, s, lsign);  // sigma_r fixes its own square
      return;
    }
    if (sign < 0) {
      emit(gamma, r + 1, s, lsign);
      return;
    }
    unsupported();
  }
  if (j == s && sign < 0) {
    emit(gamma, r, s + 1, lsign);
    return;
  }
  if (j == s && sign > 0) {
    // T_{r,s}^-1 T_{r,s+1} T_{r,s}
    if (lsign > 0) {
      emit(gamma, r, s, -1);
      emit(gamma, r, s + 1, 1);
      emit(gamma, r, s, 1);
    } else {
      emit(gamma, r, s, -1);
      emit(gamma, r, s + 1, -1);
      emit(gamma, r, s, 1);
    }
    return;
  }
  if (j == s - 1 && sign > 0 && s - 1 > r) {
    emit(gamma, r, s - 1, lsign);
    return;
  }
  unsupported();
}

FreeWord push_sigma(int j, int sign, const FreeWord& w, int n) {
  std::vector<std::pair<SurfaceWord, std::pair<int, int>>> letters;
  std::vector<int> signs;
  const int base = n - w.level + 1;
  for (const FreeLetter& l : w.letters)
    push_sigma_letter(j, sign, l.sym.gamma, base, base + l.sym.strand - 1, l.sign, letters,
                      signs);
  if (letters.empty()) {
    FreeWord out;
    out.level = w.level;
    return out;
  }
  return free_reduce(word_at(letters, signs, n));
}

FreeWord push_a(int k, int sign, const FreeWord& w, int n, int genus) {
  const int base = n - w.level + 1;
  FreeWord out;
  out.level = w.level;
  for (const FreeLetter& l : w.letters) {
    if (base == 1) {
      SurfaceWord step;
      step.genus = genus;
      step.letters.push_back({k, sign});
      SurfaceWord shifted = sg_product(step, l.sym.gamma);
      if (!is_canonical(shifted))
        throw Error(ErrCode::Unrepresentable, "phi_iso",
                    "handle conjugation leaves the normal-form fragment", to_string(shifted));
      shifted.canonical = true;
      out.letters.push_back({make_basis_symbol(shifted, l.sym.strand, l.sym.level), l.sign});
    } else if (l.sym.gamma.letters.empty()) {
      out.letters.push_back(l);  // a(1,k) commutes with lower strand loops
    } else {
      throw Error(ErrCode::Unrepresentable, "phi_iso",
                  "handle conjugation against a dressed lower letter",
                  to_string(l.sym));
    }
  }
  return free_reduce(out);
}

}  // namespace

KElement upsilon_from_hat(const HatSymbol& s, int n, int genus, const PeripheralTable& table) {
  (void)table;
  if (has_singular(s.conj))
    throw Error(ErrCode::Domain, "phi_iso", "conjugator must be non-singular",
                to_string(s.conj));
  if (s.index < 1 || s.index > n - 1)
    throw Error(ErrCode::Domain, "phi_iso", "delta index out of 1..n-1",
                std::to_string(s.index));
  SurfaceWord triv;
  triv.genus = genus;
  FreeWord cur = single_letter(canonical_form(triv), s.index, s.index + 1, n);
  for (auto it = s.conj.letters.rbegin(); it != s.conj.letters.rend(); ++it) {
    if (it->kind == BKind::Sigma)
      cur = push_sigma(it->index, it->sign, cur, n);
    else
      cur = push_a(it->index, it->sign, cur, n, genus);
  }
  return k_from_word(cur, n, genus);
}

PhiResult phi_iso(const std::vector<HatSymbol>& word, int n, int genus,
                  const PeripheralTable& table) {
  std::map<std::string, KElement> by_key;
  std::vector<std::string> image_keys;
  std::vector<std::string> hat_keys;
  for (const HatSymbol& s : word) {
    KElement img = upsilon_from_hat(s, n, genus, table);
    std::string key = upsilon_key(img);
    by_key.emplace(key, img);
    image_keys.push_back(key);
    hat_keys.push_back(to_string(s));
  }
  PhiResult res;
  res.fragment = build_from_keyed(std::move(by_key), table);
  res.word = make_trace_word(res.fragment.graph, image_keys);
  res.hat_keys = std::move(hat_keys);
  return res;
}

}  // namespace sb
