#include "suite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "braid_word.hpp"
#include "errors.hpp"
#include "formal_sum.hpp"
#include "rng.hpp"

namespace sb {

namespace {

constexpr int kMaxWitnesses = 5;

struct Check {
  SuiteResult result;

  explicit Check(std::string name) { result.name = std::move(name); }

  void record(bool ok, const std::function<std::string()>& witness) {
    ++result.cases;
    if (ok) {
      ++result.passed;
    } else if (static_cast<int>(result.failures.size()) < kMaxWitnesses) {
      result.failures.push_back(witness());
    }
  }
};

// ---- deterministic generators ---------------------------------------------

SurfaceWord random_surface_word(SplitMix64& rng, int genus, int len) {
  SurfaceWord w;
  w.genus = genus;
  for (int t = 0; t < len; ++t)
    w.letters.push_back({static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus))) + 1,
                         rng.coin() ? 1 : -1});
  return w;
}

// A word equal to w in the group: cancelling pairs and relator rotations
// spliced in at random spots.
SurfaceWord garble(SplitMix64& rng, const SurfaceWord& w) {
  std::vector<SurfaceLetter> letters = w.letters;
  const int g = w.genus;
  std::vector<SurfaceLetter> relator;
  for (int k = 1; k <= 2 * g; ++k) relator.push_back({k, 1});
  for (int k = 1; k <= 2 * g; ++k) relator.push_back({k, -1});
  int rounds = static_cast<int>(rng.below(3)) + 1;
  for (int t = 0; t < rounds; ++t) {
    size_t pos = rng.below(letters.size() + 1);
    if (rng.coin()) {
      SurfaceLetter l{static_cast<int>(rng.below(static_cast<uint64_t>(2 * g))) + 1,
                      rng.coin() ? 1 : -1};
      letters.insert(letters.begin() + pos, {l, {l.index, -l.sign}});
    } else {
      size_t rot = rng.below(relator.size());
      std::vector<SurfaceLetter> ins;
      for (size_t i = 0; i < relator.size(); ++i)
        ins.push_back(relator[(rot + i) % relator.size()]);
      if (rng.coin()) {
        std::reverse(ins.begin(), ins.end());
        for (SurfaceLetter& l : ins) l.sign = -l.sign;
      }
      letters.insert(letters.begin() + pos, ins.begin(), ins.end());
    }
  }
  SurfaceWord out;
  out.genus = g;
  out.letters = std::move(letters);
  return out;
}

SurfaceWord gamma_pool(SplitMix64& rng, int genus) {
  SurfaceWord w;
  w.genus = genus;
  switch (rng.below(5)) {
    case 0: break;
    case 1: w.letters.push_back({1, 1}); break;
    case 2: w.letters.push_back({2, 1}); break;
    case 3: w.letters.push_back({1, -1}); break;
    default:
      w.letters.push_back({1, 1});
      w.letters.push_back({2, 1});
      break;
  }
  return canonical_form(w);
}

FreeWord random_free_word(SplitMix64& rng, int level, int genus, int len,
                          bool trivial_gamma = false, int max_strand = 0) {
  FreeWord w;
  w.level = level;
  int top_strand = max_strand > 0 ? max_strand : level;
  for (int t = 0; t < len; ++t) {
    int strand = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(top_strand - 1)));
    SurfaceWord gamma;
    gamma.genus = genus;
    if (!trivial_gamma) gamma = gamma_pool(rng, genus);
    gamma = canonical_form(gamma);
    w.letters.push_back({make_basis_symbol(gamma, strand, level), rng.coin() ? 1 : -1});
  }
  return free_reduce(w);
}

UpsilonElement random_upsilon(SplitMix64& rng, int level, int n, int genus, int conj_len,
                              int core_strand = 0, bool conj_same_strand_only = false) {
  int strand = core_strand > 0
                   ? core_strand
                   : 2 + static_cast<int>(rng.below(static_cast<uint64_t>(level - 1)));
  BasisSymbol core = make_basis_symbol(gamma_pool(rng, genus), strand, level);
  FreeWord conj;
  conj.level = level;
  for (int t = 0; t < conj_len; ++t) {
    int cs = conj_same_strand_only
                 ? strand
                 : 2 + static_cast<int>(rng.below(static_cast<uint64_t>(level - 1)));
    conj.letters.push_back({make_basis_symbol(gamma_pool(rng, genus), cs, level),
                            rng.coin() ? 1 : -1});
  }
  return make_upsilon(free_reduce(conj), core, n);
}

KElement random_fragment_element(SplitMix64& rng, int n, int genus) {
  KElement x = k_identity(n, genus);
  for (int m = n; m >= 2; --m) {
    int len = static_cast<int>(rng.below(3));
    // lower levels keep trivial handles so every action stays defined
    x.at_level(m) = random_free_word(rng, m, genus, len, /*trivial_gamma=*/m != n);
  }
  return x;
}

BraidWord random_braid_word(SplitMix64& rng, int n, int genus, int len, bool singular) {
  BraidWord w;
  w.n = n;
  w.genus = genus;
  for (int t = 0; t < len; ++t) {
    int pick = static_cast<int>(rng.below(singular ? 4u : 2u));
    switch (pick) {
      case 0:
        w.letters.push_back(sig(1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1))),
                                rng.coin() ? 1 : -1));
        break;
      case 1:
        w.letters.push_back(gen_a(1 + static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus))),
                                  rng.coin() ? 1 : -1));
        break;
      case 2:
        w.letters.push_back(tau(1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)))));
        break;
      default:
        w.letters.push_back(del(1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)))));
        break;
    }
  }
  return w;
}

std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
  // matches permutation_of folding: (p then-read q)(x) = p[q[x]]
  std::vector<int> r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = p[static_cast<size_t>(q[x])];
  return r;
}

// ---- surface ---------------------------------------------------------------

SuiteResult surface_suite(uint64_t seed) {
  Check c("surface");
  SplitMix64 rng(seed ^ 0x5u);

  // genus 1: canonical form is the exponent normal form, prefixes stay canonical
  for (int p = -2; p <= 2; ++p) {
    for (int q = -2; q <= 2; ++q) {
      SurfaceWord target;
      target.genus = 1;
      for (int i = 0; i < std::abs(p); ++i) target.letters.push_back({1, p > 0 ? 1 : -1});
      for (int i = 0; i < std::abs(q); ++i) target.letters.push_back({2, q > 0 ? 1 : -1});
      SurfaceWord scrambled = garble(rng, target);
      SurfaceWord canon = canonical_form(scrambled);
      c.record(canon == target, [&] {
        return "g1 canonical of " + to_string(scrambled) + " gave " + to_string(canon);
      });
      bool prefixes_ok = noncanonical_prefixes(canon).empty();
      c.record(prefixes_ok, [&] { return "g1 prefix of " + to_string(canon); });
    }
  }

  // idempotence and soundness, genus 2
  for (int t = 0; t < 40; ++t) {
    SurfaceWord w = random_surface_word(rng, 2, static_cast<int>(rng.below(9)));
    SurfaceWord canon = canonical_form(w);
    c.record(canonical_form(canon) == canon,
             [&] { return "g2 idempotence on " + to_string(w); });
    c.record(is_identity(sg_product(w, sg_inverse(canon))),
             [&] { return "g2 soundness on " + to_string(w); });
  }

  // canonical product only depends on canonical inputs
  for (int genus : {1, 2}) {
    for (int t = 0; t < 25; ++t) {
      SurfaceWord u = random_surface_word(rng, genus, static_cast<int>(rng.below(5)));
      SurfaceWord v = random_surface_word(rng, genus, static_cast<int>(rng.below(5)));
      SurfaceWord u2 = garble(rng, u);
      SurfaceWord v2 = garble(rng, v);
      c.record(canonical_form(sg_product(u2, v2)) == canonical_form(sg_product(u, v)), [&] {
        return "product well-definedness at genus " + std::to_string(genus) + " on " +
               to_string(u) + " * " + to_string(v);
      });
    }
  }

  // bounded search oracle agrees with the algorithmic word problem
  int bad_prefix_words = 0;
  for (int t = 0; t < 30; ++t) {
    SurfaceWord w = random_surface_word(rng, 2, static_cast<int>(rng.below(7)));
    c.record(cayley_ball_is_identity(w, 8) == is_identity(w),
             [&] { return "g2 oracle mismatch on " + to_string(w); });
    SurfaceWord canon = canonical_form(w);
    if (!noncanonical_prefixes(canon).empty()) ++bad_prefix_words;
  }
  for (int t = 0; t < 10; ++t) {
    SurfaceWord u = random_surface_word(rng, 2, 4);
    SurfaceWord v = random_surface_word(rng, 2, 4);
    if (canonical_form(u) == canonical_form(v)) continue;
    c.record(cayley_ball_confirms_unequal(u, v, 12), [&] {
      return "oracle could not confirm " + to_string(u) + " != " + to_string(v);
    });
  }
  c.result.notes = "g2 canonical words with non-canonical prefixes: " +
                   std::to_string(bad_prefix_words) + " (diagnostic)";
  return c.result;
}

// ---- free tower -------------------------------------------------------------

SuiteResult free_suite(uint64_t seed) {
  Check c("free_tower");
  SplitMix64 rng(seed ^ 0x17u);

  // confluence: random cancellation order agrees with the left scan
  for (int t = 0; t < 60; ++t) {
    FreeWord w;
    w.level = 3;
    for (int i = 0; i < 8; ++i) {
      SurfaceWord gamma;
      gamma.genus = 1;
      if (rng.coin()) gamma.letters.push_back({1, 1});
      w.letters.push_back({make_basis_symbol(canonical_form(gamma),
                                             rng.coin() ? 2 : 3, 3),
                           rng.coin() ? 1 : -1});
    }
    std::vector<FreeLetter> letters = w.letters;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<size_t> spots;
      for (size_t i = 0; i + 1 < letters.size(); ++i)
        if (letters[i].sym == letters[i + 1].sym && letters[i].sign == -letters[i + 1].sign)
          spots.push_back(i);
      if (!spots.empty()) {
        size_t pick = spots[rng.below(spots.size())];
        letters.erase(letters.begin() + pick, letters.begin() + pick + 2);
        changed = true;
      }
    }
    FreeWord alt;
    alt.level = 3;
    alt.letters = letters;
    c.record(alt == free_reduce(w), [&] { return "confluence on " + to_string(w); });
  }

  // abelianization is additive
  for (int t = 0; t < 40; ++t) {
    FreeWord u = random_free_word(rng, 3, 1, static_cast<int>(rng.below(5)));
    FreeWord v = random_free_word(rng, 3, 1, static_cast<int>(rng.below(5)));
    auto au = abelianize(u);
    for (const auto& [sym, cnt] : abelianize(v)) {
      au[sym] += cnt;
      if (au[sym] == 0) au.erase(sym);
    }
    c.record(au == abelianize(fw_concat(u, v)),
             [&] { return "abelianize additivity on " + to_string(u) + " | " + to_string(v); });
  }

  // conjugation invariance of the class representative
  for (int t = 0; t < 40; ++t) {
    FreeWord u = random_free_word(rng, 3, 1, 1 + static_cast<int>(rng.below(3)));
    if (u.letters.empty()) continue;
    FreeWord w = random_free_word(rng, 3, 1, static_cast<int>(rng.below(3)));
    FreeWord conj = fw_conjugate(w, u);
    if (free_reduce(conj).letters.empty()) continue;
    c.record(conj_class_rep(conj) == conj_class_rep(u),
             [&] { return "conjugacy class of " + to_string(u) + " under " + to_string(w); });
  }

  // products of conjugates of fixed letters: a fixed product forces every
  // factor fixed
  int premise_hits = 0;
  for (int t = 0; t < 80; ++t) {
    // six generators at level 2, distinguished by their handles
    std::vector<BasisSymbol> X;
    for (int idx = 0; idx < 6; ++idx) {
      SurfaceWord gamma;
      gamma.genus = 3;
      if (idx > 0) gamma.letters.push_back({idx, 1});
      X.push_back(make_basis_symbol(canonical_form(gamma), 2, 2));
    }
    size_t x0_count = 1 + rng.below(3);
    std::vector<BasisSymbol> fixed(X.begin(), X.begin() + x0_count);
    std::vector<BasisSymbol> moved(X.begin() + x0_count, X.end());

    EndoRule rule;
    for (const BasisSymbol& s : fixed) {
      FreeWord img;
      img.level = 2;
      img.letters.push_back({s, 1});
      rule.images.push_back({s, img});
    }
    // random automorphism of the complement: a few Nielsen moves
    std::vector<FreeWord> images;
    for (const BasisSymbol& s : moved) {
      FreeWord img;
      img.level = 2;
      img.letters.push_back({s, 1});
      images.push_back(img);
    }
    int moves = 1 + static_cast<int>(rng.below(4));
    for (int mv = 0; mv < moves && moved.size() >= 2; ++mv) {
      size_t a = rng.below(moved.size());
      size_t b = rng.below(moved.size());
      if (a == b) {
        images[a] = fw_inverse(images[a]);
        continue;
      }
      FreeWord gen;
      gen.level = 2;
      gen.letters.push_back({moved[b], rng.coin() ? 1 : -1});
      images[a] = rng.coin() ? fw_concat(images[a], gen) : fw_concat(gen, images[a]);
    }
    for (size_t i = 0; i < moved.size(); ++i) rule.images.push_back({moved[i], images[i]});

    int l = 1 + static_cast<int>(rng.below(4));
    bool bias_fixed_conjugators = rng.coin();
    FreeWord product;
    product.level = 2;
    std::vector<FreeWord> ys;
    for (int i = 0; i < l; ++i) {
      FreeWord w;
      w.level = 2;
      int wl = static_cast<int>(rng.below(3));
      for (int j = 0; j < wl; ++j) {
        const BasisSymbol& s = bias_fixed_conjugators
                                   ? fixed[rng.below(fixed.size())]
                                   : X[rng.below(X.size())];
        w.letters.push_back({s, rng.coin() ? 1 : -1});
      }
      FreeWord core;
      core.level = 2;
      core.letters.push_back({fixed[rng.below(fixed.size())], 1});
      FreeWord y = fw_conjugate(free_reduce(w), core);
      ys.push_back(y);
      product = fw_concat(product, y);
    }
    if (apply_endomorphism(rule, product) == free_reduce(product)) {
      ++premise_hits;
      bool all_fixed = true;
      for (const FreeWord& y : ys)
        if (!(apply_endomorphism(rule, y) == free_reduce(y))) all_fixed = false;
      c.record(all_fixed, [&] { return "fixed product with moved factor, l=" + std::to_string(l); });
    } else {
      c.record(true, [] { return ""; });  // vacuous instance
    }
  }
  c.result.notes = "fixed-product premise held in " + std::to_string(premise_hits) + "/80 runs";
  return c.result;
}

// ---- braid presentations ----------------------------------------------------

RelationInstance random_relation_instance(SplitMix64& rng, int n, int genus) {
  static const RelId ids[] = {RelId::R0, RelId::R1, RelId::R2,  RelId::R3,  RelId::R4,
                              RelId::R5, RelId::R6, RelId::R7,  RelId::R8,  RelId::R9,
                              RelId::R10, RelId::R11, RelId::R12, RelId::R7p, RelId::R8p,
                              RelId::R9p, RelId::R10p, RelId::R11p, RelId::R12p,
                              RelId::ConjT, RelId::ConjA};
  for (;;) {
    RelationInstance inst;
    inst.id = ids[rng.below(std::size(ids))];
    inst.i = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    inst.j = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    inst.r = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus)));
    inst.s = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus)));
    inst.k = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus)));
    if (inst.id == RelId::ConjT) {
      inst.r = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 2)));
      inst.s = inst.r + 1 +
               static_cast<int>(rng.below(static_cast<uint64_t>(n - inst.r)));
      inst.j = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    }
    if (inst.id == RelId::ConjA) {
      inst.i = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
      inst.j = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    }
    if (inst.id == RelId::R0) {
      inst.letter = rng.coin()
                        ? sig(1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - 1))),
                              rng.coin() ? 1 : -1)
                        : gen_a(1 + static_cast<int>(rng.below(static_cast<uint64_t>(2 * genus))),
                                rng.coin() ? 1 : -1);
    }
    try {
      relation_sides(inst, n, genus);
      return inst;
    } catch (const Error&) {
      continue;  // dice violated a side condition; roll again
    }
  }
}

SuiteResult braid_suite(uint64_t seed) {
  Check c("braid_presentations");
  SplitMix64 rng(seed ^ 0x2bu);
  const int n = 4, genus = 1;

  for (int t = 0; t < 40; ++t) {
    BraidWord u = random_braid_word(rng, n, genus, static_cast<int>(rng.below(6)), true);
    BraidWord v = random_braid_word(rng, n, genus, static_cast<int>(rng.below(6)), true);
    c.record(permutation_of(bw_concat(u, v)) ==
                 compose_perm(permutation_of(u), permutation_of(v)),
             [&] { return "theta hom on " + to_string(u) + " | " + to_string(v); });
  }

  for (int t = 0; t < 60; ++t) {
    RelationInstance inst = random_relation_instance(rng, n, genus);
    auto [lhs, rhs] = relation_sides(inst, n, genus);
    c.record(permutation_of(lhs) == permutation_of(rhs),
             [&] { return "relation " + to_string(inst.id) + " permutation"; });
    BraidWord prefix = random_braid_word(rng, n, genus, static_cast<int>(rng.below(3)), true);
    BraidWord suffix = random_braid_word(rng, n, genus, static_cast<int>(rng.below(3)), true);
    BraidWord w = bw_concat(bw_concat(prefix, lhs), suffix);
    RelationInstance fwd = inst;
    fwd.pos = prefix.letters.size();
    BraidWord w2 = apply_relation(w, fwd);
    c.record(permutation_of(w2) == permutation_of(w),
             [&] { return "apply_relation permutation for " + to_string(inst.id); });
    RelationInstance back = fwd;
    back.reverse = true;
    c.record(apply_relation(w2, back) == w,
             [&] { return "apply/reverse round trip for " + to_string(inst.id); });
  }

  // eta is multiplicative before collection
  for (int t = 0; t < 30; ++t) {
    BraidWord u = random_braid_word(rng, n, genus, static_cast<int>(rng.below(4)), true);
    BraidWord v = random_braid_word(rng, n, genus, static_cast<int>(rng.below(4)), true);
    auto lhs = eta_expand(bw_concat(u, v));
    std::multiset<std::pair<int, std::string>> got, want;
    for (const EtaTerm& term : lhs) got.insert({term.coeff, to_string(term.word)});
    for (const EtaTerm& a : eta_expand(u))
      for (const EtaTerm& b : eta_expand(v))
        want.insert({a.coeff * b.coeff, to_string(bw_concat(a.word, b.word))});
    c.record(got == want, [&] { return "eta distributivity on " + to_string(u) + " | " + to_string(v); });
  }

  // splitting: replay the log, compare with the expansion, count deltas
  for (int t = 0; t < 40; ++t) {
    BraidWord w = random_braid_word(rng, n, genus, 2 + static_cast<int>(rng.below(7)), true);
    BraidWord dw = delta_substitute(w);
    SplitResult r = split_singular(dw);
    BraidWord replayed = dw;
    bool replay_ok = true;
    try {
      for (const RelationInstance& step : r.log) replayed = apply_relation(replayed, step);
    } catch (const Error&) {
      replay_ok = false;
    }
    BraidWord expansion = split_expansion(r, n, genus);
    c.record(replay_ok && replayed == expansion,
             [&] { return "split replay on " + to_string(w); });
    c.record(free_cancel(expansion) == free_cancel(dw),
             [&] { return "split expansion cancels back on " + to_string(w); });
    c.record(static_cast<int>(r.trace.size()) == singular_order(w),
             [&] { return "delta count on " + to_string(w); });
  }

  // the two generating sets translate into each other
  for (int t = 0; t < 20; ++t) {
    BraidWord w = random_braid_word(rng, n, genus, static_cast<int>(rng.below(6)), true);
    BraidWord round = free_cancel(delta_substitute(delta_substitute(w), true));
    c.record(round == free_cancel(delta_substitute(w, true)),
             [&] { return "delta substitution round trip on " + to_string(w); });
  }
  return c.result;
}

// ---- kernel tower -----------------------------------------------------------

SuiteResult kgroup_suite(uint64_t seed, const PeripheralTable& table) {
  Check c("k_group");
  SplitMix64 rng(seed ^ 0x3du);
  const int n = 4, genus = 1;
  const PeripheralTable& tbl = table;

  // printed conjugation cases keep the class of a single symbol and kappa
  for (int t = 0; t < 60; ++t) {
    ActionGenerator z;
    bool use_t = rng.coin();
    if (use_t) {
      z.kind = ActionGenerator::Kind::T;
      z.r = 2 + static_cast<int>(rng.below(2));
      z.s = z.r + 1 + static_cast<int>(rng.below(static_cast<uint64_t>(n - z.r)));
    } else {
      z.kind = ActionGenerator::Kind::A;
      z.i = 2 + static_cast<int>(rng.below(3));
      z.k = 1 + static_cast<int>(rng.below(2));
    }
    int strand = 2 + static_cast<int>(rng.below(3));
    SurfaceWord gamma = use_t ? gamma_pool(rng, genus) : canonical_form(SurfaceWord{genus, {}, false});
    BasisSymbol b = make_basis_symbol(gamma, strand, n);
    FreeWord img = act_generator(z, b, tbl);
    FreeWord rep = conj_class_rep(img);
    bool ok = rep.letters.size() == 1 && rep.letters[0].sign == 1 &&
              rep.letters[0].sym.strand == strand;
    KElement as_k = k_from_word(img, n, genus);
    KElement core_k = k_from_word(
        FreeWord{n, {FreeLetter{b, 1}}}, n, genus);
    ok = ok && kappa(as_k) == kappa(core_k);
    c.record(ok, [&] { return "action case " + to_string(z) + " on " + to_string(b); });

    // inverse undoes the action wherever both directions are defined
    if (use_t) {
      ActionGenerator zi = z;
      zi.sign = -z.sign;
      FreeWord back = act_word(zi, img, tbl);
      FreeWord just_b;
      just_b.level = n;
      just_b.letters.push_back({b, 1});
      c.record(back == just_b, [&] { return "inverse action for " + to_string(z); });
    }
  }

  // undefined actions fail loudly
  {
    ActionGenerator z;
    z.kind = ActionGenerator::Kind::A;
    z.i = 2;
    z.k = 1;
    SurfaceWord x1w;
    x1w.genus = genus;
    x1w.letters.push_back({1, 1});
    BasisSymbol dressed = make_basis_symbol(canonical_form(x1w), 3, n);
    bool threw = false;
    try {
      act_generator(z, dressed, tbl);
    } catch (const Error& e) {
      threw = e.code() == ErrCode::ActionUndefined;
    }
    c.record(threw, [] { return "handle action on dressed symbol must be undefined"; });

    ActionGenerator zi = z;
    zi.sign = -1;
    BasisSymbol plain = make_basis_symbol(canonical_form(SurfaceWord{genus, {}, false}), 3, n);
    threw = false;
    try {
      act_generator(zi, plain, tbl);  // i <= strand needs a table entry
    } catch (const Error& e) {
      threw = e.code() == ErrCode::ActionUndefined;
    }
    c.record(threw, [] { return "inverse handle action without table must be undefined"; });
  }

  // kappa and deg are additive; upsilon generators sit at unit vectors
  for (int t = 0; t < 50; ++t) {
    KElement a = random_fragment_element(rng, n, genus);
    KElement b = random_fragment_element(rng, n, genus);
    KElement ab = k_multiply(a, b, tbl);
    auto ka = kappa(a);
    for (const auto& [pr, cnt] : kappa(b)) {
      ka[pr] += cnt;
      if (ka[pr] == 0) ka.erase(pr);
    }
    c.record(kappa(ab) == ka && deg(ab) == deg(a) + deg(b),
             [&] { return "kappa/deg additivity on " + k_key(a) + " , " + k_key(b); });
  }
  {
    std::set<std::pair<int, int>> seen;
    bool all_units = true;
    for (int level = 2; level <= n; ++level)
      for (int strand = 2; strand <= level; ++strand) {
        UpsilonElement u = random_upsilon(rng, level, n, genus, 1, strand);
        all_units = all_units && deg(u.element) == 1;
        seen.insert(upsilon_classify(u.element));
      }
    c.record(all_units, [] { return "upsilon deg"; });
    c.record(static_cast<int>(seen.size()) == n * (n - 1) / 2,
             [&] { return "upsilon pairs distinct: " + std::to_string(seen.size()); });
  }

  // associativity on the fragment
  for (int t = 0; t < 25; ++t) {
    KElement a = random_fragment_element(rng, n, genus);
    KElement b = random_fragment_element(rng, n, genus);
    KElement d = random_fragment_element(rng, n, genus);
    c.record(k_multiply(k_multiply(a, b, tbl), d, tbl) ==
                 k_multiply(a, k_multiply(b, d, tbl), tbl),
             [&] { return "associativity on " + k_key(a); });
  }

  // a commuting product of strand-2 conjugates forces commuting factors
  int premise_hits = 0;
  for (int t = 0; t < 60; ++t) {
    KElement v = k_from_word(
        FreeWord{2, {FreeLetter{make_basis_symbol(canonical_form(SurfaceWord{genus, {}, false}),
                                                  2, 2),
                                1}}},
        n, genus);
    bool bias = rng.coin();
    int l = 1 + static_cast<int>(rng.below(3));
    std::vector<KElement> us;
    KElement prod = k_identity(n, genus);
    for (int i = 0; i < l; ++i) {
      UpsilonElement u =
          random_upsilon(rng, n, n, genus, static_cast<int>(rng.below(3)), 2, bias);
      us.push_back(u.element);
      prod = k_multiply(prod, u.element, tbl);
    }
    if (commutes(v, prod, tbl)) {
      ++premise_hits;
      bool each = true;
      for (const KElement& u : us) each = each && commutes(v, u, tbl);
      c.record(each, [&] { return "commuting product, non-commuting factor (l=" + std::to_string(l) + ")"; });
    } else {
      c.record(true, [] { return ""; });
    }
  }
  c.result.notes = "commuting-product premise held in " + std::to_string(premise_hits) + "/60 runs";
  return c.result;
}

// ---- trace monoid -----------------------------------------------------------

GraphPtr random_graph(SplitMix64& rng, int nverts, double edge_prob_16) {
  std::vector<std::string> verts;
  for (int i = 0; i < nverts; ++i) verts.push_back("v" + std::to_string(i));
  std::set<std::pair<std::string, std::string>> edges;
  for (int a = 0; a < nverts; ++a)
    for (int b = a + 1; b < nverts; ++b)
      if (rng.below(16) < static_cast<uint64_t>(edge_prob_16))
        edges.insert({verts[static_cast<size_t>(a)], verts[static_cast<size_t>(b)]});
  return std::make_shared<CommutationGraph>(verts, edges);
}

TraceWord random_trace_word(SplitMix64& rng, GraphPtr g, int len) {
  TraceWord w;
  w.graph = std::move(g);
  for (int t = 0; t < len; ++t)
    w.letters.push_back(static_cast<int>(rng.below(w.graph->size())));
  return w;
}

TraceWord scramble(SplitMix64& rng, TraceWord w, int swaps) {
  for (int t = 0; t < swaps && w.letters.size() >= 2; ++t) {
    size_t i = rng.below(w.letters.size() - 1);
    int a = w.letters[i], b = w.letters[i + 1];
    if (a != b && w.graph->adjacent(a, b)) std::swap(w.letters[i], w.letters[i + 1]);
  }
  return w;
}

SuiteResult trace_suite(uint64_t seed, const PeripheralTable& table) {
  Check c("trace_monoid");
  SplitMix64 rng(seed ^ 0x47u);

  // Foata normal form against the full swap closure
  for (int t = 0; t < 30; ++t) {
    GraphPtr g = random_graph(rng, 2 + static_cast<int>(rng.below(4)), 6);
    TraceWord w = random_trace_word(rng, g, 1 + static_cast<int>(rng.below(6)));
    std::set<std::vector<int>> closure;
    std::deque<std::vector<int>> queue{w.letters};
    closure.insert(w.letters);
    while (!queue.empty()) {
      std::vector<int> cur = queue.front();
      queue.pop_front();
      for (size_t i = 0; i + 1 < cur.size(); ++i) {
        if (cur[i] != cur[i + 1] && g->adjacent(cur[i], cur[i + 1])) {
          std::vector<int> nxt = cur;
          std::swap(nxt[i], nxt[i + 1]);
          if (closure.insert(nxt).second) queue.push_back(nxt);
        }
      }
    }
    bool all_equal = true;
    for (const std::vector<int>& other : closure) {
      TraceWord tw{g, other};
      if (!trace_equal(w, tw)) all_equal = false;
    }
    c.record(all_equal, [&] { return "foata misses a swap-equivalent word"; });
    // words outside the closure with the same length must compare unequal
    for (int probe = 0; probe < 3; ++probe) {
      TraceWord other = random_trace_word(rng, g, static_cast<int>(w.letters.size()));
      bool in_closure = closure.count(other.letters) > 0;
      c.record(trace_equal(w, other) == in_closure,
               [&] { return "foata equality disagrees with closure"; });
    }
  }

  // scrambles always satisfy the leading-commutation certificate
  for (int t = 0; t < 60; ++t) {
    GraphPtr g = random_graph(rng, 2 + static_cast<int>(rng.below(7)), 8);
    TraceWord x = random_trace_word(rng, g, 1 + static_cast<int>(rng.below(8)));
    TraceWord y = scramble(rng, x, 12);
    size_t k = 0;
    for (size_t i = 0; i < y.letters.size(); ++i)
      if (y.letters[i] == x.letters[0]) {
        k = i + 1;
        break;
      }
    bool ok = true;
    try {
      auto cert = leading_commuters(x, y, k);
      ok = cert.size() == k - 1;
    } catch (const Error&) {
      ok = false;
    }
    c.record(ok, [&] { return "leading commuters on scrambled word"; });
  }

  // the delta-to-twist symbol map preserves length and trace equality
  for (int t = 0; t < 20; ++t) {
    const int n = 4, genus = 1;
    std::vector<HatSymbol> symbols;
    BraidWord empty_conj;
    empty_conj.n = n;
    empty_conj.genus = genus;
    int len = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < len; ++i) {
      HatSymbol s;
      s.conj = empty_conj;
      if (rng.coin()) s.conj = parse_braid_word("a1", n, genus);
      s.index = 1 + static_cast<int>(rng.below(3));
      symbols.push_back(s);
    }
    PhiResult a = phi_iso(symbols, n, genus, table);
    // scramble the hat word with swaps that are legal for the images
    std::vector<HatSymbol> shuffled = symbols;
    for (int sw = 0; sw < 6 && shuffled.size() >= 2; ++sw) {
      size_t i = rng.below(shuffled.size() - 1);
      int va = a.fragment.graph->id_of(upsilon_key(
          upsilon_from_hat(shuffled[i], n, genus, table)));
      int vb = a.fragment.graph->id_of(upsilon_key(
          upsilon_from_hat(shuffled[i + 1], n, genus, table)));
      if (va != vb && a.fragment.graph->adjacent(va, vb))
        std::swap(shuffled[i], shuffled[i + 1]);
    }
    PhiResult b = phi_iso(shuffled, n, genus, table);
    c.record(a.word.letters.size() == symbols.size(),
             [&] { return "phi image length"; });
    c.record(trace_equal(a.word, TraceWord{a.fragment.graph, b.word.letters}),
             [&] { return "phi image of a legal scramble"; });
  }
  return c.result;
}

// ---- desingularization ------------------------------------------------------

SuiteResult desing_suite(uint64_t seed, const PeripheralTable& table) {
  Check c("desing");
  SplitMix64 rng(seed ^ 0x61u);
  const int n2 = 2, genus = 1;

  // fixed generator set at n=2: conjugates of four basis symbols
  std::vector<UpsilonElement> gens2;
  {
    std::vector<std::string> gammas = {"", "x1", "x2", "x1.x2"};
    for (const std::string& gtext : gammas) {
      SurfaceWord gamma = canonical_form(parse_surface_word(gtext, genus));
      FreeWord conj;
      conj.level = 2;
      gens2.push_back(make_upsilon(conj, make_basis_symbol(gamma, 2, 2), n2));
    }
  }
  OmegaFragment frag2 = build_omega_fragment(gens2, table);

  // nu is constant on trace classes
  for (int t = 0; t < 25; ++t) {
    TraceWord w = random_trace_word(rng, frag2.graph, 1 + static_cast<int>(rng.below(4)));
    TraceWord v = scramble(rng, w, 6);
    c.record(nu(w, frag2, n2, genus, table) == nu(v, frag2, n2, genus, table),
             [&] { return "nu on scrambled trace word"; });
  }

  // the two expansion routes agree and grades carry the right degree
  for (int t = 0; t < 20; ++t) {
    int len = static_cast<int>(rng.below(5));
    std::vector<KElement> word;
    for (int i = 0; i < len; ++i)
      word.push_back(gens2[rng.below(gens2.size())].element);
    FormalSum direct = nu(word, n2, genus, table);
    FormalSum bysub = nu_subindex(word, n2, genus, table);
    c.record(direct == bysub, [&] { return "expansion routes differ at length " + std::to_string(len); });
    bool grades_ok = true;
    for (long q = 0; q <= len; ++q)
      for (const auto& [key, term] : graded_component(direct, q).terms)
        if (deg(term.first) != q) grades_ok = false;
    c.record(grades_ok, [] { return "graded component degree"; });
  }

  // injectivity on short words over the fixed generators
  {
    std::map<std::string, std::vector<int>> images;  // fingerprint -> first word
    std::set<std::string> classes;
    bool injective = true;
    std::vector<std::vector<int>> words{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : words)
        if (static_cast<int>(w.size()) == len - 1)
          for (int g = 0; g < 4; ++g) {
            auto w2 = w;
            w2.push_back(g);
            next.push_back(w2);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& ids : words) {
      TraceWord w{frag2.graph, ids};
      FormalSum p = nu(w, frag2, n2, genus, table);
      std::string fp = fs_fingerprint(p);
      TraceWord flat = foata_flatten(w);
      std::string cls;
      for (int id : flat.letters) cls += std::to_string(id) + ",";
      if (auto it = images.find(fp); it != images.end()) {
        TraceWord prev{frag2.graph, it->second};
        if (!trace_equal(prev, w)) injective = false;
      } else {
        images.emplace(fp, ids);
      }
      classes.insert(cls);
    }
    c.record(injective, [] { return "nu collision on short words"; });
    c.result.notes = std::to_string(classes.size()) + " trace classes checked at n=2";
  }

  // decode round trip at n=2 and n=3
  for (int t = 0; t < 15; ++t) {
    TraceWord w = random_trace_word(rng, frag2.graph, static_cast<int>(rng.below(5)));
    DecodeResult r = decode(nu(w, frag2, n2, genus, table), n2, genus, table);
    std::vector<KElement> got;
    for (int id : r.word.letters) got.push_back(r.fragment.element_of(id));
    std::vector<KElement> want;
    {
      TraceWord flat = foata_flatten(w);
      for (int id : flat.letters) want.push_back(frag2.element_of(id));
    }
    c.record(got == want, [&] { return "decode round trip at n=2"; });
  }
  {
    const int n3 = 3;
    for (int t = 0; t < 8; ++t) {
      std::vector<KElement> word;
      int len = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < len; ++i) {
        UpsilonElement u = random_upsilon(rng, n3, n3, genus, static_cast<int>(rng.below(2)));
        word.push_back(u.element);
      }
      FormalSum p = nu(word, n3, genus, table);
      DecodeResult r = decode(p, n3, genus, table);
      std::vector<KElement> got;
      for (int id : r.word.letters) got.push_back(r.fragment.element_of(id));
      c.record(nu(got, n3, genus, table) == p,
               [&] { return "decode round trip at n=3"; });
    }
  }

  // free-case uniqueness: every image has a single short preimage class
  for (int t = 0; t < 6; ++t) {
    TraceWord w = random_trace_word(rng, frag2.graph, 1 + static_cast<int>(rng.below(3)));
    FormalSum p = nu(w, frag2, n2, genus, table);
    auto pre = brute_force_preimage(p, frag2, static_cast<int>(w.letters.size()), table);
    c.record(pre.size() == 1 && trace_equal(pre.front(), w),
             [&] { return "preimage uniqueness"; });
  }
  return c.result;
}

}  // namespace

SuiteReport run_suite(const SessionConfig& config) {
  SuiteReport report;
  report.suites.push_back(surface_suite(config.seed));
  report.suites.push_back(free_suite(config.seed));
  report.suites.push_back(braid_suite(config.seed));
  report.suites.push_back(kgroup_suite(config.seed, config.table));
  report.suites.push_back(trace_suite(config.seed, config.table));
  report.suites.push_back(desing_suite(config.seed, config.table));
  return report;
}

}  // namespace sb
