#pragma once

#include <vector>

#include "braid_word.hpp"
#include "k_element.hpp"
#include "trace_monoid.hpp"

namespace sb {

/// Commutation graph over twist conjugates together with the elements the
/// vertices stand for (aligned with vertex ids).
struct OmegaFragment {
  GraphPtr graph;
  std::vector<KElement> elements;

  const KElement& element_of(int id) const { return elements[static_cast<size_t>(id)]; }
};

/// Vertices are the deduplicated canonical keys of the generators; edges
/// come from the commutation oracle.
OmegaFragment build_omega_fragment(const std::vector<UpsilonElement>& gens,
                                   const PeripheralTable& table);
OmegaFragment build_omega_fragment(const std::vector<KElement>& elems,
                                   const PeripheralTable& table);

/// Conjugated singular generator alpha delta_i alpha^-1.
struct HatSymbol {
  BraidWord conj;  // non-singular
  int index = 1;
};

std::string to_string(const HatSymbol& s);

/// The twist conjugate alpha sigma_i^2 alpha^-1 as a tower element.
/// Conjugator tokens are pushed through symbol by symbol; tokens leaving the
/// supported fragment raise unrepresentable.
KElement upsilon_from_hat(const HatSymbol& s, int n, int genus, const PeripheralTable& table);

struct PhiResult {
  OmegaFragment fragment;
  TraceWord word;
  std::vector<std::string> hat_keys;  // input symbols, one per letter
};

/// Symbol-wise isomorphism from words over conjugated delta symbols to trace
/// words over their twist images; length-preserving.
PhiResult phi_iso(const std::vector<HatSymbol>& word, int n, int genus,
                  const PeripheralTable& table);

}  // namespace sb
