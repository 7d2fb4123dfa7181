#pragma once

// Structural checks on a materialized wavelet basis, shared by the `verify`
// command and the test suites.

#include <cstdint>
#include <string>
#include <vector>

#include "rankmra/combinatorics.hpp"
#include "rankmra/marginals.hpp"
#include "rankmra/mra.hpp"
#include "rankmra/wavelets.hpp"

namespace rankmra {

struct InvariantResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
};

/// Every deletion of a support letter annihilates x_tau.
inline InvariantResult check_h_membership(const WaveletBasis& basis) {
  InvariantResult r{"H-membership", 0, {}};
  for (const auto& e : basis.elements()) {
    if (e.tau.is_identity()) continue;
    const auto x = wavelet_chain(e.tau).chain;
    for (Item a : e.tau.support()) {
      ++r.checked;
      if (!delete_letter(x, a).is_zero()) r.fail(e.key + ": deleting " + std::to_string(a) + " is nonzero");
    }
  }
  return r;
}

/// psi_tau takes values in {-1, 0, 1} on a support of size 2^{k-r} (n-k+1)!.
inline InvariantResult check_value_support_law(const WaveletBasis& basis) {
  InvariantResult r{"value/support law", 0, {}};
  const int n = basis.n();
  for (const auto& e : basis.elements()) {
    if (e.tau.is_identity()) continue;
    ++r.checked;
    const int k = e.tau.length();
    const int cyc = e.tau.cycle_count();
    const std::uint64_t expected = (std::uint64_t{1} << (k - cyc)) * factorial(n - k + 1);
    for (const auto& [w, c] : e.psi.terms())
      if (c != 1 && c != -1) r.fail(e.key + ": value " + std::to_string(c));
    if (e.psi.support_size() != expected)
      r.fail(e.key + ": support " + std::to_string(e.psi.support_size()) + " != " + std::to_string(expected));
  }
  return r;
}

/// Non-constant wavelets sum to zero over S_n.
inline InvariantResult check_zero_mean(const WaveletBasis& basis) {
  InvariantResult r{"zero mean", 0, {}};
  for (const auto& e : basis.elements()) {
    if (e.tau.is_identity()) continue;
    ++r.checked;
    if (e.psi.sum() != 0) r.fail(e.key + ": sum " + std::to_string(e.psi.sum()));
  }
  return r;
}

/// Marginals of psi_tau vanish on every B not containing supp(tau) and match
/// the closed form on every B containing it.
inline InvariantResult check_localization(const WaveletBasis& basis) {
  InvariantResult r{"localization", 0, {}};
  const auto subsets = subsets_of(ItemSet::range(basis.n()), 2);
  for (const auto& e : basis.elements()) {
    const ItemSet supp = e.tau.support();
    for (const auto& B : subsets) {
      ++r.checked;
      const auto m = marginal(e.psi, B);
      if (!supp.subset_of(B)) {
        if (!m.is_zero()) r.fail(e.key + ": marginal on " + B.to_string() + " is nonzero");
      } else if (m != marginal_wavelet(e.tau, B)) {
        r.fail(e.key + ": marginal on " + B.to_string() + " differs from closed form");
      }
    }
  }
  return r;
}

/// The explicit epsilon-product formula agrees with the elimination output on
/// every word of the support.
inline InvariantResult check_fast_formula(const WaveletBasis& basis) {
  InvariantResult r{"fast formula", 0, {}};
  for (const auto& e : basis.elements()) {
    if (e.tau.is_identity()) continue;
    const auto x = wavelet_chain(e.tau).chain;
    const FastWaveletEvaluator fast(e.tau);
    for (const auto& w : words_on(e.tau.support())) {
      ++r.checked;
      if (fast(w) != x(w)) r.fail(e.key + " at " + to_string(w, basis.n()));
    }
  }
  return r;
}

/// Order-preserving relabelings carry psi_tau to psi of the conjugate. Checked
/// with the relabeling that packs supp(tau) onto {1..k}.
inline InvariantResult check_translation_covariance(const WaveletBasis& basis) {
  InvariantResult r{"translation covariance", 0, {}};
  const int n = basis.n();
  for (const auto& e : basis.elements()) {
    if (e.tau.is_identity()) continue;
    const ItemSet supp = e.tau.support();
    std::vector<Item> images(static_cast<std::size_t>(n));
    Item next = 1;
    for (Item a : supp) images[a - 1u] = next++;
    for (Item a = 1; a <= n; ++a)
      if (!supp.contains(a)) images[a - 1u] = next++;
    const Permutation s(images);
    ++r.checked;
    const auto target = basis.at(cycle_key(conjugate(s, e.tau))).psi;
    if (translate(e.psi, s) != target) r.fail(e.key + ": translated wavelet differs from " + cycle_key(conjugate(s, e.tau)));
  }
  return r;
}

inline std::vector<InvariantResult> check_invariants(const WaveletBasis& basis) {
  return {check_h_membership(basis), check_value_support_law(basis), check_zero_mean(basis),
          check_localization(basis), check_fast_formula(basis), check_translation_covariance(basis)};
}

}  // namespace rankmra
