#pragma once

// Wavelet chains x_tau (star/diamond elimination per cycle), the embeddings
// into L(S_n) and L(Gamma(A)), wavelet functions psi_tau, the explicit
// epsilon-product formula for x_tau, and closed-form wavelet marginals.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankmra/chain.hpp"
#include "rankmra/combinatorics.hpp"
#include "rankmra/marginals.hpp"
#include "rankmra/permutation.hpp"

namespace rankmra {

/// x_tau: an integer chain on words with content supp(tau).
struct WaveletChain {
  Permutation tau;
  IntChain chain;
};

/// psi_tau: an integer chain on S_n.
struct WaveletFunction {
  Permutation tau;
  IntChain chain;
};

/// Runs the elimination on a single cycle (a_1 ... a_k):
/// start from a_1 * a_2 * ... * a_k, repeatedly pick the star whose right
/// neighbour has the largest leading letter and replace Q * R by (Q <> R).
/// A merged quantity keeps the leading letter of its left operand.
inline IntChain cycle_wavelet_chain(int n, const std::vector<Item>& cycle) {
  if (cycle.size() < 2) throw std::invalid_argument("cycle_wavelet_chain: cycle needs at least two letters");
  struct Quantity {
    IntChain chain;
    Item lead;
  };
  std::vector<Quantity> q;
  q.reserve(cycle.size());
  for (Item a : cycle) q.push_back({IntChain::dirac(n, Word(std::vector<Item>{a})), a});
  while (q.size() > 1) {
    std::size_t star = 1;  // star sits between q[star - 1] and q[star]
    for (std::size_t j = 2; j < q.size(); ++j)
      if (q[j].lead > q[star].lead) star = j;
    q[star - 1].chain = diamond(q[star - 1].chain, q[star].chain);
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(star));
  }
  return std::move(q.front().chain);
}

/// Wavelet chain of a non-identity permutation: the cycles of its standard
/// cycle form are processed independently and concatenated in order.
inline WaveletChain wavelet_chain(const Permutation& tau) {
  if (tau.is_identity()) throw std::invalid_argument("wavelet_chain: identity has no wavelet chain");
  IntChain x = IntChain::dirac(tau.n(), Word{});
  for (const auto& cycle : standard_cycle_form(tau).cycles) x = concat(x, cycle_wavelet_chain(tau.n(), cycle));
  return {tau, std::move(x)};
}

/// phi_n: w -> indicator of the full rankings containing w as a contiguous
/// block. The empty word maps to the indicator of S_n.
template <typename Coef>
Chain<Coef> embed(const Chain<Coef>& x) {
  const ItemSet all = ItemSet::range(x.n());
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms())
    for (const auto& s : contiguous_extensions(w, all)) r.add(s, c);
  return r;
}

/// phi_A: like embed, with A playing the role of {1..n}.
template <typename Coef>
Chain<Coef> embed_into(const Chain<Coef>& x, const ItemSet& A) {
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms()) {
    if (!content(w).subset_of(A))
      throw std::invalid_argument("embed_into: word " + to_string(w, x.n()) + " has letters outside " + A.to_string());
    for (const auto& s : contiguous_extensions(w, A)) r.add(s, c);
  }
  return r;
}

/// w -> indicator of all full rankings extending w (not necessarily
/// contiguously). Kept as the embedding that does not localize information.
template <typename Coef>
Chain<Coef> naive_embed(const Chain<Coef>& x) {
  const ItemSet all = ItemSet::range(x.n());
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms())
    for (const auto& s : extensions(w, all)) r.add(s, c);
  return r;
}

/// psi_tau = phi_n(x_tau); psi_id is the indicator of S_n.
inline WaveletFunction wavelet(const Permutation& tau) {
  if (tau.is_identity()) return {tau, embed(IntChain::dirac(tau.n(), Word{}))};
  return {tau, embed(wavelet_chain(tau).chain)};
}

/// Evaluates x_tau(w) directly from the cycle structure of tau, without
/// running the elimination.
///
/// For one cycle gamma on a_1 < ... < a_k the recurrence sequence u(gamma) is
/// recovered by back substitution, u_{k-1} = gamma^-1(a_k) and
/// u_i = [gamma (u_{k-1} a_k) ... (u_{i+1} a_{i+2})]^-1(a_{i+1}), and
///   x_gamma(w) = prod_{j=0}^{k-2} eps_{a_{k-j}, u_{k-j-1}}(w restricted to {a_1..a_{k-j}}).
/// For several cycles, w is cut into consecutive blocks of the cycle lengths;
/// the value is zero unless each block has the support of its cycle, and the
/// product of the per-cycle values otherwise.
class FastWaveletEvaluator {
 public:
  explicit FastWaveletEvaluator(const Permutation& tau) : tau_(tau) {
    if (tau.is_identity()) throw std::invalid_argument("chain_coefficient_fast: identity has no wavelet chain");
    for (const auto& cycle : standard_cycle_form(tau).cycles) cycles_.push_back(ladder(tau.n(), cycle));
  }

  const Permutation& tau() const noexcept { return tau_; }

  /// The sequence (u_1, ..., u_{k-1}) of each cycle, in standard cycle order.
  std::vector<std::vector<Item>> u_sequences() const {
    std::vector<std::vector<Item>> out;
    for (const auto& c : cycles_) out.push_back(c.u);
    return out;
  }

  std::int64_t operator()(const Word& w) const {
    if (content(w) != tau_.support())
      throw std::invalid_argument("chain_coefficient_fast: word content differs from supp(tau)");
    std::int64_t value = 1;
    std::size_t offset = 0;
    for (const auto& c : cycles_) {
      const std::size_t k = c.sorted.size();
      const Word block(std::vector<Item>(w.begin() + static_cast<std::ptrdiff_t>(offset),
                                         w.begin() + static_cast<std::ptrdiff_t>(offset + k)));
      offset += k;
      if (content(block) != c.support) return 0;
      value *= single_cycle(c, block);
      if (value == 0) return 0;
    }
    return value;
  }

 private:
  struct Ladder {
    ItemSet support;
    std::vector<Item> sorted;  // a_1 < ... < a_k
    std::vector<Item> u;       // u_1 .. u_{k-1}
  };

  static Ladder ladder(int n, const std::vector<Item>& cycle) {
    Ladder l;
    l.support = ItemSet(cycle);
    l.sorted.assign(l.support.begin(), l.support.end());
    const std::size_t k = l.sorted.size();
    l.u.assign(k - 1, 0);
    Permutation cur = from_cycles(n, CycleForm{{cycle}});
    for (std::size_t i = k - 1; i >= 1; --i) {
      const Item target = l.sorted[i];  // a_{i+1}
      l.u[i - 1] = cur.inverse()(target);
      cur = cur * Permutation::transposition(n, l.u[i - 1], target);
    }
    return l;
  }

  static std::int64_t single_cycle(const Ladder& l, const Word& w) {
    const std::size_t k = l.sorted.size();
    std::int64_t value = 1;
    Word current = w;  // w restricted to A^(j)
    for (std::size_t j = 0; j + 2 <= k; ++j) {
      const Item b = l.sorted[k - 1 - j];  // a_{k-j}
      const Item a = l.u[k - 2 - j];       // u_{k-j-1}
      value *= epsilon(current, b, a);
      if (value == 0) return 0;
      current = erase_letter(current, b);
    }
    return value;
  }

  Permutation tau_;
  std::vector<Ladder> cycles_;
};

inline std::int64_t chain_coefficient_fast(const Permutation& tau, const Word& w) {
  return FastWaveletEvaluator(tau)(w);
}

/// Marginal of psi_tau on A in closed form:
///   tau = id                 -> constant n!/|A|! on Gamma(A)
///   supp(tau) within A       -> (n-|tau|+1)!/(|A|-|tau|+1)! * phi_A(x_tau)
///   otherwise                -> 0
inline IntChain marginal_wavelet(const Permutation& tau, const ItemSet& A) {
  const int n = tau.n();
  if (!A.empty() && A.max() > n) throw std::invalid_argument("marginal_wavelet: subset exceeds n");
  const int a = static_cast<int>(A.size());
  if (tau.is_identity()) {
    const auto value = static_cast<std::int64_t>(factorial(n) / factorial(a));
    return IntChain::indicator(n, words_on(A)) * value;
  }
  const ItemSet supp = tau.support();
  if (!supp.subset_of(A)) return IntChain(n);
  const int k = static_cast<int>(supp.size());
  const auto scale = static_cast<std::int64_t>(factorial(n - k + 1) / factorial(a - k + 1));
  return embed_into(wavelet_chain(tau).chain, A) * scale;
}

/// Memo of psi_tau keyed by (n, standard-cycle-form string). Concurrent
/// lookups are allowed; concurrent inserts of the same key store the same value.
class WaveletCache {
 public:
  std::shared_ptr<const IntChain> get(const Permutation& tau) {
    const Key key{tau.n(), cycle_key(tau)};
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto value = std::make_shared<const IntChain>(wavelet(tau).chain);
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(key, std::move(value)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

 private:
  using Key = std::pair<int, std::string>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const IntChain>> entries_;
};

}  // namespace rankmra
