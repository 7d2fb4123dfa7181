#pragma once

// Marginal operators, extension sets, observation designs and projectivity.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankmra/chain.hpp"
#include "rankmra/item_set.hpp"
#include "rankmra/word.hpp"

namespace rankmra {

/// Marginal on A of a function on S_n: deletes every item outside A.
/// On a Dirac function delta_sigma this gives delta_{sigma|A}.
template <typename Coef>
Chain<Coef> marginal(const Chain<Coef>& f, const ItemSet& A) {
  return delete_set(f, set_difference(ItemSet::range(f.n()), A));
}

/// All words with content B that restrict to p on content(p).
/// There are |B|! / |p|! of them.
inline std::vector<Word> extensions(const Word& p, const ItemSet& B) {
  const ItemSet A = content(p);
  if (!A.subset_of(B)) throw std::invalid_argument("extensions: content(p) is not a subset of B");
  std::vector<Word> cur{p};
  for (Item b : set_difference(B, A)) {
    std::vector<Word> next;
    next.reserve(cur.size() * (cur.front().size() + 1));
    for (const auto& w : cur)
      for (std::size_t i = 1; i <= w.size() + 1; ++i) next.push_back(insert_at(w, b, i));
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

/// All words with content B containing p as a block of consecutive letters,
/// i.e. u p v with c(u) and c(v) partitioning B \ c(p). There are
/// (|B| - |p| + 1)! of them. For the empty word this is every word on B.
inline std::vector<Word> contiguous_extensions(const Word& p, const ItemSet& B) {
  const ItemSet A = content(p);
  if (!A.subset_of(B)) throw std::invalid_argument("contiguous_extensions: content(p) is not a subset of B");
  if (p.empty()) return words_on(B);
  // Arrange the free items together with one token (0) standing for p.
  std::vector<Item> tokens{0};
  for (Item b : set_difference(B, A)) tokens.push_back(b);
  std::sort(tokens.begin(), tokens.end());
  std::vector<Word> out;
  do {
    std::vector<Item> letters;
    letters.reserve(B.size());
    for (Item t : tokens) {
      if (t == 0) letters.insert(letters.end(), p.begin(), p.end());
      else letters.push_back(t);
    }
    out.emplace_back(std::move(letters));
  } while (std::next_permutation(tokens.begin(), tokens.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// The collection of item subsets on which rankings are observed.
/// Subsets have at least two items.
class ObservationDesign {
 public:
  ObservationDesign() = default;
  ObservationDesign(int n, std::vector<ItemSet> subsets) : n_(n), subsets_(std::move(subsets)) {
    if (n < 2 || n > kMaxItems) throw std::invalid_argument("ObservationDesign: n out of range");
    if (subsets_.empty()) throw std::invalid_argument("ObservationDesign: empty design");
    for (const auto& A : subsets_) {
      if (A.size() < 2) throw std::invalid_argument("ObservationDesign: subsets need at least two items, got " + A.to_string());
      if (A.max() > n) throw std::invalid_argument("ObservationDesign: subset " + A.to_string() + " exceeds n");
    }
    std::sort(subsets_.begin(), subsets_.end());
    subsets_.erase(std::unique(subsets_.begin(), subsets_.end()), subsets_.end());
  }

  int n() const noexcept { return n_; }
  const std::vector<ItemSet>& subsets() const noexcept { return subsets_; }
  bool contains(const ItemSet& A) const { return std::binary_search(subsets_.begin(), subsets_.end(), A); }

  /// Every subset of size >= 2 of some member of the design.
  std::vector<ItemSet> closure() const {
    std::vector<ItemSet> out;
    for (const auto& A : subsets_) {
      auto subs = subsets_of(A, 2);
      out.insert(out.end(), subs.begin(), subs.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  int n_ = 0;
  std::vector<ItemSet> subsets_;
};

/// One chain per observed subset; each chain lives on words with content A.
template <typename Coef>
struct MarginalFamily {
  ObservationDesign design;
  std::map<ItemSet, Chain<Coef>> per_subset;

  const Chain<Coef>& at(const ItemSet& A) const {
    auto it = per_subset.find(A);
    if (it == per_subset.end()) throw std::out_of_range("MarginalFamily: no chain for subset " + A.to_string());
    return it->second;
  }
};

/// Marginals of one function on every subset of a design.
template <typename Coef>
MarginalFamily<Coef> exact_marginals(const Chain<Coef>& f, const ObservationDesign& design) {
  if (f.n() != design.n()) throw std::invalid_argument("exact_marginals: n mismatch");
  MarginalFamily<Coef> fam{design, {}};
  for (const auto& A : design.subsets()) fam.per_subset.emplace(A, marginal(f, A));
  return fam;
}

struct ProjectivityPair {
  ItemSet sub;
  ItemSet super;
  double violation = 0;  // max |delete(f_super, super \ sub) - f_sub|
};

struct ProjectivityReport {
  std::vector<ProjectivityPair> pairs;
  double tolerance = 0;
  double max_violation = 0;

  bool passed() const noexcept { return max_violation <= tolerance; }

  std::string to_string() const {
    std::string s = "projectivity: " + std::string(passed() ? "ok" : "VIOLATED") +
                    " (max violation " + std::to_string(max_violation) + ", tolerance " + std::to_string(tolerance) + ")\n";
    for (const auto& p : pairs) {
      if (p.violation > tolerance)
        s += "  " + p.sub.to_string() + " < " + p.super.to_string() + ": " + std::to_string(p.violation) + "\n";
    }
    return s;
  }
};

template <typename Coef>
constexpr double default_projectivity_tolerance() {
  return std::is_integral_v<Coef> ? 0.0 : 1e-9;
}

/// Checks delete_set(f_B, B \ A) == f_A for every nested pair A < B of the family.
template <typename Coef>
ProjectivityReport check_projective(const MarginalFamily<Coef>& fam,
                                    double tolerance = default_projectivity_tolerance<Coef>()) {
  ProjectivityReport rep;
  rep.tolerance = tolerance;
  const auto& subs = fam.design.subsets();
  for (const auto& B : subs)
    for (const auto& A : subs) {
      if (A == B || !A.subset_of(B)) continue;
      const auto projected = delete_set(fam.at(B), set_difference(B, A));
      const double v = max_abs_difference(projected, fam.at(A));
      rep.pairs.push_back({A, B, v});
      rep.max_violation = std::max(rep.max_violation, v);
    }
  return rep;
}

/// One observed incomplete ranking.
struct RankingRecord {
  ItemSet subset;
  Word ranking;
};

/// Per-subset normalized frequencies of the observed rankings.
inline MarginalFamily<double> empirical_marginals(const std::vector<RankingRecord>& records,
                                                  const ObservationDesign& design) {
  std::map<ItemSet, Chain<double>> counts;
  std::map<ItemSet, double> totals;
  for (const auto& A : design.subsets()) {
    counts.emplace(A, Chain<double>(design.n()));
    totals.emplace(A, 0.0);
  }
  for (const auto& r : records) {
    if (!design.contains(r.subset))
      throw std::invalid_argument("empirical_marginals: subset " + r.subset.to_string() + " is not in the design");
    if (content(r.ranking) != r.subset)
      throw std::invalid_argument("empirical_marginals: ranking " + to_string(r.ranking, design.n()) +
                                  " does not have content " + r.subset.to_string());
    counts.at(r.subset).add(r.ranking, 1.0);
    totals.at(r.subset) += 1.0;
  }
  MarginalFamily<double> fam{design, {}};
  for (auto& [A, chain] : counts) {
    if (totals.at(A) == 0) throw std::invalid_argument("no observations for subset " + A.to_string());
    fam.per_subset.emplace(A, chain * (1.0 / totals.at(A)));
  }
  return fam;
}

}  // namespace rankmra
