#pragma once

// Multiresolution decomposition of L(S_n) and of observable marginal spaces:
// basis assembly, analysis/synthesis, design-restricted analysis from
// marginals, dezooming and dimension reports.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankmra/chain.hpp"
#include "rankmra/combinatorics.hpp"
#include "rankmra/marginals.hpp"
#include "rankmra/parallel.hpp"
#include "rankmra/permutation.hpp"
#include "rankmra/wavelets.hpp"
#include "rankmra/young.hpp"

namespace rankmra {

inline constexpr int kMaxBasisN = 8;
inline constexpr int kMaxDenseAnalysisN = 6;

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ProjectivityError : public std::runtime_error {
 public:
  explicit ProjectivityError(ProjectivityReport report)
      : std::runtime_error("marginal family is not projective"), report_(std::move(report)) {}
  const ProjectivityReport& report() const noexcept { return report_; }

 private:
  ProjectivityReport report_;
};

// ---------------------------------------------------------------------------
// Indexing of S_n

/// Position of a full ranking in the lexicographic enumeration of S_n.
inline std::size_t permutation_rank(const Word& w, int n) {
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("permutation_rank: word is not a full ranking");
  std::size_t rank = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[j] < w[i]) ++smaller_after;
    rank += smaller_after * factorial(n - 1 - static_cast<int>(i));
  }
  return rank;
}

inline std::vector<Word> all_rankings(int n) { return words_on(ItemSet::range(n)); }

inline Eigen::VectorXd to_dense(const RealChain& f) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(factorial(f.n())));
  for (const auto& [w, c] : f.terms()) v(static_cast<Eigen::Index>(permutation_rank(w, f.n()))) = c;
  return v;
}

inline RealChain from_dense(const Eigen::VectorXd& v, int n) {
  RealChain f(n);
  const auto words = all_rankings(n);
  if (static_cast<std::size_t>(v.size()) != words.size()) throw std::invalid_argument("from_dense: size is not n!");
  for (std::size_t i = 0; i < words.size(); ++i) f.add(words[i], v(static_cast<Eigen::Index>(i)));
  return f;
}

// ---------------------------------------------------------------------------
// Basis

/// Index set of the wavelet basis in its canonical order: id, then for every
/// support A (by size, then lexicographic) the permutations with support A
/// ordered by cycle-form string.
inline std::vector<Permutation> basis_permutations(int n, const std::vector<ItemSet>& supports) {
  std::vector<Permutation> out{Permutation::identity(n)};
  std::vector<ItemSet> sorted = supports;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& A : sorted) {
    auto d = derangements(A, n);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

inline std::vector<Permutation> basis_permutations(int n) {
  return basis_permutations(n, subsets_of(ItemSet::range(n), 2));
}

struct BasisElement {
  Permutation tau;
  std::string key;
  IntChain psi;

  int scale() const { return tau.length(); }
};

class WaveletBasis {
 public:
  WaveletBasis(int n, std::vector<BasisElement> elements) : n_(n), elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].key, i);
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<BasisElement>& elements() const noexcept { return elements_; }
  const BasisElement& operator[](std::size_t i) const { return elements_.at(i); }

  std::optional<std::size_t> index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const BasisElement& at(const std::string& key) const {
    auto i = index_of(key);
    if (!i) throw std::out_of_range("WaveletBasis: unknown key " + key);
    return elements_[*i];
  }

 private:
  int n_;
  std::vector<BasisElement> elements_;
  std::map<std::string, std::size_t> index_;
};

/// Materializes all n! wavelet functions (2 <= n <= 8).
inline WaveletBasis build_basis(int n, unsigned workers = worker_count()) {
  if (n < 2 || n > kMaxBasisN) throw std::invalid_argument("build_basis: n must be in [2, 8]");
  const auto taus = basis_permutations(n);
  std::vector<BasisElement> elements(taus.size());
  WaveletCache cache;
  parallel_for(
      taus.size(),
      [&](std::size_t i) {
        elements[i] = BasisElement{taus[i], cycle_key(taus[i]), *cache.get(taus[i])};
      },
      workers);
  return WaveletBasis(n, std::move(elements));
}

inline Eigen::MatrixXd basis_matrix(const WaveletBasis& basis) {
  const auto size = static_cast<Eigen::Index>(factorial(basis.n()));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [w, c] : basis[j].psi.terms())
      m(static_cast<Eigen::Index>(permutation_rank(w, basis.n())), static_cast<Eigen::Index>(j)) = static_cast<double>(c);
  return m;
}

// ---------------------------------------------------------------------------
// Coefficients

enum class CoefficientScope { full, design };

struct CoefficientVector {
  int n = 0;
  CoefficientScope scope = CoefficientScope::full;
  std::vector<std::pair<std::string, double>> coeffs;  // basis order
  std::vector<ItemSet> design;                         // design scope only

  double value(const std::string& key) const {
    for (const auto& [k, v] : coeffs)
      if (k == key) return v;
    return 0.0;
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> k;
    for (const auto& [key, v] : coeffs) k.push_back(key);
    return k;
  }
};

/// Sum of c_tau psi_tau. Throws on keys absent from the basis.
inline RealChain synthesize(const CoefficientVector& c, const WaveletBasis& basis) {
  if (c.n != basis.n()) throw std::invalid_argument("synthesize: coefficient n differs from basis n");
  RealChain f(basis.n());
  for (const auto& [key, value] : c.coeffs) {
    const auto& psi = basis.at(key).psi;
    if (value == 0.0) continue;
    for (const auto& [w, coef] : psi.terms()) f.add(w, value * static_cast<double>(coef));
  }
  return f;
}

struct AnalysisOptions {
  bool allow_large_n = false;      // permit dense analysis for n in {7, 8}
  double residual_tolerance = 1e-9;  // relative to max|f|
};

/// Dense analysis against the (non-orthogonal) wavelet basis: the basis
/// matrix is factorized once with partial pivoting and reused.
class WaveletAnalyzer {
 public:
  explicit WaveletAnalyzer(const WaveletBasis& basis, AnalysisOptions options = {})
      : basis_(&basis), options_(options) {
    if (basis.n() > kMaxDenseAnalysisN && !options.allow_large_n)
      throw std::invalid_argument("dense analysis is limited to n <= 6 without the large-n override");
    matrix_ = basis_matrix(basis);
    lu_.compute(matrix_);
  }

  const WaveletBasis& basis() const noexcept { return *basis_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  CoefficientVector decompose(const RealChain& f) const {
    if (f.n() != basis_->n()) throw std::invalid_argument("decompose: function n differs from basis n");
    for (const auto& [w, c] : f.terms())
      if (static_cast<int>(w.size()) != f.n()) throw std::invalid_argument("decompose: function is not supported on S_n");
    const Eigen::VectorXd rhs = to_dense(f);
    const Eigen::VectorXd sol = lu_.solve(rhs);
    const double residual = (matrix_ * sol - rhs).cwiseAbs().maxCoeff();
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > options_.residual_tolerance * scale)
      throw SolverError("decompose: residual " + std::to_string(residual) + " exceeds tolerance", residual);
    CoefficientVector c{basis_->n(), CoefficientScope::full, {}, {}};
    for (std::size_t j = 0; j < basis_->size(); ++j)
      c.coeffs.emplace_back((*basis_)[j].key, sol(static_cast<Eigen::Index>(j)));
    return c;
  }

  RealChain synthesize(const CoefficientVector& c) const { return rankmra::synthesize(c, *basis_); }

  /// Projection onto V^k matching every marginal of size k. k = 0 gives the
  /// mean times the constant function.
  RealChain dezoom(const RealChain& f, int k) const {
    const int n = basis_->n();
    if (k == 0) {
      const double mean = f.sum() / static_cast<double>(factorial(n));
      return RealChain::indicator(n, all_rankings(n)) * mean;
    }
    if (k < 2 || k > n) throw std::invalid_argument("dezoom: scale must be 0 or in [2, n]");
    CoefficientVector c = decompose(f);
    for (std::size_t j = 0; j < c.coeffs.size(); ++j)
      if ((*basis_)[j].scale() > k) c.coeffs[j].second = 0.0;
    return synthesize(c);
  }

 private:
  const WaveletBasis* basis_;
  AnalysisOptions options_;
  Eigen::MatrixXd matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline CoefficientVector decompose(const RealChain& f, const WaveletBasis& basis, AnalysisOptions options = {}) {
  return WaveletAnalyzer(basis, options).decompose(f);
}

inline RealChain dezoom(const RealChain& f, int k, const WaveletBasis& basis, AnalysisOptions options = {}) {
  if (k == 0) {
    const double mean = f.sum() / static_cast<double>(factorial(basis.n()));
    return RealChain::indicator(basis.n(), all_rankings(basis.n())) * mean;
  }
  return WaveletAnalyzer(basis, options).dezoom(f, k);
}

// ---------------------------------------------------------------------------
// Analysis from marginals

struct MarginalSolveOptions {
  double projectivity_tolerance = 1e-9;
  double residual_tolerance = 1e-8;
};

/// Wavelet indices that the design can see: id and every tau whose support
/// is a subset (of size >= 2) of some observed subset.
inline std::vector<Permutation> design_permutations(const ObservationDesign& design) {
  return basis_permutations(design.n(), design.closure());
}

/// The linear system mapping design-visible coefficients to the stacked
/// marginals (rows: subsets in design order, words lexicographic).
inline Eigen::MatrixXd marginal_system(const ObservationDesign& design, const std::vector<Permutation>& taus) {
  std::size_t rows = 0;
  for (const auto& A : design.subsets()) rows += factorial(static_cast<int>(A.size()));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(taus.size()));
  for (std::size_t j = 0; j < taus.size(); ++j) {
    Eigen::Index row = 0;
    for (const auto& A : design.subsets()) {
      const IntChain col = marginal_wavelet(taus[j], A);
      for (const auto& w : words_on(A)) m(row++, static_cast<Eigen::Index>(j)) = static_cast<double>(col(w));
    }
  }
  return m;
}

/// Coefficients over the design-visible wavelets reproducing every observed
/// marginal. Built only from closed-form wavelet marginals, so the cost is
/// governed by the observed subset sizes rather than by n!.
inline CoefficientVector decompose_marginals(const MarginalFamily<double>& fam, MarginalSolveOptions options = {}) {
  const auto report = check_projective(fam, options.projectivity_tolerance);
  if (!report.passed()) throw ProjectivityError(report);
  const auto& design = fam.design;
  const auto taus = design_permutations(design);
  const Eigen::MatrixXd m = marginal_system(design, taus);

  Eigen::VectorXd rhs(m.rows());
  Eigen::Index row = 0;
  for (const auto& A : design.subsets()) {
    const auto& f = fam.at(A);
    for (const auto& [w, c] : f.terms())
      if (content(w) != A) throw std::invalid_argument("decompose_marginals: chain for " + A.to_string() + " has a word of another content");
    for (const auto& w : words_on(A)) rhs(row++) = f(w);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  if (qr.rank() < m.cols())
    throw std::logic_error("decompose_marginals: marginal system has rank " + std::to_string(qr.rank()) + " < " +
                           std::to_string(m.cols()) + " columns");
  const Eigen::VectorXd sol = qr.solve(rhs);
  const double residual = m.rows() ? (m * sol - rhs).cwiseAbs().maxCoeff() : 0.0;
  if (!std::isfinite(residual) || residual > options.residual_tolerance)
    throw SolverError("decompose_marginals: residual " + std::to_string(residual) + " exceeds tolerance", residual);

  CoefficientVector c{design.n(), CoefficientScope::design, {}, design.subsets()};
  for (std::size_t j = 0; j < taus.size(); ++j) c.coeffs.emplace_back(cycle_key(taus[j]), sol(static_cast<Eigen::Index>(j)));
  return c;
}

inline CoefficientVector decompose_marginals(const MarginalFamily<double>& fam, const WaveletBasis& basis,
                                             MarginalSolveOptions options = {}) {
  if (basis.n() != fam.design.n()) throw std::invalid_argument("decompose_marginals: basis n differs from design n");
  return decompose_marginals(fam, options);
}

// ---------------------------------------------------------------------------
// Dimension report

struct ScaleDimensions {
  int k = 0;                  // 0 for V^0
  std::uint64_t wavelets = 0; // basis elements with |supp| = k
  std::uint64_t expected = 0; // C(n,k) d_k, or 1 for V^0
  std::uint64_t eig_dim = 0;  // sum of hook dims over tableaux with eig = n-k
};

struct DimensionReport {
  int n = 0;
  std::vector<ScaleDimensions> scales;
  std::uint64_t total = 0;
  std::uint64_t expected_total = 0;
  std::optional<long> rank;
  std::optional<double> condition_number;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }

  std::string to_string() const {
    std::string s = "dimensions for n = " + std::to_string(n) + "\n";
    for (const auto& r : scales) {
      s += "  " + std::string(r.k == 0 ? "V0" : "W" + std::to_string(r.k)) + ": wavelets " + std::to_string(r.wavelets) +
           ", C(n,k)*d_k " + std::to_string(r.expected) + ", eig-class dim " + std::to_string(r.eig_dim) + "\n";
    }
    s += "  total: " + std::to_string(total) + " = " + std::to_string(expected_total) + "\n";
    if (rank) s += "  numeric rank: " + std::to_string(*rank) + "\n";
    if (condition_number) s += "  condition number: " + std::to_string(*condition_number) + "\n";
    for (const auto& f : failures) s += "  FAIL: " + f + "\n";
    return s;
  }
};

/// Numeric rank with singular values compared to rel_tol * sigma_max.
inline std::pair<long, double> numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-8) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return {0, 0.0};
  const double top = sv(0);
  long r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * top) ++r;
  const double cond = sv(sv.size() - 1) > 0 ? top / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  return {r, cond};
}

struct VerifyOptions {
  bool check_rank = true;        // only honoured for n <= 6
  bool corrupt_basis = false;    // test hook: duplicate one wavelet before the rank check
};

inline DimensionReport verify_dimensions(int n, VerifyOptions options = {}) {
  if (n < 2 || n > kMaxBasisN) throw std::invalid_argument("verify_dimensions: n must be in [2, 8]");
  DimensionReport rep;
  rep.n = n;
  rep.expected_total = factorial(n);

  std::map<int, std::uint64_t> eig_dims;
  for (const auto& q : enumerate_syt(n)) eig_dims[eig(q)] += hook_dim(q.shape());

  std::map<int, std::uint64_t> counts;
  counts[0] = 1;
  for (const auto& A : subsets_of(ItemSet::range(n), 2)) counts[static_cast<int>(A.size())] += derangements(A, n).size();

  rep.scales.push_back({0, counts[0], 1, eig_dims[n]});
  for (int k = 2; k <= n; ++k)
    rep.scales.push_back({k, counts[k], binomial(n, k) * derangement_number(k), eig_dims[n - k]});
  for (const auto& r : rep.scales) {
    rep.total += r.wavelets;
    const std::string name = r.k == 0 ? "V0" : "W" + std::to_string(r.k);
    if (r.wavelets != r.expected)
      rep.failures.push_back(name + " has " + std::to_string(r.wavelets) + " wavelets, expected " + std::to_string(r.expected));
    if (r.eig_dim != r.expected)
      rep.failures.push_back(name + " eig-class dimension " + std::to_string(r.eig_dim) + " != " + std::to_string(r.expected));
  }
  if (eig_dims.count(n - 1) && eig_dims[n - 1] != 0) rep.failures.push_back("tableaux with eig = n-1 exist");
  if (rep.total != rep.expected_total)
    rep.failures.push_back("total " + std::to_string(rep.total) + " != n! = " + std::to_string(rep.expected_total));

  if (options.check_rank && n <= kMaxDenseAnalysisN) {
    const WaveletBasis basis = build_basis(n);
    Eigen::MatrixXd m = basis_matrix(basis);
    if (options.corrupt_basis) m.col(m.cols() - 1) = m.col(m.cols() - 2);
    auto [r, cond] = numeric_rank(m);
    rep.rank = r;
    rep.condition_number = cond;
    if (static_cast<std::uint64_t>(r) != rep.expected_total)
      rep.failures.push_back("basis matrix rank " + std::to_string(r) + " != n! = " + std::to_string(rep.expected_total));
  }
  return rep;
}

}  // namespace rankmra
