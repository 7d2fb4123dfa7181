// rankmra: command-line front end for the ranking multiresolution library.
//
//   rankmra basis     --n 4 [--expand] [--output FILE]
//   rankmra marginal  --n 4 (--input CHAIN | --input DATA.csv | --wavelet KEY | --uniform) --subset 1,2 ...
//   rankmra decompose --n 4 --input DATA.csv --design DESIGN.json [--tolerance T]
//   rankmra decompose --n 4 --input CHAIN
//   rankmra verify    --n 4
//   rankmra sample    --n 4 --design DESIGN.json [--input COEFFS.json | --uniform] --count 100 --seed 0
//   rankmra synth     --input COEFFS.json
//
// Exit codes: 0 ok, 1 verification failure, 2 malformed input or bad
// arguments, 3 I/O failure, 4 projectivity violated, 5 solver residual.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankmra/rankmra.hpp"

using namespace rankmra;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kIoFailure = 3, kNotProjective = 4, kSolverFailed = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  std::string input;
  std::string output;
  std::string design;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  bool expand = false;
  bool allow_large_n = false;
  bool uniform = false;
  std::size_t count = 1000;
  std::vector<std::string> subsets;
  std::string wavelet;
  bool inject_corruption = false;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file(cfg.output, text);
  }
}

void require_n(const RunConfig& cfg, int hi) {
  if (cfg.n < 2) throw UsageError("n must be ≥ 2");
  if (cfg.n > hi) throw UsageError("n must be ≤ " + std::to_string(hi) + " for this command");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ItemSet parse_subset(const std::string& text, int n) {
  std::vector<Item> items;
  if (text.find_first_of(", ") == std::string::npos) {
    for (char ch : text) {
      if (ch < '1' || ch > '9') throw UsageError("bad subset '" + text + "'");
      items.push_back(static_cast<Item>(ch - '0'));
    }
  } else {
    std::string cell;
    std::stringstream ss(text);
    while (std::getline(ss, cell, ',')) {
      std::stringstream parts(cell);
      int v = 0;
      while (parts >> v) items.push_back(static_cast<Item>(v));
    }
  }
  ItemSet A(items);
  if (A.size() != items.size() || A.empty() || A.min() < 1 || A.max() > n)
    throw UsageError("bad subset '" + text + "' for n = " + std::to_string(n));
  return A;
}

ObservationDesign load_design(const RunConfig& cfg) {
  if (cfg.design.empty()) throw UsageError("--design is required");
  auto d = parse_design_json(read_file(cfg.design));
  if (cfg.n && d.n() != cfg.n) throw FormatError("design n = " + std::to_string(d.n()) + " differs from --n");
  return d;
}

RealChain load_chain(const std::string& path, int n) {
  try {
    return parse_chain<double>(read_file(path), n);
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

int cmd_basis(const RunConfig& cfg) {
  require_n(cfg, kMaxBasisN);
  if (cfg.expand && cfg.n >= 7 && !cfg.allow_large_n)
    throw UsageError("expanding the basis for n ≥ 7 requires --allow-large-n");
  std::string out;
  if (cfg.expand) {
    const auto basis = build_basis(cfg.n);
    for (const auto& e : basis.elements()) out += format_basis_line(e.key, e.psi);
  } else {
    for (const auto& tau : basis_permutations(cfg.n)) {
      const IntChain x = tau.is_identity() ? IntChain::dirac(cfg.n, Word{}) : wavelet_chain(tau).chain;
      out += format_basis_line(cycle_key(tau), x);
    }
  }
  emit(cfg, out);
  return kOk;
}

int cmd_marginal(const RunConfig& cfg) {
  require_n(cfg, kMaxItems);
  std::vector<ItemSet> targets;
  for (const auto& s : cfg.subsets) targets.push_back(parse_subset(s, cfg.n));
  if (targets.empty() && !cfg.design.empty()) targets = load_design(cfg).subsets();
  if (targets.empty()) throw UsageError("give at least one --subset or a --design");

  std::vector<std::pair<ItemSet, RealChain>> rows;
  if (!cfg.wavelet.empty()) {
    const auto tau = parse_permutation(cfg.wavelet, cfg.n);
    for (const auto& A : targets) rows.emplace_back(A, marginal_wavelet(tau, A).cast<double>());
  } else if (cfg.uniform) {
    for (const auto& A : targets)
      rows.emplace_back(A, RealChain::indicator(cfg.n, words_on(A)) * (1.0 / static_cast<double>(factorial(static_cast<int>(A.size())))));
  } else if (ends_with(cfg.input, ".csv")) {
    // Every record whose content covers A contributes its restriction to A.
    const auto records = read_dataset_csv(cfg.input, cfg.n);
    for (const auto& A : targets) {
      RealChain f(cfg.n);
      std::size_t used = 0;
      for (const auto& r : records)
        if (A.subset_of(r.subset)) {
          f.add(restrict_to(r.ranking, A), 1.0);
          ++used;
        }
      if (used == 0) throw FormatError("no observations covering subset " + A.to_string());
      rows.emplace_back(A, f * (1.0 / static_cast<double>(used)));
    }
  } else if (!cfg.input.empty()) {
    const RealChain f = load_chain(cfg.input, cfg.n);
    for (const auto& A : targets) rows.emplace_back(A, marginal(f, A));
  } else {
    throw UsageError("give --input, --wavelet or --uniform");
  }
  emit(cfg, format_marginals_csv(rows, cfg.n));
  return kOk;
}

int cmd_decompose(const RunConfig& cfg) {
  require_n(cfg, cfg.allow_large_n ? kMaxBasisN : kMaxDenseAnalysisN);
  if (cfg.input.empty()) throw UsageError("--input is required");

  if (!cfg.design.empty()) {
    const auto design = load_design(cfg);
    const auto records = read_dataset_csv(cfg.input, cfg.n);
    MarginalFamily<double> fam;
    try {
      fam = empirical_marginals(records, design);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    MarginalSolveOptions opts;
    if (cfg.tolerance) {
      opts.projectivity_tolerance = *cfg.tolerance;
      opts.residual_tolerance = std::max(opts.residual_tolerance, *cfg.tolerance);
    }
    try {
      emit(cfg, format_coefficients_json(decompose_marginals(fam, opts)));
    } catch (const ProjectivityError& e) {
      // the report goes to stderr in main; with --output it also lands in the file
      if (!cfg.output.empty()) write_file(cfg.output, e.report().to_string());
      throw;
    }
    return kOk;
  }

  const RealChain f = load_chain(cfg.input, cfg.n);
  const auto basis = build_basis(cfg.n);
  AnalysisOptions opts;
  opts.allow_large_n = cfg.allow_large_n;
  if (cfg.tolerance) opts.residual_tolerance = *cfg.tolerance;
  emit(cfg, format_coefficients_json(decompose(f, basis, opts)));
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  require_n(cfg, kMaxDenseAnalysisN);
  VerifyOptions opts;
  opts.corrupt_basis = cfg.inject_corruption;
  const auto report = verify_dimensions(cfg.n, opts);
  std::string out = report.to_string();
  bool ok = report.passed();
  const auto basis = build_basis(cfg.n);
  for (const auto& r : check_invariants(basis)) {
    out += std::string(r.passed() ? "PASS" : "FAIL") + " " + r.name + " (" + std::to_string(r.checked) + " checks)\n";
    for (const auto& f : r.failures) out += "  " + f + "\n";
    ok = ok && r.passed();
  }
  out += ok ? "all checks passed\n" : "verification FAILED\n";
  emit(cfg, out);
  return ok ? kOk : kVerifyFailed;
}

int cmd_sample(const RunConfig& cfg) {
  const auto design = load_design(cfg);
  const int n = design.n();
  std::mt19937_64 rng(cfg.seed);

  // Density on S_n, only materialized for a coefficient input.
  std::vector<Word> support;
  std::vector<double> weights;
  if (!cfg.input.empty() && !cfg.uniform) {
    const auto c = parse_coefficients_json(read_file(cfg.input));
    if (c.n != n) throw FormatError("coefficient n differs from design n");
    if (n > kMaxBasisN) throw UsageError("density input requires n ≤ 8");
    const auto p = synthesize(c, build_basis(n));
    for (const auto& w : all_rankings(n)) {
      const double v = p(w);
      if (v < -1e-12) throw FormatError("coefficients do not define a density: mass " + std::to_string(v) + " at " + to_string(w, n));
      support.push_back(w);
      weights.push_back(std::max(v, 0.0));
    }
    double total = 0;
    for (double v : weights) total += v;
    if (!(total > 0)) throw FormatError("coefficients do not define a density: total mass is zero");
  }

  std::discrete_distribution<std::size_t> pick_sigma(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> pick_subset(0, design.subsets().size() - 1);
  std::vector<Item> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = static_cast<Item>(i + 1);

  std::string out;
  for (std::size_t s = 0; s < cfg.count; ++s) {
    Word sigma;
    if (support.empty()) {
      auto letters = base;
      std::shuffle(letters.begin(), letters.end(), rng);
      sigma = Word(std::move(letters));
    } else {
      sigma = support[pick_sigma(rng)];
    }
    const auto& A = design.subsets()[pick_subset(rng)];
    out += format_ranking_csv(restrict_to(sigma, A)) + "\n";
  }
  emit(cfg, out);
  return kOk;
}

int cmd_synth(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  const auto c = parse_coefficients_json(read_file(cfg.input));
  if (cfg.n && cfg.n != c.n) throw FormatError("coefficient n differs from --n");
  if (c.n < 2 || c.n > kMaxBasisN) throw UsageError("n must be in [2, 8] for synthesis");
  const auto basis = build_basis(c.n);
  for (const auto& [key, v] : c.coeffs)
    if (!basis.index_of(key)) throw FormatError("unknown coefficient key " + key);
  emit(cfg, to_string(synthesize(c, basis)) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiresolution analysis of incomplete rankings"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Number of items");
    sub->add_option("--input", cfg.input, "Input file");
    sub->add_option("--output", cfg.output, "Output file (default: stdout)");
    sub->add_option("--design", cfg.design, "Observation design (JSON)");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--tolerance", cfg.tolerance, "Projectivity / residual tolerance override");
    sub->add_flag("--allow-large-n", cfg.allow_large_n, "Permit n in {7, 8} for dense work");
  };

  auto* basis = app.add_subcommand("basis", "Emit the wavelet basis");
  add_common(basis);
  basis->add_flag("--expand", cfg.expand, "Emit psi_tau on S_n instead of x_tau");

  auto* marg = app.add_subcommand("marginal", "Marginals as CSV plot data");
  add_common(marg);
  marg->add_option("--subset", cfg.subsets, "Target subset, e.g. 1,3 (repeatable)");
  marg->add_option("--wavelet", cfg.wavelet, "Use psi_tau for this cycle form");
  marg->add_flag("--uniform", cfg.uniform, "Use the uniform distribution");

  auto* dec = app.add_subcommand("decompose", "Wavelet coefficients of a dataset or function");
  add_common(dec);

  auto* ver = app.add_subcommand("verify", "Dimension identities and basis invariants");
  add_common(ver);
  ver->add_flag("--inject-corruption", cfg.inject_corruption)->group("");

  auto* samp = app.add_subcommand("sample", "Draw incomplete rankings");
  add_common(samp);
  samp->add_option("--count", cfg.count, "Number of records");
  samp->add_flag("--uniform", cfg.uniform, "Sample from the uniform distribution");

  auto* syn = app.add_subcommand("synth", "Synthesize a function from coefficients");
  add_common(syn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*basis) return cmd_basis(cfg);
    if (*marg) return cmd_marginal(cfg);
    if (*dec) return cmd_decompose(cfg);
    if (*ver) return cmd_verify(cfg);
    if (*samp) return cmd_sample(cfg);
    if (*syn) return cmd_synth(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const ProjectivityError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.report().to_string();
    return kNotProjective;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSolverFailed;
  }
  return kBadInput;
}
