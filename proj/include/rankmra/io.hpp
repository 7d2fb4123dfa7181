#pragma once

// File formats: ranking datasets (CSV), observation designs and coefficient
// vectors (JSON), chains and wavelet listings (text).

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankmra/chain.hpp"
#include "rankmra/marginals.hpp"
#include "rankmra/mra.hpp"

namespace rankmra {

/// Malformed content (as opposed to an unreadable file).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// Ranking datasets: one ranking per line, ids in preference order, e.g.
// "3,1,4" for 3 > 1 > 4. Blank lines and lines starting with '#' are skipped.

inline std::vector<RankingRecord> parse_dataset_csv(std::istream& in, int n) {
  std::vector<RankingRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<Item> letters;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": empty item");
      cell = cell.substr(b, e - b + 1);
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(lineno) + ": bad item '" + cell + "'");
      }
      if (v < 1 || v > n) throw FormatError("line " + std::to_string(lineno) + ": item " + cell + " outside 1.." + std::to_string(n));
      letters.push_back(static_cast<Item>(v));
    }
    try {
      Word w(std::move(letters));
      records.push_back({content(w), w});
    } catch (const std::invalid_argument& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

inline std::vector<RankingRecord> read_dataset_csv(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return parse_dataset_csv(in, n);
}

inline std::string format_ranking_csv(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Designs: {"n":4,"design":[[1,3],[2,4],[3,4],[1,2,3],[1,3,4]]}

inline ObservationDesign parse_design_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    std::vector<ItemSet> subsets;
    for (const auto& s : j.at("design")) {
      std::vector<Item> items;
      for (const auto& v : s) {
        const int i = v.get<int>();
        if (i < 1 || i > n) throw FormatError("design item " + std::to_string(i) + " outside 1.." + std::to_string(n));
        items.push_back(static_cast<Item>(i));
      }
      if (ItemSet(items).size() != items.size()) throw FormatError("design subset with repeated items");
      subsets.emplace_back(std::move(items));
    }
    return ObservationDesign(n, std::move(subsets));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("design JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("design JSON: ") + e.what());
  }
}

inline std::string format_design_json(const ObservationDesign& d) {
  nlohmann::json j;
  j["n"] = d.n();
  j["design"] = nlohmann::json::array();
  for (const auto& A : d.subsets()) {
    nlohmann::json s = nlohmann::json::array();
    for (Item a : A) s.push_back(static_cast<int>(a));
    j["design"].push_back(s);
  }
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------
// Coefficient vectors:
// {"n":4,"scope":"full","coefficients":[{"tau":"id","value":0.0416...}, ...]}

inline std::string format_coefficients_json(const CoefficientVector& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["scope"] = c.scope == CoefficientScope::full ? "full" : "design";
  if (c.scope == CoefficientScope::design) {
    j["design"] = nlohmann::ordered_json::array();
    for (const auto& A : c.design) {
      nlohmann::ordered_json s = nlohmann::ordered_json::array();
      for (Item a : A) s.push_back(static_cast<int>(a));
      j["design"].push_back(s);
    }
  }
  j["coefficients"] = nlohmann::ordered_json::array();
  for (const auto& [key, value] : c.coeffs) {
    nlohmann::ordered_json t;
    t["tau"] = key;
    t["value"] = value;
    j["coefficients"].push_back(t);
  }
  return j.dump(1) + "\n";
}

inline CoefficientVector parse_coefficients_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CoefficientVector c;
    c.n = j.at("n").get<int>();
    if (c.n < 1 || c.n > kMaxItems) throw FormatError("coefficients JSON: n out of range");
    const auto scope = j.value("scope", std::string("full"));
    if (scope == "full") c.scope = CoefficientScope::full;
    else if (scope == "design") c.scope = CoefficientScope::design;
    else throw FormatError("coefficients JSON: unknown scope '" + scope + "'");
    if (j.contains("design"))
      for (const auto& s : j.at("design")) {
        std::vector<Item> items;
        for (const auto& v : s) items.push_back(static_cast<Item>(v.get<int>()));
        c.design.emplace_back(std::move(items));
      }
    for (const auto& t : j.at("coefficients")) {
      const auto key = t.at("tau").get<std::string>();
      // Normalize the key through a permutation round trip.
      const auto tau = parse_permutation(key, c.n);
      c.coeffs.emplace_back(cycle_key(tau), t.at("value").get<double>());
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("coefficients JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("coefficients JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Wavelet listings: one "<key>: <chain>" line per basis element.

inline std::string format_basis_line(const std::string& key, const IntChain& chain) {
  return key + ": " + to_string(chain) + "\n";
}

/// Per-subset chain values as "subset,word,value" rows, words in
/// lexicographic order over all of Gamma(A) (absent words print 0).
template <typename Coef>
std::string format_marginals_csv(const std::vector<std::pair<ItemSet, Chain<Coef>>>& rows, int n) {
  std::ostringstream out;
  out << "subset,word,value\n";
  out << std::setprecision(17);
  for (const auto& [A, chain] : rows) {
    std::string subset;
    for (Item a : A) {
      if (n > 9 && !subset.empty()) subset += ' ';
      subset += std::to_string(a);
    }
    for (const auto& w : words_on(A)) {
      std::string word;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (n > 9 && i) word += ' ';
        word += std::to_string(w[i]);
      }
      out << subset << ',' << word << ',' << static_cast<double>(chain(w)) << '\n';
    }
  }
  return out.str();
}

}  // namespace rankmra
