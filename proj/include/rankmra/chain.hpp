#pragma once

// Chains: finite linear combinations of injective words, i.e. elements of
// L(Gamma_n). Integer chains carry basis and combinatorial objects exactly;
// real chains carry data.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "rankmra/item_set.hpp"
#include "rankmra/permutation.hpp"
#include "rankmra/word.hpp"

namespace rankmra {

template <typename Coef>
struct CoefTraits;

template <>
struct CoefTraits<std::int64_t> {
  static constexpr bool is_zero(std::int64_t c) noexcept { return c == 0; }
};

template <>
struct CoefTraits<double> {
  static constexpr double kZeroTolerance = 1e-12;
  static bool is_zero(double c) noexcept { return std::abs(c) <= kZeroTolerance; }
};

/// A sparse linear combination of words over {1..n}. Zero coefficients are
/// never stored, so two chains are equal iff their term maps are equal.
template <typename Coef>
class Chain {
 public:
  using coefficient_type = Coef;
  using Terms = std::map<Word, Coef>;

  Chain() = default;
  explicit Chain(int n) : n_(n) {
    if (n < 0 || n > kMaxItems) throw std::invalid_argument("Chain: n out of range");
  }

  static Chain dirac(int n, const Word& w, Coef c = Coef{1}) {
    Chain x(n);
    x.add(w, c);
    return x;
  }

  /// Indicator of a set of words.
  static Chain indicator(int n, const std::vector<Word>& words) {
    Chain x(n);
    for (const auto& w : words) x.add(w, Coef{1});
    return x;
  }

  int n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t support_size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Coef operator()(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Coef{} : it->second;
  }

  std::vector<Word> support() const {
    std::vector<Word> s;
    s.reserve(terms_.size());
    for (const auto& [w, c] : terms_) s.push_back(w);
    return s;
  }

  /// Accumulates c * w, pruning the term if it cancels.
  void add(const Word& w, Coef c) {
    if (!w.empty() && w.max_letter() > n_) throw std::invalid_argument("Chain: word letter exceeds n");
    if (CoefTraits<Coef>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (CoefTraits<Coef>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Coef sum() const {
    Coef s{};
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(static_cast<double>(c)));
    return m;
  }

  Chain& operator+=(const Chain& o) {
    check_same_n(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    check_same_n(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  Chain& operator*=(Coef s) {
    if (CoefTraits<Coef>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    Terms scaled;
    for (const auto& [w, c] : terms_) {
      const Coef v = c * s;
      if (!CoefTraits<Coef>::is_zero(v)) scaled.emplace_hint(scaled.end(), w, v);
    }
    terms_ = std::move(scaled);
    return *this;
  }

  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(Chain a, Coef s) { return a *= s; }
  friend Chain operator*(Coef s, Chain a) { return a *= s; }
  friend Chain operator-(Chain a) { return a *= Coef{-1}; }

  friend bool operator==(const Chain& a, const Chain& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  template <typename To>
  Chain<To> cast() const {
    Chain<To> r(n_);
    for (const auto& [w, c] : terms_) r.add(w, static_cast<To>(c));
    return r;
  }

 private:
  void check_same_n(const Chain& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Chain: mixing chains over different n");
  }

  int n_ = 0;
  Terms terms_;
};

using IntChain = Chain<std::int64_t>;
using RealChain = Chain<double>;

/// Max-norm distance between two chains of possibly different coefficient types.
template <typename A, typename B>
double max_abs_difference(const Chain<A>& x, const Chain<B>& y) {
  double m = 0;
  for (const auto& [w, c] : x.terms()) m = std::max(m, std::abs(static_cast<double>(c) - static_cast<double>(y(w))));
  for (const auto& [w, c] : y.terms())
    if (x.terms().find(w) == x.terms().end()) m = std::max(m, std::abs(static_cast<double>(c)));
  return m;
}

// ---------------------------------------------------------------------------
// Deletion, concatenation, diamond, translation

/// Linear extension of w -> w \ {a} (w unchanged when a does not occur).
template <typename Coef>
Chain<Coef> delete_letter(const Chain<Coef>& x, Item a) {
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms()) r.add(erase_letter(w, a), c);
  return r;
}

/// Deletes every letter of `set`. Deletions commute, so order is irrelevant.
template <typename Coef>
Chain<Coef> delete_set(const Chain<Coef>& x, const ItemSet& set) {
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms()) {
    std::vector<Item> kept;
    for (Item l : w)
      if (!set.contains(l)) kept.push_back(l);
    r.add(Word(std::move(kept)), c);
  }
  return r;
}

/// Bilinear extension of (u, v) -> uv, with overlapping contents giving 0.
template <typename Coef>
Chain<Coef> concat(const Chain<Coef>& x, const Chain<Coef>& y) {
  if (x.n() != y.n()) throw std::invalid_argument("concat: chains over different n");
  Chain<Coef> r(x.n());
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms())
      if (disjoint(u, v)) r.add(concat(u, v), cu * cv);
  return r;
}

/// x <> y = xy - yx
template <typename Coef>
Chain<Coef> diamond(const Chain<Coef>& x, const Chain<Coef>& y) {
  return concat(x, y) - concat(y, x);
}

/// Letterwise action of s: a_1...a_k -> s(a_1)...s(a_k).
template <typename Coef>
Chain<Coef> translate(const Chain<Coef>& x, const Permutation& s) {
  if (s.n() != x.n()) throw std::invalid_argument("translate: permutation degree differs from chain n");
  Chain<Coef> r(x.n());
  for (const auto& [w, c] : x.terms()) {
    std::vector<Item> img;
    img.reserve(w.size());
    for (Item a : w) img.push_back(s(a));
    r.add(Word(std::move(img)), c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text form: "+13425 -13452 +2*12 +0.5*31", zero chain "0".

namespace detail {

template <typename Coef>
std::string format_coef(Coef c) {
  if constexpr (std::is_integral_v<Coef>) {
    return std::to_string(c);
  } else {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, c);
    return std::string(buf, res.ptr);
  }
}

}  // namespace detail

template <typename Coef>
std::string to_string(const Chain<Coef>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : x.terms()) {
    if (!s.empty()) s += ' ';
    const bool negative = c < Coef{};
    s += negative ? '-' : '+';
    const Coef mag = negative ? -c : c;
    if (mag != Coef{1}) s += detail::format_coef(mag) + '*';
    s += to_string(w, x.n());
  }
  return s;
}

template <typename Coef>
Chain<Coef> parse_chain(std::string_view text, int n) {
  Chain<Coef> x(n);
  std::istringstream in{std::string(text)};
  std::string tok;
  bool any = false;
  while (in >> tok) {
    if (tok == "0" && !any) {
      any = true;
      continue;
    }
    any = true;
    Coef sign{1};
    std::string_view t = tok;
    if (t.size() > 1 && (t.front() == '+' || t.front() == '-')) {
      if (t.front() == '-') sign = Coef{-1};
      t.remove_prefix(1);
    } else if (t == "+" ) {
      throw std::invalid_argument("parse_chain: dangling sign");
    }
    Coef mag{1};
    if (auto star = t.find('*'); star != std::string_view::npos) {
      const auto num = t.substr(0, star);
      auto res = std::from_chars(num.data(), num.data() + num.size(), mag);
      if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
        throw std::invalid_argument("parse_chain: bad coefficient in '" + tok + "'");
      t.remove_prefix(star + 1);
    }
    x.add(parse_word(t), sign * mag);
  }
  return x;
}

}  // namespace rankmra
