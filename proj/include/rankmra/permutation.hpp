#pragma once

// Permutations of {1..n}, standard cycle forms and derangement enumeration.

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankmra/item_set.hpp"

namespace rankmra {

class Permutation {
 public:
  Permutation() = default;

  /// images[i-1] = tau(i). Must be a bijection of {1..n}.
  explicit Permutation(std::vector<Item> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (Item v : images_) {
      if (v == 0 || v > images_.size() || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    if (n < 0 || n > kMaxItems) throw std::invalid_argument("Permutation: n out of range");
    std::vector<Item> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<Item>(i + 1);
    return Permutation(std::move(v));
  }

  static Permutation transposition(int n, Item a, Item b) {
    Permutation p = identity(n);
    if (a == 0 || b == 0 || a > n || b > n) throw std::invalid_argument("transposition: item out of range");
    std::swap(p.images_[a - 1u], p.images_[b - 1u]);
    return p;
  }

  int n() const noexcept { return static_cast<int>(images_.size()); }
  Item operator()(Item i) const { return images_.at(i - 1u); }
  const std::vector<Item>& images() const noexcept { return images_; }

  Permutation inverse() const {
    std::vector<Item> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1u] = static_cast<Item>(i + 1);
    return Permutation(std::move(inv));
  }

  /// (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.n() != b.n()) throw std::invalid_argument("Permutation: composing different degrees");
    std::vector<Item> r(a.images_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.images_[b.images_[i] - 1u];
    return Permutation(std::move(r));
  }

  ItemSet support() const {
    std::vector<Item> s;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i + 1) s.push_back(static_cast<Item>(i + 1));
    return ItemSet(std::move(s));
  }

  /// Number of moved points.
  int length() const { return static_cast<int>(support().size()); }
  bool is_identity() const { return length() == 0; }
  int cycle_count() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Item> images_;
};

/// s * t * s^-1
inline Permutation conjugate(const Permutation& s, const Permutation& t) { return s * t * s.inverse(); }

/// Product of disjoint cycles. In standard form each cycle starts with its
/// minimum and cycles are sorted by their minima; fixed points are omitted.
struct CycleForm {
  std::vector<std::vector<Item>> cycles;

  bool is_standard() const {
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const auto& c = cycles[i];
      if (c.size() < 2 || *std::min_element(c.begin(), c.end()) != c.front()) return false;
      if (i > 0 && cycles[i - 1].front() >= c.front()) return false;
    }
    return true;
  }

  /// "(1 3 4)(2 5)", or "id" for the empty product.
  std::string to_string() const {
    if (cycles.empty()) return "id";
    std::string s;
    for (const auto& c : cycles) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(const CycleForm&, const CycleForm&) = default;
};

inline CycleForm standard_cycle_form(const Permutation& t) {
  CycleForm form;
  std::vector<bool> seen(static_cast<std::size_t>(t.n()) + 1, false);
  for (int start = 1; start <= t.n(); ++start) {
    const auto s = static_cast<Item>(start);
    if (seen[s] || t(s) == s) continue;
    std::vector<Item> cycle;
    for (Item x = s; !seen[x]; x = t(x)) {
      seen[x] = true;
      cycle.push_back(x);
    }
    form.cycles.push_back(std::move(cycle));
  }
  return form;
}

inline int Permutation::cycle_count() const { return static_cast<int>(standard_cycle_form(*this).cycles.size()); }

/// Builds the permutation of {1..n} described by `form` (any cycle order).
inline Permutation from_cycles(int n, const CycleForm& form) {
  Permutation id = Permutation::identity(n);
  std::vector<Item> img = id.images();
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  for (const auto& c : form.cycles) {
    if (c.size() < 2) throw std::invalid_argument("from_cycles: cycle of length < 2");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0 || c[i] > n) throw std::invalid_argument("from_cycles: item out of range");
      if (used[c[i]]) throw std::invalid_argument("from_cycles: cycles are not disjoint");
      used[c[i]] = true;
      img[c[i] - 1u] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

/// Parses "(1 3 4)(2 5)" (spaces or commas between letters; compact digits
/// such as "(134)(25)" are accepted when every letter is a single digit) and
/// "id".
inline CycleForm parse_cycle_form(std::string_view text) {
  CycleForm form;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "id") return form;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("parse_cycle_form: expected '(' in '" + std::string(text) + "'");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw std::invalid_argument("parse_cycle_form: unbalanced parentheses");
    const auto body = text.substr(i + 1, close - i - 1);
    std::vector<Item> cycle;
    const bool separated = body.find_first_of(" ,") != std::string_view::npos;
    int value = -1;
    auto flush = [&] {
      if (value > 0) cycle.push_back(static_cast<Item>(value));
      else if (value == 0) throw std::invalid_argument("parse_cycle_form: item 0 is not valid");
      value = -1;
    };
    for (char c : body) {
      if (c == ' ' || c == ',') {
        flush();
      } else if (c >= '0' && c <= '9') {
        if (!separated) {
          value = c - '0';
          flush();
        } else {
          value = (value < 0 ? 0 : value * 10) + (c - '0');
          if (value > kMaxItems) throw std::invalid_argument("parse_cycle_form: item out of range");
        }
      } else {
        throw std::invalid_argument("parse_cycle_form: bad character in '" + std::string(text) + "'");
      }
    }
    flush();
    form.cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  return form;
}

inline Permutation parse_permutation(std::string_view text, int n) { return from_cycles(n, parse_cycle_form(text)); }

/// Standard-cycle-form string; the canonical key of a wavelet.
inline std::string cycle_key(const Permutation& t) { return standard_cycle_form(t).to_string(); }

/// All permutations of {1..n} whose support is exactly `support`, ordered
/// lexicographically by their standard-cycle-form string. The empty support
/// yields {id}; a singleton support yields nothing.
inline std::vector<Permutation> derangements(const ItemSet& support, int n) {
  if (!support.empty() && support.max() > n) throw std::invalid_argument("derangements: support exceeds n");
  std::vector<Permutation> out;
  std::vector<Item> images(support.begin(), support.end());
  const std::vector<Item> domain = images;
  do {
    bool fixed = false;
    for (std::size_t i = 0; i < domain.size() && !fixed; ++i) fixed = images[i] == domain[i];
    if (fixed) continue;
    std::vector<Item> full = Permutation::identity(n).images();
    for (std::size_t i = 0; i < domain.size(); ++i) full[domain[i] - 1u] = images[i];
    out.emplace_back(std::move(full));
  } while (std::next_permutation(images.begin(), images.end()));
  std::sort(out.begin(), out.end(),
            [](const Permutation& a, const Permutation& b) { return cycle_key(a) < cycle_key(b); });
  return out;
}

/// Order-preserving check used by translation covariance: s restricted to
/// `set` is increasing.
inline bool preserves_order_on(const Permutation& s, const ItemSet& set) {
  Item prev = 0;
  for (Item a : set) {
    if (s(a) <= prev) return false;
    prev = s(a);
  }
  return true;
}

}  // namespace rankmra
