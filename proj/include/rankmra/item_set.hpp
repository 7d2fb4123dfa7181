#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankmra {

/// Item identifier. Items are numbered 1..n with n <= 255.
using Item = std::uint8_t;

inline constexpr int kMaxItems = 255;

/// A finite set of items, kept sorted and duplicate free.
///
/// Ordering is by size first and then lexicographic on the sorted elements,
/// which is the order in which wavelet supports are listed.
class ItemSet {
 public:
  ItemSet() = default;

  ItemSet(std::initializer_list<int> items) {
    for (int i : items) {
      if (i < 1 || i > kMaxItems) throw std::invalid_argument("ItemSet: item out of range");
      items_.push_back(static_cast<Item>(i));
    }
    normalize();
  }

  explicit ItemSet(std::vector<Item> items) : items_(std::move(items)) {
    for (Item i : items_)
      if (i == 0) throw std::invalid_argument("ItemSet: item 0 is not valid");
    normalize();
  }

  /// {1, ..., n}
  static ItemSet range(int n) {
    std::vector<Item> v;
    for (int i = 1; i <= n; ++i) v.push_back(static_cast<Item>(i));
    ItemSet s;
    s.items_ = std::move(v);
    return s;
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::span<const Item> items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  Item min() const { return items_.front(); }
  Item max() const { return items_.back(); }

  bool contains(Item a) const { return std::binary_search(items_.begin(), items_.end(), a); }

  bool subset_of(const ItemSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  ItemSet with(Item a) const {
    ItemSet r = *this;
    r.items_.insert(std::lower_bound(r.items_.begin(), r.items_.end(), a), a);
    r.normalize();
    return r;
  }

  ItemSet without(Item a) const {
    ItemSet r = *this;
    std::erase(r.items_, a);
    return r;
  }

  friend ItemSet set_union(const ItemSet& a, const ItemSet& b) {
    ItemSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend ItemSet set_difference(const ItemSet& a, const ItemSet& b) {
    ItemSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend ItemSet set_intersection(const ItemSet& a, const ItemSet& b) {
    ItemSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }

  friend bool operator==(const ItemSet&, const ItemSet&) = default;
  friend std::strong_ordering operator<=>(const ItemSet& a, const ItemSet& b) {
    if (auto c = a.items_.size() <=> b.items_.size(); c != 0) return c;
    return a.items_ <=> b.items_;
  }

  /// "{1,3,4}"
  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(items_[i]);
    }
    return s + "}";
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<Item> items_;
};

/// All subsets of {1..n} with at least `min_size` elements, in ItemSet order.
inline std::vector<ItemSet> subsets_of(const ItemSet& ground, std::size_t min_size = 0) {
  const std::size_t k = ground.size();
  if (k > 30) throw std::invalid_argument("subsets_of: ground set too large to enumerate");
  std::vector<ItemSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<Item> v;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::uint64_t{1} << i)) v.push_back(ground.items()[i]);
    if (v.size() >= min_size) out.emplace_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rankmra
