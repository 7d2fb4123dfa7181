#pragma once

// Injective words over {1..n}: the unit of (incomplete) ranking data.

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankmra/item_set.hpp"

namespace rankmra {

/// An injective word a_1 ... a_k (distinct letters). The empty word is valid.
/// Read as a ranking, a_1 is preferred to a_2, and so on.
///
/// Words compare lexicographically on their letter sequence, a proper prefix
/// sorting first.
class Word {
 public:
  Word() = default;

  Word(std::initializer_list<int> letters) {
    for (int a : letters) {
      if (a < 1 || a > kMaxItems) throw std::invalid_argument("Word: letter out of range");
      letters_.push_back(static_cast<Item>(a));
    }
    validate();
  }

  explicit Word(std::vector<Item> letters) : letters_(std::move(letters)) { validate(); }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Item operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Item> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool contains(Item a) const { return std::find(letters_.begin(), letters_.end(), a) != letters_.end(); }

  /// 1-based position of `a`, or 0 if absent.
  std::size_t position(Item a) const {
    auto it = std::find(letters_.begin(), letters_.end(), a);
    return it == letters_.end() ? 0 : static_cast<std::size_t>(it - letters_.begin()) + 1;
  }

  Item max_letter() const {
    return letters_.empty() ? Item{0} : *std::max_element(letters_.begin(), letters_.end());
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  friend Word concat(const Word&, const Word&);
  friend Word erase_letter(const Word&, Item);
  friend Word restrict_to(const Word&, const ItemSet&);

  struct Unchecked {};
  Word(Unchecked, std::vector<Item> letters) : letters_(std::move(letters)) {}

  void validate() const {
    std::vector<Item> s = letters_;
    std::sort(s.begin(), s.end());
    if (!s.empty() && s.front() == 0) throw std::invalid_argument("Word: letter 0 is not valid");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("Word: letters must be distinct");
  }

  std::vector<Item> letters_;
};

/// The set of letters of `w`.
inline ItemSet content(const Word& w) { return ItemSet(std::vector<Item>(w.begin(), w.end())); }

/// Subword of `w` keeping only letters in `keep`, order preserved.
inline Word restrict_to(const Word& w, const ItemSet& keep) {
  std::vector<Item> r;
  for (Item a : w)
    if (keep.contains(a)) r.push_back(a);
  return Word(Word::Unchecked{}, std::move(r));
}

/// `w` with letter `a` removed; `w` itself if `a` does not occur.
inline Word erase_letter(const Word& w, Item a) {
  std::vector<Item> r;
  r.reserve(w.size());
  for (Item x : w)
    if (x != a) r.push_back(x);
  return Word(Word::Unchecked{}, std::move(r));
}

/// Inserts `b` so that it lands at 1-based position `i` (1 <= i <= |w|+1).
inline Word insert_at(const Word& w, Item b, std::size_t i) {
  if (b == 0) throw std::invalid_argument("insert_at: letter 0 is not valid");
  if (w.contains(b)) throw std::invalid_argument("insert_at: letter already present in word");
  if (i < 1 || i > w.size() + 1) throw std::out_of_range("insert_at: position out of range");
  std::vector<Item> r(w.begin(), w.end());
  r.insert(r.begin() + static_cast<std::ptrdiff_t>(i - 1), b);
  return Word(std::move(r));
}

/// Concatenation of words with disjoint contents. Throws if contents overlap;
/// chain-level concatenation handles the overlapping case by dropping the term.
inline Word concat(const Word& u, const Word& v) {
  std::vector<Item> r(u.begin(), u.end());
  r.insert(r.end(), v.begin(), v.end());
  return Word(std::move(r));
}

inline bool disjoint(const Word& u, const Word& v) {
  for (Item a : u)
    if (v.contains(a)) return false;
  return true;
}

/// True if `inner` occurs as a block of consecutive letters in `outer`.
/// The empty word is a contiguous subword of every word.
inline bool is_contiguous_subword(const Word& inner, const Word& outer) {
  if (inner.empty()) return true;
  return std::search(outer.begin(), outer.end(), inner.begin(), inner.end()) != outer.end();
}

/// Elementary sign: +1 if `b` immediately follows `a` in `w`, -1 if `b`
/// immediately precedes `a`, 0 otherwise (including when either is absent).
inline int epsilon(const Word& w, Item b, Item a) {
  const auto pb = w.position(b);
  const auto pa = w.position(a);
  if (pa == 0 || pb == 0) return 0;
  if (pb == pa + 1) return 1;
  if (pa == pb + 1) return -1;
  return 0;
}

/// Text form: digit concatenation when n <= 9 ("13425"), comma separated
/// otherwise ("1,3,10"). The empty word renders as "-".
inline std::string to_string(const Word& w, int n) {
  if (w.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (n > 9 && i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

/// Parses either text form. Digit concatenation is only accepted without
/// commas; a single multi-digit token without commas is read digit by digit.
inline Word parse_word(std::string_view text) {
  if (text == "-") return Word{};
  if (text.empty()) throw std::invalid_argument("parse_word: empty text");
  std::vector<Item> letters;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("parse_word: bad character in '" + std::string(text) + "'");
      letters.push_back(static_cast<Item>(c - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      auto tok = text.substr(start, end - start);
      if (tok.empty()) throw std::invalid_argument("parse_word: empty letter in '" + std::string(text) + "'");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw std::invalid_argument("parse_word: bad character in '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
        if (v > kMaxItems) throw std::invalid_argument("parse_word: letter out of range");
      }
      if (v == 0) throw std::invalid_argument("parse_word: letter 0 is not valid");
      letters.push_back(static_cast<Item>(v));
      start = end + 1;
    }
  }
  return Word(std::move(letters));
}

/// All words with content exactly `set`, in lexicographic order.
inline std::vector<Word> words_on(const ItemSet& set) {
  std::vector<Item> letters(set.begin(), set.end());
  std::vector<Word> out;
  do {
    out.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

}  // namespace rankmra
