#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace orelab {

using Element = std::uint32_t;

// Fixed-universe bit set over the element indices of a group.  Groups up to
// order 256 keep their words inline.
class ElementSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : words_((universe + kWordBits - 1) / kWordBits, 0), universe_(universe) {}

  static ElementSet singleton(std::size_t universe, Element e) {
    ElementSet s(universe);
    s.set(e);
    return s;
  }
  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(static_cast<Element>(i));
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool test(Element e) const { return (words_[e / kWordBits] >> (e % kWordBits)) & 1U; }
  void set(Element e) { words_[e / kWordBits] |= Word{1} << (e % kWordBits); }
  void reset(Element e) { words_[e / kWordBits] &= ~(Word{1} << (e % kWordBits)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  std::size_t intersection_count(const ElementSet& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  ElementSet& operator-=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ &&
           std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  // Smallest member, or universe() when empty.
  Element first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Element>(i * kWordBits + std::countr_zero(words_[i]));
    return static_cast<Element>(universe_);
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        f(static_cast<Element>(i * kWordBits + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL ^ universe_;
    for (Word w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  boost::container::small_vector<Word, 4> words_;
  std::size_t universe_ = 0;
};

// Total order used for every sorted list of subgroups: by size, then by words.
inline bool order_then_bits_less(const ElementSet& a, const ElementSet& b) {
  std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  auto wa = a.words(), wb = b.words();
  return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
}

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// A subgroup is carried as the membership set over its parent's elements.
using Subgroup = ElementSet;

}  // namespace orelab
