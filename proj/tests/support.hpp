#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "orelab/corpus.hpp"
#include "orelab/group.hpp"

namespace orelab::testing {

// Element with the given cycle-notation label, e.g. "(1 2 3 4)".
inline Element by_label(const Group& g, const std::string& label) {
  const auto& l = g.labels();
  auto it = std::find(l.begin(), l.end(), label);
  if (it == l.end()) throw InvalidArgument("no element labelled " + label);
  return static_cast<Element>(it - l.begin());
}

inline Subgroup span(const Group& g, std::initializer_list<std::string> labels) {
  std::vector<Element> gens;
  for (const auto& s : labels) gens.push_back(by_label(g, s));
  return generate_subgroup(g, gens);
}

// Closure computed by repeated squaring of the product set, independent of
// SubgroupClosure.
inline ElementSet naive_closure(const Group& g, ElementSet s) {
  s.set(0);
  while (true) {
    ElementSet next = s;
    s.for_each([&](Element a) {
      s.for_each([&](Element b) { next.set(g.mul(a, b)); });
    });
    if (next == s) return s;
    s = next;
  }
}

// Exhaustive isomorphism search over all bijections fixing the identity,
// feasible for orders <= 8.
inline bool brute_isomorphic_small(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.order();
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x)
      for (Element y = 0; y < n && ok; ++y) ok = perm[a.mul(x, y)] == b.mul(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

// Unpruned isomorphism search: every tuple of images for a generating set,
// checked by extending along words in the generators.  Orders <= 16.
inline bool brute_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.order();
  const auto gens = small_generating_set(a);
  // Word representation: every element of a as a product of generators.
  std::vector<std::vector<std::size_t>> word(n);
  std::vector<bool> have(n, false);
  have[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Element y = a.mul(queue[qi], gens[i]);
      if (have[y]) continue;
      have[y] = true;
      word[y] = word[queue[qi]];
      word[y].push_back(i);
      queue.push_back(y);
    }
  std::vector<Element> img(gens.size(), 0);
  while (true) {
    std::vector<Element> map(n);
    for (Element x = 0; x < n; ++x) {
      Element v = 0;
      for (std::size_t i : word[x]) v = b.mul(v, img[i]);
      map[x] = v;
    }
    bool ok = true;
    std::vector<bool> hit(n, false);
    for (Element x = 0; x < n && ok; ++x) {
      ok = !hit[map[x]];
      hit[map[x]] = true;
    }
    for (Element x = 0; x < n && ok; ++x)
      for (Element y = 0; y < n && ok; ++y) ok = map[a.mul(x, y)] == b.mul(map[x], map[y]);
    if (ok) return true;
    std::size_t k = 0;
    while (k < img.size() && ++img[k] == n) img[k++] = 0;
    if (k == img.size()) return false;
  }
}

// Corpus up to the given order, built once per process.
inline const std::vector<CorpusEntry>& corpus_upto(std::size_t max_order) {
  static std::map<std::size_t, std::vector<CorpusEntry>> cache;
  auto it = cache.find(max_order);
  if (it == cache.end()) it = cache.emplace(max_order, generate_corpus(max_order)).first;
  return it->second;
}

}  // namespace orelab::testing
