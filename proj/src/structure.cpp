#include "orelab/structure.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "orelab/formation.hpp"
#include "orelab/numbers.hpp"

namespace orelab {

namespace {

// Normal closure of h inside the subgroup `within` (h <= within).
Subgroup closure_under(const Group& g, const Subgroup& h, const Subgroup& within) {
  SubgroupClosure c(g, h);
  const auto gens = small_generating_set(g, h);
  within.for_each([&](Element n) {
    for (Element x : gens) c.extend(g.conj(n, x));
  });
  return c.members();
}

}  // namespace

std::vector<ChiefFactor> ChiefSeries::factors() const {
  std::vector<ChiefFactor> out;
  for (std::size_t i = 1; i < terms.size(); ++i) out.push_back(ChiefFactor{terms[i], terms[i - 1]});
  return out;
}

Subgroup core(const Group& g, const Subgroup& h) {
  Subgroup out = h;
  for (Element x = 1; x < g.order(); ++x) {
    Subgroup c(g.order());
    h.for_each([&](Element y) { c.set(g.conj(x, y)); });
    out &= c;
  }
  return out;
}

Subgroup normal_closure(const Group& g, const Subgroup& h) { return closure_under(g, h, g.whole()); }

Subgroup centralizer(const Group& g, const ElementSet& s) {
  Subgroup out(g.order());
  const auto elems = s.elements();
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : elems)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return out;
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  const auto gens = small_generating_set(g, h);
  Subgroup out(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : gens)
      if (!h.test(g.conj(x, y))) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return out;
}

Subgroup centralizer_of_section(const Group& g, const Subgroup& h, const Subgroup& k) {
  const auto gens = small_generating_set(g, h);
  Subgroup out(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : gens)
      if (!k.test(g.commutator(x, y))) {
        ok = false;
        break;
      }
    if (ok) out.set(x);
  }
  return out;
}

Subgroup centralizer_of_factor(const Group& g, const ChiefFactor& f) {
  if (!f.lower.is_subset_of(f.upper) || f.lower == f.upper || !is_subgroup(g, f.upper) || !is_subgroup(g, f.lower) ||
      !is_normal(g, f.upper) || !is_normal(g, f.lower))
    throw InvalidArgument("chief factor needs normal subgroups K < H");
  return centralizer_of_section(g, f.upper, f.lower);
}

Subgroup centre(const Group& g) { return centralizer(g, ElementSet::full(g.order())); }

std::vector<Subgroup> upper_central_series(const Group& g) {
  std::vector<Subgroup> out{g.trivial()};
  while (true) {
    Subgroup next = centralizer_of_section(g, g.whole(), out.back());
    if (next == out.back()) return out;
    out.push_back(std::move(next));
  }
}

Subgroup hypercentre(const Group& g) { return upper_central_series(g).back(); }

Subgroup derived_subgroup(const Group& g, const Subgroup& h) {
  const auto gens = small_generating_set(g, h);
  SubgroupClosure c(g);
  for (Element a : gens)
    for (Element b : gens) c.extend(g.commutator(a, b));
  // Close the generating list under conjugation by H.
  for (std::size_t i = 0; i < c.generators().size(); ++i) {
    const Element x = c.generators()[i];
    for (Element a : gens) c.extend(g.conj(a, x));
  }
  return c.members();
}

std::vector<Subgroup> derived_series(const Group& g) {
  std::vector<Subgroup> out{g.whole()};
  while (true) {
    Subgroup next = derived_subgroup(g, out.back());
    if (next == out.back()) return out;
    out.push_back(std::move(next));
  }
}

Subgroup largest_normal_p_subgroup(const std::vector<Subgroup>& normals, std::size_t p) {
  for (auto it = normals.rbegin(); it != normals.rend(); ++it)
    if (is_prime_power_of(it->count(), p)) return *it;
  return normals.front();
}

Subgroup p_residual(const Group& g, std::size_t p) {
  SubgroupClosure c(g);
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) % p != 0) c.extend(x);
  return c.members();
}

std::vector<Subgroup> normal_subgroups(const Group& g) {
  const std::size_t n = g.order();
  std::vector<bool> done(n, false);
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> closures;
  for (Element x = 1; x < n; ++x) {
    if (done[x]) continue;
    SubgroupClosure c(g);
    for (Element y = 0; y < n; ++y) {
      const Element z = g.conj(y, x);
      done[z] = true;
      c.extend(z);
    }
    if (seen.insert(c.members()).second) closures.push_back(c.members());
  }
  std::sort(closures.begin(), closures.end(), order_then_bits_less);
  std::vector<Subgroup> all{g.trivial()};
  std::unordered_set<ElementSet, ElementSetHash> known{g.trivial()};
  std::vector<Subgroup> frontier{g.trivial()};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& a : frontier)
      for (const auto& m : closures) {
        if (m.is_subset_of(a)) continue;
        Subgroup b = product_set(g, a, m);
        if (known.insert(b).second) {
          all.push_back(b);
          next.push_back(std::move(b));
        }
      }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), order_then_bits_less);
  return all;
}

std::vector<Subgroup> minimal_normal_subgroups(const std::vector<Subgroup>& normals) {
  std::vector<Subgroup> out;
  for (std::size_t i = 1; i < normals.size(); ++i) {
    bool minimal = true;
    for (const auto& m : out)
      if (m.is_subset_of(normals[i])) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(normals[i]);
  }
  return out;
}

ChiefSeries chief_series(const std::vector<Subgroup>& normals, const Subgroup* through) {
  ChiefSeries s;
  s.terms.push_back(normals.front());
  auto climb = [&](const Subgroup& ceiling) {
    while (!(s.terms.back() == ceiling)) {
      for (const auto& x : normals)
        if (s.terms.back().is_subset_of(x) && !(x == s.terms.back()) && x.is_subset_of(ceiling)) {
          s.terms.push_back(x);
          break;
        }
    }
  };
  if (through) climb(*through);
  climb(normals.back());
  return s;
}

std::vector<ChiefFactor> all_chief_factors(const Group& g, const std::vector<Subgroup>& normals) {
  // A cover of K is K * ncl(x) for some x outside K.
  std::vector<Subgroup> closures;
  {
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<bool> done(g.order(), false);
    for (Element x = 1; x < g.order(); ++x) {
      if (done[x]) continue;
      SubgroupClosure c(g);
      for (Element y = 0; y < g.order(); ++y) {
        const Element z = g.conj(y, x);
        done[z] = true;
        c.extend(z);
      }
      if (seen.insert(c.members()).second) closures.push_back(c.members());
    }
  }
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  for (std::size_t i = 0; i < normals.size(); ++i) index.emplace(normals[i], i);
  std::vector<ChiefFactor> out;
  for (const auto& k : normals) {
    std::vector<std::size_t> cand;
    for (const auto& m : closures) {
      if (m.is_subset_of(k)) continue;
      cand.push_back(index.at(product_set(g, k, m)));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<std::size_t> covers;
    for (std::size_t c : cand) {
      bool minimal = true;
      for (std::size_t m : covers)
        if (normals[m].is_subset_of(normals[c])) {
          minimal = false;
          break;
        }
      if (minimal) covers.push_back(c);
    }
    for (std::size_t c : covers) out.push_back(ChiefFactor{normals[c], k});
  }
  return out;
}

Subgroup sylow(const SubgroupLattice& lat, std::size_t p) { return sylow_of(lat, lat.whole_index(), p); }

Subgroup sylow_of(const SubgroupLattice& lat, std::size_t h, std::size_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const std::size_t target = p_part(lat.order_of(h), p);
  for (std::size_t j = 0; j <= h; ++j)
    if (lat.order_of(j) == target && lat.contains(h, j)) return lat[j];
  throw InvalidArgument("lattice has no Sylow subgroup");
}

std::optional<Subgroup> hall(const SubgroupLattice& lat, const std::vector<std::size_t>& primes) {
  std::size_t target = 1;
  for (std::size_t p : primes) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    target *= p_part(lat.group().order(), p);
  }
  for (std::size_t j = 0; j < lat.size(); ++j)
    if (lat.order_of(j) == target) return lat[j];
  return std::nullopt;
}

std::vector<Subgroup> maximal_subgroups(const SubgroupLattice& lat) {
  std::vector<Subgroup> out;
  for (std::size_t m : lat.maximal_subgroups_of(lat.whole_index())) out.push_back(lat[m]);
  return out;
}

Subgroup frattini(const SubgroupLattice& lat) {
  Subgroup out = lat.group().whole();
  for (std::size_t m : lat.maximal_subgroups_of(lat.whole_index())) out &= lat[m];
  return out;
}

Subgroup fitting(const Group& g, const std::vector<Subgroup>& normals) {
  Subgroup out = g.trivial();
  for (std::size_t p : prime_divisors(g.order())) out = product_set(g, out, largest_normal_p_subgroup(normals, p));
  return out;
}

Subgroup fitting(const Group& g) { return fitting(g, normal_subgroups(g)); }

Subgroup generalized_fitting(const GroupPtr& g, const std::vector<Subgroup>& normals) {
  for (auto it = normals.rbegin(); it != normals.rend(); ++it) {
    if (it + 1 == normals.rend()) return *it;
    const auto emb = subgroup_as_group(g, *it);
    if (is_member(emb.group, Formation{Formation::Kind::quasinilpotent})) return *it;
  }
  return g->trivial();
}

Subgroup generalized_fitting(const GroupPtr& g) { return generalized_fitting(g, normal_subgroups(*g)); }

bool is_subnormal(const Group& g, const Subgroup& h) {
  Subgroup cur = g.whole();
  while (true) {
    if (cur == h) return true;
    Subgroup next = closure_under(g, h, cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
}

bool is_subnormally_embedded(const SubgroupLattice& lat, std::size_t h) {
  for (std::size_t p : prime_divisors(lat.order_of(h))) {
    const Subgroup ps = sylow_of(lat, h, p);
    const std::size_t q = ps.count();
    bool found = false;
    for (std::size_t w = 0; w < lat.size() && !found; ++w)
      found = lat.subnormal_depth(w).has_value() && p_part(lat.order_of(w), p) == q && ps.is_subset_of(lat[w]);
    if (!found) return false;
  }
  return true;
}

bool is_primitive(const SubgroupLattice& lat) {
  for (std::size_t m : lat.maximal_subgroups_of(lat.whole_index()))
    if (core(lat.group(), lat[m]).count() == 1) return true;
  return false;
}

bool is_nilpotent_group(const Group& g) { return hypercentre(g).count() == g.order(); }

bool is_soluble_group(const Group& g) { return derived_series(g).back().count() == 1; }

}  // namespace orelab
