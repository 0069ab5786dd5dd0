#include "orelab/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace orelab {

Group::Group(std::size_t order, std::vector<std::uint16_t> table, std::vector<std::string> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
  if (order_ == 0) throw InvalidGroup("order", "group must be non-empty");
  if (order_ > kMaxOrder) throw TooLarge("group order " + std::to_string(order_) + " exceeds table cap");
  if (table_.size() != order_ * order_)
    throw InvalidGroup("shape", "table has " + std::to_string(table_.size()) + " entries, expected " +
                                    std::to_string(order_ * order_));
  if (!labels_.empty() && labels_.size() != order_)
    throw InvalidGroup("labels", "label count differs from order");
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= order_)
      throw InvalidGroup("range", "entry " + std::to_string(table_[i]) + " at row " +
                                      std::to_string(i / order_) + " out of range");
  for (Element x = 0; x < order_; ++x)
    if (mul(0, x) != x || mul(x, 0) != x)
      throw InvalidGroup("identity", "element 0 is not an identity at " + std::to_string(x));

  inverse_.assign(order_, static_cast<Element>(order_));
  for (Element x = 0; x < order_; ++x) {
    for (Element y = 0; y < order_; ++y) {
      if (mul(x, y) == 0) {
        inverse_[x] = y;
        break;
      }
    }
    if (inverse_[x] == order_) throw InvalidGroup("inverse", "element " + std::to_string(x) + " has no inverse");
  }
  for (Element x = 0; x < order_; ++x)
    if (mul(inverse_[x], x) != 0)
      throw InvalidGroup("inverse", "left and right inverse differ at " + std::to_string(x));

  auto check = [&](Element a, Element b, Element c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw InvalidGroup("associativity", "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                              std::to_string(c) + ")");
  };
  if (order_ <= kExhaustiveAssociativity) {
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b) {
        const Element ab = mul(a, b);
        for (Element c = 0; c < order_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) check(a, b, c);
      }
  } else {
    std::mt19937_64 rng(0x0e1ab5eedULL ^ order_);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
    const std::size_t samples = 10 * order_ * order_;
    for (std::size_t i = 0; i < samples; ++i) check(pick(rng), pick(rng), pick(rng));
  }

  element_order_.assign(order_, 0);
  for (Element x = 0; x < order_; ++x) {
    std::size_t k = 1;
    Element y = x;
    while (y != 0) {
      y = mul(y, x);
      ++k;
    }
    element_order_[x] = k;
  }
  for (Element a = 0; a < order_ && abelian_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }
}

Homomorphism::Homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  const std::size_t n = source_->order();
  if (map_.size() != n) throw InvalidGroup("homomorphism", "map size differs from source order");
  for (Element x : map_)
    if (x >= target_->order()) throw InvalidGroup("homomorphism", "image out of range");
  if (map_[0] != 0) throw InvalidGroup("homomorphism", "identity not preserved");
  for (Element s = 0; s < n; ++s)
    for (Element t = 0; t < n; ++t)
      if (map_[source_->mul(s, t)] != target_->mul(map_[s], map_[t]))
        throw InvalidGroup("homomorphism",
                           "map(st) != map(s)map(t) at (" + std::to_string(s) + "," + std::to_string(t) + ")");
}

bool Homomorphism::is_bijective() const {
  if (source_->order() != target_->order()) return false;
  ElementSet seen(target_->order());
  for (Element x : map_) seen.set(x);
  return seen.count() == target_->order();
}

ElementSet Homomorphism::image(const ElementSet& s) const {
  ElementSet out(target_->order());
  s.for_each([&](Element e) { out.set(map_[e]); });
  return out;
}

ElementSet Homomorphism::preimage(const ElementSet& s) const {
  ElementSet out(source_->order());
  for (Element e = 0; e < map_.size(); ++e)
    if (s.test(map_[e])) out.set(e);
  return out;
}

ElementSet Homomorphism::kernel() const { return preimage(target_->trivial()); }

Action::Action(GroupPtr actor, GroupPtr acted, std::vector<std::vector<Element>> perm)
    : actor_(std::move(actor)), acted_(std::move(acted)), perm_(std::move(perm)) {
  const std::size_t h = actor_->order(), n = acted_->order();
  if (perm_.size() != h) throw BadAction("one automorphism per actor element required");
  for (Element g = 0; g < h; ++g) {
    const auto& p = perm_[g];
    if (p.size() != n) throw BadAction("automorphism has wrong size");
    ElementSet seen(n);
    for (Element v : p) {
      if (v >= n) throw BadAction("automorphism image out of range");
      seen.set(v);
    }
    if (seen.count() != n) throw BadAction("automorphism is not bijective");
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (p[acted_->mul(a, b)] != acted_->mul(p[a], p[b]))
          throw BadAction("map for actor element " + std::to_string(g) + " is not multiplicative");
  }
  for (Element x = 0; x < n; ++x)
    if (perm_[0][x] != x) throw BadAction("identity does not act trivially");
  for (Element g = 0; g < h; ++g)
    for (Element k = 0; k < h; ++k) {
      const auto& gk = perm_[actor_->mul(g, k)];
      for (Element x = 0; x < n; ++x)
        if (gk[x] != perm_[g][perm_[k][x]]) throw BadAction("action is not a homomorphism");
    }
}

Action Action::trivial(GroupPtr actor, GroupPtr acted) {
  std::vector<Element> id(acted->order());
  std::iota(id.begin(), id.end(), Element{0});
  std::vector<std::vector<Element>> perm(actor->order(), id);
  return Action(std::move(actor), std::move(acted), std::move(perm));
}

SubgroupClosure::SubgroupClosure(const Group& g) : group_(&g), members_(g.trivial()), elements_{0} {}

SubgroupClosure::SubgroupClosure(const Group& g, const Subgroup& h) : SubgroupClosure(g) {
  for (Element x : small_generating_set(g, h)) extend(x);
}

bool SubgroupClosure::extend(Element x) {
  if (x >= group_->order()) throw InvalidArgument("element index " + std::to_string(x) + " out of range");
  if (members_.test(x)) return false;
  gens_.push_back(x);
  const std::vector<Element> base = elements_;
  auto add_coset = [&](Element rep) {
    for (Element h : base) {
      Element y = group_->mul(h, rep);
      members_.set(y);
      elements_.push_back(y);
    }
  };
  std::vector<Element> reps{0};
  add_coset(x);
  reps.push_back(x);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (Element s : gens_) {
      Element y = group_->mul(reps[i], s);
      if (!members_.test(y)) {
        add_coset(y);
        reps.push_back(y);
      }
    }
  }
  return true;
}

Subgroup generate_subgroup(const Group& g, std::span<const Element> gens) {
  SubgroupClosure c(g);
  for (Element x : gens) c.extend(x);
  return c.members();
}

Subgroup generate_subgroup(const Group& g, const ElementSet& gens) {
  return generate_subgroup(g, gens.elements());
}

Subgroup join(const Group& g, const Subgroup& a, const Subgroup& b) {
  if (b.is_subset_of(a)) return a;
  if (a.is_subset_of(b)) return b;
  SubgroupClosure c(g, a);
  b.for_each([&](Element x) { c.extend(x); });
  return c.members();
}

bool is_subgroup(const Group& g, const ElementSet& s) {
  if (s.universe() != g.order() || !s.test(0)) return false;
  bool ok = true;
  s.for_each([&](Element a) {
    if (!ok) return;
    if (!s.test(g.inv(a))) ok = false;
    s.for_each([&](Element b) {
      if (ok && !s.test(g.mul(a, b))) ok = false;
    });
  });
  return ok;
}

bool is_normal(const Group& g, const Subgroup& h) {
  for (Element x : small_generating_set(g)) {
    bool ok = true;
    h.for_each([&](Element e) {
      if (ok && !h.test(g.conj(x, e))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

ElementSet product_set(const Group& g, const ElementSet& a, const ElementSet& b) {
  ElementSet out(g.order());
  const auto be = b.elements();
  a.for_each([&](Element x) {
    for (Element y : be) out.set(g.mul(x, y));
  });
  return out;
}

Subgroup conjugate(const Group& g, const Subgroup& h, Element x) {
  ElementSet out(g.order());
  h.for_each([&](Element e) { out.set(g.conj(x, e)); });
  return out;
}

Quotient quotient(const GroupPtr& gp, const Subgroup& n) {
  const Group& g = *gp;
  if (!is_subgroup(g, n) || !is_normal(g, n)) throw NotNormal();
  const std::size_t order = g.order();
  std::vector<Element> coset(order, static_cast<Element>(order));
  std::vector<Element> reps;
  const auto ne = n.elements();
  for (Element x = 0; x < order; ++x) {
    if (coset[x] != order) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element m : ne) coset[g.mul(x, m)] = id;
  }
  const std::size_t q = reps.size();
  std::vector<std::uint16_t> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      table[i * q + j] = static_cast<std::uint16_t>(coset[g.mul(reps[i], reps[j])]);
  auto qg = make_group(q, std::move(table));
  Homomorphism proj(gp, qg, std::move(coset));
  return Quotient{qg, std::move(proj)};
}

Embedded subgroup_as_group(const GroupPtr& gp, const Subgroup& h) {
  const Group& g = *gp;
  if (!is_subgroup(g, h)) throw InvalidArgument("set is not a subgroup");
  const auto elems = h.elements();  // ascending, identity first
  std::vector<Element> index(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Element>(i);
  const std::size_t k = elems.size();
  std::vector<std::uint16_t> table(k * k);
  std::vector<std::string> labels;
  if (!g.labels().empty())
    for (Element e : elems) labels.push_back(g.labels()[e]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = static_cast<std::uint16_t>(index[g.mul(elems[i], elems[j])]);
  auto hg = make_group(k, std::move(table), std::move(labels));
  Homomorphism emb(hg, gp, elems);
  return Embedded{hg, std::move(emb)};
}

GroupPtr direct_product(const Group& a, const Group& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > Group::kMaxOrder) throw TooLarge("direct product order " + std::to_string(n));
  std::vector<std::uint16_t> table(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Element p = a.mul(x / nb, y / nb), q = b.mul(x % nb, y % nb);
      table[x * n + y] = static_cast<std::uint16_t>(p * nb + q);
    }
  return make_group(n, std::move(table));
}

GroupPtr semidirect_product(const Action& act) {
  const Group& nG = act.acted();
  const Group& hG = act.actor();
  const std::size_t nn = nG.order(), nh = hG.order(), n = nn * nh;
  if (n > Group::kMaxOrder) throw TooLarge("semidirect product order " + std::to_string(n));
  std::vector<std::uint16_t> table(n * n);
  for (Element x = 0; x < n; ++x) {
    const Element n1 = x % nn, h1 = x / nn;
    for (Element y = 0; y < n; ++y) {
      const Element n2 = y % nn, h2 = y / nn;
      const Element nprod = nG.mul(n1, act.apply(h1, n2));
      const Element hprod = hG.mul(h1, h2);
      table[x * n + y] = static_cast<std::uint16_t>(hprod * nn + nprod);
    }
  }
  return make_group(n, std::move(table));
}

std::vector<Element> small_generating_set(const Group& g, const Subgroup& h) {
  std::vector<Element> cand = h.elements();
  std::stable_sort(cand.begin(), cand.end(),
                   [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
  SubgroupClosure c(g);
  std::vector<Element> gens;
  const std::size_t target = h.count();
  for (Element x : cand) {
    if (c.members().count() == target) break;
    if (c.extend(x)) gens.push_back(x);
  }
  return gens;
}

std::vector<Element> small_generating_set(const Group& g) { return small_generating_set(g, g.whole()); }

namespace {

Subgroup commutator_subgroup(const Group& g, const Subgroup& h) {
  const auto he = h.elements();
  ElementSet comms(g.order());
  for (Element a : he)
    for (Element b : he) comms.set(g.commutator(a, b));
  return generate_subgroup(g, comms);
}

std::size_t centraliser_size(const Group& g, Element x) {
  std::size_t c = 0;
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) ++c;
  return c;
}

}  // namespace

GroupInvariants invariants(const Group& g) {
  GroupInvariants inv;
  inv.order = g.order();
  inv.abelian = g.is_abelian();
  inv.order_multiset.assign(g.order() + 1, 0);
  for (Element x = 0; x < g.order(); ++x) ++inv.order_multiset[g.element_order(x)];
  const auto gens = small_generating_set(g);
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element s : gens)
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) ++inv.centre_order;
  }
  Subgroup cur = g.whole();
  inv.derived_series.push_back(cur.count());
  while (true) {
    Subgroup next = commutator_subgroup(g, cur);
    if (next == cur) break;
    cur = std::move(next);
    inv.derived_series.push_back(cur.count());
  }
  return inv;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Group& a, const Group& b) : a_(a), b_(b), img_(a.order(), kUnset), used_(b.order()) {
    gens_ = small_generating_set(a);
    for (Element x = 0; x < a.order(); ++x) csize_a_.push_back(centraliser_size(a, x));
    for (Element y = 0; y < b.order(); ++y) csize_b_.push_back(centraliser_size(b, y));
    img_[0] = 0;
    used_.set(0);
    defined_.push_back(0);
  }

  std::optional<std::vector<Element>> run() {
    if (search(0)) return img_;
    return std::nullopt;
  }

 private:
  static constexpr Element kUnset = ~Element{0};

  bool search(std::size_t level) {
    if (level == gens_.size()) return defined_.size() == a_.order();
    const Element g = gens_[level];
    for (Element y = 0; y < b_.order(); ++y) {
      if (b_.element_order(y) != a_.element_order(g) || csize_b_[y] != csize_a_[g]) continue;
      if (img_[g] != kUnset && img_[g] != y) continue;
      if (img_[g] == kUnset && used_.test(y)) continue;
      const std::size_t mark = defined_.size();
      gen_images_.push_back(y);
      if (propagate(level + 1) && search(level + 1)) return true;
      gen_images_.pop_back();
      for (std::size_t i = mark; i < defined_.size(); ++i) {
        used_.reset(img_[defined_[i]]);
        img_[defined_[i]] = kUnset;
      }
      defined_.resize(mark);
    }
    return false;
  }

  // Closes the partial map over the first `ngens` generators; false on a
  // multiplicative or injectivity conflict.
  bool propagate(std::size_t ngens) {
    for (std::size_t i = 0; i < defined_.size(); ++i) {
      const Element u = defined_[i];
      for (std::size_t k = 0; k < ngens; ++k) {
        const Element v = a_.mul(u, gens_[k]);
        const Element w = b_.mul(img_[u], gen_images_[k]);
        if (img_[v] == kUnset) {
          if (used_.test(w)) return false;
          img_[v] = w;
          used_.set(w);
          defined_.push_back(v);
        } else if (img_[v] != w) {
          return false;
        }
      }
    }
    return true;
  }

  const Group& a_;
  const Group& b_;
  std::vector<Element> gens_;
  std::vector<Element> gen_images_;
  std::vector<std::size_t> csize_a_, csize_b_;
  std::vector<Element> img_;
  ElementSet used_;
  std::vector<Element> defined_;
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const Group& a, const Group& b, std::size_t bound) {
  if (a.order() > bound || b.order() > bound)
    throw TooLarge("isomorphism test above order " + std::to_string(bound));
  if (a.order() != b.order()) return std::nullopt;
  if (!(invariants(a) == invariants(b))) return std::nullopt;
  return IsoSearch(a, b).run();
}

bool are_isomorphic(const Group& a, const Group& b, std::size_t bound) {
  return find_isomorphism(a, b, bound).has_value();
}

}  // namespace orelab
