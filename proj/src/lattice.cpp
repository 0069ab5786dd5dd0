#include "orelab/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace orelab {

namespace {

class Enumerator {
 public:
  Enumerator(const Group& g, const LatticeLimits& limits) : g_(g), limits_(limits) {}

  // Adds s and all its conjugates; returns the new class id or npos when s
  // was already known.
  std::size_t add_class(const Subgroup& s, const std::vector<Element>& gens) {
    if (index_.contains(s)) return npos;
    std::vector<std::size_t> cls;
    const std::size_t n = g_.order();
    for (Element x = 0; x < n; ++x) {
      Subgroup c = x == 0 ? s : conjugate(g_, s, x);
      if (index_.contains(c)) continue;
      std::vector<Element> cg(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) cg[i] = g_.conj(x, gens[i]);
      index_.emplace(c, subs_.size());
      cls.push_back(subs_.size());
      subs_.push_back(std::move(c));
      gens_.push_back(std::move(cg));
    }
    if (subs_.size() > limits_.max_subgroups)
      throw TooLarge("subgroup lattice exceeds " + std::to_string(limits_.max_subgroups) + " subgroups");
    classes_.push_back(std::move(cls));
    return classes_.size() - 1;
  }

  void run() {
    const std::size_t n = g_.order();
    std::vector<std::size_t> frontier;
    std::vector<std::pair<Element, std::size_t>> cyclic;  // generator, subgroup index
    for (Element x = 0; x < n; ++x) {
      SubgroupClosure c(g_);
      std::vector<Element> gens;
      if (c.extend(x)) gens.push_back(x);
      auto it = index_.find(c.members());
      if (it != index_.end()) continue;
      std::size_t cid = add_class(c.members(), gens);
      frontier.push_back(cid);
      for (std::size_t i : classes_[cid])
        if (!gens_[i].empty()) cyclic.emplace_back(gens_[i][0], i);
    }
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t cid : frontier) {
        const std::size_t rep = classes_[cid][0];
        for (const auto& [x, zi] : cyclic) {
          if (subs_[rep].test(x)) continue;
          SubgroupClosure c(g_, subs_[rep]);
          c.extend(x);
          if (index_.contains(c.members())) continue;
          std::vector<Element> gens = gens_[rep];
          gens.push_back(x);
          std::size_t nid = add_class(c.members(), gens);
          if (nid != npos) next.push_back(nid);
        }
      }
      frontier = std::move(next);
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const Group& g_;
  const LatticeLimits& limits_;
  std::vector<Subgroup> subs_;
  std::vector<std::vector<Element>> gens_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
  std::vector<std::vector<std::size_t>> classes_;
};

}  // namespace

SubgroupLattice::SubgroupLattice(GroupPtr g, LatticeLimits limits) : group_(std::move(g)) {
  const Group& grp = *group_;
  if (grp.order() > limits.max_order)
    throw TooLarge("lattice enumeration limited to order " + std::to_string(limits.max_order));
  Enumerator en(grp, limits);
  en.run();

  const std::size_t count = en.subs_.size();
  std::vector<std::size_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return order_then_bits_less(en.subs_[a], en.subs_[b]); });
  std::vector<std::size_t> where(count);
  for (std::size_t i = 0; i < count; ++i) where[perm[i]] = i;
  subs_.reserve(count);
  gens_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    subs_.push_back(std::move(en.subs_[perm[i]]));
    gens_.push_back(std::move(en.gens_[perm[i]]));
  }
  for (auto& cls : en.classes_)
    for (auto& i : cls) i = where[i];
  finish(std::move(en.classes_));
}

std::shared_ptr<const SubgroupLattice> SubgroupLattice::from_subgroups(GroupPtr g, std::vector<Subgroup> subs) {
  const Group& grp = *g;
  std::shared_ptr<SubgroupLattice> out(new SubgroupLattice());
  SubgroupLattice& lat = *out;
  lat.group_ = std::move(g);
  if (subs.empty() || !(subs.front() == grp.trivial()) || !(subs.back() == grp.whole()))
    throw InvalidGroup("lattice-bounds", "trivial subgroup and whole group must be first and last");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].universe() != grp.order()) throw InvalidGroup("lattice-universe", "entry " + std::to_string(i));
    if (!is_subgroup(grp, subs[i])) throw InvalidGroup("lattice-subgroup", "entry " + std::to_string(i));
    if (i > 0 && !order_then_bits_less(subs[i - 1], subs[i]))
      throw InvalidGroup("lattice-order", "entry " + std::to_string(i));
  }
  lat.subs_ = std::move(subs);
  for (const auto& s : lat.subs_) lat.gens_.push_back(small_generating_set(grp, s));
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  for (std::size_t i = 0; i < lat.subs_.size(); ++i) index.emplace(lat.subs_[i], i);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(lat.subs_.size(), false);
  for (std::size_t i = 0; i < lat.subs_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cls;
    for (Element x = 0; x < grp.order(); ++x) {
      auto it = index.find(orelab::conjugate(grp, lat.subs_[i], x));
      if (it == index.end()) throw InvalidGroup("lattice-conjugation", "entry " + std::to_string(i));
      if (!seen[it->second]) {
        seen[it->second] = true;
        cls.push_back(it->second);
      }
    }
    classes.push_back(std::move(cls));
  }
  for (std::size_t i = 0; i < lat.subs_.size(); ++i)
    for (std::size_t j = i + 1; j < lat.subs_.size(); ++j)
      if (!index.contains(lat.subs_[i] & lat.subs_[j]))
        throw InvalidGroup("lattice-intersection", "entries " + std::to_string(i) + "," + std::to_string(j));
  // Every subgroup is a join of cyclic ones; the list must hold them all.
  for (Element x = 0; x < grp.order(); ++x) {
    const Element gen[] = {x};
    if (!index.contains(generate_subgroup(grp, gen))) throw InvalidGroup("lattice-cyclic", "element " + std::to_string(x));
  }
  lat.finish(std::move(classes));
  return out;
}

void SubgroupLattice::finish(std::vector<std::vector<std::size_t>> classes) {
  const Group& grp = *group_;
  const std::size_t count = subs_.size();
  for (std::size_t i = 0; i < count; ++i) {
    orders_.push_back(subs_[i].count());
    index_.emplace(subs_[i], i);
  }
  class_of_.assign(count, 0);
  for (auto& cls : classes) std::sort(cls.begin(), cls.end());
  std::sort(classes.begin(), classes.end());
  classes_ = std::move(classes);
  normal_.assign(count, false);
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    for (std::size_t i : classes_[c]) class_of_[i] = c;
    if (classes_[c].size() == 1) normal_[classes_[c][0]] = true;
  }

  // Subnormal defect: length of the series G = N0 > N1 > ... with N_{k+1}
  // the normal closure of H in N_k.
  depth_.assign(count, -1);
  for (std::size_t i = 0; i < count; ++i) {
    if (i + 1 == count) {
      depth_[i] = 0;
      continue;
    }
    Subgroup cur = subs_.back();
    int d = 0;
    while (true) {
      SubgroupClosure c(grp, subs_[i]);
      cur.for_each([&](Element n) {
        for (Element h : gens_[i]) c.extend(grp.conj(n, h));
      });
      ++d;
      if (c.members() == subs_[i]) {
        depth_[i] = d;
        break;
      }
      if (c.members() == cur) break;
      cur = c.members();
    }
  }
  maximal_memo_.resize(count);
}

std::vector<Subgroup> SubgroupLattice::enumerate_by_subsets(const Group& g) {
  const std::size_t n = g.order();
  if (n > 12) throw TooLarge("subset enumeration limited to order 12");
  std::unordered_map<ElementSet, bool, ElementSetHash> seen;
  std::vector<Subgroup> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    ElementSet s(n);
    for (Element e = 0; e < n; ++e)
      if (mask >> e & 1U) s.set(e);
    Subgroup h = generate_subgroup(g, s);
    if (seen.emplace(h, true).second) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), order_then_bits_less);
  return out;
}

std::optional<std::size_t> SubgroupLattice::find(const ElementSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::index_of(const ElementSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw InvalidArgument("set is not a subgroup of this lattice");
  return it->second;
}

std::vector<std::size_t> SubgroupLattice::normal_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < subs_.size(); ++i)
    if (normal_[i]) out.push_back(i);
  return out;
}

std::size_t SubgroupLattice::join(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  if (contains(b, a)) return b;
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  {
    std::lock_guard lock(memo_mutex_);
    auto it = join_memo_.find(key);
    if (it != join_memo_.end()) return it->second;
  }
  SubgroupClosure c(*group_, subs_[b]);
  for (Element x : gens_[a]) c.extend(x);
  const std::size_t r = index_of(c.members());
  std::lock_guard lock(memo_mutex_);
  join_memo_.emplace(key, static_cast<std::uint32_t>(r));
  return r;
}

std::size_t SubgroupLattice::conjugate(std::size_t h, Element g) const {
  std::call_once(conj_once_, [this] {
    const std::size_t n = group_->order();
    conj_table_.assign(subs_.size() * n, 0);
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      if (normal_[i]) {
        std::fill_n(conj_table_.begin() + static_cast<std::ptrdiff_t>(i * n), n, static_cast<std::uint32_t>(i));
        continue;
      }
      for (Element x = 0; x < n; ++x)
        conj_table_[i * n + x] = static_cast<std::uint32_t>(index_of(orelab::conjugate(*group_, subs_[i], x)));
    }
  });
  return conj_table_[h * group_->order() + g];
}

const std::vector<std::size_t>& SubgroupLattice::maximal_subgroups_of(std::size_t i) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (maximal_memo_[i]) return *maximal_memo_[i];
  }
  std::vector<std::size_t> found;
  for (std::size_t j = i; j-- > 0;) {
    if (orders_[j] == orders_[i] || orders_[i] % orders_[j] != 0) continue;
    if (!contains(i, j)) continue;
    bool inside = false;
    for (std::size_t m : found)
      if (contains(m, j)) {
        inside = true;
        break;
      }
    if (!inside) found.push_back(j);
  }
  std::sort(found.begin(), found.end());
  std::lock_guard lock(memo_mutex_);
  if (!maximal_memo_[i]) maximal_memo_[i] = std::move(found);
  return *maximal_memo_[i];
}

std::vector<std::size_t> SubgroupLattice::subgroups_of(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= i; ++j)
    if (orders_[i] % orders_[j] == 0 && contains(i, j)) out.push_back(j);
  return out;
}

}  // namespace orelab
