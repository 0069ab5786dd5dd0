#include "orelab/context.hpp"

namespace orelab {

ContextPtr GroupContext::make(GroupPtr g, ContextLimits limits) {
  return ContextPtr(new GroupContext(std::move(g), limits));
}

const SubgroupLattice& GroupContext::lattice() {
  std::call_once(lattice_once_, [this] {
    if (lattice_) return;
    try {
      lattice_ = std::make_shared<const SubgroupLattice>(group_, limits_.lattice);
    } catch (const TooLarge&) {
    }
  });
  if (!lattice_) throw TooLarge("lattice unavailable for order " + std::to_string(order()));
  return *lattice_;
}

bool GroupContext::has_lattice() {
  try {
    lattice();
    return true;
  } catch (const TooLarge&) {
    return false;
  }
}

void GroupContext::adopt_lattice(std::shared_ptr<const SubgroupLattice> lat) {
  std::call_once(lattice_once_, [&] { lattice_ = std::move(lat); });
}

const std::vector<Subgroup>& GroupContext::normals() {
  std::call_once(normals_once_, [this] {
    normals_ = normal_subgroups(*group_);
    for (std::size_t i = 0; i < normals_.size(); ++i) normal_index_.emplace(normals_[i], i);
  });
  return normals_;
}

std::size_t GroupContext::normal_index(const Subgroup& n) {
  normals();
  auto it = normal_index_.find(n);
  if (it == normal_index_.end()) throw NotNormal();
  return it->second;
}

const std::vector<ChiefFactor>& GroupContext::chief_factors() {
  std::call_once(factors_once_, [this] {
    const auto& ns = normals();
    factors_ = all_chief_factors(*group_, ns);
    cover_.assign(ns.size(), 0);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::size_t up = normal_index_.at(factors_[i].upper), low = normal_index_.at(factors_[i].lower);
      factor_index_.emplace(static_cast<std::uint64_t>(up) << 32 | low, i);
      if (cover_[up] == 0) cover_[up] = i + 1;
    }
  });
  return factors_;
}

std::size_t GroupContext::cover_below(std::size_t normal) {
  chief_factors();
  return cover_.at(normal) - 1;
}

std::size_t GroupContext::chief_factor_index(const ChiefFactor& f) {
  chief_factors();
  const std::uint64_t key = static_cast<std::uint64_t>(normal_index(f.upper)) << 32 | normal_index(f.lower);
  auto it = factor_index_.find(key);
  if (it == factor_index_.end()) throw InvalidArgument("not a chief factor");
  return it->second;
}

const ChiefSeries& GroupContext::chief_series() {
  std::call_once(series_once_, [this] { series_ = orelab::chief_series(normals()); });
  return series_;
}

const Subgroup& GroupContext::frattini() {
  std::call_once(frattini_once_, [this] { frattini_ = orelab::frattini(lattice()); });
  return frattini_;
}

Subgroup GroupContext::frattini_above(const Subgroup& k) {
  const auto& lat = lattice();
  Subgroup out = group_->whole();
  for (std::size_t m : lat.maximal_subgroups_of(lat.whole_index()))
    if (k.is_subset_of(lat[m])) out &= lat[m];
  return out;
}

DerivedContext GroupContext::quotient(const Subgroup& n) {
  // Cosets of the trivial subgroup keep their element indices, so the
  // quotient by 1 shares this context.
  if (n.count() == 1) {
    std::call_once(identity_once_, [this] {
      std::vector<Element> id(order());
      for (Element x = 0; x < order(); ++x) id[x] = x;
      identity_ = std::make_shared<const Homomorphism>(group_, group_, std::move(id));
    });
    return DerivedContext{shared_from_this(), identity_};
  }
  {
    std::lock_guard lock(mutex_);
    auto it = quotients_.find(n);
    if (it != quotients_.end()) return it->second;
  }
  DerivedContext d;
  auto q = orelab::quotient(group_, n);
  d.map = std::make_shared<const Homomorphism>(std::move(q.projection));
  d.ctx = make(q.group, limits_);
  std::lock_guard lock(mutex_);
  return quotients_.emplace(n, std::move(d)).first->second;
}

DerivedContext GroupContext::subgroup(const Subgroup& h) {
  {
    std::lock_guard lock(mutex_);
    auto it = subgroups_.find(h);
    if (it != subgroups_.end()) return it->second;
  }
  DerivedContext d;
  auto e = subgroup_as_group(group_, h);
  d.map = std::make_shared<const Homomorphism>(std::move(e.embedding));
  d.ctx = make(e.group, limits_);
  std::lock_guard lock(mutex_);
  return subgroups_.emplace(h, std::move(d)).first->second;
}

std::optional<bool> GroupContext::flag(std::uint64_t key) {
  std::lock_guard lock(mutex_);
  auto it = flags_.find(key);
  if (it == flags_.end()) return std::nullopt;
  return it->second;
}

void GroupContext::set_flag(std::uint64_t key, bool value) {
  std::lock_guard lock(mutex_);
  flags_.emplace(key, value);
}

bool GroupContext::memo_flag(std::uint64_t key, const std::function<bool()>& compute) {
  if (auto v = flag(key)) return *v;
  const bool v = compute();
  set_flag(key, v);
  return v;
}

Subgroup GroupContext::memo_subgroup(std::uint64_t key, const std::function<Subgroup()>& compute) {
  {
    std::lock_guard lock(mutex_);
    auto it = subgroup_memo_.find(key);
    if (it != subgroup_memo_.end()) return it->second;
  }
  Subgroup v = compute();
  std::lock_guard lock(mutex_);
  return subgroup_memo_.emplace(key, std::move(v)).first->second;
}

}  // namespace orelab
