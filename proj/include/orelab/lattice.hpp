#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "orelab/group.hpp"

namespace orelab {

struct LatticeLimits {
  std::size_t max_order = 192;
  std::size_t max_subgroups = 20000;
};

// Every subgroup of a group, sorted by order then member bits, with
// normality, subnormal defect and conjugacy classes.  Join, maximal-subgroup
// and conjugation queries are memoised internally; the subgroup list itself
// never changes after construction.
class SubgroupLattice {
 public:
  // Layered enumeration: cyclic subgroups, then joins of class
  // representatives with cyclic subgroups.  Throws TooLarge past the limits.
  explicit SubgroupLattice(GroupPtr g, LatticeLimits limits = {});

  // Reference enumeration by closing every subset of the group.  Only for
  // tiny groups (order <= 12).
  static std::vector<Subgroup> enumerate_by_subsets(const Group& g);

  // Rebuilds a lattice from a stored subgroup list.  Every entry is
  // revalidated; throws InvalidGroup naming the violated law when the list
  // is not the sorted, conjugation- and intersection-closed set of
  // subgroups it claims to be.
  static std::shared_ptr<const SubgroupLattice> from_subgroups(GroupPtr g, std::vector<Subgroup> subs);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }

  std::size_t size() const { return subs_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  std::size_t order_of(std::size_t i) const { return orders_[i]; }
  const std::vector<Element>& generators(std::size_t i) const { return gens_[i]; }

  std::size_t trivial_index() const { return 0; }
  std::size_t whole_index() const { return subs_.size() - 1; }

  std::optional<std::size_t> find(const ElementSet& s) const;
  // Throws InvalidArgument when s is not a subgroup in this lattice.
  std::size_t index_of(const ElementSet& s) const;

  bool contains(std::size_t outer, std::size_t inner) const { return subs_[inner].is_subset_of(subs_[outer]); }
  bool is_normal(std::size_t i) const { return normal_[i]; }
  // 0 for the whole group, 1 for proper normal subgroups, and so on.
  std::optional<std::size_t> subnormal_depth(std::size_t i) const {
    if (depth_[i] < 0) return std::nullopt;
    return static_cast<std::size_t>(depth_[i]);
  }
  const std::vector<std::vector<std::size_t>>& conjugacy_classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  std::vector<std::size_t> normal_indices() const;

  std::size_t join(std::size_t a, std::size_t b) const;
  std::size_t meet(std::size_t a, std::size_t b) const { return index_of(subs_[a] & subs_[b]); }
  // Index of g H g^-1.
  std::size_t conjugate(std::size_t h, Element g) const;
  // Maximal subgroups of subgroup i, in lattice order.
  const std::vector<std::size_t>& maximal_subgroups_of(std::size_t i) const;
  // Every j with subs[j] <= subs[i], ascending.
  std::vector<std::size_t> subgroups_of(std::size_t i) const;

 private:
  SubgroupLattice() = default;
  // Fills indices, flags and depths from sorted subs_/gens_ and the classes
  // given in any index order.
  void finish(std::vector<std::vector<std::size_t>> classes);

  GroupPtr group_;
  std::vector<Subgroup> subs_;
  std::vector<std::size_t> orders_;
  std::vector<std::vector<Element>> gens_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
  std::vector<bool> normal_;
  std::vector<int> depth_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;

  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, std::uint32_t> join_memo_;
  mutable std::vector<std::uint32_t> conj_table_;  // size() * order, filled lazily
  mutable std::once_flag conj_once_;
  mutable std::vector<std::optional<std::vector<std::size_t>>> maximal_memo_;
};

}  // namespace orelab
