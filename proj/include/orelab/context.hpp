#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "orelab/group.hpp"
#include "orelab/lattice.hpp"
#include "orelab/structure.hpp"

namespace orelab {

struct ContextLimits {
  LatticeLimits lattice;
  // Largest group on which completely c-permutable membership is decided.
  std::size_t ccp_max_order = 48;
};

class GroupContext;
using ContextPtr = std::shared_ptr<GroupContext>;

// A quotient or subgroup seen as a group in its own right, with the map
// relating it to the parent.
struct DerivedContext {
  ContextPtr ctx;
  std::shared_ptr<const Homomorphism> map;  // parent -> quotient, or subgroup -> parent
};

// Lazily computed structure of one group plus memo tables shared by the
// predicates evaluated on it.  Safe to use from several threads: lazily
// built members are published once, memo tables are guarded.
class GroupContext : public std::enable_shared_from_this<GroupContext> {
 public:
  static ContextPtr make(GroupPtr g, ContextLimits limits = {});

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const ContextLimits& limits() const { return limits_; }
  std::size_t order() const { return group_->order(); }

  // Throws TooLarge when the lattice caps are exceeded.
  const SubgroupLattice& lattice();
  bool has_lattice();
  void adopt_lattice(std::shared_ptr<const SubgroupLattice> lat);

  const std::vector<Subgroup>& normals();
  std::size_t normal_index(const Subgroup& n);
  // Every chief factor of the group.
  const std::vector<ChiefFactor>& chief_factors();
  // Index into chief_factors() of some factor N/M, for normal N > 1.
  std::size_t cover_below(std::size_t normal);
  std::size_t chief_factor_index(const ChiefFactor& f);
  const ChiefSeries& chief_series();
  const Subgroup& frattini();
  // Intersection of the maximal subgroups containing the normal subgroup k.
  Subgroup frattini_above(const Subgroup& k);

  DerivedContext quotient(const Subgroup& n);
  DerivedContext subgroup(const Subgroup& h);

  // Boolean memo keyed by caller-chosen 64-bit keys.
  std::optional<bool> flag(std::uint64_t key);
  void set_flag(std::uint64_t key, bool value);
  bool memo_flag(std::uint64_t key, const std::function<bool()>& compute);
  // Subgroup memo with the same key scheme.
  Subgroup memo_subgroup(std::uint64_t key, const std::function<Subgroup()>& compute);

 private:
  GroupContext(GroupPtr g, ContextLimits limits) : group_(std::move(g)), limits_(limits) {}

  GroupPtr group_;
  ContextLimits limits_;

  std::once_flag lattice_once_;
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::once_flag normals_once_;
  std::vector<Subgroup> normals_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> normal_index_;
  std::once_flag factors_once_;
  std::vector<ChiefFactor> factors_;
  std::vector<std::size_t> cover_;
  std::unordered_map<std::uint64_t, std::size_t> factor_index_;
  std::once_flag series_once_;
  ChiefSeries series_;
  std::once_flag frattini_once_;
  Subgroup frattini_;

  std::once_flag identity_once_;
  std::shared_ptr<const Homomorphism> identity_;

  std::mutex mutex_;
  std::unordered_map<ElementSet, DerivedContext, ElementSetHash> quotients_;
  std::unordered_map<ElementSet, DerivedContext, ElementSetHash> subgroups_;
  std::unordered_map<std::uint64_t, bool> flags_;
  std::unordered_map<std::uint64_t, Subgroup> subgroup_memo_;
};

// Memo key namespaces.
enum class MemoTag : std::uint64_t {
  membership = 1,
  central = 2,
  hypercentre = 3,
  phi_hypercentre = 4,
  residual = 5,
  tau = 6,
  ftau = 7,
  fsupp = 8,
  ore = 9,
  subgroup_hypercentre = 10,
};

inline std::uint64_t memo_key(MemoTag tag, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  return static_cast<std::uint64_t>(tag) << 56 | (a & 0xffffff) << 32 | (b & 0xffff) << 16 | (c & 0xffff);
}

}  // namespace orelab
