#pragma once

#include <optional>
#include <vector>

#include "orelab/group.hpp"
#include "orelab/lattice.hpp"

namespace orelab {

// H/K with K < H both normal in the parent and H/K minimal normal in G/K.
struct ChiefFactor {
  Subgroup upper;
  Subgroup lower;
  std::size_t order() const { return upper.count() / lower.count(); }
  friend bool operator==(const ChiefFactor&, const ChiefFactor&) = default;
};

// Ascending chain 1 = N0 < N1 < ... < Nr = G of normal subgroups.
struct ChiefSeries {
  std::vector<Subgroup> terms;
  std::vector<ChiefFactor> factors() const;
};

Subgroup core(const Group& g, const Subgroup& h);
Subgroup normal_closure(const Group& g, const Subgroup& h);
Subgroup centralizer(const Group& g, const ElementSet& s);
Subgroup normalizer(const Group& g, const Subgroup& h);
// {g : [g, h] in K for all h in H}; H and K must be normal with K < H.
Subgroup centralizer_of_factor(const Group& g, const ChiefFactor& f);
// Same set without validating the pair.
Subgroup centralizer_of_section(const Group& g, const Subgroup& h, const Subgroup& k);

Subgroup centre(const Group& g);
std::vector<Subgroup> upper_central_series(const Group& g);
Subgroup hypercentre(const Group& g);
Subgroup derived_subgroup(const Group& g, const Subgroup& h);
std::vector<Subgroup> derived_series(const Group& g);
// Largest normal p-subgroup.
Subgroup largest_normal_p_subgroup(const std::vector<Subgroup>& normals, std::size_t p);
// O^p(G): subgroup generated by the elements of order prime to p.
Subgroup p_residual(const Group& g, std::size_t p);

// Every normal subgroup, sorted by order then bits, computed from normal
// closures of elements and their products (no lattice needed).
std::vector<Subgroup> normal_subgroups(const Group& g);
std::vector<Subgroup> minimal_normal_subgroups(const std::vector<Subgroup>& normals);
// Greedy refinement from the bottom; passes through `through` when given.
ChiefSeries chief_series(const std::vector<Subgroup>& normals, const Subgroup* through = nullptr);
// Every chief factor (pair of normal subgroups with nothing normal strictly
// between them).
std::vector<ChiefFactor> all_chief_factors(const Group& g, const std::vector<Subgroup>& normals);

// Throws InvalidArgument when p is not prime.
Subgroup sylow(const SubgroupLattice& lat, std::size_t p);
// A Sylow p-subgroup of the lattice member h.
Subgroup sylow_of(const SubgroupLattice& lat, std::size_t h, std::size_t p);
std::optional<Subgroup> hall(const SubgroupLattice& lat, const std::vector<std::size_t>& primes);
std::vector<Subgroup> maximal_subgroups(const SubgroupLattice& lat);
Subgroup frattini(const SubgroupLattice& lat);

Subgroup fitting(const Group& g, const std::vector<Subgroup>& normals);
Subgroup fitting(const Group& g);
// Largest quasinilpotent normal subgroup, verified quasinilpotent.
Subgroup generalized_fitting(const GroupPtr& g, const std::vector<Subgroup>& normals);
Subgroup generalized_fitting(const GroupPtr& g);

bool is_subnormal(const Group& g, const Subgroup& h);
// For each prime p dividing |H|, a Sylow p-subgroup of H is a Sylow
// p-subgroup of some subnormal subgroup.
bool is_subnormally_embedded(const SubgroupLattice& lat, std::size_t h);
// Some maximal subgroup has trivial core.
bool is_primitive(const SubgroupLattice& lat);

bool is_nilpotent_group(const Group& g);
bool is_soluble_group(const Group& g);

}  // namespace orelab
