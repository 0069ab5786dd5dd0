#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orelab/element_set.hpp"
#include "orelab/errors.hpp"

namespace orelab {

// Explicit finite group given by its Cayley table.  Element 0 is the
// identity.  Immutable once constructed.
class Group {
 public:
  // Largest order a table may have.  Semidirect constructions for
  // non-abelian chief factors are the only producers near this bound.
  static constexpr std::size_t kMaxOrder = 8192;
  // Associativity is checked on every triple up to this order and on
  // 10 * order^2 sampled triples above it.
  static constexpr std::size_t kExhaustiveAssociativity = 256;

  Group(std::size_t order, std::vector<std::uint16_t> table, std::vector<std::string> labels = {});

  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  // g x g^-1
  Element conj(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }
  // a b a^-1 b^-1
  Element commutator(Element a, Element b) const {
    return mul(mul(a, b), mul(inverse_[a], inverse_[b]));
  }
  std::size_t element_order(Element a) const { return element_order_[a]; }
  std::span<const std::uint16_t> table() const { return table_; }
  std::span<const Element> inverses() const { return inverse_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_abelian() const { return abelian_; }

  ElementSet trivial() const { return ElementSet::singleton(order_, 0); }
  ElementSet whole() const { return ElementSet::full(order_); }

 private:
  std::size_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> element_order_;
  std::vector<std::string> labels_;
  bool abelian_ = true;
};

using GroupPtr = std::shared_ptr<const Group>;

template <typename... Args>
GroupPtr make_group(Args&&... args) {
  return std::make_shared<const Group>(std::forward<Args>(args)...);
}

class Homomorphism {
 public:
  // Validates the multiplicative law; throws InvalidGroup on failure.
  Homomorphism(GroupPtr source, GroupPtr target, std::vector<Element> map);

  const Group& source() const { return *source_; }
  const Group& target() const { return *target_; }
  const GroupPtr& source_ptr() const { return source_; }
  const GroupPtr& target_ptr() const { return target_; }
  Element operator()(Element e) const { return map_[e]; }
  const std::vector<Element>& map() const { return map_; }

  bool is_bijective() const;
  ElementSet image(const ElementSet& s) const;
  ElementSet preimage(const ElementSet& s) const;
  ElementSet kernel() const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> map_;
};

// perm[g] is the automorphism of acted() induced by g.
class Action {
 public:
  // Validates identity, composition, bijectivity and multiplicativity;
  // throws BadAction on failure.
  Action(GroupPtr actor, GroupPtr acted, std::vector<std::vector<Element>> perm);

  static Action trivial(GroupPtr actor, GroupPtr acted);

  const Group& actor() const { return *actor_; }
  const Group& acted() const { return *acted_; }
  const GroupPtr& actor_ptr() const { return actor_; }
  const GroupPtr& acted_ptr() const { return acted_; }
  Element apply(Element g, Element n) const { return perm_[g][n]; }

 private:
  GroupPtr actor_;
  GroupPtr acted_;
  std::vector<std::vector<Element>> perm_;
};

// Incrementally grown subgroup <gens> (Dimino's coset extension).
class SubgroupClosure {
 public:
  explicit SubgroupClosure(const Group& g);
  SubgroupClosure(const Group& g, const Subgroup& h);  // h must be a subgroup

  // Adds x as a generator; returns false when x was already a member.
  bool extend(Element x);

  const ElementSet& members() const { return members_; }
  const std::vector<Element>& generators() const { return gens_; }

 private:
  const Group* group_;
  ElementSet members_;
  std::vector<Element> elements_;
  std::vector<Element> gens_;
};

// Smallest subgroup containing gens.  Throws InvalidArgument on an index
// outside the group.
Subgroup generate_subgroup(const Group& g, std::span<const Element> gens);
Subgroup generate_subgroup(const Group& g, const ElementSet& gens);
// Subgroup generated by two subgroups.
Subgroup join(const Group& g, const Subgroup& a, const Subgroup& b);

bool is_subgroup(const Group& g, const ElementSet& s);
bool is_normal(const Group& g, const Subgroup& h);

// Product set {a b : a in A, b in B}.
ElementSet product_set(const Group& g, const ElementSet& a, const ElementSet& b);
// Conjugate x H x^-1.
Subgroup conjugate(const Group& g, const Subgroup& h, Element x);

struct Quotient {
  GroupPtr group;          // G/N, cosets indexed by their least element
  Homomorphism projection;  // G -> G/N
};
// Throws NotNormal if n is not normal in g.
Quotient quotient(const GroupPtr& g, const Subgroup& n);

struct Embedded {
  GroupPtr group;            // H as a group in its own right
  Homomorphism embedding;    // H -> G
};
Embedded subgroup_as_group(const GroupPtr& g, const Subgroup& h);

// Element (a, b) has index a * |B| + b.
GroupPtr direct_product(const Group& a, const Group& b);
// Element (n, h) has index h * |N| + n with (n1,h1)(n2,h2) = (n1 act[h1](n2), h1 h2).
GroupPtr semidirect_product(const Action& act);

// Isomorphism-invariant data used to screen candidate pairs.
struct GroupInvariants {
  std::size_t order = 0;
  bool abelian = false;
  std::vector<std::size_t> order_multiset;  // count of elements per element order
  std::size_t centre_order = 0;
  std::vector<std::size_t> derived_series;  // orders down the derived series
  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};
GroupInvariants invariants(const Group& g);

inline constexpr std::size_t kIsomorphismBound = 128;

// Backtracking over images of a small generating set, pruned by element
// order and centraliser size.  Throws TooLarge above `bound`.
bool are_isomorphic(const Group& a, const Group& b, std::size_t bound = kIsomorphismBound);
// The isomorphism a -> b when one exists.
std::optional<std::vector<Element>> find_isomorphism(const Group& a, const Group& b,
                                                     std::size_t bound = kIsomorphismBound);

// Greedy generating set: repeatedly adds the element of largest order not yet
// in the generated subgroup.
std::vector<Element> small_generating_set(const Group& g);
std::vector<Element> small_generating_set(const Group& g, const Subgroup& h);

}  // namespace orelab
