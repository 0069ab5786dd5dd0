#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/context.hpp"
#include "orelab/formation.hpp"
#include "orelab/functor.hpp"

namespace orelab {

// T supplements H; S is the normal, S-quasinormal or tau part when the
// condition has one.  Subgroups are given in G.
struct SupplementWitness {
  Subgroup t;
  std::optional<Subgroup> s;
};

// Normal T, S with G = HT, S <= H, H n T <= S.
std::optional<SupplementWitness> ore_witness(GroupContext& ctx, const Subgroup& h);
// H/H_G has a normal complement in G/H_G.
bool ore_quotient_criterion(GroupContext& ctx, const Subgroup& h);
// Evaluates both forms and throws std::logic_error if they disagree.
bool satisfies_ore(GroupContext& ctx, const Subgroup& h);

// Some T with HT = G and H n T = H_G.
std::optional<SupplementWitness> c_supplement(GroupContext& ctx, const Subgroup& h);
bool is_c_supplemented(GroupContext& ctx, const Subgroup& h);

// In G/H_G some supplement T/H_G of H/H_G meets it inside Z_F(G/H_G).
std::optional<SupplementWitness> f_supplement(GroupContext& ctx, const Subgroup& h, const Formation& f);
bool is_f_supplemented(GroupContext& ctx, const Subgroup& h, const Formation& f);

// Subnormal T with HT = G and H n T <= S <= H for an S-quasinormal S.
std::optional<SupplementWitness> weak_s_permutability(GroupContext& ctx, const Subgroup& h);
bool is_weakly_s_permutable(GroupContext& ctx, const Subgroup& h);

// Some supplement T of H lies in F.
std::optional<SupplementWitness> supplement_in(GroupContext& ctx, const Subgroup& h, const Formation& f);

// Z_F(T) as a subgroup of G, memoised per lattice entry T.
Subgroup hypercentre_of_subgroup(GroupContext& ctx, std::size_t t, const Formation& f);

// Pair (K, H): some T with HT = G and H n T inside the product set K Z_F(T).
// Throws InvalidArgument unless K <= H.
std::optional<SupplementWitness> f_supplement_pair(GroupContext& ctx, const Subgroup& k, const Subgroup& h,
                                                   const Formation& f);
bool pair_satisfies_f_supplement(GroupContext& ctx, const Subgroup& k, const Subgroup& h, const Formation& f);

// F_tau-supplementation: in G/H_G some tau-subgroup S/H_G inside H/H_G
// makes (S/H_G, H/H_G) satisfy the pair condition.  The witness holds the
// preimages of S/H_G and T/H_G.  TooLarge propagates from the quotient.
std::optional<SupplementWitness> f_tau_supplement(GroupContext& ctx, const Subgroup& h, const Formation& f,
                                                  Functor tau);
bool is_f_tau_supplemented(GroupContext& ctx, const Subgroup& h, const Formation& f, Functor tau);

// Predicate ids: ore | csupp | fsupp:<F> | wsp | ftau:<F>:<tau> | pair:<F>.
// The pair predicate takes K = 1.
struct Predicate {
  enum class Kind : std::uint8_t { ore, csupp, fsupp, wsp, ftau, pair };
  Kind kind = Kind::ore;
  Formation formation;
  Functor functor = Functor::normal;

  static Predicate parse(std::string_view id);
  std::string id() const;
};
bool evaluate(GroupContext& ctx, const Predicate& p, const Subgroup& h);

struct Implication {
  std::string name;
  bool antecedent = false;
  bool consequent = false;
  bool equivalence = false;
  bool violated() const { return equivalence ? antecedent != consequent : antecedent && !consequent; }
};

struct ImplicationReport {
  std::vector<Implication> checks;
  std::vector<std::string> skipped;  // checks abandoned as too large
  bool ok() const;
};

// The implications stated after the definition of F_tau-supplementation,
// evaluated on (G, H) for the catalog functors and the given F.
ImplicationReport implication_suite(GroupContext& ctx, const Subgroup& h, const Formation& f);

}  // namespace orelab
