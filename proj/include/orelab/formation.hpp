#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orelab/context.hpp"

namespace orelab {

struct Formation {
  enum class Kind : std::uint8_t {
    identity,
    nilpotent,
    soluble,
    supersoluble,
    p_nilpotent,
    p_supersoluble,
    quasinilpotent,
  };
  Kind kind = Kind::identity;
  std::size_t p = 0;

  // triv | nilp | sol | super | pnilp:<p> | psuper:<p>.  Throws
  // InvalidArgument otherwise.
  static Formation parse(std::string_view id);
  std::string id() const;
  std::uint64_t key() const { return static_cast<std::uint64_t>(kind) << 8 | p; }
  friend bool operator==(const Formation&, const Formation&) = default;
};

inline const Formation kSupersoluble{Formation::Kind::supersoluble};
inline const Formation kNilpotent{Formation::Kind::nilpotent};

// The catalog formations usable as F for a group whose order has the given
// prime divisors (p-parametrised ones for each such prime).
std::vector<Formation> catalog_formations(std::size_t order);

bool is_member(GroupContext& ctx, const Formation& f);
bool is_member(const GroupPtr& g, const Formation& f);

// Registered shortcut for F-centrality; nullopt when F has none.
std::optional<bool> f_central_fast(GroupContext& ctx, const ChiefFactor& h, const Formation& f);
// (H/K) : (G/C_G(H/K)) built explicitly and tested for membership.  Throws
// TooLarge when the product exceeds the table cap.
bool f_central_semidirect(GroupContext& ctx, const ChiefFactor& h, const Formation& f);
// Fast path when registered, construction otherwise; memoised per factor.
bool is_f_central(GroupContext& ctx, const ChiefFactor& h, const Formation& f);

// Z_F(G): product of the normal subgroups all of whose chief factors below
// are F-central.
Subgroup f_hypercentre(GroupContext& ctx, const Formation& f);
// Z_{F Phi}(G): the same with Frattini chief factors exempt.
Subgroup f_phi_hypercentre(GroupContext& ctx, const Formation& f);
// G^F: intersection of the normal N with G/N in F.
Subgroup residual(GroupContext& ctx, const Formation& f);

// For a normal p-subgroup E, whether G/C_G(E) is a p-group.  Throws
// InvalidArgument when E is not a normal p-subgroup.
bool satellite_check_nilpotent(const Group& g, const Subgroup& e, std::size_t p);

}  // namespace orelab
