#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/context.hpp"
#include "orelab/corpus.hpp"

namespace orelab {

enum class Functor : std::uint8_t {
  normal,
  s_quasinormal,
  cap,
  camp,
  completely_c_permutable,
  sq_embedded,
  subnormally_embedded,
  modular,
  ss_quasinormal,
};

enum class FunctorProperty : std::uint8_t {
  inductive,
  hereditary,
  regular,
  quasiregular,
  phi_regular,
  phi_quasiregular,
};

// normal | squasi | cap | camp | ccp | sqe | subembed | modular | ssq
Functor parse_functor(std::string_view id);
std::string_view functor_id(Functor f);
const std::vector<Functor>& all_functors();

// inductive | hereditary | regular | quasiregular | phi-regular | phi-quasiregular
FunctorProperty parse_property(std::string_view id);
std::string_view property_id(FunctorProperty p);
const std::vector<FunctorProperty>& all_properties();

// Whether `a` implies `b` by definition (reflexive).
bool property_implies(FunctorProperty a, FunctorProperty b);

// Classification claimed for each catalog functor: `holds` true means the
// property is asserted, false means it is asserted to fail.
struct ClaimedProperty {
  FunctorProperty property;
  bool holds;
};
const std::vector<ClaimedProperty>& claimed_properties(Functor f);
// Claimed directly or implied by a claimed property.
bool has_claimed_property(Functor f, FunctorProperty p);

bool is_s_quasinormal(GroupContext& ctx, const Subgroup& h);
bool is_cap(GroupContext& ctx, const Subgroup& h);
bool is_camp(GroupContext& ctx, const Subgroup& h);
// Throws TooLarge above the context's ccp order cap.
bool is_completely_c_permutable(GroupContext& ctx, const Subgroup& h);
bool is_modular(GroupContext& ctx, const Subgroup& h);
bool is_ss_quasinormal(GroupContext& ctx, const Subgroup& h);
bool is_sq_embedded(GroupContext& ctx, const Subgroup& h);

// Membership of lattice entry `idx` in tau(G), memoised on the context.
bool in_tau(GroupContext& ctx, Functor f, std::size_t idx);
bool in_tau(GroupContext& ctx, Functor f, const Subgroup& h);
// Lattice indices of tau(G), ascending.
std::vector<std::size_t> tau_members(GroupContext& ctx, Functor f);

struct FunctorWitness {
  std::size_t group_position = 0;  // index into the corpus
  std::string group_spec;
  Subgroup h;
  Subgroup other;          // N for inductive and regularity checks, E for heredity
  std::size_t index = 0;   // |G : N_G(H n N)| for regularity checks
  std::string reason;
};

struct PropertyVerdict {
  Functor functor;
  FunctorProperty property;
  std::optional<FunctorWitness> witness;
  std::size_t groups = 0;      // groups examined without skipping
  std::size_t instances = 0;   // (G, H, N or E) triples tested
  std::vector<std::string> skipped;  // specs skipped as too large
  bool pass() const { return !witness; }
};

struct PropertyOptions {
  std::size_t jobs = 1;
  ContextLimits limits;
};

// First counterexample on one group, in lattice order of H then of N or E.
std::optional<FunctorWitness> find_property_violation(GroupContext& ctx, Functor f, FunctorProperty p,
                                                      std::size_t* instances = nullptr);

// Corpus-bounded check.  The witness is the one on the earliest corpus
// group.  Throws InvalidArgument on an empty corpus.
PropertyVerdict check_property(Functor f, FunctorProperty p, const std::vector<CorpusEntry>& corpus,
                               const PropertyOptions& options = {});

}  // namespace orelab
