#include "orelab/functor.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>

#include "orelab/numbers.hpp"
#include "orelab/parallel.hpp"
#include "orelab/structure.hpp"

namespace orelab {

namespace {

using P = FunctorProperty;

constexpr std::array<std::string_view, 9> kFunctorIds = {"normal", "squasi", "cap",      "camp", "ccp",
                                                         "sqe",    "subembed", "modular", "ssq"};
constexpr std::array<std::string_view, 6> kPropertyIds = {"inductive",    "hereditary",  "regular",
                                                          "quasiregular", "phi-regular", "phi-quasiregular"};

// AB = BA as sets, i.e. AB is closed under inversion.
bool permutes(const Group& g, const Subgroup& a, const Subgroup& b) {
  if (a.is_subset_of(b) || b.is_subset_of(a)) return true;
  const std::size_t size = a.count() * b.count() / a.intersection_count(b);
  if (g.order() % size != 0) return false;
  const ElementSet ab = product_set(g, a, b);
  bool closed = true;
  ab.for_each([&](Element x) { closed = closed && ab.test(g.inv(x)); });
  return closed;
}

std::vector<std::size_t> sylow_class(const SubgroupLattice& lat, std::size_t p) {
  return lat.conjugacy_classes()[lat.class_of(lat.index_of(sylow(lat, p)))];
}

bool decide_s_quasinormal(GroupContext& ctx, std::size_t idx) {
  const auto& lat = ctx.lattice();
  if (lat.is_normal(idx)) return true;
  for (std::size_t p : prime_divisors(ctx.order()))
    for (std::size_t s : sylow_class(lat, p))
      if (!permutes(ctx.group(), lat[idx], lat[s])) return false;
  return true;
}

bool decide_cap(GroupContext& ctx, std::size_t idx) {
  const Subgroup& h = ctx.lattice()[idx];
  for (const auto& cf : ctx.chief_factors()) {
    const std::size_t a = h.intersection_count(cf.upper), b = h.intersection_count(cf.lower);
    const bool covers = a * cf.lower.count() == cf.upper.count() * b;
    if (!covers && a != b) return false;
  }
  return true;
}

bool decide_camp(GroupContext& ctx, std::size_t idx) {
  const auto& lat = ctx.lattice();
  const Subgroup& h = lat[idx];
  for (std::size_t l = 1; l < lat.size(); ++l) {
    const std::size_t b = h.intersection_count(lat[l]);
    for (std::size_t k : lat.maximal_subgroups_of(l)) {
      const std::size_t a = h.intersection_count(lat[k]);
      // |HK| = |HL| exactly when the product sets coincide, as HK <= HL.
      if (a != b && lat.order_of(k) * b != lat.order_of(l) * a) return false;
    }
  }
  return true;
}

bool decide_ccp(GroupContext& ctx, std::size_t idx) {
  const auto& lat = ctx.lattice();
  if (lat.is_normal(idx)) return true;
  if (ctx.order() > ctx.limits().ccp_max_order)
    throw TooLarge("completely c-permutable test above order " + std::to_string(ctx.limits().ccp_max_order));
  const Group& g = ctx.group();
  const std::size_t n = lat.size();
  std::vector<bool> permuting(n);
  for (std::size_t b = 0; b < n; ++b) permuting[b] = permutes(g, lat[idx], lat[b]);
  // For each A, the x in G with H A^x = A^x H.
  std::vector<std::optional<ElementSet>> good(n);
  auto good_for = [&](std::size_t a) -> const ElementSet& {
    if (!good[a]) {
      ElementSet xs(g.order());
      for (Element x = 0; x < g.order(); ++x)
        if (permuting[lat.conjugate(a, x)]) xs.set(x);
      good[a] = std::move(xs);
    }
    return *good[a];
  };
  for (std::size_t e = idx; e < n; ++e) {
    if (!lat.contains(e, idx)) continue;
    for (std::size_t a : lat.subgroups_of(e)) {
      if (permuting[a]) continue;
      if (!good_for(a).intersects(lat[e])) return false;
    }
  }
  return true;
}

bool decide_modular(GroupContext& ctx, std::size_t idx) {
  const auto& lat = ctx.lattice();
  if (lat.is_normal(idx)) return true;
  const std::size_t n = lat.size();
  std::vector<std::size_t> with_h(n);
  for (std::size_t x = 0; x < n; ++x) with_h[x] = lat.join(x, idx);
  for (std::size_t z = 0; z < n; ++z) {
    // <X, H> n Z = <X, H n Z> for X <= Z.
    const std::size_t hz = lat.meet(idx, z);
    for (std::size_t x : lat.subgroups_of(z))
      if (lat[with_h[x]].intersection_count(lat[z]) != lat.order_of(lat.join(x, hz))) return false;
    // <H, Y> n Z = <H, Y n Z> for H <= Z.
    if (!lat.contains(z, idx)) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (lat[with_h[y]].intersection_count(lat[z]) != lat.order_of(with_h[lat.meet(y, z)])) return false;
  }
  return true;
}

bool decide_ss_quasinormal(GroupContext& ctx, std::size_t idx) {
  if (in_tau(ctx, Functor::s_quasinormal, idx)) return true;
  const auto& lat = ctx.lattice();
  const Group& g = ctx.group();
  const Subgroup& h = lat[idx];
  for (std::size_t b = 0; b < lat.size(); ++b) {
    if (lat.order_of(idx) * lat.order_of(b) != g.order() * h.intersection_count(lat[b])) continue;
    bool ok = true;
    for (std::size_t p : prime_divisors(lat.order_of(b))) {
      const std::size_t size = p_part(lat.order_of(b), p);
      for (std::size_t s = 0; s <= b && ok; ++s)
        if (lat.order_of(s) == size && lat.contains(b, s)) ok = permutes(g, h, lat[s]);
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

bool decide_sq_embedded(GroupContext& ctx, std::size_t idx) {
  const auto& lat = ctx.lattice();
  for (std::size_t p : prime_divisors(lat.order_of(idx))) {
    const Subgroup hp = sylow_of(lat, idx, p);
    bool found = false;
    for (std::size_t w = 0; w < lat.size() && !found; ++w)
      found = hp.is_subset_of(lat[w]) && p_part(lat.order_of(w), p) == hp.count() &&
              in_tau(ctx, Functor::s_quasinormal, w);
    if (!found) return false;
  }
  return true;
}

bool decide(GroupContext& ctx, Functor f, std::size_t idx) {
  const auto& lat = ctx.lattice();
  if (idx == lat.trivial_index() || idx == lat.whole_index()) return true;
  switch (f) {
    case Functor::normal:
      return lat.is_normal(idx);
    case Functor::s_quasinormal:
      return decide_s_quasinormal(ctx, idx);
    case Functor::cap:
      return decide_cap(ctx, idx);
    case Functor::camp:
      return decide_camp(ctx, idx);
    case Functor::completely_c_permutable:
      return decide_ccp(ctx, idx);
    case Functor::sq_embedded:
      return decide_sq_embedded(ctx, idx);
    case Functor::subnormally_embedded:
      return is_subnormally_embedded(lat, idx);
    case Functor::modular:
      return decide_modular(ctx, idx);
    case Functor::ss_quasinormal:
      return decide_ss_quasinormal(ctx, idx);
  }
  return false;
}

bool is_abelian_subgroup(const Group& g, const Subgroup& n) {
  const auto gens = small_generating_set(g, n);
  for (Element a : gens)
    for (Element b : gens)
      if (g.commutator(a, b) != 0) return false;
  return true;
}

std::optional<FunctorWitness> inductive_violation(GroupContext& ctx, Functor f, const std::vector<std::size_t>& tau,
                                                  std::size_t& instances) {
  const auto& lat = ctx.lattice();
  for (std::size_t h : tau)
    for (const auto& n : ctx.normals()) {
      if (n.count() == 1) continue;
      ++instances;
      auto q = ctx.quotient(n);
      if (!in_tau(*q.ctx, f, q.map->image(lat[h])))
        return FunctorWitness{0, {}, lat[h], n, 0, "HN/N is not in tau(G/N)"};
    }
  return std::nullopt;
}

std::optional<FunctorWitness> hereditary_violation(GroupContext& ctx, Functor f, const std::vector<std::size_t>& tau,
                                                   std::size_t& instances) {
  if (auto w = inductive_violation(ctx, f, tau, instances)) return w;
  const auto& lat = ctx.lattice();
  for (std::size_t h : tau)
    for (std::size_t e = h + 1; e < lat.whole_index(); ++e) {
      if (!lat.contains(e, h)) continue;
      ++instances;
      auto sub = ctx.subgroup(lat[e]);
      if (!in_tau(*sub.ctx, f, sub.map->preimage(lat[h])))
        return FunctorWitness{0, {}, lat[h], lat[e], 0, "H is not in tau(E)"};
    }
  return std::nullopt;
}

std::optional<FunctorWitness> regularity_violation(GroupContext& ctx, const std::vector<std::size_t>& tau, bool abelian_only,
                                                   bool primitive_only, std::size_t& instances) {
  const auto& lat = ctx.lattice();
  const Group& g = ctx.group();
  if (primitive_only && !is_primitive(lat)) return std::nullopt;
  std::vector<Subgroup> mins;
  for (auto& n : minimal_normal_subgroups(ctx.normals()))
    if (!abelian_only || is_abelian_subgroup(g, n)) mins.push_back(std::move(n));
  for (std::size_t h : tau) {
    const auto primes = prime_divisors(lat.order_of(h));
    if (primes.size() != 1) continue;
    for (const auto& n : mins) {
      ++instances;
      const std::size_t index = g.order() / normalizer(g, lat[h] & n).count();
      if (!is_prime_power_of(index, primes[0]))
        return FunctorWitness{0, {}, lat[h], n, index, "|G : N_G(H n N)| is not a power of " + std::to_string(primes[0])};
    }
  }
  return std::nullopt;
}

}  // namespace

Functor parse_functor(std::string_view id) {
  for (std::size_t i = 0; i < kFunctorIds.size(); ++i)
    if (kFunctorIds[i] == id) return static_cast<Functor>(i);
  throw InvalidArgument("unknown functor '" + std::string(id) + "'");
}

std::string_view functor_id(Functor f) { return kFunctorIds[static_cast<std::size_t>(f)]; }

const std::vector<Functor>& all_functors() {
  static const std::vector<Functor> all = [] {
    std::vector<Functor> v;
    for (std::size_t i = 0; i < kFunctorIds.size(); ++i) v.push_back(static_cast<Functor>(i));
    return v;
  }();
  return all;
}

FunctorProperty parse_property(std::string_view id) {
  for (std::size_t i = 0; i < kPropertyIds.size(); ++i)
    if (kPropertyIds[i] == id) return static_cast<FunctorProperty>(i);
  throw InvalidArgument("unknown functor property '" + std::string(id) + "'");
}

std::string_view property_id(FunctorProperty p) { return kPropertyIds[static_cast<std::size_t>(p)]; }

const std::vector<FunctorProperty>& all_properties() {
  static const std::vector<FunctorProperty> all = {P::inductive,    P::hereditary,  P::regular,
                                                   P::quasiregular, P::phi_regular, P::phi_quasiregular};
  return all;
}

bool property_implies(FunctorProperty a, FunctorProperty b) {
  if (a == b) return true;
  switch (a) {
    case P::hereditary:
      return b == P::inductive;
    case P::regular:
      return b == P::quasiregular || b == P::phi_regular || b == P::phi_quasiregular;
    case P::quasiregular:
    case P::phi_regular:
      return b == P::phi_quasiregular;
    default:
      return false;
  }
}

const std::vector<ClaimedProperty>& claimed_properties(Functor f) {
  static const std::array<std::vector<ClaimedProperty>, 9> table = {{
      {{P::hereditary, true}, {P::regular, true}},                            // normal
      {{P::hereditary, true}, {P::regular, true}},                            // squasi
      {{P::inductive, true}, {P::regular, true}},                             // cap
      {{P::hereditary, true}, {P::phi_regular, true}, {P::quasiregular, false}},  // camp
      {{P::hereditary, true}, {P::quasiregular, true}},                       // ccp
      {{P::hereditary, true}, {P::quasiregular, true}, {P::regular, false}},  // sqe
      {},                                                                     // subembed
      {{P::hereditary, true}, {P::regular, true}},                            // modular
      {{P::hereditary, true}, {P::regular, true}},                            // ssq
  }};
  return table[static_cast<std::size_t>(f)];
}

bool has_claimed_property(Functor f, FunctorProperty p) {
  for (const auto& c : claimed_properties(f))
    if (c.holds && property_implies(c.property, p)) return true;
  return false;
}

bool in_tau(GroupContext& ctx, Functor f, std::size_t idx) {
  return ctx.memo_flag(memo_key(MemoTag::tau, idx, static_cast<std::uint64_t>(f)), [&] { return decide(ctx, f, idx); });
}

bool in_tau(GroupContext& ctx, Functor f, const Subgroup& h) { return in_tau(ctx, f, ctx.lattice().index_of(h)); }

std::vector<std::size_t> tau_members(GroupContext& ctx, Functor f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.lattice().size(); ++i)
    if (in_tau(ctx, f, i)) out.push_back(i);
  return out;
}

bool is_s_quasinormal(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::s_quasinormal, h); }
bool is_cap(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::cap, h); }
bool is_camp(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::camp, h); }
bool is_completely_c_permutable(GroupContext& ctx, const Subgroup& h) {
  return in_tau(ctx, Functor::completely_c_permutable, h);
}
bool is_modular(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::modular, h); }
bool is_ss_quasinormal(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::ss_quasinormal, h); }
bool is_sq_embedded(GroupContext& ctx, const Subgroup& h) { return in_tau(ctx, Functor::sq_embedded, h); }

std::optional<FunctorWitness> find_property_violation(GroupContext& ctx, Functor f, FunctorProperty p,
                                                      std::size_t* instances) {
  std::size_t local = 0;
  std::size_t& count = instances ? *instances : local;
  const auto tau = tau_members(ctx, f);
  switch (p) {
    case P::inductive:
      return inductive_violation(ctx, f, tau, count);
    case P::hereditary:
      return hereditary_violation(ctx, f, tau, count);
    case P::regular:
      return regularity_violation(ctx, tau, false, false, count);
    case P::quasiregular:
      return regularity_violation(ctx, tau, true, false, count);
    case P::phi_regular:
      return regularity_violation(ctx, tau, false, true, count);
    case P::phi_quasiregular:
      return regularity_violation(ctx, tau, true, true, count);
  }
  return std::nullopt;
}

PropertyVerdict check_property(Functor f, FunctorProperty p, const std::vector<CorpusEntry>& corpus,
                               const PropertyOptions& options) {
  if (corpus.empty()) throw InvalidArgument("functor property check on an empty corpus");
  struct Slot {
    bool done = false;
    bool skipped = false;
    std::size_t instances = 0;
    std::optional<FunctorWitness> witness;
  };
  std::vector<Slot> slots(corpus.size());
  std::atomic<std::size_t> first_witness{corpus.size()};
  parallel_for(corpus.size(), options.jobs, [&](std::size_t i) {
    if (i > first_witness.load()) return;
    Slot& s = slots[i];
    auto ctx = GroupContext::make(corpus[i].group, options.limits);
    if (corpus[i].lattice) ctx->adopt_lattice(corpus[i].lattice);
    try {
      s.witness = find_property_violation(*ctx, f, p, &s.instances);
    } catch (const TooLarge&) {
      s.skipped = true;
      s.instances = 0;
      s.witness.reset();
    }
    s.done = true;
    if (s.witness) {
      std::size_t cur = first_witness.load();
      while (i < cur && !first_witness.compare_exchange_weak(cur, i)) {
      }
    }
  });
  PropertyVerdict v{f, p, std::nullopt, 0, 0, {}};
  const std::size_t stop = first_witness.load();
  for (std::size_t i = 0; i < corpus.size() && i <= stop; ++i) {
    Slot& s = slots[i];
    if (s.skipped) {
      v.skipped.push_back(corpus[i].spec.to_string());
      continue;
    }
    ++v.groups;
    v.instances += s.instances;
    if (i == stop) {
      v.witness = std::move(s.witness);
      v.witness->group_position = i;
      v.witness->group_spec = corpus[i].spec.to_string();
    }
  }
  return v;
}

}  // namespace orelab
