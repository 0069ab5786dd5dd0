#include "orelab/supplement.hpp"

#include <stdexcept>

#include "orelab/structure.hpp"

namespace orelab {

namespace {

bool supplements(const Group& g, const Subgroup& h, const Subgroup& t) {
  return h.count() * t.count() == g.order() * h.intersection_count(t);
}

}  // namespace

std::optional<SupplementWitness> ore_witness(GroupContext& ctx, const Subgroup& h) {
  const Group& g = ctx.group();
  const auto& ns = ctx.normals();
  for (const auto& t : ns) {
    if (!supplements(g, h, t)) continue;
    const Subgroup meet = h & t;
    for (const auto& s : ns)
      if (s.is_subset_of(h) && meet.is_subset_of(s)) return SupplementWitness{t, s};
  }
  return std::nullopt;
}

bool ore_quotient_criterion(GroupContext& ctx, const Subgroup& h) {
  auto q = ctx.quotient(core(ctx.group(), h));
  const Subgroup hb = q.map->image(h);
  for (const auto& t : q.ctx->normals())
    if (hb.intersection_count(t) == 1 && hb.count() * t.count() == q.ctx->order()) return true;
  return false;
}

bool satisfies_ore(GroupContext& ctx, const Subgroup& h) {
  const bool direct = ore_witness(ctx, h).has_value();
  if (direct != ore_quotient_criterion(ctx, h))
    throw std::logic_error("Ore condition and its quotient form disagree");
  return direct;
}

std::optional<SupplementWitness> c_supplement(GroupContext& ctx, const Subgroup& h) {
  const Group& g = ctx.group();
  const auto& lat = ctx.lattice();
  const Subgroup c = core(g, h);
  for (std::size_t t = 0; t < lat.size(); ++t)
    if (supplements(g, h, lat[t]) && (h & lat[t]) == c) return SupplementWitness{lat[t], std::nullopt};
  return std::nullopt;
}

bool is_c_supplemented(GroupContext& ctx, const Subgroup& h) { return c_supplement(ctx, h).has_value(); }

std::optional<SupplementWitness> f_supplement(GroupContext& ctx, const Subgroup& h, const Formation& f) {
  auto q = ctx.quotient(core(ctx.group(), h));
  GroupContext& qc = *q.ctx;
  const Subgroup hb = q.map->image(h);
  const Subgroup z = f_hypercentre(qc, f);
  const auto& lat = qc.lattice();
  for (std::size_t t = 0; t < lat.size(); ++t)
    if (supplements(qc.group(), hb, lat[t]) && (hb & lat[t]).is_subset_of(z))
      return SupplementWitness{q.map->preimage(lat[t]), std::nullopt};
  return std::nullopt;
}

bool is_f_supplemented(GroupContext& ctx, const Subgroup& h, const Formation& f) {
  return ctx.memo_flag(memo_key(MemoTag::fsupp, ctx.lattice().index_of(h), f.key()),
                       [&] { return f_supplement(ctx, h, f).has_value(); });
}

std::optional<SupplementWitness> weak_s_permutability(GroupContext& ctx, const Subgroup& h) {
  const Group& g = ctx.group();
  const auto& lat = ctx.lattice();
  const std::size_t hi = lat.index_of(h);
  std::vector<std::size_t> quasinormal;
  for (std::size_t s : lat.subgroups_of(hi))
    if (in_tau(ctx, Functor::s_quasinormal, s)) quasinormal.push_back(s);
  for (std::size_t t = 0; t < lat.size(); ++t) {
    if (!lat.subnormal_depth(t) || !supplements(g, h, lat[t])) continue;
    const Subgroup meet = h & lat[t];
    for (std::size_t s : quasinormal)
      if (meet.is_subset_of(lat[s])) return SupplementWitness{lat[t], lat[s]};
  }
  return std::nullopt;
}

bool is_weakly_s_permutable(GroupContext& ctx, const Subgroup& h) { return weak_s_permutability(ctx, h).has_value(); }

std::optional<SupplementWitness> supplement_in(GroupContext& ctx, const Subgroup& h, const Formation& f) {
  const Group& g = ctx.group();
  const auto& lat = ctx.lattice();
  for (std::size_t t = 0; t < lat.size(); ++t)
    if (supplements(g, h, lat[t]) && is_member(*ctx.subgroup(lat[t]).ctx, f))
      return SupplementWitness{lat[t], std::nullopt};
  return std::nullopt;
}

Subgroup hypercentre_of_subgroup(GroupContext& ctx, std::size_t t, const Formation& f) {
  return ctx.memo_subgroup(memo_key(MemoTag::subgroup_hypercentre, t, f.key()), [&] {
    auto sub = ctx.subgroup(ctx.lattice()[t]);
    return sub.map->image(f_hypercentre(*sub.ctx, f));
  });
}

std::optional<SupplementWitness> f_supplement_pair(GroupContext& ctx, const Subgroup& k, const Subgroup& h,
                                                   const Formation& f) {
  if (!k.is_subset_of(h)) throw InvalidArgument("pair condition needs K <= H");
  const Group& g = ctx.group();
  const auto& lat = ctx.lattice();
  // Both must be lattice members; index_of throws otherwise.
  lat.index_of(k);
  lat.index_of(h);
  for (std::size_t t = 0; t < lat.size(); ++t) {
    if (!supplements(g, h, lat[t])) continue;
    const Subgroup meet = h & lat[t];
    if (meet.is_subset_of(k)) return SupplementWitness{lat[t], k};
    const ElementSet allowed = product_set(g, k, hypercentre_of_subgroup(ctx, t, f));
    if (meet.is_subset_of(allowed)) return SupplementWitness{lat[t], k};
  }
  return std::nullopt;
}

bool pair_satisfies_f_supplement(GroupContext& ctx, const Subgroup& k, const Subgroup& h, const Formation& f) {
  return f_supplement_pair(ctx, k, h, f).has_value();
}

std::optional<SupplementWitness> f_tau_supplement(GroupContext& ctx, const Subgroup& h, const Formation& f,
                                                  Functor tau) {
  auto q = ctx.quotient(core(ctx.group(), h));
  GroupContext& qc = *q.ctx;
  const Subgroup hb = q.map->image(h);
  const auto& lat = qc.lattice();
  for (std::size_t s : lat.subgroups_of(lat.index_of(hb))) {
    if (!in_tau(qc, tau, s)) continue;
    if (auto w = f_supplement_pair(qc, lat[s], hb, f))
      return SupplementWitness{q.map->preimage(w->t), q.map->preimage(lat[s])};
  }
  return std::nullopt;
}

bool is_f_tau_supplemented(GroupContext& ctx, const Subgroup& h, const Formation& f, Functor tau) {
  const std::size_t idx = ctx.lattice().index_of(h);
  // H/H_G is trivial: S = H and T = G.
  if (ctx.lattice().is_normal(idx)) return true;
  return ctx.memo_flag(memo_key(MemoTag::ftau, idx, f.key(), static_cast<std::uint64_t>(tau)),
                       [&] { return f_tau_supplement(ctx, h, f, tau).has_value(); });
}

Predicate Predicate::parse(std::string_view id) {
  using K = Kind;
  if (id == "ore") return {K::ore, {}};
  if (id == "csupp") return {K::csupp, {}};
  if (id == "wsp") return {K::wsp, {}};
  if (id.starts_with("fsupp:")) return {K::fsupp, Formation::parse(id.substr(6))};
  if (id.starts_with("pair:")) return {K::pair, Formation::parse(id.substr(5))};
  if (id.starts_with("ftau:")) {
    const std::string_view rest = id.substr(5);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw InvalidArgument("predicate '" + std::string(id) + "' needs ftau:<F>:<tau>");
    return {K::ftau, Formation::parse(rest.substr(0, colon)), parse_functor(rest.substr(colon + 1))};
  }
  throw InvalidArgument("unknown predicate '" + std::string(id) + "'");
}

std::string Predicate::id() const {
  switch (kind) {
    case Kind::ore:
      return "ore";
    case Kind::csupp:
      return "csupp";
    case Kind::wsp:
      return "wsp";
    case Kind::fsupp:
      return "fsupp:" + formation.id();
    case Kind::pair:
      return "pair:" + formation.id();
    case Kind::ftau:
      return "ftau:" + formation.id() + ":" + std::string(functor_id(functor));
  }
  return "?";
}

bool evaluate(GroupContext& ctx, const Predicate& p, const Subgroup& h) {
  switch (p.kind) {
    case Predicate::Kind::ore:
      return satisfies_ore(ctx, h);
    case Predicate::Kind::csupp:
      return is_c_supplemented(ctx, h);
    case Predicate::Kind::wsp:
      return is_weakly_s_permutable(ctx, h);
    case Predicate::Kind::fsupp:
      return is_f_supplemented(ctx, h, p.formation);
    case Predicate::Kind::pair:
      return pair_satisfies_f_supplement(ctx, ctx.group().trivial(), h, p.formation);
    case Predicate::Kind::ftau:
      return is_f_tau_supplemented(ctx, h, p.formation, p.functor);
  }
  return false;
}

bool ImplicationReport::ok() const {
  for (const auto& c : checks)
    if (c.violated()) return false;
  return true;
}

ImplicationReport implication_suite(GroupContext& ctx, const Subgroup& h, const Formation& f) {
  ImplicationReport r;
  const Formation triv{Formation::Kind::identity};
  r.checks.push_back({"csupp <=> ftau:triv:normal", is_c_supplemented(ctx, h),
                      is_f_tau_supplemented(ctx, h, triv, Functor::normal), true});

  const bool super_supplement = supplement_in(ctx, h, kSupersoluble).has_value();
  const bool u_supplemented = is_f_supplemented(ctx, h, kSupersoluble);
  for (Functor tau : all_functors()) {
    const std::string t(functor_id(tau));
    try {
      const bool ftau = is_f_tau_supplemented(ctx, h, kSupersoluble, tau);
      r.checks.push_back({"supersoluble supplement => ftau:super:" + t, super_supplement, ftau, false});
      r.checks.push_back({"fsupp:super => ftau:super:" + t, u_supplemented, ftau, false});
    } catch (const TooLarge&) {
      r.skipped.push_back("ftau:super:" + t);
    }
  }
  r.checks.push_back({"wsp => ftau:" + f.id() + ":squasi", is_weakly_s_permutable(ctx, h),
                      is_f_tau_supplemented(ctx, h, f, Functor::s_quasinormal), false});
  r.checks.push_back({"cap => ftau:" + f.id() + ":cap", in_tau(ctx, Functor::cap, h),
                      is_f_tau_supplemented(ctx, h, f, Functor::cap), false});
  return r;
}

}  // namespace orelab
