#include "orelab/formation.hpp"

#include <charconv>

#include "orelab/numbers.hpp"

namespace orelab {

namespace {

using Kind = Formation::Kind;

// Whether G/N is a p-group.
bool quotient_is_p_group(const Group& g, const Subgroup& n, std::size_t p) {
  return is_prime_power_of(g.order() / n.count(), p);
}

bool section_is_abelian(const Group& g, const Subgroup& h, const Subgroup& k) {
  const auto gens = small_generating_set(g, h);
  for (Element a : gens)
    for (Element b : gens)
      if (!k.test(g.commutator(a, b))) return false;
  return true;
}

bool decide_membership(GroupContext& ctx, const Formation& f) {
  const Group& g = ctx.group();
  switch (f.kind) {
    case Kind::identity:
      return g.order() == 1;
    case Kind::nilpotent:
      return is_nilpotent_group(g);
    case Kind::soluble:
      return is_soluble_group(g);
    case Kind::supersoluble:
      for (const auto& cf : ctx.chief_series().factors())
        if (!is_prime(cf.order())) return false;
      return true;
    case Kind::p_nilpotent: {
      const std::size_t complement = g.order() / p_part(g.order(), f.p);
      for (const auto& n : ctx.normals())
        if (n.count() == complement) return true;
      return false;
    }
    case Kind::p_supersoluble:
      for (const auto& cf : ctx.chief_series().factors())
        if (cf.order() % f.p == 0 && cf.order() != f.p) return false;
      return true;
    case Kind::quasinilpotent:
      for (const auto& cf : ctx.chief_series().factors()) {
        const Subgroup c = centralizer_of_section(g, cf.upper, cf.lower);
        const std::size_t meet = cf.upper.intersection_count(c);
        if (cf.upper.count() * c.count() / meet != g.order()) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

Formation Formation::parse(std::string_view id) {
  auto take_prime = [&](std::string_view rest) {
    std::size_t p = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || !is_prime(p))
      throw InvalidArgument("formation '" + std::string(id) + "' needs a prime parameter");
    return p;
  };
  if (id == "triv") return {Kind::identity};
  if (id == "nilp") return {Kind::nilpotent};
  if (id == "sol") return {Kind::soluble};
  if (id == "super") return {Kind::supersoluble};
  if (id.starts_with("pnilp:")) return {Kind::p_nilpotent, take_prime(id.substr(6))};
  if (id.starts_with("psuper:")) return {Kind::p_supersoluble, take_prime(id.substr(7))};
  throw InvalidArgument("unknown formation '" + std::string(id) + "'");
}

std::string Formation::id() const {
  switch (kind) {
    case Kind::identity:
      return "triv";
    case Kind::nilpotent:
      return "nilp";
    case Kind::soluble:
      return "sol";
    case Kind::supersoluble:
      return "super";
    case Kind::p_nilpotent:
      return "pnilp:" + std::to_string(p);
    case Kind::p_supersoluble:
      return "psuper:" + std::to_string(p);
    case Kind::quasinilpotent:
      return "qnilp";
  }
  return "?";
}

std::vector<Formation> catalog_formations(std::size_t order) {
  std::vector<Formation> out{{Kind::identity}, {Kind::nilpotent}, {Kind::soluble}, {Kind::supersoluble}};
  for (std::size_t p : prime_divisors(order)) {
    out.push_back({Kind::p_nilpotent, p});
    out.push_back({Kind::p_supersoluble, p});
  }
  return out;
}

bool is_member(GroupContext& ctx, const Formation& f) {
  return ctx.memo_flag(memo_key(MemoTag::membership, f.key()), [&] { return decide_membership(ctx, f); });
}

bool is_member(const GroupPtr& g, const Formation& f) {
  auto ctx = GroupContext::make(g);
  return is_member(*ctx, f);
}

std::optional<bool> f_central_fast(GroupContext& ctx, const ChiefFactor& h, const Formation& f) {
  const Group& g = ctx.group();
  const std::size_t q = h.order();
  auto c = [&] { return centralizer_of_section(g, h.upper, h.lower); };
  switch (f.kind) {
    case Kind::identity:
      return false;
    case Kind::nilpotent:
      return c().count() == g.order();
    case Kind::supersoluble: {
      if (!is_prime(q)) return false;
      // G/C must be abelian of exponent dividing q - 1.
      const Subgroup cg = c();
      const auto gens = small_generating_set(g);
      for (Element a : gens) {
        Element power = 0;
        for (std::size_t i = 0; i + 1 < q; ++i) power = g.mul(power, a);
        if (!cg.test(power)) return false;
        for (Element b : gens)
          if (!cg.test(g.commutator(a, b))) return false;
      }
      return true;
    }
    case Kind::soluble:
      if (!section_is_abelian(g, h.upper, h.lower)) return false;
      return derived_series(g).back().is_subset_of(c());
    case Kind::p_nilpotent: {
      const bool abelian = section_is_abelian(g, h.upper, h.lower);
      if (abelian && q % f.p == 0) return quotient_is_p_group(g, c(), f.p);
      if (!abelian && q % f.p == 0) return false;
      return is_member(*ctx.quotient(c()).ctx, f);
    }
    case Kind::p_supersoluble:
      if (q % f.p == 0) return q == f.p;
      return is_member(*ctx.quotient(c()).ctx, f);
    case Kind::quasinilpotent:
      return std::nullopt;
  }
  return std::nullopt;
}

bool f_central_semidirect(GroupContext& ctx, const ChiefFactor& h, const Formation& f) {
  const GroupPtr& gp = ctx.group_ptr();
  const Group& g = *gp;
  const auto emb = subgroup_as_group(gp, h.upper);
  const auto& elems = emb.embedding.map();
  Subgroup k_local(elems.size());
  for (Element i = 0; i < elems.size(); ++i)
    if (h.lower.test(elems[i])) k_local.set(i);
  const auto factor = quotient(emb.group, k_local);
  std::vector<Element> local(g.order(), 0);
  for (Element i = 0; i < elems.size(); ++i) local[elems[i]] = i;

  const Subgroup c = centralizer_of_section(g, h.upper, h.lower);
  const auto acting = quotient(gp, c);
  const std::size_t na = acting.group->order(), nf = factor.group->order();
  if (na * nf > Group::kMaxOrder)
    throw TooLarge("semidirect construction of order " + std::to_string(na * nf));

  std::vector<Element> rep_a(na, 0), rep_f(nf, 0);
  std::vector<bool> seen_a(na, false), seen_f(nf, false);
  for (Element x = 0; x < g.order(); ++x) {
    const Element a = acting.projection(x);
    if (!seen_a[a]) {
      seen_a[a] = true;
      rep_a[a] = x;
    }
  }
  for (Element i = 0; i < elems.size(); ++i) {
    const Element v = factor.projection(i);
    if (!seen_f[v]) {
      seen_f[v] = true;
      rep_f[v] = elems[i];
    }
  }
  std::vector<std::vector<Element>> perm(na, std::vector<Element>(nf));
  for (Element a = 0; a < na; ++a)
    for (Element v = 0; v < nf; ++v) perm[a][v] = factor.projection(local[g.conj(rep_a[a], rep_f[v])]);
  const auto product = semidirect_product(Action(acting.group, factor.group, std::move(perm)));
  return is_member(product, f);
}

bool is_f_central(GroupContext& ctx, const ChiefFactor& h, const Formation& f) {
  const std::size_t idx = ctx.chief_factor_index(h);
  return ctx.memo_flag(memo_key(MemoTag::central, idx, f.key()), [&] {
    if (auto fast = f_central_fast(ctx, h, f)) return *fast;
    return f_central_semidirect(ctx, h, f);
  });
}

namespace {

Subgroup hypercentre_with(GroupContext& ctx, const Formation& f, bool exempt_frattini) {
  const auto& ns = ctx.normals();
  const auto& factors = ctx.chief_factors();
  const Group& g = ctx.group();
  std::vector<bool> valid(ns.size(), false);
  valid[0] = true;
  Subgroup z = ns[0];
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const ChiefFactor& cf = factors[ctx.cover_below(i)];
    if (!valid[ctx.normal_index(cf.lower)]) continue;
    bool ok = exempt_frattini && cf.upper.is_subset_of(ctx.frattini_above(cf.lower));
    if (!ok) ok = is_f_central(ctx, cf, f);
    valid[i] = ok;
    if (ok && !ns[i].is_subset_of(z)) z = product_set(g, z, ns[i]);
  }
  return z;
}

}  // namespace

Subgroup f_hypercentre(GroupContext& ctx, const Formation& f) {
  return ctx.memo_subgroup(memo_key(MemoTag::hypercentre, f.key()), [&] { return hypercentre_with(ctx, f, false); });
}

Subgroup f_phi_hypercentre(GroupContext& ctx, const Formation& f) {
  return ctx.memo_subgroup(memo_key(MemoTag::phi_hypercentre, f.key()),
                           [&] { return hypercentre_with(ctx, f, true); });
}

Subgroup residual(GroupContext& ctx, const Formation& f) {
  return ctx.memo_subgroup(memo_key(MemoTag::residual, f.key()), [&] {
    const Group& g = ctx.group();
    if (is_member(ctx, f)) return g.trivial();
    Subgroup out = g.whole();
    for (const auto& n : ctx.normals())
      if (!out.is_subset_of(n) && is_member(*ctx.quotient(n).ctx, f)) out &= n;
    return out;
  });
}

bool satellite_check_nilpotent(const Group& g, const Subgroup& e, std::size_t p) {
  if (!is_prime(p) || !is_subgroup(g, e) || !is_normal(g, e) || !is_prime_power_of(e.count(), p))
    throw InvalidArgument("satellite check needs a normal p-subgroup");
  return quotient_is_p_group(g, centralizer(g, e), p);
}

}  // namespace orelab
