#include "orelab/verifier.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "orelab/numbers.hpp"
#include "orelab/structure.hpp"
#include "orelab/supplement.hpp"

namespace orelab {

std::string_view status_id(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::vacuous:
      return "vacuous";
    case Status::counterexample:
      return "counterexample";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

std::string subgroup_code(const Subgroup& s) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out((s.universe() + 3) / 4, '0');
  s.for_each([&](Element e) {
    auto& c = out[e / 4];
    c = kHex[(c <= '9' ? c - '0' : c - 'a' + 10) | 1 << (e % 4)];
  });
  return out;
}

InstanceSink::InstanceSink(const VerifyOptions& options, std::string only_key, std::string only_params)
    : options_(options),
      only_key_(std::move(only_key)),
      only_params_(std::move(only_params)),
      start_(std::chrono::steady_clock::now()) {}

Record& InstanceSink::slot(const std::string& key) {
  auto [it, inserted] = index_.try_emplace(key, records_.size());
  if (inserted) {
    records_.emplace_back();
    records_.back().key = key;
  }
  return records_[it->second];
}

void InstanceSink::ensure(const std::string& key) {
  if (!skips_key(key)) slot(key);
}

void InstanceSink::skip(const std::string& key, const std::string& reason) {
  if (skips_key(key)) return;
  Record& r = slot(key);
  r.status = Status::skipped;
  r.note = reason;
}

void InstanceSink::tick() {
  if (options_.budget_seconds <= 0 || ++ticks_ % 64 != 0) return;
  const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
  if (spent.count() > options_.budget_seconds) throw BudgetExceeded();
}

void InstanceSink::abandon(const std::string& reason) {
  for (auto& r : records_) {
    r.status = Status::skipped;
    r.note = reason;
  }
  if (records_.empty()) skip("*", reason);
}

std::vector<Record> InstanceSink::take() {
  for (auto& r : records_) {
    if (r.status == Status::skipped) continue;
    if (r.counterexamples)
      r.status = Status::counterexample;
    else if (r.hypothesis_true)
      r.status = Status::holds;
    else if (r.skipped_instances)
      r.status = Status::skipped;
    else
      r.status = Status::vacuous;
  }
  index_.clear();
  return std::move(records_);
}

namespace {

using Idx = std::size_t;
using P = FunctorProperty;

bool claims(Functor f, P p) { return has_claimed_property(f, p); }

bool is_cyclic(const Group& g, const Subgroup& h) {
  const std::size_t n = h.count();
  bool found = false;
  h.for_each([&](Element x) { found = found || g.element_order(x) == n; });
  return found;
}

bool is_abelian(const Group& g, const Subgroup& h) {
  const auto el = h.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j)
      if (g.mul(el[i], el[j]) != g.mul(el[j], el[i])) return false;
  return true;
}

std::size_t exponent(const Group& g, const Subgroup& h) {
  std::size_t e = 1;
  h.for_each([&](Element x) { e = std::lcm(e, g.element_order(x)); });
  return e;
}

bool supplements(const Group& g, const Subgroup& h, const Subgroup& t) {
  return h.count() * t.count() == g.order() * h.intersection_count(t);
}

std::string tau_key(Functor t) { return "tau=" + std::string(functor_id(t)); }

// Per-group helpers shared by the statements.
class Scope {
 public:
  Scope(GroupContext& c, const VerifyOptions& o) : ctx(c), g(c.group()), lat(c.lattice()), opt(o) {}

  GroupContext& ctx;
  const Group& g;
  const SubgroupLattice& lat;
  const VerifyOptions& opt;

  template <class Admit>
  std::vector<Functor> taus(Admit admit) const {
    std::vector<Functor> out;
    for (Functor f : all_functors()) {
      if (opt.functor && *opt.functor != f) continue;
      if (f == Functor::completely_c_permutable && g.order() > opt.ccp_max_order) continue;
      if (admit(f)) out.push_back(f);
    }
    return out;
  }

  // Catalog formations, or those containing the supersoluble formation.
  std::vector<Formation> formations(bool containing_u) const {
    std::vector<Formation> out;
    for (const auto& f : catalog_formations(g.order())) {
      if (opt.formation && *opt.formation != f) continue;
      using K = Formation::Kind;
      if (containing_u && f.kind != K::supersoluble && f.kind != K::soluble && f.kind != K::p_supersoluble) continue;
      out.push_back(f);
    }
    return out;
  }

  std::vector<Formation> formations_among(std::initializer_list<Formation::Kind> kinds) const {
    std::vector<Formation> out;
    for (const auto& f : catalog_formations(g.order()))
      if ((!opt.formation || *opt.formation == f) && std::find(kinds.begin(), kinds.end(), f.kind) != kinds.end())
        out.push_back(f);
    return out;
  }

  Idx idx(const Subgroup& s) const { return lat.index_of(s); }
  std::string code(Idx i) const { return subgroup_code(lat[i]); }
  std::string code(const Subgroup& s) const { return subgroup_code(s); }

  // One Sylow subgroup per prime dividing |X|.
  std::vector<Idx> sylows(const Subgroup& x) const {
    std::vector<Idx> out;
    const Idx xi = idx(x);
    for (std::size_t p : prime_divisors(x.count())) out.push_back(idx(sylow_of(lat, xi, p)));
    return out;
  }

  // Cyclic subgroups of P of prime order, and of order 4 when `four`.
  std::vector<Idx> small_cyclics(Idx p, bool four) const {
    std::vector<Idx> out;
    for (Idx h : lat.subgroups_of(p)) {
      const std::size_t n = lat.order_of(h);
      if ((is_prime(n) || (four && n == 4)) && is_cyclic(g, lat[h])) out.push_back(h);
    }
    return out;
  }

  bool cyclic(Idx i) const { return is_cyclic(g, lat[i]); }
  bool abelian(Idx i) const { return is_abelian(g, lat[i]); }

  bool ftau(Idx h, const Formation& f, Functor t) { return is_f_tau_supplemented(ctx, lat[h], f, t); }
  bool utau(Idx h, Functor t) { return ftau(h, kSupersoluble, t); }

  // Every maximal subgroup of every (non-cyclic, when asked) Sylow subgroup
  // of X is F_tau-supplemented.
  bool maximals_supplemented(const Subgroup& x, const Formation& f, Functor t, bool noncyclic_only) {
    for (Idx p : sylows(x)) {
      if (noncyclic_only && cyclic(p)) continue;
      for (Idx m : lat.maximal_subgroups_of(p))
        if (!ftau(m, f, t)) return false;
    }
    return true;
  }

  // Every cyclic subgroup of prime order, or of order 4 when P is
  // non-abelian, of the Sylow subgroup P is F_tau-supplemented.
  bool cyclics_supplemented(Idx p, const Formation& f, Functor t) {
    for (Idx h : small_cyclics(p, !abelian(p)))
      if (!ftau(h, f, t)) return false;
    return true;
  }

  bool noncyclic_sylow_cyclics_supplemented(const Subgroup& x, const Formation& f, Functor t) {
    for (Idx p : sylows(x))
      if (!cyclic(p) && !cyclics_supplemented(p, f, t)) return false;
    return true;
  }

  // Every tau-subgroup of G inside X is subnormally embedded in G.
  bool tau_inside_embedded(Functor t, const Subgroup& x) {
    for (Idx m : lat.subgroups_of(idx(x)))
      if (in_tau(ctx, t, m) && !is_subnormally_embedded(lat, m)) return false;
    return true;
  }

  bool quotient_in(const Subgroup& n, const Formation& f) { return is_member(*ctx.quotient(n).ctx, f); }
  bool subgroup_in(const Subgroup& e, const Formation& f) { return is_member(*ctx.subgroup(e).ctx, f); }

  Subgroup fitting_of(const Subgroup& e) {
    auto sub = ctx.subgroup(e);
    return sub.map->image(fitting(sub.ctx->group(), sub.ctx->normals()));
  }
  Subgroup fstar_of(const Subgroup& e) {
    auto sub = ctx.subgroup(e);
    return sub.map->image(generalized_fitting(sub.ctx->group_ptr(), sub.ctx->normals()));
  }

  // Nontrivial normal subgroups of prime-power order with their prime.
  std::vector<std::pair<Subgroup, std::size_t>> normal_p_subgroups() {
    std::vector<std::pair<Subgroup, std::size_t>> out;
    for (const auto& n : ctx.normals())
      if (n.count() > 1 && is_prime_power(n.count())) out.emplace_back(n, prime_divisors(n.count())[0]);
    return out;
  }

  const Subgroup& zu() {
    if (!zu_) zu_ = f_hypercentre(ctx, kSupersoluble);
    return *zu_;
  }

 private:
  std::optional<Subgroup> zu_;
};

// Memo for hypotheses keyed by a subgroup.
class Cache {
 public:
  template <class F>
  bool get(const Subgroup& s, F&& compute) {
    auto it = map_.find(s);
    if (it != map_.end()) return it->second;
    const bool v = compute();
    map_.emplace(s, v);
    return v;
  }

 private:
  std::unordered_map<ElementSet, bool, ElementSetHash> map_;
};

// G soluble: G is supersoluble iff some normal E with G/E supersoluble has
// every maximal subgroup of every Sylow subgroup of F(E) U_tau-supplemented,
// tau Phi-regular.
void run_supersolubility_criterion(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto taus = s.taus([](Functor f) { return claims(f, P::phi_regular); });
  const bool soluble = is_soluble_group(s.g);
  const bool super = soluble && is_member(ctx, kSupersoluble);
  std::vector<Subgroup> es;
  if (soluble)
    for (const auto& n : ctx.normals())
      if (s.quotient_in(n, kSupersoluble)) es.push_back(n);
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (!soluble || sink.skips_key(key)) continue;
    std::vector<int> hyp(es.size(), -1);
    auto hyp_at = [&](std::size_t i) {
      if (hyp[i] < 0) hyp[i] = s.maximals_supplemented(s.fitting_of(es[i]), kSupersoluble, t, false);
      return hyp[i] == 1;
    };
    for (std::size_t i = 0; i < es.size(); ++i)
      sink.check(
          key, [&] { return "E=" + s.code(es[i]); }, [&] { return hyp_at(i); },
          [&] { return super ? std::string() : "G is not supersoluble"; });
    sink.check(
        key, [] { return std::string("converse"); }, [&] { return super; },
        [&] {
          for (std::size_t i = 0; i < es.size(); ++i)
            if (hyp_at(i)) return std::string();
          return std::string("no normal E satisfies the hypothesis");
        });
  }
}

// X <= E normal, G/E in F, F contains U.  Maximal subgroups of non-cyclic
// Sylow subgroups of X U_tau-supplemented, every tau-subgroup in X
// subnormally embedded, X = E or F*(E): G in F, and E <= Z_U(G) when tau is
// regular.
void run_maximal_subgroup_criterion(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto taus =
      s.taus([](Functor f) { return claims(f, P::regular) || (claims(f, P::phi_regular) && claims(f, P::hereditary)); });
  const auto fs = s.formations(true);
  const auto& normals = ctx.normals();
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    Cache side, main;
    for (const auto& e : normals) {
      std::vector<std::pair<Subgroup, const char*>> xs{{e, "E"}};
      const Subgroup fstar = s.fstar_of(e);
      if (fstar != e) xs.emplace_back(fstar, "F*(E)");
      for (const auto& [x, xname] : xs)
        for (const auto& f : fs)
          sink.check(
              key, [&] { return "F=" + f.id() + ";E=" + s.code(e) + ";X=" + xname; },
              [&] {
                return s.quotient_in(e, f) && side.get(x, [&] { return s.tau_inside_embedded(t, x); }) &&
                       main.get(x, [&] { return s.maximals_supplemented(x, kSupersoluble, t, true); });
              },
              [&] {
                if (!is_member(ctx, f)) return std::string("G is not in F");
                if (claims(t, P::regular) && !e.is_subset_of(s.zu())) return std::string("E is not in Z_U(G)");
                return std::string();
              });
    }
  }
}

enum class BMode { i, ii, iii };

// Cyclic subgroups of prime order or order 4 (P non-abelian) of non-cyclic
// Sylow subgroups of X U_tau-supplemented, with X and tau per mode: G in F.
void run_cyclic_subgroup_criterion(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink, BMode mode) {
  Scope s(ctx, o);
  const auto taus = s.taus([mode](Functor f) {
    switch (mode) {
      case BMode::i:
        return claims(f, P::hereditary) && claims(f, P::phi_quasiregular);
      case BMode::ii:
        return claims(f, P::hereditary) && claims(f, P::quasiregular);
      case BMode::iii:
        return claims(f, P::regular);
    }
    return false;
  });
  const auto fs = s.formations(true);
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    Cache main;
    for (const auto& e : ctx.normals()) {
      std::vector<std::pair<Subgroup, const char*>> xs;
      if (mode == BMode::i) xs.emplace_back(e, "E");
      if (mode == BMode::ii) {
        if (!s.subgroup_in(e, Formation{Formation::Kind::soluble})) continue;
        xs.emplace_back(s.fitting_of(e), "F(E)");
      }
      if (mode == BMode::iii) {
        const Subgroup fstar = s.fstar_of(e);
        xs.emplace_back(fstar, "F*(E)");
        if (fstar != e) xs.emplace_back(e, "E");
      }
      for (const auto& [x, xname] : xs)
        for (const auto& f : fs)
          sink.check(
              key, [&] { return "F=" + f.id() + ";E=" + s.code(e) + ";X=" + xname; },
              [&] {
                return s.quotient_in(e, f) &&
                       main.get(x, [&] { return s.noncyclic_sylow_cyclics_supplemented(x, kSupersoluble, t); });
              },
              [&] { return is_member(ctx, f) ? std::string() : std::string("G is not in F"); });
    }
  }
}

// F = p-supersoluble, E normal, P in Syl_p(E) with |P| > p and
// (|E|, p - 1) = 1: the tau-hypothesis on P gives E p-nilpotent.
template <class Admit, class Hyp>
void run_p_nilpotency(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink, Admit admit, Hyp hyp) {
  Scope s(ctx, o);
  const auto taus = s.taus(admit);
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    for (std::size_t p : prime_divisors(s.g.order())) {
      const Formation f{Formation::Kind::p_supersoluble, p};
      if (o.formation && *o.formation != f) continue;
      const Formation pn{Formation::Kind::p_nilpotent, p};
      for (const auto& e : ctx.normals()) {
        if (std::gcd(e.count(), p - 1) != 1 || p_part(e.count(), p) <= p) continue;
        const Idx pi = s.idx(sylow_of(s.lat, s.idx(e), p));
        sink.check(
            key, [&] { return "p=" + std::to_string(p) + ";E=" + s.code(e); }, [&] { return hyp(s, t, f, pi); },
            [&] { return s.subgroup_in(e, pn) ? std::string() : std::string("E is not p-nilpotent"); });
      }
    }
  }
}

void run_p_nilpotency_maximal(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_p_nilpotency(
      ctx, o, sink, [](Functor f) { return claims(f, P::phi_regular); },
      [](Scope& s, Functor t, const Formation& f, Idx pi) {
        if (!s.tau_inside_embedded(t, s.lat[pi])) return false;
        for (Idx m : s.lat.maximal_subgroups_of(pi))
          if (!s.ftau(m, f, t)) return false;
        return true;
      });
}

void run_p_nilpotency_cyclic(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_p_nilpotency(
      ctx, o, sink, [](Functor f) { return claims(f, P::hereditary) || claims(f, P::regular); },
      [](Scope& s, Functor t, const Formation& f, Idx pi) { return s.cyclics_supplemented(pi, f, t); });
}

// P a nontrivial normal p-subgroup, F contains U.  Mode "phi" (tau
// Phi-quasiregular) concludes P <= Z_FPhi(G), mode "plain" (tau
// quasiregular) P <= Z_F(G).  `hyp` is the supplementation hypothesis,
// `exp_guard` an extra condition for the phi mode.
template <class Hyp>
void run_p_hypercentral(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink, Hyp hyp, bool exp_guard) {
  Scope s(ctx, o);
  const auto taus = s.taus([](Functor f) { return claims(f, P::phi_quasiregular) || claims(f, P::quasiregular); });
  const auto fs = s.formations(true);
  const auto ps = s.normal_p_subgroups();
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    for (const auto& f : fs) {
      const Subgroup zf = f_hypercentre(ctx, f);
      const Subgroup zphi = f_phi_hypercentre(ctx, f);
      for (const auto& [pg, p] : ps) {
        const Idx pi = s.idx(pg);
        const std::size_t e = exponent(s.g, pg);
        const bool phi_ok = !exp_guard || e == p || e == 4;
        for (const char* mode : {"phi", "plain"}) {
          const bool is_phi = mode[0] == 'p' && mode[1] == 'h';
          if (is_phi ? !claims(t, P::phi_quasiregular) || !phi_ok : !claims(t, P::quasiregular)) continue;
          sink.check(
              key, [&] { return "F=" + f.id() + ";P=" + s.code(pg) + ";mode=" + mode; },
              [&] { return hyp(s, t, f, pi); },
              [&] {
                if (is_phi) return pg.is_subset_of(zphi) ? std::string() : std::string("P is not in Z_FPhi(G)");
                return pg.is_subset_of(zf) ? std::string() : std::string("P is not in Z_F(G)");
              });
        }
      }
    }
  }
}

void run_p_hypercentral_maximal(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_p_hypercentral(
      ctx, o, sink,
      [](Scope& s, Functor t, const Formation& f, Idx pi) {
        for (Idx m : s.lat.maximal_subgroups_of(pi))
          if (!s.ftau(m, f, t)) return false;
        return true;
      },
      false);
}

void run_p_hypercentral_cyclic(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_p_hypercentral(
      ctx, o, sink, [](Scope& s, Functor t, const Formation& f, Idx pi) { return s.cyclics_supplemented(pi, f, t); },
      true);
}

// E nontrivial normal with a U_tau hypothesis on its non-cyclic Sylow
// subgroups: E <= Z_U(G).
template <class Admit, class Hyp>
void run_u_hypercentral(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink, Admit admit, Hyp hyp) {
  Scope s(ctx, o);
  for (Functor t : s.taus(admit)) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    for (const auto& e : ctx.normals()) {
      if (e.count() == 1) continue;
      sink.check(
          key, [&] { return "E=" + s.code(e); }, [&] { return hyp(s, t, e); },
          [&] { return e.is_subset_of(s.zu()) ? std::string() : std::string("E is not in Z_U(G)"); });
    }
  }
}

void run_u_hypercentral_maximal(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_u_hypercentral(
      ctx, o, sink, [](Functor f) { return claims(f, P::regular); },
      [](Scope& s, Functor t, const Subgroup& e) {
        return s.tau_inside_embedded(t, e) && s.maximals_supplemented(e, kSupersoluble, t, true);
      });
}

void run_u_hypercentral_cyclic(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  run_u_hypercentral(
      ctx, o, sink, [](Functor f) { return claims(f, P::hereditary) && claims(f, P::quasiregular); },
      [](Scope& s, Functor t, const Subgroup& e) {
        return s.noncyclic_sylow_cyclics_supplemented(e, kSupersoluble, t);
      });
}

// G = PT, P a normal p-subgroup: P n Z_F(T) normal in P implies
// P n Z_F(T) <= Z_F(G).
void run_sylow_hypercentre_meet(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto ps = s.normal_p_subgroups();
  const auto fs = s.formations(false);
  for (const auto& f : fs) sink.ensure("F=" + f.id());
  std::size_t tuples = 0;
  for (const auto& [pg, p] : ps)
    for (Idx t = 0; t < s.lat.size(); ++t) tuples += supplements(s.g, pg, s.lat[t]);
  if (tuples * fs.size() > o.tuple_cap) {
    for (const auto& f : fs) sink.skip("F=" + f.id(), "too many (P, T) pairs: " + std::to_string(tuples));
    return;
  }
  for (const auto& f : fs) {
    const std::string key = "F=" + f.id();
    if (sink.skips_key(key)) continue;
    const Subgroup zg = f_hypercentre(ctx, f);
    for (const auto& [pg, p] : ps) {
      const auto pel = pg.elements();
      for (Idx t = 0; t < s.lat.size(); ++t) {
        if (!supplements(s.g, pg, s.lat[t])) continue;
        std::optional<Subgroup> z;
        auto meet = [&]() -> const Subgroup& {
          if (!z) z = pg & hypercentre_of_subgroup(ctx, t, f);
          return *z;
        };
        sink.check(
            key, [&] { return "P=" + s.code(pg) + ";T=" + s.code(t); },
            [&] {
              for (Element x : pel)
                if (conjugate(s.g, meet(), x) != meet()) return false;
              return true;
            },
            [&] { return meet().is_subset_of(zg) ? std::string() : std::string("P n Z_F(T) is not in Z_F(G)"); });
      }
    }
  }
}

// L <= V normal in P in Syl_p(G), N != M normal in G, and
// |G/M : N_{G/M}((LM/M) n (NM/M))| a power of p.
void run_normal_closure_index(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  const auto& normals = ctx.normals();
  std::vector<Idx> nidx;
  for (const auto& n : normals) nidx.push_back(s.idx(n));
  std::vector<char> nonabelian_minimal(normals.size(), 0);
  for (const auto& m : minimal_normal_subgroups(normals))
    if (!is_abelian(s.g, m)) nonabelian_minimal[ctx.normal_index(m)] = 1;

  std::vector<int> normaliser_index(lat.size(), 0);  // |G : N_G(W)|, 0 unknown
  std::vector<std::optional<Subgroup>> closure(lat.size());
  auto index_of_normaliser = [&](Idx w) {
    if (!normaliser_index[w]) normaliser_index[w] = static_cast<int>(s.g.order() / normalizer(s.g, lat[w]).count());
    return static_cast<std::size_t>(normaliser_index[w]);
  };
  auto closure_of = [&](Idx w) -> const Subgroup& {
    if (!closure[w]) closure[w] = normal_closure(s.g, lat[w]);
    return *closure[w];
  };

  for (std::size_t p : prime_divisors(s.g.order())) {
    const std::string key = "p=" + std::to_string(p);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    const Idx pi = s.idx(sylow(lat, p));
    std::vector<Idx> vs;
    for (Idx v : lat.subgroups_of(pi)) {
      bool normal = true;
      for (Element x : lat.generators(pi)) normal = normal && lat.conjugate(v, x) == v;
      if (normal) vs.push_back(v);
    }
    std::size_t pairs = 0;
    for (Idx v : vs) pairs += lat.subgroups_of(v).size();
    const std::size_t tuples = pairs * normals.size() * (normals.size() - 1);
    if (tuples > o.tuple_cap) {
      sink.skip(key, "too many (L, V, N, M) tuples: " + std::to_string(tuples));
      continue;
    }
    for (Idx v : vs)
      for (Idx l : lat.subgroups_of(v))
        for (std::size_t mi = 0; mi < normals.size(); ++mi) {
          const Idx m = nidx[mi];
          const Idx lm = lat.join(l, m);
          const Idx vm = lat.join(v, m);
          for (std::size_t ni = 0; ni < normals.size(); ++ni) {
            if (ni == mi) continue;
            const Idx n = nidx[ni];
            const Idx w = lat.meet(lm, lat.join(n, m));
            sink.check(
                key,
                [&] { return "L=" + s.code(l) + ";V=" + s.code(v) + ";N=" + s.code(n) + ";M=" + s.code(m); },
                [&] { return is_prime_power_of(index_of_normaliser(w), p); },
                [&] {
                  if (!closure_of(w).is_subset_of(lat[vm])) return std::string("(1): closure not in VM/M");
                  const Idx ln = lat.meet(l, n);
                  if (nonabelian_minimal[ni] && lat.order_of(ln) != 1) return std::string("(2): L n N != 1");
                  if (lat.order_of(lat.meet(lat.join(n, l), m)) == 1 && !closure_of(ln).is_subset_of(lat[vm]))
                    return std::string("(3): (L n N)^G not in VM");
                  return std::string();
                });
          }
        }
  }
}

// P normal p-subgroup, |P| > p, P n Phi(G) = 1, tau Phi-quasiregular, every
// maximal subgroup of P U_tau-supplemented: some maximal subgroup of P is
// normal in G.
void run_normal_maximal_subgroup(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const Subgroup& phi = ctx.frattini();
  const auto ps = s.normal_p_subgroups();
  for (Functor t : s.taus([](Functor f) { return claims(f, P::phi_quasiregular); })) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    for (const auto& [pg, p] : ps) {
      if (pg.count() == p || pg.intersection_count(phi) != 1) continue;
      const Idx pi = s.idx(pg);
      sink.check(
          key, [&] { return "P=" + s.code(pg); },
          [&] {
            for (Idx m : s.lat.maximal_subgroups_of(pi))
              if (!s.utau(m, t)) return false;
            return true;
          },
          [&] {
            for (Idx m : s.lat.maximal_subgroups_of(pi))
              if (s.lat.is_normal(m)) return std::string();
            return std::string("no maximal subgroup of P is normal in G");
          });
    }
  }
}

// tau Phi-regular and inductive with every primary tau-subgroup subnormally
// embedded; maximal subgroups of non-cyclic Sylow subgroups of E
// U_tau-supplemented: E supersoluble.
void run_supersoluble_from_sylows(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  for (Functor t : s.taus([](Functor f) { return claims(f, P::phi_regular) && claims(f, P::inductive); })) {
    const std::string key = tau_key(t);
    sink.ensure(key);
    if (sink.skips_key(key)) continue;
    std::optional<bool> side;
    auto primary_embedded = [&] {
      if (!side) {
        side = true;
        for (Idx m = 1; m < s.lat.size() && *side; ++m)
          if (is_prime_power(s.lat.order_of(m)) && in_tau(ctx, t, m) && !is_subnormally_embedded(s.lat, m))
            side = false;
      }
      return *side;
    };
    for (const auto& e : ctx.normals())
      sink.check(
          key, [&] { return "E=" + s.code(e); },
          [&] { return primary_embedded() && s.maximals_supplemented(e, kSupersoluble, t, true); },
          [&] { return s.subgroup_in(e, kSupersoluble) ? std::string() : std::string("E is not supersoluble"); });
  }
}

// P/R chief factor of order p^n, n > 1, with every normal V < P inside R;
// H <= P cyclic of prime order or order 4 with R < RH < P; HT = G: T = G.
void run_chief_factor_supplements(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  const std::string key = "all";
  sink.ensure(key);
  for (const auto& cf : ctx.chief_factors()) {
    const std::size_t q = cf.order();
    if (!is_prime_power(q) || is_prime(q)) continue;
    bool unique_below = true;
    for (const auto& v : ctx.normals())
      if (v != cf.upper && v.is_subset_of(cf.upper) && !v.is_subset_of(cf.lower)) unique_below = false;
    if (!unique_below) continue;
    const Idx pi = s.idx(cf.upper), ri = s.idx(cf.lower);
    for (Idx h : lat.subgroups_of(pi)) {
      const std::size_t n = lat.order_of(h);
      if (!(is_prime(n) || n == 4) || !s.cyclic(h)) continue;
      const Idx rh = lat.join(ri, h);
      if (rh == ri || rh == pi) continue;
      for (Idx t = 0; t < lat.size(); ++t) {
        if (!supplements(s.g, lat[h], lat[t])) continue;
        sink.check(
            key, [&] { return "P=" + s.code(pi) + ";R=" + s.code(ri) + ";H=" + s.code(h) + ";T=" + s.code(t); },
            [] { return true; },
            [&] { return t == lat.whole_index() ? std::string() : std::string("T is a proper supplement"); });
      }
    }
  }
}

// G = NT with T proper and N a p-subgroup of Z_infinity(G): O^p(G) != G.
void run_proper_p_residual(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  const std::string key = "all";
  sink.ensure(key);
  const Subgroup z = hypercentre(s.g);
  for (Idx n = 1; n < lat.size(); ++n) {
    if (!is_prime_power(lat.order_of(n)) || !lat[n].is_subset_of(z)) continue;
    const std::size_t p = prime_divisors(lat.order_of(n))[0];
    std::optional<bool> proper_residual;
    for (Idx t = 0; t + 1 < lat.size(); ++t) {
      if (!supplements(s.g, lat[n], lat[t])) continue;
      sink.check(
          key, [&] { return "N=" + s.code(n) + ";T=" + s.code(t); }, [] { return true; },
          [&] {
            if (!proper_residual) proper_residual = p_residual(s.g, p) != s.g.whole();
            return *proper_residual ? std::string() : std::string("O^p(G) = G");
          });
    }
  }
}

// G = NT, N minimal normal, T maximal.  (1) |G:T| divides 4: N abelian.
// (2) N <= Z_U(G): |G:T| prime.
void run_minimal_normal_supplement_index(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  const std::string key = "all";
  sink.ensure(key);
  for (const auto& n : minimal_normal_subgroups(ctx.normals())) {
    const bool abelian = is_abelian(s.g, n);
    for (Idx t : lat.maximal_subgroups_of(lat.whole_index())) {
      if (!supplements(s.g, n, lat[t])) continue;
      const std::size_t index = s.g.order() / lat.order_of(t);
      sink.check(
          key, [&] { return "N=" + s.code(n) + ";T=" + s.code(t) + ";part=1"; }, [&] { return 4 % index == 0; },
          [&] { return abelian ? std::string() : std::string("N is not abelian"); });
      sink.check(
          key, [&] { return "N=" + s.code(n) + ";T=" + s.code(t) + ";part=2"; },
          [&] { return n.is_subset_of(s.zu()); },
          [&] { return is_prime(index) ? std::string() : std::string("|G:T| is not prime"); });
    }
  }
}

// Quotient, subgroup and monotonicity laws of the pair condition.
void run_pair_condition_laws(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  using K = Formation::Kind;
  const auto fs = s.formations_among({K::nilpotent, K::supersoluble, K::soluble});
  for (const auto& f : fs) sink.ensure("F=" + f.id());
  std::size_t pairs = 0;
  for (Idx h = 0; h < lat.size(); ++h) pairs += lat.subgroups_of(h).size();
  const std::size_t tuples = pairs * fs.size() * (ctx.normals().size() + lat.size());
  if (tuples > o.tuple_cap) {
    for (const auto& f : fs) sink.skip("F=" + f.id(), "too many (K, H) tuples: " + std::to_string(tuples));
    return;
  }
  for (const auto& f : fs) {
    const std::string key = "F=" + f.id();
    if (sink.skips_key(key)) continue;
    for (Idx h = 0; h < lat.size(); ++h) {
      const auto ks = lat.subgroups_of(h);
      std::vector<int> pair(lat.size(), -1);
      auto holds = [&](Idx k) {
        if (pair[k] < 0) pair[k] = pair_satisfies_f_supplement(ctx, lat[k], lat[h], f);
        return pair[k] == 1;
      };
      for (Idx k : ks) {
        auto base = [&] { return "H=" + s.code(h) + ";K=" + s.code(k); };
        for (Idx v : ks) {
          if (v == k || !lat.contains(v, k)) continue;
          sink.check(
              key, [&] { return base() + ";law=monotone;V=" + s.code(v); }, [&] { return holds(k); },
              [&] { return holds(v) ? std::string() : std::string("(V, H) fails"); });
        }
        for (const auto& n : ctx.normals()) {
          if (n.count() == 1 || (!n.is_subset_of(lat[h]) && std::gcd(lat.order_of(h), n.count()) != 1)) continue;
          sink.check(
              key, [&] { return base() + ";law=quotient;N=" + s.code(n); }, [&] { return holds(k); },
              [&] {
                auto q = ctx.quotient(n);
                return pair_satisfies_f_supplement(*q.ctx, q.map->image(lat[k]), q.map->image(lat[h]), f)
                           ? std::string()
                           : std::string("fails in G/N");
              });
        }
        for (Idx e = h + 1; e + 1 < lat.size(); ++e) {
          if (!lat.contains(e, h)) continue;
          sink.check(
              key, [&] { return base() + ";law=subgroup;E=" + s.code(e); }, [&] { return holds(k); },
              [&] {
                auto sub = ctx.subgroup(lat[e]);
                return pair_satisfies_f_supplement(*sub.ctx, sub.map->preimage(lat[k]), sub.map->preimage(lat[h]), f)
                           ? std::string()
                           : std::string("fails in E");
              });
        }
      }
    }
  }
}

// Closure laws of F_tau-supplementation under quotients and subgroups.
void run_f_tau_laws(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  Scope s(ctx, o);
  const auto& lat = s.lat;
  using K = Formation::Kind;
  const auto fs = s.formations_among({K::nilpotent, K::supersoluble, K::soluble});
  const auto taus = s.taus([](Functor f) { return claims(f, P::inductive); });
  for (Functor t : taus) sink.ensure(tau_key(t));
  const std::size_t tuples = lat.size() * (ctx.normals().size() + lat.size()) * fs.size() * taus.size();
  if (tuples > o.tuple_cap) {
    for (Functor t : taus) sink.skip(tau_key(t), "too many (H, N or E) tuples: " + std::to_string(tuples));
    return;
  }
  for (Functor t : taus) {
    const std::string key = tau_key(t);
    if (sink.skips_key(key)) continue;
    const bool hereditary = claims(t, P::hereditary);
    const auto members = tau_members(ctx, t);
    for (const auto& f : fs)
      for (Idx h = 0; h < lat.size(); ++h) {
        const Subgroup& hs = lat[h];
        auto base = [&] { return "F=" + f.id() + ";H=" + s.code(h); };
        auto in_g = [&] { return s.ftau(h, f, t); };
        for (const auto& n : ctx.normals()) {
          if (n.count() == 1) continue;
          const bool inside = n.is_subset_of(hs);
          if (!inside && std::gcd(hs.count(), n.count()) != 1) continue;
          auto in_q = [&] {
            auto q = ctx.quotient(n);
            return is_f_tau_supplemented(*q.ctx, q.map->image(hs), f, t);
          };
          if (inside)
            sink.check(
                key, [&] { return base() + ";law=1;N=" + s.code(n); }, [] { return true; },
                [&] { return in_g() == in_q() ? std::string() : std::string("G and G/N disagree"); });
          sink.check(
              key, [&] { return base() + ";law=3;N=" + s.code(n); }, in_g,
              [&] { return in_q() ? std::string() : std::string("HN/N fails in G/N"); });
        }
        const Subgroup hg = core(s.g, hs);
        for (Idx m : members) {
          if (!lat[m].is_subset_of(hs) || !hg.is_subset_of(lat[m])) continue;
          sink.check(
              key, [&] { return base() + ";law=2;S=" + s.code(m); },
              [&] { return pair_satisfies_f_supplement(ctx, lat[m], hs, f); },
              [&] { return in_g() ? std::string() : std::string("H is not F_tau-supplemented"); });
        }
        if (!hereditary) continue;
        for (Idx e = h + 1; e + 1 < lat.size(); ++e) {
          if (!lat.contains(e, h)) continue;
          sink.check(
              key, [&] { return base() + ";law=4;E=" + s.code(e); }, in_g,
              [&] {
                auto sub = ctx.subgroup(lat[e]);
                return is_f_tau_supplemented(*sub.ctx, sub.map->preimage(hs), f, t) ? std::string()
                                                                                    : std::string("fails in E");
              });
        }
      }
  }
}

// Regularity of the completely c-permutable functor on this group.
void run_ccp_regularity(GroupContext& ctx, const VerifyOptions& o, InstanceSink& sink) {
  const std::string key = "tau=ccp";
  if (ctx.order() > o.ccp_max_order) return;
  std::optional<FunctorWitness> w;
  sink.check(
      key, [&] { return w ? "H=" + subgroup_code(w->h) + ";N=" + subgroup_code(w->other) : std::string("-"); },
      [] { return true; },
      [&] {
        w = find_property_violation(ctx, Functor::completely_c_permutable, P::regular);
        return w ? "|G:N_G(H n N)| = " + std::to_string(w->index) + " is not a prime power" : std::string();
      });
}

std::vector<Statement> make_statements() {
  using S = Statement;
  auto b_mode = [](BMode m) {
    return [m](GroupContext& c, const VerifyOptions& o, InstanceSink& s) { run_cyclic_subgroup_criterion(c, o, s, m); };
  };
  const std::string z_u = "a conclusion E <= Z_F(G) with F not fixed is read with F = U (supersoluble)";
  std::vector<S> v;
  v.push_back(S{"T1.11", "supersolubility criterion via F(E) for soluble G", {P::phi_regular},
                "the converse direction is checked as existence of an admissible E", run_supersolubility_criterion});
  v.push_back(S{"TA", "maximal subgroups of non-cyclic Sylow subgroups of X give G in F",
                {P::regular, P::phi_regular, P::hereditary}, "F ranges over sol, super and psuper:p", run_maximal_subgroup_criterion});
  v.push_back(S{"TB.i", "small cyclic subgroups, X = E, tau hereditary Phi-quasiregular",
                {P::hereditary, P::phi_quasiregular}, "", b_mode(BMode::i)});
  v.push_back(S{"TB.ii", "small cyclic subgroups, X = F(E), E soluble, tau hereditary quasiregular",
                {P::hereditary, P::quasiregular}, "", b_mode(BMode::ii)});
  v.push_back(S{"TB.iii", "small cyclic subgroups, X = F*(E) or E, tau regular", {P::regular},
                "X = F* is read as X = F*(E); X = E is checked as well", b_mode(BMode::iii)});
  v.push_back(S{"T3.6", "maximal subgroups of P F_tau-supplemented give E p-nilpotent", {P::phi_regular}, "",
                run_p_nilpotency_maximal});
  v.push_back(S{"T4.9", "small cyclic subgroups of P F_tau-supplemented give E p-nilpotent",
                {P::hereditary, P::regular}, "", run_p_nilpotency_cyclic});
  v.push_back(S{"P3.5", "maximal subgroups of a normal p-subgroup give P in Z_F or Z_FPhi",
                {P::phi_quasiregular, P::quasiregular}, "the quasiregular case concludes P <= Z_F(G)",
                run_p_hypercentral_maximal});
  v.push_back(S{"P4.6", "small cyclic subgroups of a normal p-subgroup give P in Z_F or Z_FPhi",
                {P::phi_quasiregular, P::quasiregular}, "", run_p_hypercentral_cyclic});
  v.push_back(S{"C3.7", "maximal subgroups of non-cyclic Sylow subgroups of E give E in Z_U", {P::regular}, z_u,
                run_u_hypercentral_maximal});
  v.push_back(S{"C4.10", "small cyclic subgroups of non-cyclic Sylow subgroups of E give E in Z_U",
                {P::hereditary, P::quasiregular}, z_u, run_u_hypercentral_cyclic});
  v.push_back(S{"L3.3", "P n Z_F(T) normal in P lies in Z_F(G) when G = PT", {}, "", run_sylow_hypercentre_meet});
  v.push_back(S{"L3.4", "normal closures of intersections with p-power normaliser index", {},
                "one Sylow subgroup per prime", run_normal_closure_index});
  v.push_back(S{"L3.8", "some maximal subgroup of P is normal", {P::phi_quasiregular}, "", run_normal_maximal_subgroup});
  v.push_back(S{"L3.9", "E supersoluble from its non-cyclic Sylow subgroups", {P::phi_regular, P::inductive}, "",
                run_supersoluble_from_sylows});
  v.push_back(S{"L4.5", "supplements of small cyclic subgroups in a chief factor are G", {}, "", run_chief_factor_supplements});
  v.push_back(S{"L4.7", "O^p(G) != G when a hypercentral p-subgroup has a proper supplement", {}, "",
                run_proper_p_residual});
  v.push_back(S{"L4.8", "index of maximal supplements of minimal normal subgroups", {}, "", run_minimal_normal_supplement_index});
  v.push_back(S{"L2.1", "quotient, subgroup and monotonicity laws of the pair condition", {},
                "F ranges over nilp, super and sol", run_pair_condition_laws});
  v.push_back(S{"L2.2", "closure laws of F_tau-supplementation", {P::inductive, P::hereditary},
                "F ranges over nilp, super and sol; laws 1-3 use inductive tau, law 4 hereditary tau", run_f_tau_laws});
  v.push_back(S{"QB", "is the completely c-permutable functor regular", {}, "", run_ccp_regularity});
  return v;
}

}  // namespace

const std::vector<Statement>& statements() {
  static const std::vector<Statement> all = make_statements();
  return all;
}

const Statement& statement(std::string_view id) {
  for (const auto& s : statements())
    if (s.id == id) return s;
  throw InvalidArgument("unknown statement '" + std::string(id) + "'");
}

std::vector<std::string> resolve_suite(std::string_view id) {
  std::vector<std::string> out;
  if (id == "all") {
    for (const auto& s : statements()) out.push_back(s.id);
    return out;
  }
  while (true) {
    const auto comma = id.find(',');
    out.push_back(statement(id.substr(0, comma)).id);
    if (comma == std::string_view::npos) return out;
    id.remove_prefix(comma + 1);
  }
}

}  // namespace orelab
