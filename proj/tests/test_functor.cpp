#include <doctest.h>

#include "orelab/functor.hpp"
#include "orelab/numbers.hpp"
#include "orelab/structure.hpp"
#include "support.hpp"

using namespace orelab;
using orelab::testing::span;

namespace {

bool sets_permute(const Group& g, const Subgroup& a, const Subgroup& b) {
  return product_set(g, a, b) == product_set(g, b, a);
}

std::vector<Subgroup> sylows_of(const SubgroupLattice& lat, const Subgroup& b, std::size_t p) {
  std::vector<Subgroup> out;
  const std::size_t size = p_part(b.count(), p);
  for (const auto& s : lat.subgroups())
    if (s.count() == size && s.is_subset_of(b)) out.push_back(s);
  return out;
}

bool brute_s_quasinormal(const SubgroupLattice& lat, const Subgroup& h) {
  const Group& g = lat.group();
  for (std::size_t p : prime_divisors(g.order()))
    for (const auto& s : sylows_of(lat, g.whole(), p))
      if (!sets_permute(g, h, s)) return false;
  return true;
}

bool brute_cap(const Group& g, const Subgroup& h) {
  const auto normals = normal_subgroups(g);
  for (const auto& a : normals)
    for (const auto& b : normals) {
      if (!b.is_subset_of(a) || a == b) continue;
      bool between = false;
      for (const auto& n : normals) between = between || (b.is_subset_of(n) && n.is_subset_of(a) && !(n == a) && !(n == b));
      if (between) continue;
      const bool covers = a.is_subset_of(product_set(g, h, b));
      const bool avoids = (h & a).is_subset_of(b);
      if (!covers && !avoids) return false;
    }
  return true;
}

bool brute_camp(const SubgroupLattice& lat, const Subgroup& h) {
  const Group& g = lat.group();
  for (const auto& l : lat.subgroups())
    for (const auto& k : lat.subgroups()) {
      if (!k.is_subset_of(l) || k == l) continue;
      bool maximal = true;
      for (const auto& m : lat.subgroups())
        maximal = maximal && !(k.is_subset_of(m) && m.is_subset_of(l) && !(m == k) && !(m == l));
      if (!maximal) continue;
      if (product_set(g, h, k) != product_set(g, h, l) && (h & k) != (h & l)) return false;
    }
  return true;
}

bool brute_ccp(const SubgroupLattice& lat, const Subgroup& h) {
  const Group& g = lat.group();
  for (const auto& e : lat.subgroups()) {
    if (!h.is_subset_of(e)) continue;
    for (const auto& a : lat.subgroups()) {
      if (!a.is_subset_of(e)) continue;
      bool found = false;
      e.for_each([&](Element x) { found = found || sets_permute(g, h, conjugate(g, a, g.inv(x))); });
      if (!found) return false;
    }
  }
  return true;
}

bool brute_modular(const SubgroupLattice& lat, const Subgroup& h) {
  const Group& g = lat.group();
  for (const auto& z : lat.subgroups())
    for (const auto& x : lat.subgroups()) {
      if (x.is_subset_of(z) && (join(g, x, h) & z) != join(g, x, h & z)) return false;
      if (h.is_subset_of(z) && (join(g, h, x) & z) != join(g, h, x & z)) return false;
    }
  return true;
}

bool brute_ss_quasinormal(const SubgroupLattice& lat, const Subgroup& h) {
  const Group& g = lat.group();
  for (const auto& b : lat.subgroups()) {
    if (product_set(g, h, b) != g.whole()) continue;
    bool ok = true;
    for (std::size_t p : prime_divisors(b.count()))
      for (const auto& s : sylows_of(lat, b, p)) ok = ok && sets_permute(g, h, s);
    if (ok) return true;
  }
  return false;
}

bool brute_sq_embedded(const SubgroupLattice& lat, const Subgroup& h) {
  for (std::size_t p : prime_divisors(h.count())) {
    const Subgroup hp = sylows_of(lat, h, p).front();
    bool found = false;
    for (const auto& w : lat.subgroups())
      found = found || (hp.is_subset_of(w) && p_part(w.count(), p) == hp.count() && brute_s_quasinormal(lat, w));
    if (!found) return false;
  }
  return true;
}

std::vector<Subgroup> members(GroupContext& ctx, Functor f) {
  std::vector<Subgroup> out;
  for (std::size_t i : tau_members(ctx, f)) out.push_back(ctx.lattice()[i]);
  return out;
}

}  // namespace

TEST_CASE("functor and property ids round-trip") {
  for (Functor f : all_functors()) CHECK(parse_functor(functor_id(f)) == f);
  for (FunctorProperty p : all_properties()) CHECK(parse_property(property_id(p)) == p);
  CHECK_THROWS_AS(parse_functor("quasi"), InvalidArgument);
  CHECK_THROWS_AS(parse_property("regular2"), InvalidArgument);
  CHECK(property_implies(FunctorProperty::regular, FunctorProperty::phi_quasiregular));
  CHECK(property_implies(FunctorProperty::hereditary, FunctorProperty::inductive));
  CHECK_FALSE(property_implies(FunctorProperty::quasiregular, FunctorProperty::regular));
  CHECK(has_claimed_property(Functor::camp, FunctorProperty::phi_quasiregular));
  CHECK_FALSE(has_claimed_property(Functor::camp, FunctorProperty::quasiregular));
  CHECK(has_claimed_property(Functor::completely_c_permutable, FunctorProperty::inductive));
  CHECK_FALSE(has_claimed_property(Functor::completely_c_permutable, FunctorProperty::regular));
}

TEST_CASE("functor membership examples") {
  auto s4 = GroupContext::make(build("symmetric(4)"));
  const Group& g4 = s4->group();
  const auto v4 = span(g4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  const auto a4 = span(g4, {"(1 2 3)", "(2 3 4)"});
  CHECK(members(*s4, Functor::normal) == std::vector<Subgroup>{g4.trivial(), v4, a4, g4.whole()});
  const auto dt = span(g4, {"(1 3)(2 4)"});
  CHECK_FALSE(is_s_quasinormal(*s4, dt));
  CHECK_FALSE(is_cap(*s4, span(g4, {"(1 2)(3 4)"})));
  CHECK_FALSE(is_sq_embedded(*s4, dt));
  CHECK(is_sq_embedded(*s4, span(g4, {"(1 2 3 4)", "(1 3)"})));
  CHECK(is_sq_embedded(*s4, span(g4, {"(1 2 3)"})));

  auto s3 = GroupContext::make(build("symmetric(3)"));
  const Group& g3 = s3->group();
  const auto t = span(g3, {"(1 2)"});
  const auto a3 = span(g3, {"(1 2 3)"});
  CHECK(members(*s3, Functor::s_quasinormal) == std::vector<Subgroup>{g3.trivial(), a3, g3.whole()});
  CHECK_FALSE(is_s_quasinormal(*s3, t));
  CHECK(is_cap(*s3, t));
  CHECK(is_camp(*s3, a3));
  CHECK(is_completely_c_permutable(*s3, t));
  CHECK(is_ss_quasinormal(*s3, t));
  CHECK(is_modular(*s3, a3));

  auto q8 = GroupContext::make(build("dicyclic(8)"));
  CHECK(tau_members(*q8, Functor::modular).size() == q8->lattice().size());

  auto one = GroupContext::make(build("cyclic(1)"));
  for (Functor f : all_functors()) CHECK(tau_members(*one, f) == std::vector<std::size_t>{0});

  auto big = GroupContext::make(build("product(symmetric(4),cyclic(3))"));
  std::size_t non_normal = 1;
  while (big->lattice().is_normal(non_normal)) ++non_normal;
  CHECK_THROWS_AS(in_tau(*big, Functor::completely_c_permutable, non_normal), TooLarge);
}

TEST_CASE("functor predicates agree with their definitions") {
  for (const auto& e : testing::corpus_upto(24)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    const auto& lat = ctx->lattice();
    const Group& g = *e.group;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      CAPTURE(i);
      const Subgroup& h = lat[i];
      CHECK(in_tau(*ctx, Functor::normal, i) == is_normal(g, h));
      CHECK(in_tau(*ctx, Functor::s_quasinormal, i) == brute_s_quasinormal(lat, h));
      CHECK(in_tau(*ctx, Functor::cap, i) == brute_cap(g, h));
      CHECK(in_tau(*ctx, Functor::ss_quasinormal, i) == brute_ss_quasinormal(lat, h));
      CHECK(in_tau(*ctx, Functor::sq_embedded, i) == brute_sq_embedded(lat, h));
      if (g.order() <= 16) {
        CHECK(in_tau(*ctx, Functor::camp, i) == brute_camp(lat, h));
        CHECK(in_tau(*ctx, Functor::completely_c_permutable, i) == brute_ccp(lat, h));
        CHECK(in_tau(*ctx, Functor::modular, i) == brute_modular(lat, h));
      }
    }
  }
}

TEST_CASE("functor containments and Kegel's theorem") {
  for (const auto& e : testing::corpus_upto(32)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    const auto& lat = ctx->lattice();
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const bool sq = in_tau(*ctx, Functor::s_quasinormal, i);
      if (lat.is_normal(i)) {
        CHECK(sq);
        CHECK(in_tau(*ctx, Functor::modular, i));
        CHECK(in_tau(*ctx, Functor::completely_c_permutable, i));
      }
      if (!sq) continue;
      CHECK(in_tau(*ctx, Functor::sq_embedded, i));
      CHECK(in_tau(*ctx, Functor::ss_quasinormal, i));
      CHECK(lat.subnormal_depth(i).has_value());
      CHECK(in_tau(*ctx, Functor::subnormally_embedded, i));
    }
    for (std::size_t i = 0; i < lat.size(); ++i)
      if (in_tau(*ctx, Functor::sq_embedded, i)) CHECK(in_tau(*ctx, Functor::subnormally_embedded, i));
  }
}

TEST_CASE("functor membership is invariant under relabelling") {
  for (const auto& e : testing::corpus_upto(24)) {
    CAPTURE(e.spec.to_string());
    const std::size_t n = e.group->order();
    std::vector<Element> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::reverse(relabel.begin() + 1, relabel.end());
    std::vector<std::uint16_t> t(n * n);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        t[relabel[x] * n + relabel[y]] = static_cast<std::uint16_t>(relabel[e.group->mul(x, y)]);
    auto a = GroupContext::make(e.group);
    auto b = GroupContext::make(make_group(n, t));
    for (std::size_t i = 0; i < a->lattice().size(); ++i) {
      Subgroup moved(n);
      a->lattice()[i].for_each([&](Element x) { moved.set(relabel[x]); });
      for (Functor f : all_functors()) CHECK(in_tau(*a, f, i) == in_tau(*b, f, moved));
    }
  }
}

TEST_CASE("functor property checks on a small corpus") {
  const auto& corpus = testing::corpus_upto(24);
  CHECK_THROWS_AS(check_property(Functor::normal, FunctorProperty::regular, {}), InvalidArgument);
  for (Functor f : {Functor::normal, Functor::s_quasinormal, Functor::cap, Functor::modular})
    for (FunctorProperty p : {FunctorProperty::inductive, FunctorProperty::regular}) {
      CAPTURE(functor_id(f));
      CAPTURE(property_id(p));
      const auto v = check_property(f, p, corpus);
      CHECK(v.pass());
      CHECK(v.instances > 0);
    }
  // Every Sylow subgroup is S-quasinormally embedded, so sqe shares the
  // regularity verdicts of the Sylow subgroups; up to 24 no group has a
  // non-abelian minimal normal subgroup, so regular and quasiregular agree.
  const auto reg = check_property(Functor::sq_embedded, FunctorProperty::regular, corpus);
  const auto qreg = check_property(Functor::sq_embedded, FunctorProperty::quasiregular, corpus);
  CHECK(reg.pass() == qreg.pass());

  // The witness is reproducible and deterministic across job counts.
  const auto one = check_property(Functor::subnormally_embedded, FunctorProperty::regular, corpus);
  const auto four = check_property(Functor::subnormally_embedded, FunctorProperty::regular, corpus, {4});
  REQUIRE(one.witness.has_value() == four.witness.has_value());
  CHECK(one.instances == four.instances);
  if (one.witness) {
    CHECK(one.witness->group_position == four.witness->group_position);
    CHECK(one.witness->h == four.witness->h);
    const auto& w = *one.witness;
    const Group& g = *corpus[w.group_position].group;
    CHECK(g.order() / normalizer(g, w.h & w.other).count() == w.index);
    CHECK_FALSE(is_prime_power_of(w.index, prime_divisors(w.h.count())[0]));
  }
}
