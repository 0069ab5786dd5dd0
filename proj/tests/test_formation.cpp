#include <doctest.h>

#include <map>

#include "orelab/context.hpp"
#include "orelab/corpus.hpp"
#include "orelab/formation.hpp"
#include "orelab/numbers.hpp"
#include "support.hpp"

using namespace orelab;
using orelab::testing::span;

namespace {

const Formation kSuper = Formation::parse("super");

// Huppert: supersoluble iff every maximal subgroup has prime index.
bool supersoluble_oracle(const SubgroupLattice& lat) {
  for (std::size_t m : lat.maximal_subgroups_of(lat.whole_index()))
    if (!is_prime(lat.group().order() / lat.order_of(m))) return false;
  return true;
}

// Nilpotent iff every Sylow subgroup is normal.
bool nilpotent_oracle(const SubgroupLattice& lat) {
  for (std::size_t p : prime_divisors(lat.group().order()))
    if (!is_normal(lat.group(), sylow(lat, p))) return false;
  return true;
}

// Soluble iff no nontrivial subgroup is perfect.
bool soluble_oracle(const SubgroupLattice& lat) {
  for (std::size_t i = 1; i < lat.size(); ++i)
    if (derived_subgroup(lat.group(), lat[i]) == lat[i]) return false;
  return true;
}

// p-nilpotent iff the elements of order prime to p form a subgroup of order |G|_p'.
bool p_nilpotent_oracle(const Group& g, std::size_t p) {
  ElementSet s(g.order());
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) % p != 0) s.set(x);
  return s.count() == g.order() / p_part(g.order(), p) && is_subgroup(g, s);
}

}  // namespace

TEST_CASE("formation ids round-trip") {
  for (const char* id : {"triv", "nilp", "sol", "super", "pnilp:3", "psuper:5"})
    CHECK(Formation::parse(id).id() == id);
  CHECK_THROWS_AS(Formation::parse("pnilp:4"), InvalidArgument);
  CHECK_THROWS_AS(Formation::parse("qnilp"), InvalidArgument);
  CHECK_THROWS_AS(Formation::parse("abelian"), InvalidArgument);
}

TEST_CASE("membership examples") {
  CHECK(is_member(build("symmetric(3)"), kSuper));
  CHECK_FALSE(is_member(build("symmetric(4)"), kSuper));
  CHECK(is_member(build("alternating(5)"), Formation{Formation::Kind::quasinilpotent}));
  CHECK_FALSE(is_member(build("symmetric(3)"), Formation{Formation::Kind::quasinilpotent}));
  CHECK(is_member(build("product(alternating(5),cyclic(2))"), Formation{Formation::Kind::quasinilpotent}));
  CHECK(is_member(build("cyclic(1)"), Formation::parse("triv")));
  CHECK_FALSE(is_member(build("cyclic(2)"), Formation::parse("triv")));
  CHECK(is_member(build("alternating(4)"), Formation::parse("pnilp:3")));
  CHECK_FALSE(is_member(build("alternating(4)"), Formation::parse("pnilp:2")));
  CHECK(is_member(build("alternating(4)"), Formation::parse("psuper:3")));
  CHECK_FALSE(is_member(build("alternating(4)"), Formation::parse("psuper:2")));
  CHECK(is_member(build("alternating(5)"), Formation::parse("psuper:7")));
}

TEST_CASE("membership agrees with independent characterisations") {
  for (const auto& e : testing::corpus_upto(48)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    const auto& lat = ctx->lattice();
    CHECK(is_member(*ctx, Formation::parse("nilp")) == nilpotent_oracle(lat));
    CHECK(is_member(*ctx, Formation::parse("sol")) == soluble_oracle(lat));
    CHECK(is_member(*ctx, kSuper) == supersoluble_oracle(lat));
    bool all_p_super = true;
    for (std::size_t p : prime_divisors(e.group->order())) {
      CHECK(is_member(*ctx, Formation{Formation::Kind::p_nilpotent, p}) == p_nilpotent_oracle(*e.group, p));
      all_p_super = all_p_super && is_member(*ctx, Formation{Formation::Kind::p_supersoluble, p});
    }
    CHECK(all_p_super == is_member(*ctx, kSuper));
  }
}

TEST_CASE("formations are closed under quotients and invariant under relabelling") {
  for (const auto& e : testing::corpus_upto(32)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    const std::size_t n = e.group->order();
    std::vector<Element> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::reverse(relabel.begin() + 1, relabel.end());
    std::vector<std::uint16_t> t(n * n);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        t[relabel[x] * n + relabel[y]] = static_cast<std::uint16_t>(relabel[e.group->mul(x, y)]);
    auto copy = GroupContext::make(make_group(n, t));
    for (const auto& f : catalog_formations(n)) {
      CAPTURE(f.id());
      const bool in = is_member(*ctx, f);
      CHECK(is_member(*copy, f) == in);
      const Subgroup res = residual(*ctx, f);
      CHECK(is_member(*ctx->quotient(res).ctx, f));
      if (!in) continue;
      for (const auto& m : ctx->normals()) CHECK(is_member(*ctx->quotient(m).ctx, f));
    }
  }
}

TEST_CASE("F-centrality by explicit construction") {
  auto s3 = GroupContext::make(build("symmetric(3)"));
  const auto a3 = span(s3->group(), {"(1 2 3)"});
  CHECK(f_central_semidirect(*s3, ChiefFactor{a3, s3->group().trivial()}, kSuper));
  auto s4 = GroupContext::make(build("symmetric(4)"));
  const auto v4 = span(s4->group(), {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK_FALSE(f_central_semidirect(*s4, ChiefFactor{v4, s4->group().trivial()}, kSuper));
  auto c6 = GroupContext::make(build("cyclic(6)"));
  const auto c2 = generate_subgroup(c6->group(), std::vector<Element>{3});
  CHECK(f_central_semidirect(*c6, ChiefFactor{c2, c6->group().trivial()}, kSuper));
}

TEST_CASE("fast paths agree with the construction on small corpus groups") {
  for (const auto& e : testing::corpus_upto(40)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    for (const auto& cf : ctx->chief_factors())
      for (const auto& f : catalog_formations(e.group->order())) {
        CAPTURE(f.id());
        const auto fast = f_central_fast(*ctx, cf, f);
        REQUIRE(fast.has_value());
        CHECK(*fast == f_central_semidirect(*ctx, cf, f));
      }
  }
}

TEST_CASE("hypercentres") {
  auto s3 = GroupContext::make(build("symmetric(3)"));
  CHECK(f_hypercentre(*s3, kSuper) == s3->group().whole());
  auto s4 = GroupContext::make(build("symmetric(4)"));
  CHECK(f_hypercentre(*s4, kSuper).count() == 1);
  CHECK(f_phi_hypercentre(*s4, kSuper).count() == 1);
  auto q8 = GroupContext::make(build("dicyclic(8)"));
  CHECK(f_phi_hypercentre(*q8, kNilpotent) == q8->group().whole());
  CHECK(residual(*s4, kSuper) == span(s4->group(), {"(1 2)(3 4)", "(1 3)(2 4)"}));
  auto a5 = GroupContext::make(build("alternating(5)"));
  CHECK(residual(*a5, Formation::parse("sol")) == a5->group().whole());
  // Nilpotent hypercentre is the ordinary hypercentre.
  for (const auto& e : testing::corpus_upto(48)) {
    auto ctx = GroupContext::make(e.group);
    CHECK(f_hypercentre(*ctx, kNilpotent) == hypercentre(*e.group));
  }
}

TEST_CASE("hypercentre laws across the corpus") {
  for (const auto& e : testing::corpus_upto(36)) {
    CAPTURE(e.spec.to_string());
    auto ctx = GroupContext::make(e.group);
    const Group& g = *e.group;
    for (const auto& f : catalog_formations(g.order())) {
      CAPTURE(f.id());
      const Subgroup z = f_hypercentre(*ctx, f);
      const Subgroup zphi = f_phi_hypercentre(*ctx, f);
      CHECK(z.is_subset_of(zphi));
      CHECK(is_normal(g, z));
      CHECK(is_member(*ctx, f) == (z == g.whole()));
      if (f.kind == Formation::Kind::identity) CHECK(z.count() == 1);
      // Z_F(G) N / N <= Z_F(G / N).
      for (const auto& n : ctx->normals()) {
        auto q = ctx->quotient(n);
        CHECK(q.map->image(z).is_subset_of(f_hypercentre(*q.ctx, f)));
      }
      // Jordan-Holder: (order, centrality) multisets agree along different chief series.
      std::map<std::pair<std::size_t, bool>, int> reference;
      bool first = true;
      for (const auto& n : ctx->normals()) {
        std::map<std::pair<std::size_t, bool>, int> counts;
        for (const auto& cf : chief_series(ctx->normals(), &n).factors()) ++counts[{cf.order(), is_f_central(*ctx, cf, f)}];
        if (first) reference = counts;
        first = false;
        CHECK(counts == reference);
      }
    }
  }
}

TEST_CASE("satellite check for the nilpotent formation") {
  auto s4 = build("symmetric(4)");
  const auto v4 = span(*s4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK_FALSE(satellite_check_nilpotent(*s4, v4, 2));
  auto q8 = build("dicyclic(8)");
  CHECK(satellite_check_nilpotent(*q8, q8->whole(), 2));
  CHECK_THROWS_AS(satellite_check_nilpotent(*s4, v4, 3), InvalidArgument);
  for (const auto& e : testing::corpus_upto(48)) {
    auto ctx = GroupContext::make(e.group);
    const Subgroup z = f_hypercentre(*ctx, kNilpotent);
    for (const auto& n : ctx->normals())
      for (std::size_t p : prime_divisors(n.count()))
        if (is_prime_power_of(n.count(), p))
          CHECK(satellite_check_nilpotent(*e.group, n, p) == n.is_subset_of(z));
  }
}
