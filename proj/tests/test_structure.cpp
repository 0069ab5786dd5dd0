#include <doctest.h>

#include "orelab/context.hpp"
#include "orelab/corpus.hpp"
#include "orelab/formation.hpp"
#include "orelab/numbers.hpp"
#include "orelab/structure.hpp"
#include "support.hpp"

using namespace orelab;
using orelab::testing::span;

namespace {

struct S4 {
  GroupPtr g = build("symmetric(4)");
  Subgroup v4 = span(*g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  Subgroup a4 = span(*g, {"(1 2 3)", "(2 3 4)"});
  Subgroup d8 = span(*g, {"(1 2 3 4)", "(1 3)"});
  Subgroup c4 = span(*g, {"(1 2 3 4)"});
};

}  // namespace

TEST_CASE("core, closure, centralisers and normalisers in S4") {
  S4 s;
  const Group& g = *s.g;
  CHECK(core(g, s.d8) == s.v4);
  CHECK(core(g, s.c4).count() == 1);
  CHECK(core(g, s.a4) == s.a4);
  CHECK(normal_closure(g, span(g, {"(1 2)(3 4)"})) == s.v4);
  CHECK(normal_closure(g, span(g, {"(1 2)"})) == g.whole());
  CHECK(normal_closure(g, s.a4) == s.a4);
  CHECK(centralizer(g, s.v4) == s.v4);
  CHECK(normalizer(g, s.d8) == s.d8);
  CHECK(normalizer(g, s.a4) == g.whole());
  CHECK(centralizer_of_factor(g, ChiefFactor{s.v4, g.trivial()}) == s.v4);
  CHECK_THROWS_AS(centralizer_of_factor(g, ChiefFactor{s.c4, g.trivial()}), InvalidArgument);

  auto s3 = build("symmetric(3)");
  const auto a3 = span(*s3, {"(1 2 3)"});
  CHECK(centralizer_of_factor(*s3, ChiefFactor{a3, s3->trivial()}) == a3);
  auto c6 = build("cyclic(6)");
  CHECK(centralizer_of_factor(*c6, ChiefFactor{generate_subgroup(*c6, std::vector<Element>{3}), c6->trivial()}) ==
        c6->whole());
}

TEST_CASE("sylow, hall, frattini and primitivity") {
  S4 s;
  SubgroupLattice l4(s.g);
  CHECK(sylow(l4, 2).count() == 8);
  CHECK(sylow(SubgroupLattice(build("symmetric(3)")), 5).count() == 1);
  CHECK_THROWS_AS(sylow(l4, 4), InvalidArgument);
  SubgroupLattice l5(build("alternating(5)"));
  CHECK_FALSE(hall(l5, {3, 5}).has_value());
  CHECK(hall(l5, {2, 3})->count() == 12);

  auto q8 = build("dicyclic(8)");
  SubgroupLattice lq(q8);
  CHECK(frattini(lq) == centre(*q8));
  CHECK(centre(*q8).count() == 2);
  CHECK(frattini(l4).count() == 1);
  CHECK(frattini(SubgroupLattice(build("cyclic(5)"))).count() == 1);

  CHECK(is_primitive(l4));
  CHECK_FALSE(is_primitive(lq));
  CHECK(is_primitive(SubgroupLattice(build("cyclic(7)"))));
}

TEST_CASE("fitting, generalised fitting and hypercentre") {
  S4 s;
  CHECK(fitting(*s.g) == s.v4);
  auto a5 = build("alternating(5)");
  CHECK(generalized_fitting(a5) == a5->whole());
  auto q8 = build("dicyclic(8)");
  CHECK(fitting(*q8) == q8->whole());
  CHECK(hypercentre(*q8) == q8->whole());
  CHECK(hypercentre(*build("symmetric(3)")).count() == 1);
  auto s3c2 = build("product(symmetric(3),cyclic(2))");
  const auto z = hypercentre(*s3c2);
  CHECK(z.count() == 2);
  CHECK(z == centre(*s3c2));
  CHECK(upper_central_series(*s3c2).size() == 2);
}

TEST_CASE("chief series and minimal normal subgroups") {
  S4 s;
  const auto normals = normal_subgroups(*s.g);
  CHECK(normals.size() == 4);
  CHECK(minimal_normal_subgroups(normals) == std::vector<Subgroup>{s.v4});
  const auto series = chief_series(normals);
  std::vector<std::size_t> orders;
  for (const auto& f : series.factors()) orders.push_back(f.order());
  CHECK(orders == std::vector<std::size_t>{4, 3, 2});
  auto a5 = build("alternating(5)");
  CHECK(minimal_normal_subgroups(normal_subgroups(*a5)) == std::vector<Subgroup>{a5->whole()});
  auto sl = build("sl23");
  const auto mins = minimal_normal_subgroups(normal_subgroups(*sl));
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].count() == 2);
}

TEST_CASE("subnormality") {
  S4 s;
  const Group& g = *s.g;
  CHECK(is_subnormal(g, span(g, {"(1 2)(3 4)"})));
  CHECK_FALSE(is_subnormal(g, span(g, {"(1 2)"})));
  CHECK(is_subnormal(g, g.whole()));
  SubgroupLattice lat(s.g);
  for (std::size_t i = 0; i < lat.size(); ++i) CHECK(is_subnormal(g, lat[i]) == lat.subnormal_depth(i).has_value());
  // Sylow subgroups are subnormally embedded; a transposition subgroup of S3 is too.
  CHECK(is_subnormally_embedded(lat, lat.index_of(s.d8)));
  SubgroupLattice l3(build("symmetric(3)"));
  CHECK(is_subnormally_embedded(l3, l3.index_of(span(l3.group(), {"(1 2)"}))));
  // Direct evaluation of the definition on every subgroup of A5.
  SubgroupLattice l5(build("alternating(5)"));
  for (std::size_t i = 0; i < l5.size(); ++i) {
    bool expect = true;
    for (std::size_t p : prime_divisors(l5.order_of(i))) {
      const auto ps = sylow_of(l5, i, p);
      bool any = false;
      for (std::size_t w = 0; w < l5.size(); ++w)
        any = any || (l5.subnormal_depth(w) && ps.is_subset_of(l5[w]) && p_part(l5.order_of(w), p) == ps.count());
      expect = expect && any;
    }
    CHECK(is_subnormally_embedded(l5, i) == expect);
  }
}

TEST_CASE("structural invariants across the corpus") {
  for (const auto& e : testing::corpus_upto(24)) {
    CAPTURE(e.spec.to_string());
    const Group& g = *e.group;
    SubgroupLattice lat(e.group);
    const auto normals = normal_subgroups(g);
    std::vector<Subgroup> flagged;
    for (std::size_t i : lat.normal_indices()) flagged.push_back(lat[i]);
    CHECK(normals == flagged);

    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Subgroup c = core(g, lat[i]);
      CHECK(c.is_subset_of(lat[i]));
      CHECK(is_normal(g, c));
      Subgroup largest = g.trivial();
      for (const auto& n : normals)
        if (n.is_subset_of(lat[i])) largest = join(g, largest, n);
      CHECK(c == largest);
    }

    // Phi(G) is the set of non-generators.
    const Subgroup phi = frattini(lat);
    CHECK(is_normal(g, phi));
    ElementSet nongen(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      bool needed = false;
      for (std::size_t m = 0; m + 1 < lat.size() && !needed; ++m)
        needed = !lat[m].test(x) && generate_subgroup(g, [&] {
                   ElementSet s = lat[m];
                   s.set(x);
                   return s;
                 }()) == g.whole();
      if (!needed) nongen.set(x);
    }
    CHECK(phi == nongen);

    const Subgroup f = fitting(g, normals);
    const Subgroup fs = generalized_fitting(e.group, normals);
    CHECK(f.is_subset_of(fs));
    CHECK(is_nilpotent_group(*subgroup_as_group(e.group, f).group));
    if (is_soluble_group(g)) CHECK(f == fs);

    const auto factors = all_chief_factors(g, normals);
    for (const auto& cf : chief_series(normals).factors())
      CHECK(std::find(factors.begin(), factors.end(), cf) != factors.end());
    for (const auto& cf : factors) {
      // Nothing normal strictly between.
      for (const auto& n : normals)
        CHECK_FALSE((cf.lower.is_subset_of(n) && n.is_subset_of(cf.upper) && !(n == cf.lower) && !(n == cf.upper)));
    }
    std::size_t covers = 0;
    for (const auto& k : normals)
      for (const auto& h : normals) {
        if (!k.is_subset_of(h) || k == h) continue;
        bool between = false;
        for (const auto& n : normals)
          between = between || (k.is_subset_of(n) && n.is_subset_of(h) && !(n == k) && !(n == h));
        covers += !between;
      }
    CHECK(covers == factors.size());
    for (const auto& n : normals) {
      const auto through = chief_series(normals, &n);
      CHECK(std::find(through.terms.begin(), through.terms.end(), n) != through.terms.end());
    }
  }
}
