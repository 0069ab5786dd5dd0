#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "orelab/structure.hpp"
#include "orelab/verifier.hpp"
#include "support.hpp"

using namespace orelab;

namespace {

CorpusEntry entry_for(const std::string& spec) {
  return CorpusEntry{GroupSpec::parse(spec), build(spec), {}, nullptr};
}

VerifyOptions quick(std::size_t max_order) {
  VerifyOptions o;
  o.max_order = max_order;
  o.cross_check_order = std::min<std::size_t>(max_order, 12);
  o.budget_seconds = 0;
  return o;
}

std::vector<CorpusEntry> soluble_upto(std::size_t n) {
  std::vector<CorpusEntry> out;
  for (const auto& e : generate_corpus(n))
    if (is_soluble_group(*e.group)) out.push_back(e);
  return out;
}

// Fails on every instance whose element count is odd.
Statement odd_detector() {
  return Statement{"L4.8", "test", {}, "", [](GroupContext& ctx, const VerifyOptions&, InstanceSink& sink) {
                     const auto& lat = ctx.lattice();
                     for (std::size_t i = 0; i < lat.size(); ++i)
                       sink.check(
                           "all", [&] { return "H=" + subgroup_code(lat[i]); }, [] { return true; },
                           [&] { return lat.order_of(i) % 2 ? std::string("odd") : std::string(); });
                   }};
}

}  // namespace

TEST_CASE("subgroup codes are hex bitsets") {
  auto g = build("cyclic(6)");
  CHECK(subgroup_code(g->trivial()) == "10");
  CHECK(subgroup_code(g->whole()) == "f3");
}

TEST_CASE("statement registry") {
  const std::vector<std::string> ids{"T1.11", "TA",   "TB.i", "TB.ii", "TB.iii", "T3.6", "T4.9",
                                     "P3.5",  "P4.6", "C3.7", "C4.10", "L3.3",   "L3.4", "L3.8",
                                     "L3.9",  "L4.5", "L4.7", "L4.8",  "L2.1",   "L2.2", "QB"};
  for (const auto& id : ids) CHECK(statement(id).id == id);
  CHECK(resolve_suite("all").size() == statements().size());
  CHECK(resolve_suite("TA") == std::vector<std::string>{"TA"});
  CHECK(resolve_suite("TA,L4.8") == std::vector<std::string>{"TA", "L4.8"});
  CHECK_THROWS_AS(resolve_suite("TA,"), InvalidArgument);
  CHECK_THROWS_AS(statement("T9.9"), InvalidArgument);
  CHECK_THROWS_AS(verify("T9.9", generate_corpus(4), quick(4)), InvalidArgument);
  CHECK_THROWS_AS(verify("L4.8", std::vector<CorpusEntry>{}, quick(4)), InvalidArgument);
}

TEST_CASE("S4 fails the supersolubility hypothesis for every admissible E") {
  VerifyOptions o = quick(24);
  o.functor = Functor::normal;
  const auto records = run_statement(statement("T1.11"), entry_for("symmetric(4)"), o);
  REQUIRE(records.size() == 1);
  CHECK(records[0].key == "tau=normal");
  CHECK(records[0].status == Status::vacuous);
  CHECK(records[0].hypothesis_true == 0);
  // E in {V4, A4, S4} plus the converse instance.
  CHECK(records[0].instances == 4);
}

TEST_CASE("supersolubility criterion on soluble groups to 60") {
  VerifyOptions o = quick(60);
  o.functor = Functor::normal;
  const auto r = verify("T1.11", soluble_upto(60), o);
  REQUIRE(r.suites.size() == 1);
  CHECK(r.suites[0].counterexamples == 0);
  CHECK(r.suites[0].hypothesis_true > 0);
  CHECK_FALSE(r.suites[0].weak());
}

TEST_CASE("maximal supplements of minimal normal subgroups to 60") {
  const auto r = verify("L4.8", generate_corpus(60), quick(60));
  CHECK(r.suites[0].counterexamples == 0);
  CHECK(r.suites[0].hypothesis_true > 0);
}

TEST_CASE("maximal-subgroup criterion sanity row on supersoluble groups") {
  VerifyOptions o = quick(24);
  o.functor = Functor::s_quasinormal;
  o.formation = kSupersoluble;
  for (const char* spec : {"dihedral(8)", "symmetric(3)", "semidirect(cyclic(7),cyclic(3),1)"}) {
    CAPTURE(spec);
    const auto e = entry_for(spec);
    const std::string params = "F=super;E=" + subgroup_code(e.group->whole()) + ";X=E";
    const auto recs = run_statement(statement("TA"), e, o, "tau=squasi", params);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].instances == 1);
    CHECK(recs[0].hypothesis_true == 1);
    CHECK(recs[0].status == Status::holds);
  }
}

TEST_CASE("counterexamples carry replayable witnesses") {
  const auto st = odd_detector();
  const auto e = entry_for("symmetric(3)");
  const auto recs = run_statement(st, e, quick(6));
  REQUIRE(recs.size() == 1);
  const Record& r = recs[0];
  CHECK(r.status == Status::counterexample);
  CHECK(r.instances == 6);
  CHECK(r.counterexamples == 2);  // orders 1 and 3
  const auto again = run_statement(st, e, quick(6), r.key, r.witness);
  REQUIRE(again.size() == 1);
  CHECK(again[0].instances == 1);
  CHECK(again[0].status == Status::counterexample);
  CHECK(again[0].witness == r.witness);
  CHECK(again[0].note == r.note);
}

TEST_CASE("replay reproduces recorded verdicts") {
  const auto r = verify("L4.8", generate_corpus(24), quick(24));
  std::size_t replayed = 0;
  for (const auto& rec : r.suites[0].records) {
    if (rec.status == Status::vacuous && replayed > 3) continue;
    const Record again = replay(rec, quick(24));
    CHECK(again.status == rec.status);
    CHECK(again.instances == rec.instances);
    CHECK(again.hypothesis_true == rec.hypothesis_true);
    ++replayed;
  }
  CHECK(replayed > 0);
}

TEST_CASE("reports are deterministic apart from timings") {
  const auto corpus = generate_corpus(24);
  VerifyOptions one = quick(24);
  VerifyOptions many = quick(24);
  many.jobs = 3;
  for (const char* suite : {"L4.8", "C3.7", "QB"}) {
    CAPTURE(suite);
    const auto a = report_json(verify(suite, corpus, one), false);
    const auto b = report_json(verify(suite, corpus, many), false);
    CHECK(a == b);
    const auto j = nlohmann::json::parse(report_json(verify(suite, corpus, one)));
    CHECK(j["schema"] == "orelab-report/1");
    CHECK(j["corpus"]["count"] == corpus.size());
    CHECK(j.contains("timings_ms"));
    CHECK(!nlohmann::json::parse(a).contains("timings_ms"));
  }
}

TEST_CASE("report formats") {
  Report empty;
  empty.suite = "none";
  const auto j = nlohmann::json::parse(report_json(empty));
  CHECK(j["results"].is_array());
  CHECK(j["results"].empty());

  const auto r = verify("L4.8", generate_corpus(12), quick(12));
  std::size_t non_vacuous = 0;
  for (const auto& rec : r.suites[0].records) non_vacuous += rec.status != Status::vacuous;
  std::istringstream text(report_text(r));
  std::size_t record_lines = 0;
  for (std::string line; std::getline(text, line);) record_lines += line.starts_with("  ");
  CHECK(record_lines == non_vacuous);
  CHECK_THROWS_AS(write_report(r, "/nonexistent-dir/x/report.json", "json"), IoError);
  CHECK_THROWS_AS(write_report(r, "/tmp/report.json", "yaml"), InvalidArgument);
}

TEST_CASE("ccp regularity search to 24 and on abelian groups") {
  const auto corpus = generate_corpus(24);
  const auto v = search_ccp_regularity(corpus, quick(24));
  CHECK(v.pass());
  CHECK(v.groups == corpus.size());
  std::vector<CorpusEntry> abelian;
  for (const auto& e : generate_corpus(48))
    if (e.group->is_abelian()) abelian.push_back(e);
  CHECK(search_ccp_regularity(abelian, quick(48)).pass());
  const auto r = verify("QB", corpus, quick(24));
  CHECK(r.suites[0].counterexamples == 0);
  CHECK(r.suites[0].records.size() == corpus.size());
}

TEST_CASE("time budget marks records skipped") {
  VerifyOptions o = quick(24);
  o.budget_seconds = 1e-9;
  const auto recs = run_statement(statement("L3.4"), entry_for("symmetric(4)"), o);
  REQUIRE_FALSE(recs.empty());
  for (const auto& r : recs) {
    CHECK(r.status == Status::skipped);
    CHECK(r.note == "time budget exceeded");
  }
}

TEST_CASE("cross-checks accompany suites that rely on functor properties") {
  const auto r = verify("C3.7", generate_corpus(12), quick(12));
  CHECK_FALSE(r.cross_checks.empty());
  for (const auto& c : r.cross_checks) {
    CAPTURE(functor_id(c.functor));
    CHECK(c.pass);
  }
  CHECK_FALSE(r.interpretations.empty());
}
