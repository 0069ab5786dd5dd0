#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "orelab/corpus.hpp"
#include "orelab/structure.hpp"
#include "support.hpp"

using namespace orelab;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("orelab_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

}  // namespace

TEST_CASE("group specs round-trip through their canonical form") {
  for (const char* s : {"cyclic(6)", "abelian(2,2,4)", "dihedral(8)", "dicyclic(8)", "symmetric(4)", "alternating(5)",
                        "sl23", "product(symmetric(3),cyclic(2))", "semidirect(cyclic(7),cyclic(3),1)"})
    CHECK(GroupSpec::parse(s).to_string() == s);
  for (const auto& e : testing::corpus_upto(48)) CHECK(GroupSpec::parse(e.spec.to_string()) == e.spec);
}

TEST_CASE("malformed specs report a position") {
  for (const char* s : {"", "cyclic", "cyclic(", "cyclic(x)", "blob(3)", "product(cyclic(2))", "cyclic(2))"})
    CHECK_THROWS_AS(GroupSpec::parse(s), ParseError);
  try {
    GroupSpec::parse("cyclic(x)");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.field() > 0);
  }
  CHECK_THROWS_AS(build("symmetric(6)"), InvalidArgument);
  CHECK_THROWS_AS(build("dihedral(7)"), InvalidArgument);
  CHECK_THROWS_AS(build("cyclic(193)"), InvalidArgument);
}

TEST_CASE("family builds") {
  auto d8 = build("dihedral(8)");
  CHECK(d8->order() == 8);
  CHECK_FALSE(d8->is_abelian());
  CHECK(SubgroupLattice(d8).size() == 10);
  CHECK(build("cyclic(1)")->order() == 1);
  auto sl = build("sl23");
  CHECK(sl->order() == 24);
  const auto mins = minimal_normal_subgroups(normal_subgroups(*sl));
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].count() == 2);
  CHECK(SubgroupLattice(build("dicyclic(8)")).size() == 6);
}

TEST_CASE("small corpora") {
  const auto six = generate_corpus(6);
  std::vector<std::size_t> orders;
  for (const auto& e : six) orders.push_back(e.group->order());
  CHECK(orders == std::vector<std::size_t>{1, 2, 3, 4, 4, 5, 6, 6});
  const auto one = generate_corpus(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].group->order() == 1);
  // Deterministic ordering.
  const auto again = generate_corpus(24);
  const auto& first = testing::corpus_upto(24);
  REQUIRE(again.size() == first.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].spec == first[i].spec);
}

TEST_CASE("corpus to 24 has no isomorphic pairs and the expected members") {
  const auto& c = testing::corpus_upto(24);
  bool s4 = false, sl23 = false;
  for (const auto& e : c) {
    s4 = s4 || are_isomorphic(*e.group, *build("symmetric(4)"));
    sl23 = sl23 || are_isomorphic(*e.group, *build("sl23"));
    CHECK(e.fingerprint == fingerprint(*e.group));
  }
  CHECK(s4);
  CHECK(sl23);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size() && c[j].group->order() == c[i].group->order(); ++j) {
      CAPTURE(c[i].spec.to_string());
      CAPTURE(c[j].spec.to_string());
      CHECK_FALSE(are_isomorphic(*c[i].group, *c[j].group));
    }
}

TEST_CASE("cayley and perm files") {
  const auto dir = scratch_dir("files");
  auto s4 = build("symmetric(4)");
  save_group(*s4, dir / "s4.cayley");
  auto back = load_group(dir / "s4.cayley");
  CHECK(back->order() == 24);
  CHECK(std::equal(back->table().begin(), back->table().end(), s4->table().begin(), s4->table().end()));
  CHECK(back->labels() == s4->labels());
  CHECK(are_isomorphic(*back, *s4));
  CHECK(format_cayley(*back) == format_cayley(*s4));

  auto perm = parse_group_text("perm 1 4\n(1 2 3 4)\n(1 2)\n");
  CHECK(perm->order() == 24);
  CHECK(are_isomorphic(*perm, *s4));

  // A table that is a Latin square but not associative.
  const std::string bad = "cayley 1 3\n0 1 2\n1 0 2\n2 2 0\n";
  CHECK_THROWS_AS(parse_group_text(bad), InvalidGroup);
  const std::string nonassoc =
      "cayley 1 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
  try {
    parse_group_text(nonassoc);
    FAIL("expected InvalidGroup");
  } catch (const InvalidGroup& e) {
    CHECK(e.law() == "associativity");
  }
  try {
    parse_group_text("cayley 1 2\n0 1\n1 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == 2);
  }
  CHECK_THROWS_AS(parse_group_text("cayley 1 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("perm 1 3\n(1 4)\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("perm 1 6\n(1 2 3 4 5 6)\n(1 2)\n"), TooLarge);
  CHECK_THROWS_AS(load_group(dir / "missing.cayley"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("lattice cache round trips and recovers from corruption") {
  const auto dir = scratch_dir("cache");
  CorpusEntry entry{GroupSpec::parse("symmetric(4)"), build("symmetric(4)"), {}, nullptr};
  auto lat = cached_lattice(entry, dir);
  REQUIRE(lat);
  CHECK(lat->size() == 30);
  SubgroupLattice fresh(entry.group);
  CHECK(lat->subgroups() == fresh.subgroups());

  const auto bytes = encode_lattice(*lat);
  CHECK(encode_lattice(*decode_lattice(entry.group, bytes)) == bytes);

  std::filesystem::path file;
  for (const auto& f : std::filesystem::directory_iterator(dir)) file = f.path();
  REQUIRE(!file.empty());
  const std::string stored = slurp(file);
  CHECK(std::vector<std::uint8_t>(stored.begin(), stored.end()) == bytes);

  // Reload from disk, then corrupt the file and check it is recomputed.
  CorpusEntry again{entry.spec, entry.group, {}, nullptr};
  auto reloaded = cached_lattice(again, dir);
  CHECK(reloaded->subgroups() == fresh.subgroups());
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    CHECK(reloaded->is_normal(i) == fresh.is_normal(i));
    CHECK(reloaded->subnormal_depth(i) == fresh.subnormal_depth(i));
  }
  std::string broken = stored;
  broken[broken.size() / 2] = static_cast<char>(broken[broken.size() / 2] ^ 0x5a);
  spit(file, broken);
  std::vector<std::uint8_t> broken_bytes(broken.begin(), broken.end());
  CHECK_THROWS(decode_lattice(entry.group, broken_bytes));
  CorpusEntry third{entry.spec, entry.group, {}, nullptr};
  auto recomputed = cached_lattice(third, dir);
  CHECK(recomputed->subgroups() == fresh.subgroups());
  CHECK(slurp(file) == stored);

  spit(file, stored.substr(0, 7));
  CorpusEntry fourth{entry.spec, entry.group, {}, nullptr};
  CHECK(cached_lattice(fourth, dir)->size() == 30);
  // A lattice saved for one group does not load for another of equal order.
  CHECK_THROWS(decode_lattice(build("sl23"), bytes));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cached lattices equal fresh enumeration on sampled entries") {
  const auto dir = scratch_dir("sample");
  auto corpus = generate_corpus(64);
  std::random_device rd;
  const unsigned seed = rd();
  CAPTURE(seed);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
  for (int k = 0; k < 5; ++k) {
    CorpusEntry& e = corpus[pick(rng)];
    CAPTURE(e.spec.to_string());
    cached_lattice(e, dir);
    CorpusEntry reread{e.spec, e.group, e.fingerprint, nullptr};
    auto loaded = cached_lattice(reread, dir);
    CHECK(loaded->subgroups() == SubgroupLattice(e.group).subgroups());
  }
  std::filesystem::remove_all(dir);
}
