#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/group.hpp"
#include "orelab/lattice.hpp"

namespace orelab {

// Largest order any corpus family or input file may produce.
inline constexpr std::size_t kCorpusOrderCap = 192;

enum class Family { cyclic, abelian, dihedral, dicyclic, symmetric, alternating, sl23, semidirect, product, file };

// Canonical forms:
//   cyclic(n)  abelian(a,b,...)  dihedral(2n)  dicyclic(4n)  symmetric(n)
//   alternating(n)  sl23  product(A,B)  file(path)
//   semidirect(A,cyclic(m),k)  where k indexes the automorphisms a of A with
//   a^m = 1 in lexicographic order of their element maps; k = 0 is the
//   trivial action.
struct GroupSpec {
  Family family = Family::cyclic;
  std::vector<std::size_t> params;
  std::vector<GroupSpec> children;
  std::string path;

  // Throws ParseError (line 1, field = character offset) on malformed text.
  static GroupSpec parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Throws InvalidArgument when a parameter is out of range or the order
// exceeds kCorpusOrderCap.
GroupPtr build(const GroupSpec& spec);
inline GroupPtr build(std::string_view spec) { return build(GroupSpec::parse(spec)); }

// Group generated by permutations of {0..degree-1}; perms[i][x] is the image
// of x.  Elements are listed in breadth-first order from the identity and
// labelled in cycle notation on 1..degree.  Throws TooLarge above `cap`.
GroupPtr permutation_group(std::size_t degree, const std::vector<std::vector<Element>>& perms,
                           std::size_t cap = kCorpusOrderCap);

// All automorphisms of g as element maps, sorted lexicographically.
// Throws TooLarge when g has order above 64.
std::vector<std::vector<Element>> automorphisms(const Group& g);

struct Fingerprint {
  std::size_t order = 0;
  bool abelian = false;
  std::vector<std::size_t> order_multiset;
  std::size_t centre_order = 0;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const Group& g);

struct CorpusEntry {
  GroupSpec spec;
  GroupPtr group;
  Fingerprint fingerprint;
  std::shared_ptr<const SubgroupLattice> lattice;  // filled on demand
};

// Family instances of order <= max_order plus pairwise direct products
// within the bound, one per isomorphism type, ordered by (order, spec).
std::vector<CorpusEntry> generate_corpus(std::size_t max_order);

// cayley v1 text with label trailers.
std::string format_cayley(const Group& g);
// Accepts cayley v1 or perm v1.  Throws ParseError or InvalidGroup.
GroupPtr parse_group_text(std::string_view text);
void save_group(const Group& g, const std::filesystem::path& path);
GroupPtr load_group(const std::filesystem::path& path);

// Binary lattice cache: magic, version, group table checksum, subgroup bit
// sets, trailing CRC-32.  Written to a temporary file then renamed.
std::vector<std::uint8_t> encode_lattice(const SubgroupLattice& lat);
// Throws ParseError on a bad header, checksum or table mismatch and
// InvalidGroup when the stored sets fail revalidation.
std::shared_ptr<const SubgroupLattice> decode_lattice(const GroupPtr& g, const std::vector<std::uint8_t>& bytes);
void save_lattice(const SubgroupLattice& lat, const std::filesystem::path& path);
std::shared_ptr<const SubgroupLattice> load_lattice(const GroupPtr& g, const std::filesystem::path& path);
// Loads entry's lattice from cache_dir, recomputing and republishing it when
// the file is missing or corrupt.
std::shared_ptr<const SubgroupLattice> cached_lattice(CorpusEntry& entry, const std::filesystem::path& cache_dir,
                                                      LatticeLimits limits = {});

}  // namespace orelab
