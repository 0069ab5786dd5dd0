#include "orelab/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <boost/crc.hpp>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace orelab {

namespace {

struct FamilyName {
  Family family;
  std::string_view name;
};
constexpr FamilyName kFamilies[] = {
    {Family::cyclic, "cyclic"},       {Family::abelian, "abelian"},   {Family::dihedral, "dihedral"},
    {Family::dicyclic, "dicyclic"},   {Family::symmetric, "symmetric"}, {Family::alternating, "alternating"},
    {Family::sl23, "sl23"},           {Family::semidirect, "semidirect"}, {Family::product, "product"},
    {Family::file, "file"},
};

std::string_view family_name(Family f) {
  for (const auto& fn : kFamilies)
    if (fn.family == f) return fn.name;
  return "?";
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse_all() {
    GroupSpec s = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::size_t parse_number() {
    skip_ws();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  GroupSpec parse_spec() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    GroupSpec s;
    bool known = false;
    for (const auto& fn : kFamilies)
      if (fn.name == name) {
        s.family = fn.family;
        known = true;
      }
    if (!known) {
      pos_ = start;
      fail("unknown group family '" + std::string(name) + "'");
    }
    switch (s.family) {
      case Family::sl23:
        break;
      case Family::file: {
        expect('(');
        const std::size_t open = pos_;
        int depth = 1;
        while (pos_ < text_.size() && depth > 0) {
          if (text_[pos_] == '(') ++depth;
          if (text_[pos_] == ')') --depth;
          if (depth > 0) ++pos_;
        }
        if (depth != 0) fail("unterminated file path");
        s.path = std::string(text_.substr(open, pos_ - open));
        ++pos_;
        if (s.path.empty()) fail("empty file path");
        break;
      }
      case Family::product:
        expect('(');
        s.children.push_back(parse_spec());
        expect(',');
        s.children.push_back(parse_spec());
        expect(')');
        break;
      case Family::semidirect:
        expect('(');
        s.children.push_back(parse_spec());
        expect(',');
        s.children.push_back(parse_spec());
        expect(',');
        s.params.push_back(parse_number());
        expect(')');
        break;
      default:
        expect('(');
        s.params.push_back(parse_number());
        while (eat(',')) s.params.push_back(parse_number());
        expect(')');
        if (s.family != Family::abelian && s.params.size() != 1) fail("expected exactly one parameter");
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

GroupPtr cyclic_group(std::size_t n) {
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
  return make_group(n, std::move(t));
}

// r^i s^j at index j * n + i.
GroupPtr dihedral_group(std::size_t order) {
  const std::size_t n = order / 2;
  std::vector<std::uint16_t> t(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t i = x % n, a = x / n, k = y % n, b = y / n;
      const std::size_t r = a == 0 ? (i + k) % n : (i + n - k) % n;
      t[x * order + y] = static_cast<std::uint16_t>(((a + b) % 2) * n + r);
    }
  return make_group(order, std::move(t));
}

// a^i x^j at index j * 2n + i with a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1.
GroupPtr dicyclic_group(std::size_t order) {
  const std::size_t m = order / 2, n = order / 4;
  std::vector<std::uint16_t> t(order * order);
  for (std::size_t p = 0; p < order; ++p)
    for (std::size_t q = 0; q < order; ++q) {
      const std::size_t i = p % m, j = p / m, k = q % m, l = q / m;
      std::size_t e, x;
      if (j == 0) {
        e = (i + k) % m;
        x = l;
      } else if (l == 0) {
        e = (i + m - k) % m;
        x = 1;
      } else {
        e = (i + m - k + n) % m;
        x = 0;
      }
      t[p * order + q] = static_cast<std::uint16_t>(x * m + e);
    }
  return make_group(order, std::move(t));
}

std::vector<Element> compose(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

std::string cycle_label(const std::vector<Element>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == x) continue;
    out += '(';
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) out += ' ';
      out += std::to_string(y + 1);
      first = false;
      y = p[y];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

GroupPtr symmetric_like(std::size_t n, bool even_only) {
  std::vector<std::vector<Element>> gens;
  if (n >= 2) {
    std::vector<Element> cyc(n), tr(n);
    std::iota(tr.begin(), tr.end(), 0);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Element>((i + 1) % n);
    if (!even_only) {
      std::swap(tr[0], tr[1]);
      gens = {tr, cyc};
    } else if (n >= 3) {
      // 3-cycles (1 2 k) generate the alternating group.
      for (std::size_t k = 2; k < n; ++k) {
        std::vector<Element> c(n);
        std::iota(c.begin(), c.end(), 0);
        c[0] = 1;
        c[1] = static_cast<Element>(k);
        c[k] = 0;
        gens.push_back(c);
      }
    }
  }
  return permutation_group(std::max<std::size_t>(n, 1), gens);
}

GroupPtr sl23_group() {
  struct M {
    int a, b, c, d;
    auto operator<=>(const M&) const = default;
  };
  std::vector<M> elems;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) elems.push_back({a, b, c, d});
  const M id{1, 0, 0, 1};
  std::stable_partition(elems.begin(), elems.end(), [&](const M& m) { return m == id; });
  const std::size_t n = elems.size();
  auto find = [&](const M& m) {
    return static_cast<std::uint16_t>(std::find(elems.begin(), elems.end(), m) - elems.begin());
  };
  std::vector<std::uint16_t> t(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const M& x = elems[i];
    labels.push_back("[" + std::to_string(x.a) + " " + std::to_string(x.b) + ";" + std::to_string(x.c) + " " +
                     std::to_string(x.d) + "]");
    for (std::size_t j = 0; j < n; ++j) {
      const M& y = elems[j];
      M p{(x.a * y.a + x.b * y.c) % 3, (x.a * y.b + x.b * y.d) % 3, (x.c * y.a + x.d * y.c) % 3,
          (x.c * y.b + x.d * y.d) % 3};
      t[i * n + j] = find(p);
    }
  }
  return make_group(n, std::move(t), std::move(labels));
}

std::size_t expected_order(const GroupSpec& s) {
  auto one = [&] { return s.params.at(0); };
  switch (s.family) {
    case Family::cyclic:
    case Family::dihedral:
    case Family::dicyclic:
      return one();
    case Family::abelian: {
      std::size_t o = 1;
      for (std::size_t f : s.params) {
        if (f == 0 || o > kCorpusOrderCap) return kCorpusOrderCap + 1;
        o *= f;
      }
      return o;
    }
    case Family::symmetric:
    case Family::alternating: {
      std::size_t f = 1;
      for (std::size_t i = 2; i <= std::min<std::size_t>(one(), 6); ++i) f *= i;
      if (s.family == Family::alternating && one() >= 2) f /= 2;
      return f;
    }
    case Family::sl23:
      return 24;
    case Family::semidirect:
    case Family::product: {
      const std::size_t a = expected_order(s.children[0]), b = expected_order(s.children[1]);
      if (a > kCorpusOrderCap || b > kCorpusOrderCap) return kCorpusOrderCap + 1;
      return a * b;
    }
    case Family::file:
      return 0;
  }
  return 0;
}

// Extends a partial map defined on <gens[0..k)> to <gens[0..k]> sending
// gens[k] to y; false on conflict or loss of injectivity.
bool extend_map(const Group& g, const std::vector<Element>& gens, std::size_t k, Element y,
                std::vector<Element>& map, std::vector<Element>& images) {
  constexpr Element unset = ~Element{0};
  std::vector<Element> remembered = map;
  std::vector<Element> queue;
  for (Element x = 0; x < g.order(); ++x)
    if (map[x] != unset) queue.push_back(x);
  std::vector<Element> imgs(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(k));
  imgs.push_back(y);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Element x = queue[qi];
    for (std::size_t i = 0; i <= k; ++i) {
      const Element z = g.mul(x, gens[i]);
      const Element v = g.mul(map[x], imgs[i]);
      if (map[z] == unset) {
        map[z] = v;
        queue.push_back(z);
      } else if (map[z] != v) {
        map = std::move(remembered);
        return false;
      }
    }
  }
  ElementSet seen(g.order());
  std::size_t defined = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (map[x] != unset) {
      ++defined;
      seen.set(map[x]);
    }
  if (seen.count() != defined) {
    map = std::move(remembered);
    return false;
  }
  images.resize(k);
  images.push_back(y);
  return true;
}

void search_automorphisms(const Group& g, const std::vector<Element>& gens, std::size_t k, std::vector<Element>& map,
                          std::vector<Element>& images, std::vector<std::vector<Element>>& out) {
  if (k == gens.size()) {
    out.push_back(map);
    if (out.size() > 50000) throw TooLarge("automorphism group too large to enumerate");
    return;
  }
  for (Element y = 1; y < g.order(); ++y) {
    if (g.element_order(y) != g.element_order(gens[k])) continue;
    std::vector<Element> saved = map;
    if (extend_map(g, gens, k, y, map, images)) search_automorphisms(g, gens, k + 1, map, images, out);
    map = std::move(saved);
  }
}

std::vector<Element> power_map(const std::vector<Element>& a, std::size_t e) {
  std::vector<Element> r(a.size());
  std::iota(r.begin(), r.end(), 0);
  for (std::size_t i = 0; i < e; ++i) r = compose(a, r);
  return r;
}

GroupPtr build_semidirect(const GroupSpec& s) {
  if (s.children[1].family != Family::cyclic) throw InvalidArgument("semidirect: acting group must be cyclic(m)");
  GroupPtr a = build(s.children[0]);
  const std::size_t m = s.children[1].params[0];
  GroupPtr c = build(s.children[1]);
  const std::size_t k = s.params[0];
  std::vector<Element> alpha;
  if (k == 0) {
    alpha.resize(a->order());
    std::iota(alpha.begin(), alpha.end(), 0);
  } else {
    std::vector<std::vector<Element>> chosen;
    for (auto& au : automorphisms(*a)) {
      auto p = power_map(au, m);
      bool id = true;
      for (Element x = 0; x < p.size(); ++x) id = id && p[x] == x;
      if (id) chosen.push_back(std::move(au));
    }
    if (k >= chosen.size())
      throw InvalidArgument("semidirect: action index " + std::to_string(k) + " out of range (" +
                            std::to_string(chosen.size()) + " actions)");
    alpha = std::move(chosen[k]);
  }
  std::vector<std::vector<Element>> perm(m);
  for (std::size_t j = 0; j < m; ++j) perm[j] = power_map(alpha, j);
  return semidirect_product(Action(c, a, std::move(perm)));
}

std::string format_spec(const GroupSpec& s) {
  std::string out(family_name(s.family));
  switch (s.family) {
    case Family::sl23:
      return out;
    case Family::file:
      return out + "(" + s.path + ")";
    case Family::product:
      return out + "(" + format_spec(s.children[0]) + "," + format_spec(s.children[1]) + ")";
    case Family::semidirect:
      return out + "(" + format_spec(s.children[0]) + "," + format_spec(s.children[1]) + "," +
             std::to_string(s.params[0]) + ")";
    default: {
      out += '(';
      for (std::size_t i = 0; i < s.params.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.params[i]);
      }
      return out + ')';
    }
  }
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

std::size_t parse_index(const std::string& field, std::size_t line, std::size_t pos) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) throw ParseError(line, pos, "expected a number, got '" + field + "'");
  return v;
}

GroupPtr parse_cayley(const std::vector<std::string>& lines, std::size_t order) {
  if (order == 0 || order > kCorpusOrderCap)
    throw ParseError(1, 3, "order " + std::to_string(order) + " outside 1.." + std::to_string(kCorpusOrderCap));
  std::vector<std::uint16_t> table;
  table.reserve(order * order);
  std::vector<std::string> labels;
  std::size_t rows = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_fields(lines[li]);
    if (fields.empty()) continue;
    if (fields[0][0] == '#') {
      if (fields.size() >= 4 && fields[0] == "#" && fields[1] == "label") {
        const std::size_t i = parse_index(fields[2], li + 1, 3);
        if (i >= order) throw ParseError(li + 1, 3, "label index out of range");
        if (labels.empty()) labels.assign(order, "");
        std::string name = fields[3];
        for (std::size_t k = 4; k < fields.size(); ++k) name += " " + fields[k];
        labels[i] = name;
      }
      continue;
    }
    if (rows == order) throw ParseError(li + 1, 1, "more than " + std::to_string(order) + " rows");
    if (fields.size() != order)
      throw ParseError(li + 1, std::min(fields.size(), order) + 1,
                       "row has " + std::to_string(fields.size()) + " entries, expected " + std::to_string(order));
    for (std::size_t f = 0; f < order; ++f) {
      const std::size_t v = parse_index(fields[f], li + 1, f + 1);
      if (v >= order) throw ParseError(li + 1, f + 1, "index " + std::to_string(v) + " out of range");
      table.push_back(static_cast<std::uint16_t>(v));
    }
    ++rows;
  }
  if (rows != order) throw ParseError(lines.size(), 1, "expected " + std::to_string(order) + " rows, got " + std::to_string(rows));
  if (!labels.empty() && std::find(labels.begin(), labels.end(), "") != labels.end())
    throw ParseError(lines.size(), 1, "labels must cover every element");
  return make_group(order, std::move(table), std::move(labels));
}

std::vector<Element> parse_cycles(const std::string& line, std::size_t degree, std::size_t lineno) {
  std::vector<Element> p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  skip();
  while (i < line.size()) {
    if (line[i] != '(') throw ParseError(lineno, i + 1, "expected '('");
    ++i;
    std::vector<Element> cyc;
    while (true) {
      skip();
      if (i < line.size() && line[i] == ')') {
        ++i;
        break;
      }
      const std::size_t start = i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      if (start == i) throw ParseError(lineno, start + 1, "expected a point");
      const std::size_t v = parse_index(line.substr(start, i - start), lineno, start + 1);
      if (v < 1 || v > degree) throw ParseError(lineno, start + 1, "point out of range");
      if (used[v - 1]) throw ParseError(lineno, start + 1, "point repeated");
      used[v - 1] = true;
      cyc.push_back(static_cast<Element>(v - 1));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip();
  }
  return p;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint32_t crc32(const std::uint8_t* data, std::size_t n) {
  boost::crc_32_type crc;
  crc.process_bytes(data, n);
  return crc.checksum();
}

std::uint32_t table_checksum(const Group& g) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(g.table().size() * 2);
  for (std::uint16_t v : g.table()) {
    bytes.push_back(static_cast<std::uint8_t>(v));
    bytes.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  return crc32(bytes.data(), bytes.size());
}

constexpr char kLatticeMagic[4] = {'O', 'L', 'A', 'T'};
constexpr std::uint32_t kLatticeVersion = 1;

void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 1000000) + "_" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int family_rank(Family f) { return static_cast<int>(f); }

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) { return SpecParser(text).parse_all(); }

std::string GroupSpec::to_string() const { return format_spec(*this); }

GroupPtr build(const GroupSpec& spec) {
  const std::size_t order = expected_order(spec);
  if (order > kCorpusOrderCap)
    throw InvalidArgument(spec.to_string() + " exceeds order cap " + std::to_string(kCorpusOrderCap));
  auto one = [&] { return spec.params.at(0); };
  switch (spec.family) {
    case Family::cyclic:
      if (one() == 0) throw InvalidArgument("cyclic(n) needs n >= 1");
      return cyclic_group(one());
    case Family::abelian: {
      if (spec.params.empty()) throw InvalidArgument("abelian needs at least one factor");
      for (std::size_t f : spec.params)
        if (f == 0) throw InvalidArgument("abelian factors must be positive");
      GroupPtr g = cyclic_group(spec.params[0]);
      for (std::size_t i = 1; i < spec.params.size(); ++i) g = direct_product(*g, *cyclic_group(spec.params[i]));
      return g;
    }
    case Family::dihedral:
      if (one() < 2 || one() % 2) throw InvalidArgument("dihedral(order) needs an even order >= 2");
      return dihedral_group(one());
    case Family::dicyclic:
      if (one() < 4 || one() % 4) throw InvalidArgument("dicyclic(order) needs a multiple of 4");
      return dicyclic_group(one());
    case Family::symmetric:
    case Family::alternating:
      if (one() < 1 || one() > 5) throw InvalidArgument(std::string(family_name(spec.family)) + "(n) needs 1 <= n <= 5");
      return symmetric_like(one(), spec.family == Family::alternating);
    case Family::sl23:
      return sl23_group();
    case Family::semidirect:
      return build_semidirect(spec);
    case Family::product: {
      auto a = build(spec.children[0]);
      auto b = build(spec.children[1]);
      return direct_product(*a, *b);
    }
    case Family::file:
      return load_group(spec.path);
  }
  throw InvalidArgument("unknown family");
}

GroupPtr permutation_group(std::size_t degree, const std::vector<std::vector<Element>>& perms, std::size_t cap) {
  std::vector<Element> id(degree);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& p : perms) {
    if (p.size() != degree) throw InvalidArgument("permutation of wrong degree");
    std::vector<bool> hit(degree, false);
    for (Element x : p) {
      if (x >= degree || hit[x]) throw InvalidArgument("not a permutation");
      hit[x] = true;
    }
  }
  std::vector<std::vector<Element>> elems{id};
  std::map<std::vector<Element>, Element> index{{id, 0}};
  for (std::size_t qi = 0; qi < elems.size(); ++qi)
    for (const auto& p : perms) {
      auto q = compose(elems[qi], p);
      if (index.contains(q)) continue;
      if (elems.size() >= cap) throw TooLarge("permutation group exceeds order " + std::to_string(cap));
      index.emplace(q, static_cast<Element>(elems.size()));
      elems.push_back(std::move(q));
    }
  const std::size_t n = elems.size();
  std::vector<std::uint16_t> t(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(cycle_label(elems[a]));
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>(index.at(compose(elems[a], elems[b])));
  }
  return make_group(n, std::move(t), std::move(labels));
}

std::vector<std::vector<Element>> automorphisms(const Group& g) {
  if (g.order() > 64) throw TooLarge("automorphism enumeration limited to order 64");
  const auto gens = small_generating_set(g);
  std::vector<Element> map(g.order(), ~Element{0});
  map[0] = 0;
  std::vector<Element> images;
  std::vector<std::vector<Element>> out;
  search_automorphisms(g, gens, 0, map, images, out);
  std::sort(out.begin(), out.end());
  return out;
}

Fingerprint fingerprint(const Group& g) {
  const auto inv = invariants(g);
  return Fingerprint{inv.order, inv.abelian, inv.order_multiset, inv.centre_order};
}

std::vector<CorpusEntry> generate_corpus(std::size_t max_order) {
  max_order = std::min(max_order, kCorpusOrderCap);
  auto spec = [](Family f, std::vector<std::size_t> params, std::vector<GroupSpec> children = {}) {
    GroupSpec s;
    s.family = f;
    s.params = std::move(params);
    s.children = std::move(children);
    return s;
  };
  std::vector<GroupSpec> base;
  for (std::size_t n = 1; n <= max_order; ++n) base.push_back(spec(Family::cyclic, {n}));
  // Invariant factor lists f1 | f2 | ... with at least two factors.
  std::vector<std::vector<std::size_t>> stack;
  for (std::size_t f = 2; f * f <= max_order; ++f) stack.push_back({f});
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    const std::size_t prod = std::accumulate(cur.begin(), cur.end(), std::size_t{1}, std::multiplies<>());
    if (cur.size() >= 2) base.push_back(spec(Family::abelian, cur));
    for (std::size_t next = cur.back(); prod * next <= max_order; next += cur.back()) {
      auto ext = cur;
      ext.push_back(next);
      stack.push_back(std::move(ext));
    }
  }
  for (std::size_t n = 2; n <= max_order; n += 2) base.push_back(spec(Family::dihedral, {n}));
  for (std::size_t n = 8; n <= max_order; n += 4) base.push_back(spec(Family::dicyclic, {n}));
  for (std::size_t n = 1; n <= 5; ++n) {
    if (expected_order(spec(Family::symmetric, {n})) <= max_order) base.push_back(spec(Family::symmetric, {n}));
    if (expected_order(spec(Family::alternating, {n})) <= max_order) base.push_back(spec(Family::alternating, {n}));
  }
  if (max_order >= 24) base.push_back(spec(Family::sl23, {}));

  // Split extensions A : C_m with A abelian (or Q8) of modest automorphism group.
  std::vector<GroupSpec> actees;
  for (const auto& s : base)
    if ((s.family == Family::cyclic && s.params[0] >= 3) || s.family == Family::abelian ||
        (s.family == Family::dicyclic && s.params[0] == 8))
      if (2 * expected_order(s) <= max_order) actees.push_back(s);
  std::vector<GroupSpec> extensions;
  for (const auto& a : actees) {
    GroupPtr ga = build(a);
    std::vector<std::vector<Element>> autos;
    try {
      autos = automorphisms(*ga);
    } catch (const TooLarge&) {
      continue;
    }
    if (autos.size() > 2000) continue;
    for (std::size_t m = 2; ga->order() * m <= max_order; ++m) {
      std::size_t k = 0;
      for (const auto& au : autos) {
        auto p = power_map(au, m);
        bool id = true;
        for (Element x = 0; x < p.size(); ++x) id = id && p[x] == x;
        if (!id) continue;
        if (k > 0) extensions.push_back(spec(Family::semidirect, {k}, {a, spec(Family::cyclic, {m})}));
        ++k;
      }
    }
  }
  base.insert(base.end(), extensions.begin(), extensions.end());

  struct Candidate {
    GroupSpec spec;
    std::string key;
    GroupPtr group;
    Fingerprint fp;
  };
  auto order_key = [](const Candidate& a, const Candidate& b) {
    if (a.group->order() != b.group->order()) return a.group->order() < b.group->order();
    if (a.spec.family != b.spec.family) return family_rank(a.spec.family) < family_rank(b.spec.family);
    if (a.key.size() != b.key.size()) return a.key.size() < b.key.size();
    return a.key < b.key;
  };
  auto dedupe = [&](std::vector<Candidate> cands) {
    std::sort(cands.begin(), cands.end(), order_key);
    std::map<Fingerprint, std::vector<std::size_t>> buckets;
    std::vector<Candidate> kept;
    for (auto& c : cands) {
      auto& bucket = buckets[c.fp];
      bool dup = false;
      for (std::size_t k : bucket)
        if (are_isomorphic(*kept[k].group, *c.group, kCorpusOrderCap)) {
          dup = true;
          break;
        }
      if (dup) continue;
      bucket.push_back(kept.size());
      kept.push_back(std::move(c));
    }
    return kept;
  };
  auto candidate = [](GroupSpec s) {
    Candidate c;
    c.group = build(s);
    c.fp = fingerprint(*c.group);
    c.key = s.to_string();
    c.spec = std::move(s);
    return c;
  };

  std::vector<Candidate> cands;
  for (auto& s : base) cands.push_back(candidate(std::move(s)));
  auto kept = dedupe(std::move(cands));
  std::vector<Candidate> all = kept;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i; j < kept.size(); ++j) {
      const std::size_t a = kept[i].group->order(), b = kept[j].group->order();
      if (a < 2 || b < 2 || a * b > max_order) continue;
      all.push_back(candidate(spec(Family::product, {}, {kept[i].spec, kept[j].spec})));
    }
  auto final_set = dedupe(std::move(all));
  std::vector<CorpusEntry> out;
  out.reserve(final_set.size());
  for (auto& c : final_set) out.push_back(CorpusEntry{std::move(c.spec), c.group, std::move(c.fp), nullptr});
  return out;
}

std::string format_cayley(const Group& g) {
  const std::size_t n = g.order();
  std::string out = "cayley 1 " + std::to_string(n) + "\n";
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (b) out += ' ';
      out += std::to_string(g.mul(a, b));
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < g.labels().size(); ++i) out += "# label " + std::to_string(i) + " " + g.labels()[i] + "\n";
  return out;
}

GroupPtr parse_group_text(std::string_view text) {
  const auto lines = split_lines(text);
  const auto header = split_fields(lines.at(0));
  if (header.size() != 3) throw ParseError(1, 1, "expected header '<cayley|perm> 1 <n>'");
  if (header[0] != "cayley" && header[0] != "perm") throw ParseError(1, 1, "unknown format '" + header[0] + "'");
  if (header[1] != "1") throw ParseError(1, 2, "unsupported version '" + header[1] + "'");
  const std::size_t n = parse_index(header[2], 1, 3);
  if (header[0] == "cayley") return parse_cayley(lines, n);
  if (n == 0 || n > 64) throw ParseError(1, 3, "degree outside 1..64");
  std::vector<std::vector<Element>> gens;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_fields(lines[li]);
    if (fields.empty() || fields[0][0] == '#') continue;
    gens.push_back(parse_cycles(lines[li], n, li + 1));
  }
  return permutation_group(n, gens);
}

void save_group(const Group& g, const std::filesystem::path& path) { write_atomically(path, format_cayley(g)); }

GroupPtr load_group(const std::filesystem::path& path) { return parse_group_text(read_file(path)); }

std::vector<std::uint8_t> encode_lattice(const SubgroupLattice& lat) {
  std::vector<std::uint8_t> out(kLatticeMagic, kLatticeMagic + 4);
  const std::size_t words = lat.size() ? lat[0].words().size() : 0;
  put_u32(out, kLatticeVersion);
  put_u32(out, static_cast<std::uint32_t>(lat.group().order()));
  put_u32(out, table_checksum(lat.group()));
  put_u32(out, static_cast<std::uint32_t>(lat.size()));
  put_u32(out, static_cast<std::uint32_t>(words));
  for (const auto& s : lat.subgroups())
    for (std::uint64_t w : s.words()) {
      put_u32(out, static_cast<std::uint32_t>(w));
      put_u32(out, static_cast<std::uint32_t>(w >> 32));
    }
  put_u32(out, crc32(out.data(), out.size()));
  return out;
}

std::shared_ptr<const SubgroupLattice> decode_lattice(const GroupPtr& g, const std::vector<std::uint8_t>& bytes) {
  constexpr std::size_t header = 4 + 5 * 4;
  if (bytes.size() < header + 4) throw ParseError(1, 0, "lattice cache truncated");
  if (!std::equal(kLatticeMagic, kLatticeMagic + 4, bytes.begin())) throw ParseError(1, 0, "bad lattice cache magic");
  const std::uint32_t stored = get_u32(bytes, bytes.size() - 4);
  if (crc32(bytes.data(), bytes.size() - 4) != stored) throw ParseError(1, bytes.size() - 4, "lattice cache checksum mismatch");
  if (get_u32(bytes, 4) != kLatticeVersion) throw ParseError(1, 4, "unsupported lattice cache version");
  const std::size_t order = get_u32(bytes, 8);
  if (order != g->order() || get_u32(bytes, 12) != table_checksum(*g))
    throw ParseError(1, 8, "lattice cache belongs to a different group");
  const std::size_t count = get_u32(bytes, 16), words = get_u32(bytes, 20);
  if (words != (order + 63) / 64 || bytes.size() != header + count * words * 8 + 4)
    throw ParseError(1, 16, "lattice cache size mismatch");
  std::vector<Subgroup> subs;
  subs.reserve(count);
  std::size_t at = header;
  for (std::size_t i = 0; i < count; ++i) {
    Subgroup s(order);
    for (std::size_t w = 0; w < words; ++w, at += 8) {
      const std::uint64_t v = get_u32(bytes, at) | static_cast<std::uint64_t>(get_u32(bytes, at + 4)) << 32;
      for (std::size_t b = 0; b < 64; ++b)
        if (v >> b & 1U) {
          if (w * 64 + b >= order) throw InvalidGroup("lattice-universe", "bit beyond group order");
          s.set(static_cast<Element>(w * 64 + b));
        }
    }
    subs.push_back(std::move(s));
  }
  return SubgroupLattice::from_subgroups(g, std::move(subs));
}

void save_lattice(const SubgroupLattice& lat, const std::filesystem::path& path) {
  const auto bytes = encode_lattice(lat);
  write_atomically(path, std::string(bytes.begin(), bytes.end()));
}

std::shared_ptr<const SubgroupLattice> load_lattice(const GroupPtr& g, const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  return decode_lattice(g, std::vector<std::uint8_t>(raw.begin(), raw.end()));
}

std::shared_ptr<const SubgroupLattice> cached_lattice(CorpusEntry& entry, const std::filesystem::path& cache_dir,
                                                      LatticeLimits limits) {
  if (entry.lattice) return entry.lattice;
  const std::string key = entry.spec.to_string();
  const std::uint32_t h = crc32(reinterpret_cast<const std::uint8_t*>(key.data()), key.size());
  char name[32];
  std::snprintf(name, sizeof name, "%08x.lat", h);
  const std::filesystem::path path = cache_dir / name;
  if (std::filesystem::exists(path)) {
    try {
      entry.lattice = load_lattice(entry.group, path);
      return entry.lattice;
    } catch (const ParseError&) {
    } catch (const InvalidGroup&) {
    }
  }
  entry.lattice = std::make_shared<const SubgroupLattice>(entry.group, limits);
  std::filesystem::create_directories(cache_dir);
  save_lattice(*entry.lattice, path);
  return entry.lattice;
}

}  // namespace orelab
