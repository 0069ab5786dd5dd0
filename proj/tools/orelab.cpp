#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "orelab/corpus.hpp"
#include "orelab/formation.hpp"
#include "orelab/functor.hpp"
#include "orelab/structure.hpp"
#include "orelab/supplement.hpp"
#include "orelab/verifier.hpp"

using namespace orelab;

namespace {

constexpr int kCounterexample = 2;
constexpr int kInputError = 3;

std::string label(const Group& g, Element e) {
  if (!g.labels().empty()) return g.labels()[e];
  return "#" + std::to_string(e);
}

std::string describe(const Group& g, const Subgroup& s) {
  std::string out = "order " + std::to_string(s.count()) + ": {";
  bool first = true;
  s.for_each([&](Element e) {
    out += (first ? "" : ", ") + label(g, e);
    first = false;
  });
  return out + "}";
}

// Comma-separated element labels (commas inside brackets belong to the
// label) or #index tokens.
Subgroup parse_subgroup(const Group& g, const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  tokens.push_back(cur);
  std::vector<Element> gens;
  for (auto t : tokens) {
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.empty() || t == "()" || t == "1") continue;
    const auto& labels = g.labels();
    auto it = std::find(labels.begin(), labels.end(), t);
    if (it != labels.end()) {
      gens.push_back(static_cast<Element>(it - labels.begin()));
      continue;
    }
    if (t.front() == '#') {
      std::size_t used = 0;
      const unsigned long v = std::stoul(t.substr(1), &used);
      if (used + 1 == t.size() && v < g.order()) {
        gens.push_back(static_cast<Element>(v));
        continue;
      }
    }
    throw InvalidArgument("no element labelled '" + t + "'");
  }
  return generate_subgroup(g, gens);
}

int compute(const std::string& spec, const std::string& what) {
  auto ctx = GroupContext::make(build(spec));
  const Group& g = ctx->group();
  auto show = [&](const Subgroup& s) { std::cout << describe(g, s) << "\n"; };
  if (what == "subgroups") {
    const auto& lat = ctx->lattice();
    std::cout << lat.size() << " subgroups\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
      std::cout << i << " order " << lat.order_of(i) << (lat.is_normal(i) ? " normal" : "") << " gens:";
      for (Element e : lat.generators(i)) std::cout << " " << label(g, e);
      std::cout << "\n";
    }
  } else if (what == "frattini") {
    show(ctx->frattini());
  } else if (what == "fitting") {
    show(fitting(g, ctx->normals()));
  } else if (what == "fstar") {
    show(generalized_fitting(ctx->group_ptr(), ctx->normals()));
  } else if (what == "hypercentre") {
    show(hypercentre(g));
  } else if (what == "chief-series") {
    for (const auto& t : ctx->chief_series().terms) show(t);
  } else if (what.starts_with("zf:")) {
    show(f_hypercentre(*ctx, Formation::parse(what.substr(3))));
  } else if (what.starts_with("zfphi:")) {
    show(f_phi_hypercentre(*ctx, Formation::parse(what.substr(6))));
  } else if (what.starts_with("residual:")) {
    show(residual(*ctx, Formation::parse(what.substr(9))));
  } else {
    throw InvalidArgument("unknown --what '" + what + "'");
  }
  return 0;
}

int check(const std::string& spec, const std::string& gens, const std::string& pred) {
  auto ctx = GroupContext::make(build(spec));
  const Predicate p = Predicate::parse(pred);
  const Subgroup h = parse_subgroup(ctx->group(), gens);
  std::cout << p.id() << " " << describe(ctx->group(), h) << ": " << (evaluate(*ctx, p, h) ? "true" : "false")
            << "\n";
  return 0;
}

int functor(const std::string& name, const std::string& property, std::size_t max_order, std::size_t jobs) {
  const Functor f = parse_functor(name);
  const FunctorProperty p = parse_property(property);
  PropertyOptions po;
  po.jobs = jobs;
  const auto v = check_property(f, p, generate_corpus(max_order), po);
  std::cout << functor_id(f) << " " << property_id(p) << " over " << v.groups << " groups (" << v.instances
            << " instances, " << v.skipped.size() << " skipped): ";
  if (v.pass()) {
    std::cout << "PASS\n";
    return 0;
  }
  const auto& w = *v.witness;
  auto g = build(w.group_spec);
  std::cout << "witness in " << w.group_spec << ": H " << describe(*g, w.h) << ", other " << describe(*g, w.other)
            << " (" << w.reason << ")\n";
  return kCounterexample;
}

int verify_cmd(const std::string& suite, const VerifyOptions& o, const std::string& report, const std::string& format) {
  const Report r = verify(suite, o);
  write_report(r, report, format);
  for (const auto& s : r.suites)
    std::cout << s.id << ": " << (s.counterexamples ? "FAIL" : s.weak() ? "WEAK" : "PASS") << " (" << s.records.size()
              << " records, " << s.hypothesis_true << " hypothesis-true instances, " << s.counterexamples
              << " counterexamples, " << s.skipped << " skipped)\n";
  return r.has_counterexample() ? kCounterexample : 0;
}

std::string file_name(const std::string& spec) {
  std::string out;
  for (char c : spec) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

int emit_corpus(const std::string& dir, std::size_t max_order) {
  std::filesystem::create_directories(dir);
  const auto corpus = generate_corpus(max_order);
  std::ofstream index(std::filesystem::path(dir) / "index.txt");
  if (!index) throw IoError("cannot write " + dir + "/index.txt");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string spec = corpus[i].spec.to_string();
    const std::string name = std::to_string(i) + "_" + file_name(spec) + ".cayley";
    save_group(*corpus[i].group, std::filesystem::path(dir) / name);
    index << name << " " << spec << "\n";
  }
  std::cout << corpus.size() << " groups written to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group supplement conditions and subgroup functors"};
  app.require_subcommand(1);

  std::string spec, what, gens, pred, name, property, suite, report, format = "json", formation, tau, dir;
  std::size_t max_order = 48, jobs = 1;
  double budget = 60.0;

  auto* c_compute = app.add_subcommand("compute", "Compute a subgroup or series of a group");
  c_compute->add_option("--group", spec, "Group spec")->required();
  c_compute->add_option("--what", what, "subgroups|frattini|fitting|fstar|chief-series|hypercentre|zf:F|zfphi:F|residual:F")
      ->required();

  auto* c_check = app.add_subcommand("check", "Evaluate a supplement predicate on a subgroup");
  c_check->add_option("--group", spec, "Group spec")->required();
  c_check->add_option("--subgroup", gens, "Comma-separated generator labels")->required();
  c_check->add_option("--pred", pred, "ore|csupp|fsupp:F|wsp|ftau:F:tau|pair:F")->required();

  auto* c_functor = app.add_subcommand("functor", "Check a functor property over the corpus");
  c_functor->add_option("--name", name, "Functor id")->required();
  c_functor->add_option("--property", property, "Property id")->required();
  c_functor->add_option("--max-order", max_order, "Largest corpus order");
  c_functor->add_option("--jobs", jobs, "Worker threads");

  VerifyOptions vo;
  auto* c_verify = app.add_subcommand("verify", "Verify statements over the corpus");
  c_verify->add_option("--suite", suite, "Statement id, comma-separated ids, or all")->required();
  c_verify->add_option("--max-order", max_order, "Largest corpus order")->default_val(96);
  c_verify->add_option("--formation", formation, "Restrict F");
  c_verify->add_option("--functor", tau, "Restrict tau");
  c_verify->add_option("--jobs", jobs, "Worker threads");
  c_verify->add_option("--budget", budget, "Seconds per statement and group (0 disables)");
  c_verify->add_option("--report", report, "Report path")->required();
  c_verify->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

  auto* c_corpus = app.add_subcommand("corpus", "Write the corpus as Cayley table files");
  c_corpus->add_option("--emit", dir, "Output directory")->required();
  c_corpus->add_option("--max-order", max_order, "Largest corpus order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*c_compute) return compute(spec, what);
    if (*c_check) return check(spec, gens, pred);
    if (*c_functor) return functor(name, property, max_order, jobs);
    if (*c_verify) {
      vo.max_order = max_order;
      vo.jobs = jobs;
      vo.budget_seconds = budget;
      if (!formation.empty()) vo.formation = Formation::parse(formation);
      if (!tau.empty()) vo.functor = parse_functor(tau);
      return verify_cmd(suite, vo, report, format);
    }
    if (*c_corpus) return emit_corpus(dir, max_order);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
