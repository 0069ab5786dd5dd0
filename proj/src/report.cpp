#include <json.hpp>

#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "orelab/parallel.hpp"
#include "orelab/verifier.hpp"

namespace orelab {

namespace {

ContextLimits limits_for(const VerifyOptions& o) {
  ContextLimits l;
  l.ccp_max_order = o.ccp_max_order;
  return l;
}

std::vector<Record> run_on(GroupContext& ctx, const Statement& st, const CorpusEntry& entry, std::size_t position,
                           const VerifyOptions& o, const std::string& only_key, const std::string& only_params) {
  InstanceSink sink(o, only_key, only_params);
  try {
    st.run(ctx, o, sink);
  } catch (const BudgetExceeded& e) {
    sink.abandon(e.what());
  } catch (const TooLarge& e) {
    sink.abandon(e.what());
  }
  auto records = sink.take();
  const std::string spec = entry.spec.to_string();
  for (auto& r : records) {
    r.id = st.id;
    r.group_position = position;
    r.group_spec = spec;
  }
  return records;
}

std::string family_of(const GroupSpec& s) {
  const std::string text = s.to_string();
  return text.substr(0, text.find('('));
}

std::vector<CrossCheck> cross_check(const std::vector<std::string>& ids, const std::vector<CorpusEntry>& corpus,
                                    const VerifyOptions& o) {
  std::set<std::pair<Functor, FunctorProperty>> needed;
  for (const auto& id : ids)
    for (FunctorProperty p : statement(id).requirements)
      for (Functor f : all_functors())
        if (has_claimed_property(f, p)) needed.emplace(f, p);
  std::vector<CorpusEntry> small;
  const std::size_t bound = std::min(o.cross_check_order, o.max_order);
  for (const auto& e : corpus)
    if (e.group->order() <= bound) small.push_back(e);
  std::vector<CrossCheck> out;
  if (small.empty()) return out;
  PropertyOptions po;
  po.jobs = o.jobs;
  po.limits = limits_for(o);
  for (const auto& [f, p] : needed) {
    if (o.functor && *o.functor != f) continue;
    const auto v = check_property(f, p, small, po);
    CrossCheck c{f, p, v.pass(), v.groups, v.skipped.size(), {}};
    if (v.witness) c.witness = v.witness->group_spec + ": " + v.witness->reason;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool Report::has_counterexample() const {
  for (const auto& s : suites)
    if (s.counterexamples) return true;
  return false;
}

std::vector<Record> run_statement(const Statement& st, const CorpusEntry& entry, const VerifyOptions& options,
                                  const std::string& only_key, const std::string& only_params) {
  auto ctx = GroupContext::make(entry.group, limits_for(options));
  if (entry.lattice) ctx->adopt_lattice(entry.lattice);
  return run_on(*ctx, st, entry, 0, options, only_key, only_params);
}

Report verify(std::string_view suite, const std::vector<CorpusEntry>& corpus, const VerifyOptions& options) {
  const auto ids = resolve_suite(suite);
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (corpus[i].group->order() <= options.max_order) positions.push_back(i);
  if (positions.empty()) throw InvalidArgument("verify needs a non-empty corpus");

  Report report;
  report.suite = std::string(suite);
  report.corpus_count = positions.size();
  report.max_order = options.max_order;
  for (std::size_t i : positions) ++report.family_breakdown[family_of(corpus[i].spec)];
  for (const auto& id : ids)
    if (!statement(id).interpretation.empty()) report.interpretations.push_back(id + ": " + statement(id).interpretation);
  report.cross_checks = cross_check(ids, corpus, options);

  std::vector<std::vector<std::vector<Record>>> found(positions.size(), std::vector<std::vector<Record>>(ids.size()));
  std::vector<double> millis(ids.size(), 0.0);
  std::mutex millis_mutex;
  parallel_for(positions.size(), options.jobs, [&](std::size_t i) {
    const CorpusEntry& entry = corpus[positions[i]];
    auto ctx = GroupContext::make(entry.group, limits_for(options));
    if (entry.lattice) ctx->adopt_lattice(entry.lattice);
    for (std::size_t s = 0; s < ids.size(); ++s) {
      const auto start = std::chrono::steady_clock::now();
      found[i][s] = run_on(*ctx, statement(ids[s]), entry, positions[i], options, {}, {});
      const std::chrono::duration<double, std::milli> spent = std::chrono::steady_clock::now() - start;
      std::lock_guard lock(millis_mutex);
      millis[s] += spent.count();
    }
  });

  for (std::size_t s = 0; s < ids.size(); ++s) {
    SuiteResult res;
    res.id = ids[s];
    res.millis = millis[s];
    for (auto& per_group : found)
      for (auto& r : per_group[s]) {
        res.hypothesis_true += r.hypothesis_true;
        res.counterexamples += r.status == Status::counterexample;
        res.skipped += r.status == Status::skipped;
        res.records.push_back(std::move(r));
      }
    report.suites.push_back(std::move(res));
  }
  return report;
}

Report verify(std::string_view suite, const VerifyOptions& options) {
  return verify(suite, generate_corpus(options.max_order), options);
}

Record replay(const Record& r, const VerifyOptions& options) {
  CorpusEntry entry;
  entry.spec = GroupSpec::parse(r.group_spec);
  entry.group = build(entry.spec);
  const std::string params = r.status == Status::counterexample ? r.witness : std::string();
  auto records = run_statement(statement(r.id), entry, options, r.key, params);
  Record out;
  if (!records.empty()) out = std::move(records.front());
  out.id = r.id;
  out.group_position = r.group_position;
  out.group_spec = r.group_spec;
  out.key = r.key;
  return out;
}

PropertyVerdict search_ccp_regularity(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options) {
  std::vector<CorpusEntry> small;
  for (const auto& e : corpus)
    if (e.group->order() <= std::min(options.ccp_max_order, options.max_order)) small.push_back(e);
  PropertyOptions po;
  po.jobs = options.jobs;
  po.limits = limits_for(options);
  return check_property(Functor::completely_c_permutable, FunctorProperty::regular, small, po);
}

std::string report_json(const Report& r, bool with_timings) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = "orelab-report/1";
  j["suite"] = r.suite;
  json families = json::object();
  for (const auto& [k, v] : r.family_breakdown) families[k] = v;
  j["corpus"] = {{"count", r.corpus_count}, {"max_order", r.max_order}, {"family_breakdown", families}};
  json checks = json::array();
  for (const auto& c : r.cross_checks) {
    json e = {{"functor", functor_id(c.functor)},
              {"property", property_id(c.property)},
              {"pass", c.pass},
              {"groups", c.groups},
              {"skipped", c.skipped}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  j["interpretations"] = r.interpretations;
  j["functor_cross_checks"] = std::move(checks);
  json summary = json::array();
  json results = json::array();
  for (const auto& s : r.suites) {
    summary.push_back({{"id", s.id},
                       {"records", s.records.size()},
                       {"hypothesis_true", s.hypothesis_true},
                       {"counterexamples", s.counterexamples},
                       {"skipped", s.skipped},
                       {"weak", s.weak()}});
    for (const auto& rec : s.records) {
      json e = {{"id", rec.id},
                {"group_spec", rec.group_spec},
                {"key", rec.key},
                {"status", status_id(rec.status)},
                {"instances", rec.instances},
                {"hypothesis_true", rec.hypothesis_true},
                {"skipped_instances", rec.skipped_instances}};
      if (rec.status == Status::counterexample)
        e["witness"] = {{"params", rec.witness}, {"failed", rec.note}, {"count", rec.counterexamples}};
      else if (!rec.note.empty())
        e["note"] = rec.note;
      results.push_back(std::move(e));
    }
  }
  j["summary"] = std::move(summary);
  j["results"] = std::move(results);
  if (with_timings) {
    json t = json::object();
    for (const auto& s : r.suites) t[s.id] = s.millis;
    j["timings_ms"] = std::move(t);
  }
  return j.dump(1) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "suite " << r.suite << ": " << r.corpus_count << " groups of order <= " << r.max_order << "\n";
  for (const auto& c : r.cross_checks)
    if (!c.pass)
      out << "cross-check failed: " << functor_id(c.functor) << " " << property_id(c.property) << " (" << c.witness
          << ")\n";
  for (const auto& s : r.suites) {
    out << s.id << ": " << s.records.size() << " records, " << s.hypothesis_true << " instances with hypothesis, "
        << s.counterexamples << " counterexamples, " << s.skipped << " skipped" << (s.weak() ? " [WEAK]" : "")
        << "\n";
    for (const auto& rec : s.records) {
      if (rec.status == Status::vacuous) continue;
      out << "  " << status_id(rec.status) << " " << rec.group_spec << " " << rec.key << " instances=" << rec.instances
          << " hypothesis=" << rec.hypothesis_true;
      if (rec.status == Status::counterexample) out << " witness=" << rec.witness;
      if (!rec.note.empty()) out << " (" << rec.note << ")";
      out << "\n";
    }
  }
  return out.str();
}

void write_report(const Report& r, const std::string& path, std::string_view format) {
  std::string body;
  if (format == "json")
    body = report_json(r);
  else if (format == "text")
    body = report_text(r);
  else
    throw InvalidArgument("unknown report format '" + std::string(format) + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace orelab
