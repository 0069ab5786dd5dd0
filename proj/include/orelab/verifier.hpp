#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orelab/context.hpp"
#include "orelab/corpus.hpp"
#include "orelab/errors.hpp"
#include "orelab/formation.hpp"
#include "orelab/functor.hpp"

namespace orelab {

enum class Status : std::uint8_t { holds, vacuous, counterexample, skipped };
std::string_view status_id(Status s);

// Outcome of one statement on one corpus group for one parameter key
// (usually the functor), aggregated over the enumerated instances.
struct Record {
  std::string id;
  std::size_t group_position = 0;
  std::string group_spec;
  std::string key;
  Status status = Status::vacuous;
  std::size_t instances = 0;
  std::size_t hypothesis_true = 0;
  std::size_t counterexamples = 0;
  std::size_t skipped_instances = 0;
  std::string witness;  // parameters of the first counterexample instance
  std::string note;     // failing clause or skip reason
};

struct VerifyOptions {
  std::size_t max_order = 96;
  std::size_t ccp_max_order = 48;
  std::size_t jobs = 1;
  std::optional<Formation> formation;  // restricts F where a statement ranges over it
  std::optional<Functor> functor;      // restricts tau likewise
  double budget_seconds = 60.0;        // per (statement, group); 0 disables
  // Subgroup-pair enumerations larger than this many tuples are skipped.
  std::size_t tuple_cap = 2'000'000;
  std::size_t cross_check_order = 48;
};

// Collects the instances a statement produces on one group.  Optional
// filters restrict evaluation to one key and one parameter string (replay).
class InstanceSink {
 public:
  explicit InstanceSink(const VerifyOptions& options, std::string only_key = {}, std::string only_params = {});

  bool skips_key(const std::string& key) const { return !only_key_.empty() && key != only_key_; }
  // Creates the record for `key` so that it is reported even when no
  // instance is enumerated.
  void ensure(const std::string& key);
  void skip(const std::string& key, const std::string& reason);

  // `params()` yields the instance parameters, `hypothesis()` a bool and
  // `conclusion()` an empty string on success or the failing clause.  All
  // three are called lazily.  TooLarge counts as a skipped instance.
  template <class P, class H, class C>
  void check(const std::string& key, P&& params, H&& hypothesis, C&& conclusion) {
    if (skips_key(key)) return;
    if (!only_params_.empty() && params() != only_params_) return;
    Record& r = slot(key);
    tick();
    ++r.instances;
    try {
      if (!hypothesis()) return;
      ++r.hypothesis_true;
      std::string failed = conclusion();
      if (failed.empty()) return;
      if (r.counterexamples++ == 0) {
        r.witness = params();
        r.note = std::move(failed);
      }
    } catch (const TooLarge& e) {
      ++r.skipped_instances;
      if (r.note.empty()) r.note = e.what();
    }
  }

  // Marks every record as skipped (budget exhausted or group too large).
  void abandon(const std::string& reason);
  std::vector<Record> take();

 private:
  Record& slot(const std::string& key);
  void tick();

  const VerifyOptions& options_;
  std::string only_key_, only_params_;
  std::chrono::steady_clock::time_point start_;
  std::size_t ticks_ = 0;
  std::vector<Record> records_;
  std::map<std::string, std::size_t> index_;
};

// Thrown by InstanceSink when the per-(statement, group) time budget runs out.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded() : Error("time budget exceeded") {}
};

struct Statement {
  std::string id;
  std::string summary;
  // Functor properties used to select tau; the claims behind them are
  // cross-checked on the corpus before a run.
  std::vector<FunctorProperty> requirements;
  // How an ambiguous clause is read, empty when none.
  std::string interpretation;
  std::function<void(GroupContext&, const VerifyOptions&, InstanceSink&)> run;
};

const std::vector<Statement>& statements();
// Throws InvalidArgument for unknown ids.
const Statement& statement(std::string_view id);
// A statement id, a comma-separated list of ids, or "all" for every
// registered statement.
std::vector<std::string> resolve_suite(std::string_view id);

struct CrossCheck {
  Functor functor = Functor::normal;
  FunctorProperty property = FunctorProperty::inductive;
  bool pass = false;
  std::size_t groups = 0;
  std::size_t skipped = 0;
  std::string witness;
};

struct SuiteResult {
  std::string id;
  std::vector<Record> records;
  std::size_t hypothesis_true = 0;
  std::size_t counterexamples = 0;
  std::size_t skipped = 0;
  double millis = 0;
  // Every instance was vacuous: the run says nothing about the conclusion.
  bool weak() const { return hypothesis_true == 0; }
};

struct Report {
  std::string suite;
  std::size_t corpus_count = 0;
  std::size_t max_order = 0;
  std::map<std::string, std::size_t> family_breakdown;
  std::vector<std::string> interpretations;
  std::vector<CrossCheck> cross_checks;
  std::vector<SuiteResult> suites;
  bool has_counterexample() const;
};

// Runs the statements of `suite` over the corpus entries of order at most
// options.max_order, fanning groups out over options.jobs workers.  Throws
// InvalidArgument for an unknown suite or when no entry is in range.
Report verify(std::string_view suite, const std::vector<CorpusEntry>& corpus, const VerifyOptions& options = {});
Report verify(std::string_view suite, const VerifyOptions& options = {});

// Records of one statement on one group, optionally filtered by key and
// parameters.
std::vector<Record> run_statement(const Statement& st, const CorpusEntry& entry, const VerifyOptions& options,
                                  const std::string& only_key = {}, const std::string& only_params = {});

// Re-evaluates a record from its group spec: the witness instance for a
// counterexample, the whole keyed run otherwise.
Record replay(const Record& r, const VerifyOptions& options = {});

// Regularity of the completely c-permutable functor over the corpus part
// within options.ccp_max_order.
PropertyVerdict search_ccp_regularity(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options = {});

// JSON (schema orelab-report/1) and text renderings.  Apart from the timing
// fields both are deterministic functions of the report.
std::string report_json(const Report& r, bool with_timings = true);
std::string report_text(const Report& r);
// format is "json" or "text"; throws IoError when the file cannot be written.
void write_report(const Report& r, const std::string& path, std::string_view format);

// Hex encoding of a subgroup's member bitset, used in instance parameters.
std::string subgroup_code(const Subgroup& s);

}  // namespace orelab
