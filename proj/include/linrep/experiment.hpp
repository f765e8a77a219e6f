#ifndef LINREP_EXPERIMENT_HPP
#define LINREP_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "linrep/matrep.hpp"

namespace linrep {

class InsufficientDataError : public std::runtime_error {
public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  int m = 2;
  int k = 1;
  int l = 2;
  std::vector<std::uint32_t> qs;      // field orders (prime powers)
  std::vector<long> us;               // relator counts; resolved from density if given
  std::optional<mpq_class> density;   // recorded when the density model was used
  long trials = 1;
  std::uint64_t seed = 0;
  Caps caps;
  std::string out;                    // JSON-lines records path
  int threads = 1;
  bool emit_oracle = false;           // attach the exact oracle value per (q, u)

  void validate() const;
};

/// Config file schema: {"m","k","l","q":[..],"u":[..]|{"from","to"}|
/// "density":"p/q or decimal","trials","seed","out","threads","caps":{..},
/// "emit_oracle"}.  CLI flags override these values.
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

struct TrialRecord {
  int m = 0, k = 0, l = 0;
  std::uint32_t q = 0;
  long u = 0;
  long trial = 0;
  std::uint64_t seed = 0;  // derived seed actually used for the presentation
  long n_trivial = 0, n_order2 = 0, n_large = 0;
  std::optional<double> oracle;  // exact nontrivial-survival value, if computed
  double elapsed_ms = 0;         // excluded from reproducibility comparisons
  std::optional<std::string> error;  // set when the point hit a cap
};

std::string record_to_json_line(const TrialRecord& r);
TrialRecord parse_record_line(const std::string& line);
std::vector<TrialRecord> read_records_file(const std::string& path);

struct RunSummary {
  long executed = 0;
  long skipped = 0;    // already present in the output file (resume)
  long cap_errors = 0;
  std::string out;
};

/// Run every (q, u, trial) point not already present in the output file.
/// Per-trial seeds derive from (master seed, q, u, trial), so parallel and
/// serial runs emit the same records up to order and timing.
RunSummary run_experiment(const ExperimentConfig& cfg);

struct DecayPoint {
  long u = 0;
  long trials = 0;
  long failures = 0;  // trials with at least one large-image survivor
  double freq = 0;
  double ci_lo = 0, ci_hi = 0;             // 95% Clopper-Pearson
  std::optional<double> union_bound;       // sum of p_A^u over large tuples
  std::optional<double> oracle;            // exact value, when present in records
};

struct DecayReport {
  int m = 0, k = 0, l = 0;
  std::uint32_t q = 0;
  std::vector<DecayPoint> points;
  std::optional<double> slope;  // least-squares log-frequency slope in u
};

/// Per-u failure frequencies with confidence intervals, optional exact union
/// bound overlay, and a fitted log-slope over frequencies in (0, 1).
/// Requires at least 3 distinct u values with nonzero failures.
DecayReport analyze_decay(const std::vector<TrialRecord>& records,
                          const std::vector<mpq_class>* large_survival = nullptr);

std::string decay_report_to_json(const DecayReport& rep);
std::string decay_report_to_csv(const DecayReport& rep);

/// One-sided/two-sided 95% Clopper-Pearson interval endpoints.
double clopper_pearson_lower(long failures, long trials, double alpha = 0.05);
double clopper_pearson_upper(long failures, long trials, double alpha = 0.05);

}  // namespace linrep

#endif
