#include "linrep/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "linrep/errors.hpp"

namespace linrep {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  if (qs.empty()) throw std::invalid_argument("at least one field order q is required");
  if (us.empty()) throw std::invalid_argument("at least one relator count u is required");
  for (long u : us)
    if (u < 0) throw std::invalid_argument("relator counts must be >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (out.empty()) throw std::invalid_argument("output path is required");
}

namespace {

// q = p^e for prime p; smallest prime factor gives p.
Field field_for_order(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  std::uint32_t p = q;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0;
  std::uint64_t acc = 1;
  while (acc < q) {
    acc *= p;
    ++e;
  }
  if (acc != q) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  return Field::make(p, e);
}

Caps caps_from_json(const json& j) {
  Caps caps;
  if (j.contains("subgroup")) caps.subgroup = j.at("subgroup").get<std::uint64_t>();
  if (j.contains("tuples")) caps.tuples = j.at("tuples").get<std::uint64_t>();
  if (j.contains("words")) caps.words = j.at("words").get<std::uint64_t>();
  if (j.contains("oracle_states")) caps.oracle_states = j.at("oracle_states").get<std::uint64_t>();
  return caps;
}

json caps_to_json(const Caps& caps) {
  return json{{"subgroup", caps.subgroup},
              {"tuples", caps.tuples},
              {"words", caps.words},
              {"oracle_states", caps.oracle_states}};
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;
  cfg.m = j.at("m").get<int>();
  cfg.k = j.at("k").get<int>();
  cfg.l = j.at("l").get<int>();
  if (j.at("q").is_array()) {
    cfg.qs = j.at("q").get<std::vector<std::uint32_t>>();
  } else {
    cfg.qs = {j.at("q").get<std::uint32_t>()};
  }
  const bool has_u = j.contains("u");
  const bool has_density = j.contains("density");
  if (has_u == has_density) {
    throw std::invalid_argument("config needs exactly one of \"u\" and \"density\"");
  }
  if (has_u) {
    const json& u = j.at("u");
    if (u.is_array()) {
      cfg.us = u.get<std::vector<long>>();
    } else if (u.is_object()) {
      long from = u.at("from").get<long>();
      long to = u.at("to").get<long>();
      if (from > to) throw std::invalid_argument("u range is empty");
      for (long v = from; v <= to; ++v) cfg.us.push_back(v);
    } else {
      cfg.us = {u.get<long>()};
    }
  } else {
    cfg.density = parse_density(j.at("density").get<std::string>());
    mpz_class u = relator_count(cfg.m, cfg.l, *cfg.density);
    if (!u.fits_slong_p()) throw CapExceeded("relator count " + u.get_str() + " too large");
    cfg.us = {u.get_si()};
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("emit_oracle")) cfg.emit_oracle = j.at("emit_oracle").get<bool>();
  if (j.contains("caps")) cfg.caps = caps_from_json(j.at("caps"));
  return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json j{{"m", cfg.m},       {"k", cfg.k},           {"l", cfg.l},
         {"q", cfg.qs},      {"u", cfg.us},          {"trials", cfg.trials},
         {"seed", cfg.seed}, {"out", cfg.out},       {"threads", cfg.threads},
         {"emit_oracle", cfg.emit_oracle},           {"caps", caps_to_json(cfg.caps)}};
  if (cfg.density) j["density"] = cfg.density->get_str();
  return j.dump();
}

std::string record_to_json_line(const TrialRecord& r) {
  json j{{"m", r.m},          {"k", r.k},           {"q", r.q},
         {"l", r.l},          {"u", r.u},           {"trial", r.trial},
         {"seed", r.seed},    {"n_trivial", r.n_trivial},
         {"n_order2", r.n_order2},                  {"n_large", r.n_large},
         {"elapsed_ms", r.elapsed_ms}};
  if (r.oracle) j["oracle"] = *r.oracle;
  if (r.error) j["error"] = *r.error;
  return j.dump();
}

TrialRecord parse_record_line(const std::string& line) {
  json j = json::parse(line);
  TrialRecord r;
  r.m = j.at("m").get<int>();
  r.k = j.at("k").get<int>();
  r.q = j.at("q").get<std::uint32_t>();
  r.l = j.at("l").get<int>();
  r.u = j.at("u").get<long>();
  r.trial = j.at("trial").get<long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("error")) {
    r.error = j.at("error").get<std::string>();
  } else {
    r.n_trivial = j.at("n_trivial").get<long>();
    r.n_order2 = j.at("n_order2").get<long>();
    r.n_large = j.at("n_large").get<long>();
  }
  if (j.contains("oracle")) r.oracle = j.at("oracle").get<double>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::vector<TrialRecord> read_records_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open records file " + path);
  std::vector<TrialRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(parse_record_line(line));
  }
  return out;
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunSummary summary;
  summary.out = cfg.out;

  // resume: collect (q, u, trial) keys already present
  std::set<std::tuple<std::uint32_t, long, long>> done;
  if (std::filesystem::exists(cfg.out)) {
    for (const TrialRecord& r : read_records_file(cfg.out)) {
      if (r.m != cfg.m || r.k != cfg.k || r.l != cfg.l) {
        throw std::invalid_argument("records file " + cfg.out +
                                    " was produced by a different (m, k, l) configuration");
      }
      done.emplace(r.q, r.u, r.trial);
    }
  }

  struct Task {
    std::uint32_t q;
    long u;
    long trial;
  };
  std::vector<Task> tasks;
  for (std::uint32_t q : cfg.qs) {
    for (long u : cfg.us) {
      for (long trial = 0; trial < cfg.trials; ++trial) {
        if (done.contains({q, u, trial})) {
          ++summary.skipped;
        } else {
          tasks.push_back(Task{q, u, trial});
        }
      }
    }
  }
  if (tasks.empty()) return summary;

  // shared read-only context per field order
  struct PointContext {
    Field field;
    GlGroup gl;
    std::map<long, double> oracle_by_u;
  };
  std::map<std::uint32_t, PointContext> contexts;
  for (std::uint32_t q : cfg.qs) {
    Field f = field_for_order(q);
    GlGroup gl = GlGroup::build(f, cfg.k, cfg.caps.tuples);
    PointContext ctx{std::move(f), std::move(gl), {}};
    if (cfg.emit_oracle) {
      long u_max = *std::max_element(cfg.us.begin(), cfg.us.end());
      auto curve = exact_survival_curve(ctx.field, cfg.m, cfg.k, cfg.l,
                                        static_cast<int>(u_max), cfg.caps);
      for (long u : cfg.us) ctx.oracle_by_u[u] = curve[static_cast<size_t>(u)].get_d();
    }
    contexts.emplace(q, std::move(ctx));
  }

  std::ofstream os(cfg.out, std::ios::app);
  if (!os) throw std::runtime_error("cannot open output file " + cfg.out);

  std::mutex write_mu;
  std::atomic<size_t> next_task{0};
  std::atomic<long> executed{0}, cap_errors{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker_body = [&]() {
    for (;;) {
      size_t idx = next_task.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& task = tasks[idx];
      const PointContext& ctx = contexts.at(task.q);
      TrialRecord rec;
      rec.m = cfg.m;
      rec.k = cfg.k;
      rec.l = cfg.l;
      rec.q = task.q;
      rec.u = task.u;
      rec.trial = task.trial;
      rec.seed = derive_key(cfg.seed, {task.q, static_cast<std::uint64_t>(task.u),
                                       static_cast<std::uint64_t>(task.trial)});
      auto t0 = std::chrono::steady_clock::now();
      try {
        Presentation pres = sample_presentation(cfg.m, cfg.l, task.u, rec.seed);
        SearchResult res = search_representations(ctx.field, ctx.gl, pres, cfg.caps);
        rec.n_trivial = res.n_trivial;
        rec.n_order2 = res.n_order2;
        rec.n_large = res.n_large;
        auto it = ctx.oracle_by_u.find(task.u);
        if (it != ctx.oracle_by_u.end()) rec.oracle = it->second;
        ++executed;
      } catch (const CapExceeded& e) {
        rec.error = e.what();
        ++cap_errors;
      }
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      std::lock_guard<std::mutex> lock(write_mu);
      os << record_to_json_line(rec) << "\n";
      os.flush();
      if (!os) throw std::runtime_error("write failure on " + cfg.out);
    }
  };
  auto worker = [&]() {
    try {
      worker_body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };

  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < cfg.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  summary.executed = executed;
  summary.cap_errors = cap_errors;
  return summary;
}

namespace {

double log_binom(long n, long k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// P(X <= x) for X ~ Binomial(n, p)
double binom_cdf(long x, long n, double p) {
  if (p <= 0) return 1.0;
  if (p >= 1) return x >= n ? 1.0 : 0.0;
  double acc = 0;
  for (long i = 0; i <= x; ++i) {
    acc += std::exp(log_binom(n, i) + i * std::log(p) + (n - i) * std::log1p(-p));
  }
  return std::min(acc, 1.0);
}

}  // namespace

double clopper_pearson_lower(long x, long n, double alpha) {
  if (x <= 0) return 0.0;
  // largest p with P(X >= x | p) <= alpha/2
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double tail = 1.0 - binom_cdf(x - 1, n, mid);
    if (tail <= alpha / 2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double clopper_pearson_upper(long x, long n, double alpha) {
  if (x >= n) return 1.0;
  // smallest p with P(X <= x | p) <= alpha/2; for x == 0 this is the familiar
  // 1 - (alpha/2)^(1/n) style bound, computed the same way
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (binom_cdf(x, n, mid) <= alpha / 2) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DecayReport analyze_decay(const std::vector<TrialRecord>& records,
                          const std::vector<mpq_class>* large_survival) {
  if (records.empty()) throw InsufficientDataError("no records");
  DecayReport rep;
  bool first = true;
  std::map<long, std::pair<long, long>> by_u;  // u -> (trials, failures)
  std::map<long, double> oracle_by_u;
  for (const TrialRecord& r : records) {
    if (r.error) continue;
    if (first) {
      rep.m = r.m;
      rep.k = r.k;
      rep.l = r.l;
      rep.q = r.q;
      first = false;
    } else if (r.q != rep.q || r.m != rep.m || r.k != rep.k || r.l != rep.l) {
      throw std::invalid_argument("analyze expects records from a single (m, k, q, l) point");
    }
    auto& [trials, failures] = by_u[r.u];
    ++trials;
    if (r.n_large > 0) ++failures;
    if (r.oracle) oracle_by_u[r.u] = *r.oracle;
  }
  long with_failures = 0;
  for (const auto& [u, tf] : by_u)
    if (tf.second > 0) ++with_failures;
  if (by_u.size() < 3 || with_failures < 3) {
    throw InsufficientDataError("need records at >= 3 distinct u values with nonzero failures");
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long fit_points = 0;
  for (const auto& [u, tf] : by_u) {
    DecayPoint pt;
    pt.u = u;
    pt.trials = tf.first;
    pt.failures = tf.second;
    pt.freq = static_cast<double>(pt.failures) / static_cast<double>(pt.trials);
    pt.ci_lo = clopper_pearson_lower(pt.failures, pt.trials);
    pt.ci_hi = clopper_pearson_upper(pt.failures, pt.trials);
    if (large_survival) {
      mpq_class sum = 0;
      for (const mpq_class& p : *large_survival) {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), p.get_num().get_mpz_t(), static_cast<unsigned long>(u));
        mpz_pow_ui(den.get_mpz_t(), p.get_den().get_mpz_t(), static_cast<unsigned long>(u));
        sum += mpq_class(num, den);
      }
      pt.union_bound = sum.get_d();
    }
    auto it = oracle_by_u.find(u);
    if (it != oracle_by_u.end()) pt.oracle = it->second;
    if (pt.freq > 0 && pt.freq < 1) {
      sx += u;
      sy += std::log(pt.freq);
      sxx += static_cast<double>(u) * u;
      sxy += u * std::log(pt.freq);
      ++fit_points;
    }
    rep.points.push_back(pt);
  }
  if (fit_points >= 2) {
    double denom = fit_points * sxx - sx * sx;
    if (denom != 0) rep.slope = (fit_points * sxy - sx * sy) / denom;
  }
  return rep;
}

std::string decay_report_to_json(const DecayReport& rep) {
  json pts = json::array();
  for (const DecayPoint& p : rep.points) {
    json j{{"u", p.u},         {"trials", p.trials}, {"failures", p.failures},
           {"freq", p.freq},   {"ci_lo", p.ci_lo},   {"ci_hi", p.ci_hi}};
    if (p.union_bound) j["union_bound"] = *p.union_bound;
    if (p.oracle) j["oracle"] = *p.oracle;
    pts.push_back(std::move(j));
  }
  json j{{"m", rep.m}, {"k", rep.k}, {"q", rep.q}, {"l", rep.l}, {"points", pts}};
  if (rep.slope) j["slope"] = *rep.slope;
  return j.dump(2);
}

std::string decay_report_to_csv(const DecayReport& rep) {
  std::string out = "u,trials,failures,freq,ci_lo,ci_hi,union_bound\n";
  for (const DecayPoint& p : rep.points) {
    out += std::to_string(p.u) + "," + std::to_string(p.trials) + "," +
           std::to_string(p.failures) + "," + std::to_string(p.freq) + "," +
           std::to_string(p.ci_lo) + "," + std::to_string(p.ci_hi) + ",";
    if (p.union_bound) out += std::to_string(*p.union_bound);
    out += "\n";
  }
  return out;
}

}  // namespace linrep
