#include "linrep/linrep.h"

#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "linrep/certify.hpp"
#include "linrep/errors.hpp"
#include "linrep/experiment.hpp"
#include "linrep/matrep.hpp"
#include "linrep/multigraph.hpp"
#include "linrep/nbwalk.hpp"
#include "linrep/polynomial.hpp"
#include "linrep/words.hpp"

using nlohmann::json;

struct linrep_buf {
  std::string data;
};

struct linrep_graph {
  linrep::Multigraph g;
};

namespace {

thread_local std::string g_last_error;

int fail(int rc, const char* what) {
  g_last_error = what ? what : "unknown error";
  return rc;
}

int make_buf(linrep_buf** out, std::string data) {
  if (!out) return fail(LINREP_ERR_INVALID, "null output pointer");
  *out = new linrep_buf{std::move(data)};
  return LINREP_OK;
}

// Every exported function funnels through this: exceptions from the core map
// onto status codes here and nowhere else.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const linrep::CapExceeded& e) {
    return fail(LINREP_ERR_CAP, e.what());
  } catch (const linrep::NonRegularError& e) {
    return fail(LINREP_ERR_PRECONDITION, e.what());
  } catch (const linrep::DisconnectedError& e) {
    return fail(LINREP_ERR_PRECONDITION, e.what());
  } catch (const linrep::PreconditionError& e) {
    return fail(LINREP_ERR_PRECONDITION, e.what());
  } catch (const linrep::InsufficientDataError& e) {
    return fail(LINREP_ERR_INVALID, e.what());
  } catch (const json::exception& e) {
    return fail(LINREP_ERR_INVALID, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LINREP_ERR_INVALID, e.what());
  } catch (const std::domain_error& e) {
    return fail(LINREP_ERR_INVALID, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(LINREP_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(LINREP_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(LINREP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LINREP_ERR_INTERNAL, "unknown exception");
  }
}

linrep::Caps caps_from_request(const json& j) {
  linrep::Caps caps;
  if (j.contains("caps")) {
    const json& c = j.at("caps");
    if (c.contains("subgroup")) caps.subgroup = c.at("subgroup").get<std::uint64_t>();
    if (c.contains("tuples")) caps.tuples = c.at("tuples").get<std::uint64_t>();
    if (c.contains("words")) caps.words = c.at("words").get<std::uint64_t>();
    if (c.contains("oracle_states")) caps.oracle_states = c.at("oracle_states").get<std::uint64_t>();
  }
  return caps;
}

linrep::Field field_from_q(std::uint32_t q) {
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
  if (q < 2 || acc != q) {
    throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  }
  return linrep::Field::make(p, e);
}

json pow_expr_to_json(const linrep::PowExpr& p) {
  json j{{"base", p.base.get_str()},
         {"exponent", p.exponent.get_str()},
         {"log10", p.log10_value}};
  if (p.exact) j["value"] = p.exact->get_str();
  return j;
}

}  // namespace

extern "C" {

const char* linrep_version(void) { return "0.1.0"; }

const char* linrep_last_error(void) { return g_last_error.c_str(); }

const char* linrep_buf_data(const linrep_buf* buf) { return buf ? buf->data.c_str() : nullptr; }

size_t linrep_buf_size(const linrep_buf* buf) { return buf ? buf->data.size() : 0; }

void linrep_buf_free(linrep_buf* buf) { delete buf; }

int linrep_sphere_size(int m, int l, linrep_buf** out) {
  return guarded([&]() { return make_buf(out, linrep::sphere_size(m, l).get_str()); });
}

int linrep_relator_count(int m, int l, const char* density, linrep_buf** out) {
  return guarded([&]() {
    if (!density) return fail(LINREP_ERR_INVALID, "null density");
    mpq_class d = linrep::parse_density(density);
    return make_buf(out, linrep::relator_count(m, l, d).get_str());
  });
}

int linrep_sample_words(int m, int l, long count, unsigned long long seed,
                        int presentation_header, linrep_buf** out) {
  return guarded([&]() {
    if (count < 0) return fail(LINREP_ERR_INVALID, "negative word count");
    linrep::Presentation p = linrep::sample_presentation(m, l, count, seed);
    std::ostringstream os;
    if (presentation_header) {
      linrep::write_presentation(os, p);
    } else {
      for (const linrep::Word& w : p.relators) os << linrep::word_to_text(w) << "\n";
    }
    return make_buf(out, os.str());
  });
}

int linrep_graph_parse(const char* text, linrep_graph** out) {
  return guarded([&]() -> int {
    if (!text || !out) return fail(LINREP_ERR_INVALID, "null argument");
    *out = new linrep_graph{linrep::parse_graph_text(text)};
    return LINREP_OK;
  });
}

void linrep_graph_free(linrep_graph* g) { delete g; }

int linrep_graph_info(const linrep_graph* g, linrep_buf** json_out) {
  return guarded([&]() {
    if (!g) return fail(LINREP_ERR_INVALID, "null graph");
    linrep::RegularityReport rep = linrep::validate_regular(g->g);
    json j{{"degree", rep.degree},
           {"vertices", rep.vertex_count},
           {"connected", rep.connected}};
    return make_buf(json_out, j.dump());
  });
}

int linrep_walk_exact(const linrep_graph* g, int start, int t, linrep_buf** json_out) {
  return guarded([&]() {
    if (!g) return fail(LINREP_ERR_INVALID, "null graph");
    auto dist = linrep::nbw_distribution<mpq_class>(g->g, start, t);
    json probs = json::array();
    for (const mpq_class& p : dist) {
      probs.push_back(json{{"exact", p.get_str()}, {"value", p.get_d()}});
    }
    json j{{"mode", "exact"},
           {"start", start},
           {"t", t},
           {"return_probability", dist[start].get_str()},
           {"return_probability_value", dist[start].get_d()},
           {"distribution", probs}};
    return make_buf(json_out, j.dump());
  });
}

int linrep_walk_mc(const linrep_graph* g, int start, int t, long samples,
                   unsigned long long seed, linrep_buf** json_out) {
  return guarded([&]() {
    if (!g) return fail(LINREP_ERR_INVALID, "null graph");
    if (samples < 1) return fail(LINREP_ERR_INVALID, "need at least one sample");
    std::vector<long> hits(g->g.vertex_count(), 0);
    linrep::SplitRng root(seed);
    for (long i = 0; i < samples; ++i) {
      linrep::SplitRng rng = root.split(static_cast<std::uint64_t>(i));
      ++hits[linrep::nbw_sample(g->g, start, t, rng)];
    }
    json freqs = json::array();
    for (long h : hits) freqs.push_back(static_cast<double>(h) / static_cast<double>(samples));
    json j{{"mode", "mc"},
           {"start", start},
           {"t", t},
           {"samples", samples},
           {"return_frequency", static_cast<double>(hits[start]) / static_cast<double>(samples)},
           {"frequencies", freqs}};
    return make_buf(json_out, j.dump());
  });
}

int linrep_walk_check_bound(const linrep_graph* g, int start, int t_max,
                            linrep_buf** json_out) {
  return guarded([&]() {
    if (!g) return fail(LINREP_ERR_INVALID, "null graph");
    linrep::ReturnBoundReport rep = linrep::check_return_bound(g->g, start, t_max);
    json values = json::array();
    for (size_t i = 0; i < rep.values.size(); ++i) {
      values.push_back(json{{"t", static_cast<int>(i) + 2},
                            {"exact", rep.values[i].get_str()},
                            {"value", rep.values[i].get_d()}});
    }
    json j{{"degree", rep.degree},
           {"vertices", rep.vertex_count},
           {"t_max", rep.t_max},
           {"bound", rep.bound.get_str()},
           {"max_value", rep.max_value.get_str()},
           {"argmax_t", rep.argmax_t},
           {"holds", rep.holds},
           {"values", values}};
    return make_buf(json_out, j.dump());
  });
}

int linrep_search(const char* request_json, linrep_buf** json_lines_out) {
  return guarded([&]() {
    if (!request_json) return fail(LINREP_ERR_INVALID, "null request");
    json req = json::parse(request_json);
    const int m = req.at("m").get<int>();
    const int k = req.at("k").get<int>();
    const std::uint32_t q = req.at("q").get<std::uint32_t>();
    const int l = req.at("l").get<int>();
    const std::uint64_t seed = req.value("seed", 0ULL);
    const long trials = req.value("trials", 1L);
    const bool emit_survivors = req.value("emit_survivors", false);
    linrep::Caps caps = caps_from_request(req);
    if (trials < 1) return fail(LINREP_ERR_INVALID, "trials must be >= 1");

    long u;
    if (req.contains("u") == req.contains("density")) {
      return fail(LINREP_ERR_INVALID, "request needs exactly one of \"u\" and \"density\"");
    }
    if (req.contains("u")) {
      u = req.at("u").get<long>();
    } else {
      mpq_class d = linrep::parse_density(req.at("density").get<std::string>());
      mpz_class count = linrep::relator_count(m, l, d);
      if (!count.fits_slong_p()) throw linrep::CapExceeded("relator count " + count.get_str());
      u = count.get_si();
    }

    linrep::Field field = field_from_q(q);
    linrep::GlGroup gl = linrep::GlGroup::build(field, k, caps.tuples);
    std::ostringstream os;
    for (long trial = 0; trial < trials; ++trial) {
      std::uint64_t trial_seed =
          trials == 1 ? seed : linrep::derive_key(seed, static_cast<std::uint64_t>(trial));
      auto t0 = std::chrono::steady_clock::now();
      linrep::Presentation pres = linrep::sample_presentation(m, l, u, trial_seed);
      linrep::SearchResult res =
          linrep::search_representations(field, gl, pres, caps, emit_survivors);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
      json rec{{"m", m},     {"k", k},
               {"q", q},     {"l", l},
               {"u", u},     {"trial", trial},
               {"seed", trial_seed},
               {"n_trivial", res.n_trivial},
               {"n_order2", res.n_order2},
               {"n_large", res.n_large},
               {"survivor_trajectory", res.survivor_trajectory},
               {"elapsed_ms", ms}};
      if (emit_survivors) {
        json survivors = json::array();
        for (const linrep::MatrixTuple& t : res.survivors) {
          json tup = json::array();
          for (const linrep::FqMatrix& a : t.a) tup.push_back(a.entries());
          survivors.push_back(std::move(tup));
        }
        rec["survivors"] = std::move(survivors);
      }
      os << rec.dump() << "\n";
    }
    return make_buf(json_lines_out, os.str());
  });
}

int linrep_oracle(const char* request_json, linrep_buf** json_lines_out) {
  return guarded([&]() {
    if (!request_json) return fail(LINREP_ERR_INVALID, "null request");
    json req = json::parse(request_json);
    const int m = req.at("m").get<int>();
    const int k = req.at("k").get<int>();
    const std::uint32_t q = req.at("q").get<std::uint32_t>();
    const int l = req.at("l").get<int>();
    const int u_max = req.at("u_max").get<int>();
    const bool with_union = req.value("union_bound", true);
    linrep::Caps caps = caps_from_request(req);

    linrep::Field field = field_from_q(q);
    auto curve = linrep::exact_survival_curve(field, m, k, l, u_max, caps);
    std::vector<mpq_class> survival;
    if (with_union) {
      survival = linrep::large_tuple_survival_probabilities(field, m, k, l, caps);
    }
    std::ostringstream os;
    for (int u = 0; u <= u_max; ++u) {
      json rec{{"m", m}, {"k", k}, {"q", q}, {"l", l}, {"u", u},
               {"exact", curve[static_cast<size_t>(u)].get_str()},
               {"value", curve[static_cast<size_t>(u)].get_d()}};
      if (with_union) {
        mpq_class sum = 0;
        for (const mpq_class& p : survival) {
          mpz_class num, den;
          mpz_pow_ui(num.get_mpz_t(), p.get_num().get_mpz_t(), static_cast<unsigned long>(u));
          mpz_pow_ui(den.get_mpz_t(), p.get_den().get_mpz_t(), static_cast<unsigned long>(u));
          sum += mpq_class(num, den);
        }
        rec["union_bound"] = sum.get_d();
        rec["union_bound_exact"] = sum.get_str();
      }
      os << rec.dump() << "\n";
    }
    return make_buf(json_lines_out, os.str());
  });
}

int linrep_certify(const char* request_json, linrep_buf** json_out) {
  return guarded([&]() {
    if (!request_json) return fail(LINREP_ERR_INVALID, "null request");
    json req = json::parse(request_json);
    const int n = req.at("n").get<int>();
    std::vector<linrep::IntPolynomial> ps;
    for (const auto& s : req.at("ps")) {
      ps.push_back(linrep::parse_polynomial(s.get<std::string>(), n));
    }
    linrep::IntPolynomial r = linrep::parse_polynomial(req.at("r").get<std::string>(), n);
    linrep::CertificateOptions opts;
    if (req.contains("degree_cap")) opts.degree_cap = req.at("degree_cap").get<long>();
    if (req.contains("nu_max")) opts.nu_max = req.at("nu_max").get<unsigned>();
    auto cert = linrep::find_certificate(ps, r, opts);
    if (!cert) {
      // inconclusive by design: radical membership may need a larger nu or cap
      json j{{"found", false},
             {"nu_max", opts.nu_max},
             {"note", "no certificate within the degree cap and nu_max; "
                      "this does not prove r is outside the radical"}};
      return make_buf(json_out, j.dump(2));
    }
    json qs = json::array();
    for (const linrep::IntPolynomial& qp : cert->q) qs.push_back(linrep::polynomial_to_text(qp));
    json j{{"found", true},
           {"nu", cert->nu},
           {"b", cert->b.get_str()},
           {"q", qs},
           {"degree_cap_used", cert->degree_cap_used},
           {"verified", linrep::verify_certificate(ps, r, *cert)}};
    return make_buf(json_out, j.dump(2));
  });
}

int linrep_bounds(const char* request_json, linrep_buf** json_out) {
  return guarded([&]() {
    if (!request_json) return fail(LINREP_ERR_INVALID, "null request");
    json req = json::parse(request_json);
    const int m = req.at("m").get<int>();
    const int k = req.at("k").get<int>();
    const int l = req.at("l").get<int>();
    linrep::TheoremBounds tb = linrep::theorem_bounds(m, k, l);
    long u = req.value("u", tb.u_min);
    json j{{"m", m},
           {"k", k},
           {"l", l},
           {"u_min", tb.u_min},
           {"relator_threshold", pow_expr_to_json(tb.relator_threshold)},
           {"log_b_cap", pow_expr_to_json(tb.log_b_cap)},
           {"component_bound", pow_expr_to_json(tb.component_bound)},
           {"height_estimate", pow_expr_to_json(tb.height_estimate)},
           {"lambda_threshold", tb.lambda_threshold},
           {"lambda_denominator", tb.lambda_denominator},
           {"lambda_at_u", static_cast<double>(u) / static_cast<double>(tb.lambda_denominator)},
           {"u", u}};
    if (req.contains("n") && req.contains("d")) {
      const int n = req.at("n").get<int>();
      const int d = req.at("d").get<int>();
      const double h = req.value("h", 1.0);
      mpz_class rank = linrep::poly_space_dim(d, n);
      linrep::HeightBoundReport hb =
          linrep::height_bound_report(n, d, std::log(h), rank, req.value("c", 1.0));
      j["nullstellensatz"] = json{
          {"n", n},
          {"d", d},
          {"h", h},
          {"brownawell_degree_cap", linrep::brownawell_degree_cap(n, d).get_str()},
          {"poly_space_dim", rank.get_str()},
          {"hadamard_log_b", hb.hadamard_log_b},
          {"theorem_log_b", hb.theorem_log_b},
          {"simplified_factor", pow_expr_to_json(hb.simplified_factor)},
          {"simplified_log_b", hb.simplified_log_b},
          {"c_constant", hb.c_constant},
          {"c_note", "C is the paper-style absolute constant, non-normative"}};
    }
    return make_buf(json_out, j.dump(2));
  });
}

int linrep_experiment(const char* config_json, linrep_buf** summary_json_out) {
  return guarded([&]() {
    if (!config_json) return fail(LINREP_ERR_INVALID, "null config");
    linrep::ExperimentConfig cfg = linrep::parse_experiment_config(config_json);
    linrep::RunSummary s = linrep::run_experiment(cfg);
    json j{{"executed", s.executed},
           {"skipped", s.skipped},
           {"cap_errors", s.cap_errors},
           {"out", s.out}};
    return make_buf(summary_json_out, j.dump());
  });
}

int linrep_analyze(const char* request_json, linrep_buf** json_out) {
  return guarded([&]() {
    if (!request_json) return fail(LINREP_ERR_INVALID, "null request");
    json req = json::parse(request_json);
    const std::string path = req.at("records").get<std::string>();
    std::vector<linrep::TrialRecord> records = linrep::read_records_file(path);
    std::vector<mpq_class> survival;
    const std::vector<mpq_class>* survival_ptr = nullptr;
    if (req.value("union_bound", false)) {
      if (records.empty()) throw linrep::InsufficientDataError("no records");
      const linrep::TrialRecord& r0 = records.front();
      linrep::Caps caps = caps_from_request(req);
      linrep::Field field = field_from_q(r0.q);
      survival =
          linrep::large_tuple_survival_probabilities(field, r0.m, r0.k, r0.l, caps);
      survival_ptr = &survival;
    }
    linrep::DecayReport rep = linrep::analyze_decay(records, survival_ptr);
    json j = json::parse(linrep::decay_report_to_json(rep));
    if (req.value("csv", false)) j["csv"] = linrep::decay_report_to_csv(rep);
    return make_buf(json_out, j.dump(2));
  });
}

}  // extern "C"
