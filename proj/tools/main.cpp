// dicelab command-line tool.
//
// Every subcommand produces a versioned report envelope:
//   { "schema": 1, "version": ..., "config": <resolved config>,
//     "wall_time_seconds": ..., "results": ... }
// JSON is canonical; --format csv emits a flattened key,value projection with
// numeric text identical to the JSON payload. Reports are deterministic for a
// fixed (config, seed, workers); only wall_time_seconds varies run to run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicelab/acceptance.hpp"
#include "dicelab/accumulator.hpp"
#include "dicelab/charfn.hpp"
#include "dicelab/die.hpp"
#include "dicelab/edgeworth.hpp"
#include "dicelab/errors.hpp"
#include "dicelab/gstats.hpp"
#include "dicelab/parallel.hpp"
#include "dicelab/tournament.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using namespace dicelab;

#ifndef DICELAB_VERSION
#define DICELAB_VERSION "0.0.0"
#endif

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// Interval handling

IntervalSpec resolve_interval(const std::string& name, int n) {
  if (name == "unit") return IntervalSpec::unit(n);
  if (name == "wide") return IntervalSpec::wide(n);
  if (name == "symmetric") return IntervalSpec::symmetric(n);
  const std::string prefix = "custom:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string body = name.substr(prefix.size());
    double z1 = 0.0, z2 = 0.0;
    int consumed = 0;
    if (std::sscanf(body.c_str(), "%lf,%lf%n", &z1, &z2, &consumed) != 2 ||
        consumed != int(body.size()))
      throw UsageError("--interval custom:z1,z2 needs two comma-separated "
                       "reals, got 'custom:" + body + "'");
    if (!(z1 < z2))
      throw UsageError("--interval custom:z1,z2 needs z1 < z2");
    return IntervalSpec(z1, z2, n);
  }
  throw UsageError(
      "--interval must be one of unit, wide, symmetric, custom:z1,z2");
}

ojson interval_json(const std::string& name, const IntervalSpec& sp) {
  return ojson{{"preset", name}, {"z1", sp.z1}, {"z2", sp.z2}};
}

// ---------------------------------------------------------------------------
// Envelope serialization

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void flatten_json(const ojson& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten_json(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) flatten_json(v, prefix + "." + std::to_string(i++), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, csv_quote(j.get<std::string>()));
  } else {
    // Numbers, booleans, null: reuse the JSON text so the CSV projection
    // carries bit-identical numeric strings (shortest round-trip doubles).
    rows.emplace_back(prefix, j.dump());
  }
}

std::string to_csv(const ojson& envelope) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_json(envelope, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_quote(k) + "," + v + "\n";
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + path);
  f << text;
  if (!f) throw Error("failed while writing: " + path);
}

struct CommonOpts {
  int n = 101;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string interval = "symmetric";
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
  bool assert_mode = false;
};

void emit_envelope(const CommonOpts& c, ojson config, ojson results,
                   double wall_seconds) {
  ojson envelope;
  envelope["schema"] = 1;
  envelope["version"] = DICELAB_VERSION;
  envelope["config"] = std::move(config);
  envelope["wall_time_seconds"] = wall_seconds;
  envelope["results"] = std::move(results);
  if (c.format == "csv")
    write_text(c.out, to_csv(envelope));
  else
    write_text(c.out, envelope.dump(2) + "\n");
}

ojson base_config(const char* subcommand, const CommonOpts& c,
                  const IntervalSpec* sp) {
  ojson cfg;
  cfg["subcommand"] = subcommand;
  cfg["n"] = c.n;
  cfg["trials"] = c.trials;
  cfg["seed"] = c.seed;
  if (sp) cfg["interval"] = interval_json(c.interval, *sp);
  cfg["workers"] = c.workers;
  cfg["format"] = c.format;
  cfg["assert"] = c.assert_mode;
  return cfg;
}

ojson estimate_json(const EstimateReport& r) {
  return ojson{{"point", r.point},
               {"se", r.se},
               {"ci_low", r.ci_low},
               {"ci_high", r.ci_high},
               {"trials", r.trials}};
}

// ---------------------------------------------------------------------------
// Plot-data CSV: first column x, then one column per named series.

struct PlotSeries {
  std::string name;
  std::vector<double> ys;
};

void emit_plot_data(const std::vector<double>& xs,
                    const std::vector<PlotSeries>& series,
                    const std::string& path) {
  if (xs.empty() || series.empty())
    throw UsageError("emit_plot_data: refusing to write an empty series");
  for (const auto& s : series)
    if (s.ys.size() != xs.size())
      throw Error("emit_plot_data: series '" + s.name + "' length mismatch");
  std::string text = "x";
  for (const auto& s : series) text += "," + csv_quote(s.name);
  text += "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    text += ojson(xs[i]).dump();
    for (const auto& s : series) text += "," + ojson(s.ys[i]).dump();
    text += "\n";
  }
  write_text(path, text);
}

void warn_even_n(int n) {
  if (n % 2 == 0)
    std::cerr << "warning: n = " << n
              << " is even; pairwise margins can vanish and such trials are "
                 "counted as degenerate. Odd n avoids this.\n";
}

// ---------------------------------------------------------------------------
// sample

int run_sample(const CommonOpts& c) {
  const IntervalSpec sp = resolve_interval(c.interval, c.n);
  const double t0 = now_seconds();
  struct State {
    Accumulator defect, supg, faces;
    void merge(const State& o) {
      defect.merge(o.defect);
      supg.merge(o.supg);
      faces.merge(o.faces);
    }
  };
  const State st = run_parallel<State>(
      c.trials, c.workers, c.seed,
      [sp](State& s, RngStream& rng, std::int64_t) {
        const Die d = sample_balanced(sp, rng);
        s.defect.push(std::abs(d.face_sum() - sp.balance_target()));
        s.supg.push(sup_norm_g(d));
        for (double f : d.faces()) s.faces.push(f);
      });

  ojson results;
  results["dice"] = st.defect.count;
  results["balance_tolerance"] = sp.balance_tolerance();
  results["balance_defect"] = ojson{{"mean", st.defect.mean},
                                    {"max", st.defect.max}};
  results["sup_norm_g"] = ojson{{"mean", st.supg.mean},
                                {"se", st.supg.se_mean()},
                                {"max", st.supg.max}};
  results["faces"] = ojson{{"min", st.faces.min},
                           {"max", st.faces.max},
                           {"mean", st.faces.mean}};
  const bool violated = st.defect.max > sp.balance_tolerance();
  results["assert_violated"] = violated;

  emit_envelope(c, base_config("sample", c, &sp), results, now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// tournament3 / tournament4

ojson tournament_results(const TournamentEstimate& est) {
  ojson classes;
  const std::int64_t effective = est.trials - est.degenerate;
  for (const auto& [name, count] : est.counts) {
    ojson cls;
    cls["count"] = count;
    cls["probability"] = est.prob(name);
    cls["se"] = est.se(name);
    if (effective > 0) {
      const EstimateReport w = wilson_interval(count, effective);
      cls["ci_low"] = w.ci_low;
      cls["ci_high"] = w.ci_high;
    }
    classes[name] = std::move(cls);
  }
  return ojson{{"trials", est.trials},
               {"degenerate", est.degenerate},
               {"classes", std::move(classes)}};
}

int run_tournament3(const CommonOpts& c) {
  const IntervalSpec sp = resolve_interval(c.interval, c.n);
  warn_even_n(c.n);
  const double t0 = now_seconds();
  const TournamentEstimate est =
      estimate_tournament3(sp, c.trials, c.seed, c.workers);
  ojson results = tournament_results(est);
  // Headline check: the cycle rate sits within 4 SE + 0.02 of 1/4.
  const double p = est.prob("cycle");
  const double band = 4.0 * est.se("cycle") + 0.02;
  results["cycle_band"] = ojson{{"target", 0.25},
                                {"deviation", std::abs(p - 0.25)},
                                {"band", band}};
  const bool violated = std::abs(p - 0.25) > band;
  results["assert_violated"] = violated;
  emit_envelope(c, base_config("tournament3", c, &sp), results,
                now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

int run_tournament4(const CommonOpts& c, const std::string& sweep,
                    const std::string& plot) {
  const double t0 = now_seconds();
  ojson results;
  bool violated = false;
  IntervalSpec sp = resolve_interval(c.interval, c.n);

  if (!sweep.empty()) {
    // --sweep n1,n2,...: transitive ("line") share as a function of n.
    std::vector<int> ns;
    std::stringstream ss(sweep);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        ns.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw UsageError("--sweep expects a comma-separated list of n values");
      }
      if (ns.back() < 2) throw UsageError("--sweep entries must be >= 2");
    }
    if (ns.empty()) throw UsageError("--sweep list is empty");
    std::sort(ns.begin(), ns.end());
    std::vector<double> xs;
    PlotSeries line{"p_transitive", {}};
    ojson table = ojson::array();
    for (int n : ns) {
      warn_even_n(n);
      const TournamentEstimate est = estimate_tournament4(
          resolve_interval(c.interval, n), c.trials, c.seed, c.workers);
      xs.push_back(double(n));
      line.ys.push_back(est.prob("transitive"));
      table.push_back(ojson{{"n", n},
                            {"p_transitive", est.prob("transitive")},
                            {"se", est.se("transitive")}});
    }
    results["sweep"] = std::move(table);
    results["assert_violated"] = false;
    if (!plot.empty()) emit_plot_data(xs, {line}, plot);
  } else {
    warn_even_n(c.n);
    const TournamentEstimate est =
        estimate_tournament4(sp, c.trials, c.seed, c.workers);
    results = tournament_results(est);
    // Headline checks: transitive share exceeds 3/8 by 3 SE, stays in
    // [0.37, 0.41], and tracks the four-cycle share.
    const double pl = est.prob("transitive");
    const double sl = est.se("transitive");
    const double pb = est.prob("four_cycle");
    const double eff = double(est.trials - est.degenerate);
    const double se_diff = eff > 0
        ? std::sqrt((pl * (1 - pl) + pb * (1 - pb) + 2 * pl * pb) / eff)
        : 0.0;
    const bool excess = (pl - 0.375) >= 3.0 * sl;
    const bool window = pl >= 0.37 && pl <= 0.41;
    const bool near_box = std::abs(pl - pb) <= 4.0 * se_diff + 0.02;
    results["line_excess"] = ojson{{"p_transitive", pl},
                                   {"exceeds_3_8_by_3se", excess},
                                   {"in_window", window},
                                   {"tracks_four_cycle", near_box}};
    violated = !(excess && window && near_box);
    results["assert_violated"] = violated;
  }

  ojson cfg = base_config("tournament4", c, &sp);
  if (!sweep.empty()) cfg["sweep"] = sweep;
  if (!plot.empty()) cfg["plot"] = plot;
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// moments

int run_moments(const CommonOpts& c, const std::string& stat) {
  const IntervalSpec sp = resolve_interval(c.interval, c.n);
  const double t0 = now_seconds();
  struct State {
    Accumulator var_a, cv_a2, cv_ab2, var_a2;
    void merge(const State& o) {
      var_a.merge(o.var_a);
      cv_a2.merge(o.cv_a2);
      cv_ab2.merge(o.cv_ab2);
      var_a2.merge(o.var_a2);
    }
  };
  const bool closed_ok = sp.is_symmetric();
  const State st = run_parallel<State>(
      c.trials, c.workers, c.seed,
      [sp, closed_ok](State& s, RngStream& rng, std::int64_t) {
        const Die a = sample_balanced(sp, rng);
        const Die b = sample_balanced(sp, rng);
        const GMoments m =
            closed_ok ? moments_closed_form(a, b) : moments_quadrature(a, b);
        s.var_a.push(m.var_a);
        s.cv_a2.push(m.cv_a * m.cv_a);
        s.cv_ab2.push(m.cv_ab * m.cv_ab);
        s.var_a2.push(m.var_a * m.var_a);
      });

  const double dn = double(c.n);
  struct Row {
    const char* key;
    const Accumulator& acc;
    double target;      // NaN when no asymptotic reference applies
    double rel_band;
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<Row> rows = {
      {"var_a", st.var_a, closed_ok ? dn / 15.0 : nan, 0.05},
      {"cv_a2", st.cv_a2, closed_ok ? dn / 60.0 : nan, 0.05},
      {"cv_ab2", st.cv_ab2, closed_ok ? 11.0 * dn * dn / 12600.0 : nan, 0.10},
      {"var_a2", st.var_a2, nan, 0.0},
  };

  ojson results;
  bool violated = false;
  for (const Row& r : rows) {
    if (stat != "all" && stat != r.key) continue;
    ojson entry = estimate_json(mean_report(r.acc));
    if (!std::isnan(r.target)) {
      entry["target"] = r.target;
      entry["rel_band"] = r.rel_band;
      const bool in_band =
          std::abs(r.acc.mean - r.target) <= r.rel_band * r.target;
      entry["in_band"] = in_band;
      violated = violated || !in_band;
    }
    results[r.key] = std::move(entry);
  }
  results["assert_violated"] = violated;

  ojson cfg = base_config("moments", c, &sp);
  cfg["stat"] = stat;
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// nested

int run_nested(const CommonOpts& c, const std::string& kind, std::int64_t outer,
               std::int64_t inner) {
  const IntervalSpec sp = resolve_interval(c.interval, c.n);
  const double t0 = now_seconds();
  const NestedSummary s =
      kind == "x" ? estimate_nested_x(sp, outer, inner, c.seed, c.workers)
                  : estimate_nested_y(sp, outer, inner, c.seed, c.workers);
  const double factor = kind == "x" ? 3.0 : 6.0;

  ojson results;
  results["kind"] = kind;
  results["outer"] = s.outer;
  results["inner"] = s.inner;
  results["draws"] = s.draws;
  results["mean"] = ojson{{"point", s.mean}, {"se", s.se_mean}};
  results["var_raw"] = s.var_raw;
  results["var_corrected"] = s.var_corrected;
  results["second_moment_corrected"] = s.second_moment_corrected;
  results["se_second_moment"] = s.se_second_moment;
  results["scaled_second_moment"] =
      ojson{{"factor", factor},
            {"point", factor * s.second_moment_corrected},
            {"se", factor * s.se_second_moment},
            {"meaning", kind == "x" ? "three-dice transitive probability"
                                    : "four-dice transitive probability"}};
  const bool violated = !(s.mean >= 0.0 && s.mean <= 1.0 &&
                          s.second_moment_corrected >= -1e-6 &&
                          s.second_moment_corrected <= 1.0 + 1e-6);
  results["assert_violated"] = violated;

  ojson cfg = base_config("nested", c, &sp);
  cfg["kind"] = kind;
  cfg["outer"] = outer;
  cfg["inner"] = inner;
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// edgeworth

int run_edgeworth(const CommonOpts& c, const std::string& check, int order,
                  int grid, int k, const std::string& plot) {
  const double t0 = now_seconds();
  ojson results;
  bool violated = false;

  if (check == "correction-factors") {
    // Closed-form truncation of p_{n-k} against the direct density ratio,
    // at size n and 2n on an O(1) grid. The truncation error shrinks like
    // n^-2 (k in {3,4}) or n^-3 (k in {1,2}), so doubling n should shrink
    // the sup discrepancy by at least 2x. Uses the exact density backend,
    // which caps the doubled size: pick n <= 18.
    const CorrectionOrder ord =
        k <= 2 ? CorrectionOrder::OneOverN2 : CorrectionOrder::OneOverN;
    std::vector<double> xs;
    PlotSeries closed{"closed_form", {}};
    PlotSeries direct_s{"direct", {}};
    auto sup_gap = [&](int nn, bool record) {
      const DirectCorrectionFactor direct(nn, k, DensityBackend::Exact);
      double sup = 0.0;
      for (int i = 0; i < grid; ++i) {
        const double x = -3.0 + 6.0 * double(i) / double(grid - 1);
        const double cf = correction_factor_closed(nn, k, x, ord);
        const double df = direct(x);
        sup = std::max(sup, std::abs(cf - df));
        if (record) {
          xs.push_back(x);
          closed.ys.push_back(cf);
          direct_s.ys.push_back(df);
        }
      }
      return sup;
    };
    const double d_n = sup_gap(c.n, true);
    const double d_2n = sup_gap(2 * c.n, false);
    const double ratio = d_2n > 0.0 ? d_n / d_2n : 0.0;
    results["k"] = k;
    results["truncation_order"] = k <= 2 ? 2 : 1;
    results["sup_discrepancy_n"] = d_n;
    results["sup_discrepancy_2n"] = d_2n;
    results["ratio"] = ratio;
    violated = !(ratio >= 2.0);
    results["assert_violated"] = violated;
    if (!plot.empty()) emit_plot_data(xs, {closed, direct_s}, plot);
  } else if (check == "simple-integrals") {
    ojson rows = ojson::array();
    for (const auto& r : simple_integrals_table()) {
      rows.push_back(ojson{{"name", r.name},
                           {"exact", r.exact},
                           {"quadrature", r.quadrature},
                           {"abs_err", r.abs_err},
                           {"pass", r.pass}});
      violated = violated || !r.pass;
    }
    results["rows"] = std::move(rows);
    results["assert_violated"] = violated;
  } else {
    // Density mode: expansion on the normalized scale over [-4, 4].
    const int n = c.n;
    std::vector<double> xs;
    PlotSeries approx{"edgeworth", {}};
    PlotSeries exact{"exact", {}};
    std::optional<IrwinHall> ih;
    if (n <= 40) ih.emplace(n);
    const double rn = std::sqrt(double(n));
    double sup_gap = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double x = -4.0 + 8.0 * double(i) / double(grid - 1);
      xs.push_back(x);
      approx.ys.push_back(edgeworth_density(n, x, order));
      if (ih) {
        exact.ys.push_back(rn * (*ih)(x * rn));
        sup_gap = std::max(sup_gap, std::abs(approx.ys.back() - exact.ys.back()));
      }
    }
    results["order"] = order;
    results["grid"] = grid;
    results["range"] = ojson{{"lo", -4.0}, {"hi", 4.0}};
    if (ih) results["sup_gap_vs_exact"] = sup_gap;
    results["assert_violated"] = false;
    if (!plot.empty()) {
      std::vector<PlotSeries> series{approx};
      if (ih) series.push_back(exact);
      emit_plot_data(xs, series, plot);
    }
  }

  ojson cfg = base_config("edgeworth", c, nullptr);
  if (!check.empty()) cfg["check"] = check;
  cfg["order"] = order;
  cfg["grid"] = grid;
  if (check == "correction-factors") cfg["k"] = k;
  if (!plot.empty()) cfg["plot"] = plot;
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// charfn

ojson violation_json(const ViolationReport& r) {
  return ojson{{"samples", r.samples},
               {"violations", r.violations},
               {"max_statistic", r.max_statistic}};
}

int run_charfn(const CommonOpts& c, const std::string& check, int pairs,
               int grid, int face_index, double epsilon) {
  if (c.interval != "wide")
    throw UsageError("charfn operates on the wide interval [0, n]; "
                     "drop --interval or pass --interval wide");
  const IntervalSpec sp = IntervalSpec::wide(c.n);
  const double t0 = now_seconds();
  ojson results;
  results["check"] = check;
  bool violated = false;

  if (check == "decay-box") {
    DecayGridSpec gs;
    gs.alpha_points = gs.beta_points = gs.gamma_points = grid;
    const DecayBoxReport rep = check_decay_box(c.n, pairs, gs, c.seed);
    results["threshold"] = rep.threshold;
    results["alpha_box"] = rep.alpha_box;
    results["gamma_box"] = rep.gamma_box;
    results["violating_pairs"] = rep.violating_pairs;
    results["violating_fraction"] = rep.violating_fraction;
    ojson per_pair = ojson::array();
    for (const auto& p : rep.pairs)
      per_pair.push_back(ojson{{"points", p.points},
                               {"exceedances", p.exceedances},
                               {"max_modulus", p.max_modulus}});
    results["pairs"] = std::move(per_pair);
    violated = rep.violating_fraction > 0.1;
  } else if (check == "qr-bound") {
    const ViolationReport rep = check_qr_bound(pairs, c.trials, c.n, c.seed);
    results["report"] = violation_json(rep);
    violated = rep.violations > 0;
  } else if (check == "e-mod1") {
    RngStream rng(c.seed, 0);
    const ViolationReport rep = check_e_to_mod1(c.trials, rng);
    results["report"] = violation_json(rep);
    violated = rep.violations > 0;
  } else if (check == "exp-nq") {
    RngStream rng(c.seed, 0);
    const ViolationReport rep = check_exp_nq(c.trials, rng);
    results["report"] = violation_json(rep);
    violated = rep.violations > 0;
  } else {
    // Per-pair checks over freshly sampled balanced wide pairs.
    RngStream rng(c.seed, 0);
    ViolationReport total;
    for (int p = 0; p < pairs; ++p) {
      const Die a = sample_balanced(sp, rng);
      const Die b = sample_balanced(sp, rng);
      ViolationReport rep;
      if (check == "large-gamma") {
        rep = check_large_gamma(a, b, c.trials, rng);
      } else if (check == "lipschitz") {
        rep = check_lipschitz(a, b, c.trials, rng);
      } else if (check == "face-perturbation") {
        const int idx = face_index >= 0 ? face_index : c.n / 2;
        rep = check_face_perturbation(a, b, idx, epsilon, c.trials, rng);
      } else {
        throw UsageError("unknown --check '" + check + "'");
      }
      total.samples += rep.samples;
      total.violations += rep.violations;
      total.max_statistic = std::max(total.max_statistic, rep.max_statistic);
    }
    results["pairs"] = pairs;
    results["report"] = violation_json(total);
    violated = total.violations > 0;
  }
  results["assert_violated"] = violated;

  ojson cfg = base_config("charfn", c, &sp);
  cfg["check"] = check;
  cfg["pairs"] = pairs;
  if (check == "decay-box") cfg["grid"] = grid;
  if (check == "face-perturbation") {
    cfg["face_index"] = face_index >= 0 ? face_index : c.n / 2;
    cfg["epsilon"] = epsilon;
  }
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// cltcompare

int run_cltcompare(const CommonOpts& c, bool windowed, double window) {
  const IntervalSpec sp = resolve_interval(c.interval, c.n);
  const double t0 = now_seconds();

  // Draw a well-conditioned balanced pair from a dedicated stream so the
  // trial streams (seed, 0..workers-1) stay untouched.
  RngStream pair_rng(c.seed, 999);
  const bool closed_ok = sp.is_symmetric();
  std::optional<std::pair<Die, Die>> pick;
  for (int tries = 0; tries < 1000 && !pick; ++tries) {
    Die a = sample_balanced(sp, pair_rng);
    Die b = sample_balanced(sp, pair_rng);
    const GMoments m =
        closed_ok ? moments_closed_form(a, b) : moments_quadrature(a, b);
    if (m.var_a_cond >= 0.01 * double(c.n) &&
        m.var_b_cond >= 0.01 * double(c.n))
      pick.emplace(std::move(a), std::move(b));
  }
  if (!pick)
    throw Error("cltcompare: no well-conditioned balanced pair found");

  CltCompareOptions opts;
  opts.windowed = windowed || window > 0.0;
  opts.window = window;
  opts.workers = c.workers;
  const CltCompareReport rep =
      conditional_clt_compare(pick->first, pick->second, c.trials, c.seed, opts);

  ojson results;
  results["hits"] = rep.hits;
  results["lhs"] = ojson{{"point", rep.lhs}, {"se", rep.lhs_se}};
  results["rho_cond"] = rep.rho_cond;
  results["rhs_orthant"] = rep.rhs;
  results["difference"] = rep.difference;
  results["windowed"] = rep.windowed;
  results["half_integral"] = ojson{{"checked", rep.half_integral_checked},
                                   {"ok", rep.half_integral_ok},
                                   {"max_err", rep.max_half_integral_err}};
  const bool violated = std::abs(rep.difference) > 0.05 ||
                        (rep.half_integral_checked && !rep.half_integral_ok);
  results["assert_violated"] = violated;

  ojson cfg = base_config("cltcompare", c, &sp);
  cfg["windowed"] = opts.windowed;
  cfg["window"] = window;
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

// ---------------------------------------------------------------------------
// acceptance

int run_acceptance_cmd(const CommonOpts& c, std::vector<int> ids) {
  const double t0 = now_seconds();
  std::vector<CriterionResult> rs;
  if (ids.empty()) {
    rs = run_acceptance();
  } else {
    for (int id : ids) rs.push_back(run_criterion(id));
  }
  bool violated = false;
  int passed = 0;
  ojson rows = ojson::array();
  for (const auto& r : rs) {
    rows.push_back(ojson{{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"seconds", r.seconds},
                         {"detail", r.detail}});
    violated = violated || !r.pass;
    passed += r.pass ? 1 : 0;
  }
  ojson results;
  results["criteria"] = std::move(rows);
  results["passed"] = passed;
  results["total"] = int(rs.size());
  results["assert_violated"] = violated;

  ojson cfg;
  cfg["subcommand"] = "acceptance";
  cfg["ids"] = ids;
  cfg["format"] = c.format;
  cfg["assert"] = c.assert_mode;
  cfg["note"] =
      "criteria pin their own seeds and worker counts for reproducibility";
  emit_envelope(c, std::move(cfg), std::move(results), now_seconds() - t0);
  return c.assert_mode && violated ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dicelab: Monte Carlo and numerical analysis of intransitive "
               "dice tournaments"};
  app.require_subcommand(1);

  CommonOpts c;
  auto add_common = [&](CLI::App* sub, bool with_interval = true) {
    sub->add_option("--n", c.n, "number of faces per die (>= 2)")
        ->capture_default_str();
    sub->add_option("--trials", c.trials, "number of Monte Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "base RNG seed")->capture_default_str();
    if (with_interval)
      sub->add_option("--interval", c.interval,
                      "face interval: unit | wide | symmetric | custom:z1,z2")
          ->capture_default_str();
    sub->add_option("--workers", c.workers,
                    "worker threads (env DICELAB_WORKERS when flag absent)")
        ->envname("DICELAB_WORKERS")
        ->check(CLI::Range(1u, 4096u))
        ->capture_default_str();
    sub->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", c.out, "output path (default: stdout)");
    sub->add_flag("--assert", c.assert_mode,
                  "exit 2 when the subcommand's acceptance threshold fails");
  };

  CLI::App* sample = app.add_subcommand(
      "sample", "sample balanced dice and summarize them");
  add_common(sample);

  CLI::App* t3 = app.add_subcommand(
      "tournament3", "class distribution of three-dice tournaments");
  add_common(t3);

  std::string sweep, plot;
  CLI::App* t4 = app.add_subcommand(
      "tournament4", "class distribution of four-dice tournaments");
  add_common(t4);
  t4->add_option("--sweep", sweep, "comma-separated n values to sweep");
  t4->add_option("--plot", plot, "write plot-data CSV to this path");

  std::string stat = "all";
  CLI::App* moments = app.add_subcommand(
      "moments", "sampled moment statistics of balanced dice");
  add_common(moments);
  moments->add_option("--stat", stat, "which statistic to report")
      ->check(CLI::IsMember({"var_a", "cv_a2", "cv_ab2", "var_a2", "all"}))
      ->capture_default_str();

  std::string kind = "y";
  std::int64_t outer = 2000, inner = 500;
  CLI::App* nested = app.add_subcommand(
      "nested", "two-level conditional win-probability estimates");
  add_common(nested);
  nested->add_option("--kind", kind, "x: one conditioned die; y: two")
      ->check(CLI::IsMember({"x", "y"}))
      ->capture_default_str();
  nested->add_option("--outer", outer, "outer trials")
      ->check(CLI::Range(std::int64_t(2), std::int64_t(1) << 40))
      ->capture_default_str();
  nested->add_option("--inner", inner, "inner trials per outer trial")
      ->check(CLI::Range(std::int64_t(2), std::int64_t(1) << 40))
      ->capture_default_str();

  std::string echeck;
  int order = 2, grid = 241, kval = 1;
  std::string eplot;
  CLI::App* edge = app.add_subcommand(
      "edgeworth", "density expansions and the split-integral table");
  add_common(edge, /*with_interval=*/false);
  edge->add_option("--check", echeck, "run a named check instead of density "
                                      "evaluation")
      ->check(CLI::IsMember({"simple-integrals", "correction-factors"}));
  edge->add_option("--order", order, "expansion order")
      ->check(CLI::IsMember({0, 2, 4}))
      ->capture_default_str();
  edge->add_option("--grid", grid, "grid points over the evaluation range")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  edge->add_option("--k", kval, "free faces for the correction-factor check "
                                "(with --check correction-factors; n <= 18)")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  edge->add_option("--plot", eplot, "write (x, edgeworth[, exact]) CSV here");

  std::string ccheck = "large-gamma";
  int pairs = 10, face_index = -1;
  double epsilon = 0.05;
  int cgrid = 10;
  CLI::App* charfn = app.add_subcommand(
      "charfn", "characteristic-function evaluation and bound checks "
                "(interval defaults to wide)");
  add_common(charfn);
  charfn->add_option("--check", ccheck, "which bound family to check")
      ->check(CLI::IsMember({"large-gamma", "lipschitz", "face-perturbation",
                             "qr-bound", "e-mod1", "exp-nq", "decay-box"}))
      ->capture_default_str();
  charfn->add_option("--pairs", pairs, "number of sampled dice pairs")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  charfn->add_option("--grid", cgrid, "grid points per frequency axis "
                                      "(decay-box)")
      ->check(CLI::Range(2, 10000))
      ->capture_default_str();
  charfn->add_option("--face-index", face_index,
                     "face to perturb (default n/2)");
  charfn->add_option("--epsilon", epsilon, "perturbation magnitude")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  bool windowed = false;
  double window = 0.0;
  CLI::App* clt = app.add_subcommand(
      "cltcompare", "conditional positivity rate vs the Gaussian orthant");
  add_common(clt);
  clt->add_flag("--windowed", windowed,
                "condition on a window around the target sum instead of "
                "exact balance");
  clt->add_option("--window", window,
                  "window half-width (implies --windowed; 0 = default width)");

  std::vector<int> ids;
  CLI::App* acc = app.add_subcommand(
      "acceptance", "run the acceptance criteria (all by default)");
  acc->add_option("--id", ids, "criterion id(s) to run, 1..13")
      ->check(CLI::Range(1, 13));
  acc->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  acc->add_option("--out", c.out, "output path (default: stdout)");
  acc->add_flag("--assert", c.assert_mode,
                "exit 2 when any requested criterion fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (c.n < 2)
      throw UsageError("--n must be at least 2 (a die needs two faces)");
    // charfn works on the wide interval; fill that default when the flag is
    // absent instead of inheriting the shared symmetric default.
    if (charfn->parsed() && charfn->get_option("--interval")->count() == 0)
      c.interval = "wide";
    if (sample->parsed()) return run_sample(c);
    if (t3->parsed()) return run_tournament3(c);
    if (t4->parsed()) return run_tournament4(c, sweep, plot);
    if (moments->parsed()) return run_moments(c, stat);
    if (nested->parsed()) return run_nested(c, kind, outer, inner);
    if (edge->parsed())
      return run_edgeworth(c, echeck, order, grid, kval, eplot);
    if (charfn->parsed())
      return run_charfn(c, ccheck, pairs, cgrid, face_index, epsilon);
    if (clt->parsed()) return run_cltcompare(c, windowed, window);
    if (acc->parsed()) return run_acceptance_cmd(c, ids);
  } catch (const UsageError& e) {
    std::cerr << "usage error (" << name << "): " << e.what() << "\n";
    return 64;
  } catch (const Error& e) {
    std::cerr << "error (" << name << "): " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error (" << name << "): " << e.what() << "\n";
    return 70;
  }
  return 0;
}
