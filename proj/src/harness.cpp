#include "acstab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "acstab/bounds.hpp"
#include "acstab/chain.hpp"
#include "acstab/errors.hpp"
#include "acstab/operator.hpp"
#include "acstab/sampling.hpp"

namespace acstab {

namespace fs = std::filesystem;

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::check_lemmas: return "check-lemmas";
    case Subcommand::replay_chain: return "replay-chain";
    case Subcommand::recover: return "recover";
    case Subcommand::bounds: return "bounds";
    case Subcommand::sweep: return "sweep";
  }
  return "?";
}

Subcommand parse_subcommand(std::string_view text) {
  for (auto s : {Subcommand::check_lemmas, Subcommand::replay_chain, Subcommand::recover, Subcommand::bounds,
                 Subcommand::sweep})
    if (to_string(s) == text) return s;
  fail(ErrorCode::invalid_argument, "unknown subcommand '" + std::string(text) + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::divergent_series: return exit_code::divergent;
    case ErrorCode::overflow_guard: return exit_code::overflow;
    case ErrorCode::io_error: return exit_code::internal;
    default: return exit_code::config_error;
  }
}

namespace {

std::optional<Direction> direction_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "auto") return std::nullopt;
    fail(ErrorCode::parse_error, "direction must be -1, 1 or \"auto\", got " + j.dump());
  }
  return Direction(j.get<int>());
}

RandomSpec random_from_json(const Json& j) {
  RandomSpec r;
  r.count = j.value("count", std::size_t{0});
  r.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("range")) {
    const auto& range = j.at("range");
    if (!range.is_array() || range.size() != 2) fail(ErrorCode::parse_error, "range must be [lo, hi]");
    r.lo = range[0].get<std::int64_t>();
    r.hi = range[1].get<std::int64_t>();
    if (r.lo > r.hi) fail(ErrorCode::invalid_argument, "range has lo > hi");
  }
  r.bits = j.value("denominator_bits", 10);
  if (r.bits < 0 || r.bits > 30) fail(ErrorCode::invalid_argument, "denominator_bits must be in [0, 30]");
  return r;
}

// Exact quantities compared against a fixed tolerance in float mode.
bool is_nonzero(const ResidualVector& r, ScalarMode mode, double float_tol) {
  return mode == ScalarMode::exact ? !r.is_exact_zero() : r.relative() > float_tol;
}

struct Stats {
  double max_abs = 0.0;
  double max_relative = 0.0;
  std::size_t nonzero = 0;
  std::size_t samples = 0;

  void add(const ResidualVector& r, ScalarMode mode, double tol) {
    max_abs = std::max(max_abs, r.magnitude);
    max_relative = std::max(max_relative, r.relative());
    nonzero += is_nonzero(r, mode, tol) ? 1 : 0;
    ++samples;
  }

  Json json(bool must_vanish) const {
    Json out;
    out["samples"] = samples;
    out["max_abs"] = number_json(max_abs);
    out["max_relative"] = number_json(max_relative);
    out["nonzero"] = nonzero;
    out["must_vanish"] = must_vanish;
    out["passed"] = !must_vanish || nonzero == 0;
    return out;
  }
};

void write_text(const fs::path& path, const std::string& text, RunResult& result) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorCode::io_error, "failed writing " + path.string());
  result.files.push_back(path.string());
}

void write_json(const fs::path& path, const Json& j, RunResult& result) {
  write_text(path, j.dump(2) + "\n", result);
}

Json header(Subcommand sub, const ExperimentConfig& cfg) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["subcommand"] = std::string(to_string(sub));
  out["mode"] = std::string(to_string(cfg.mode));
  out["norm"] = std::string(to_string(cfg.norm));
  out["dimensions"] = Json{{"d", cfg.d}, {"m", cfg.m}};
  return out;
}

const FuncModel& require_model(const ExperimentConfig& cfg, Subcommand sub) {
  if (!cfg.model) fail(ErrorCode::parse_error, std::string(to_string(sub)) + " needs a \"model\" section");
  return *cfg.model;
}

bool only_linear(const FuncModel& f) {
  return std::all_of(f.atoms().begin(), f.atoms().end(),
                     [](const Atom& a) { return std::holds_alternative<LinearAtom>(a); });
}

// ---------------------------------------------------------------- check-lemmas

struct Family {
  std::string name;
  std::string kind;
  std::string expect;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::optional<FuncModel> model;
};

std::vector<Family> families_from_config(const ExperimentConfig& cfg, const Json& section) {
  std::vector<Family> out;
  if (!section.contains("families")) {
    out.push_back({"linear", "random_linear", "additive", 10, 1, std::nullopt});
    out.push_back({"cubic", "random_cubic", "cubic", 10, 2, std::nullopt});
    if (cfg.model) out.push_back({"model", "model", "none", 1, 0, cfg.model});
    return out;
  }
  for (const auto& f : section.at("families")) {
    Family fam;
    fam.kind = require(f, "kind", "family").get<std::string>();
    fam.name = f.value("name", fam.kind);
    fam.expect = f.value("expect", std::string("none"));
    fam.count = f.value("count", std::size_t{1});
    fam.seed = f.value("seed", std::uint64_t{0});
    static const std::set<std::string> kinds{"random_linear", "random_cubic", "random_even", "model"};
    static const std::set<std::string> expects{"additive", "cubic", "solution", "none"};
    if (!kinds.count(fam.kind)) fail(ErrorCode::parse_error, "unknown family kind '" + fam.kind + "'");
    if (!expects.count(fam.expect)) fail(ErrorCode::parse_error, "unknown expectation '" + fam.expect + "'");
    if (fam.kind == "model") {
      fam.count = 1;
      if (f.contains("model"))
        fam.model = model_from_json(f.at("model"), cfg.d, cfg.m);
      else
        fam.model = require_model(cfg, Subcommand::check_lemmas);
    }
    out.push_back(std::move(fam));
  }
  return out;
}

Json residual_sample_json(const ResidualVector& r) {
  Json out;
  out["value"] = point_json(r.value);
  out["magnitude"] = number_json(r.magnitude);
  return out;
}

RunResult run_check_lemmas(const ExperimentConfig& cfg, const fs::path& dir) {
  RunResult result;
  const Json section = cfg.raw.value("check_lemmas", Json::object());
  const double tol = section.value("float_tolerance", 1e-9);
  const bool chain = section.value("chain", true) && cfg.mode == ScalarMode::exact;
  const auto families = families_from_config(cfg, section);

  Json report = header(Subcommand::check_lemmas, cfg);
  report["pair_count"] = cfg.pairs.size();
  report["float_tolerance"] = tol;
  report["chain_replayed"] = chain;
  Json fams = Json::array();
  bool all_passed = true;
  std::ostringstream summary;

  for (const auto& fam : families) {
    const bool additive = fam.expect == "additive";
    const bool cubic = fam.expect == "cubic";
    const bool any = additive || cubic || fam.expect == "solution";
    Stats d_stats, add_stats, cub_stats, dbl_stats, chain_stats;
    std::set<std::string> nonzero_ids;
    Json samples = Json::array();

    Sampler sampler(fam.seed);
    for (std::size_t k = 0; k < fam.count; ++k) {
      const FuncModel f = fam.kind == "random_linear"  ? sampler.random_linear(cfg.d, cfg.m)
                          : fam.kind == "random_cubic" ? sampler.random_cubic(cfg.d, cfg.m)
                          : fam.kind == "random_even"  ? sampler.random_even(cfg.d, cfg.m)
                                                       : *fam.model;
      for (const auto& [x, y] : cfg.pairs) {
        const auto d = d_residual(f, x, y);
        const auto a = additive_lemma_residual(f, x, y);
        const auto c = cubic_lemma_residual(f, x, y);
        const auto g = double_arg_residual(f, x);
        d_stats.add(d, cfg.mode, tol);
        add_stats.add(a, cfg.mode, tol);
        cub_stats.add(c, cfg.mode, tol);
        dbl_stats.add(g, cfg.mode, tol);
        if (chain) {
          for (const auto& r : chain_replay(f, x, y)) {
            chain_stats.add(r.residual, cfg.mode, tol);
            if (!r.residual.is_exact_zero()) nonzero_ids.insert(r.id);
          }
        }
        if (fam.kind == "model") {
          Json s;
          s["x"] = point_json(x);
          s["y"] = point_json(y);
          s["difference_operator"] = residual_sample_json(d);
          s["additive_relation"] = residual_sample_json(a);
          s["cubic_relation"] = residual_sample_json(c);
          s["double_argument"] = residual_sample_json(g);
          samples.push_back(std::move(s));
        }
      }
    }

    Json rel;
    rel["difference_operator"] = d_stats.json(any);
    rel["additive_relation"] = add_stats.json(additive);
    rel["cubic_relation"] = cub_stats.json(cubic);
    rel["double_argument"] = dbl_stats.json(any);
    bool passed = true;
    for (const auto& [name, r] : rel.items()) passed = passed && r.at("passed").get<bool>();

    Json fj;
    fj["name"] = fam.name;
    fj["kind"] = fam.kind;
    fj["expect"] = fam.expect;
    fj["model_count"] = fam.count;
    fj["seed"] = fam.seed;
    fj["relations"] = std::move(rel);
    if (chain) {
      Json cj = chain_stats.json(additive);
      cj["identities"] = chain_catalogue().size();
      // Catalogue order, not lexicographic.
      Json ids = Json::array();
      for (const auto& c : chain_catalogue())
        if (nonzero_ids.count(c.id)) ids.push_back(c.id);
      cj["nonzero_identities"] = std::move(ids);
      passed = passed && cj.at("passed").get<bool>();
      fj["chain"] = std::move(cj);
    }
    if (fam.kind == "model") fj["samples"] = std::move(samples);
    fj["passed"] = passed;
    fams.push_back(std::move(fj));
    all_passed = all_passed && passed;
    summary << fam.name << ": " << (passed ? "ok" : "FAILED") << " (max |D| " << format_double(d_stats.max_abs)
            << ")\n";
  }
  report["families"] = std::move(fams);
  report["passed"] = all_passed;
  write_json(dir / "check_lemmas.json", report, result);
  result.exit_code = all_passed ? exit_code::ok : exit_code::check_failed;
  result.summary = "check-lemmas: " + std::to_string(families.size()) + " families, " +
                   std::to_string(cfg.pairs.size()) + " pairs\n" + summary.str();
  return result;
}

// ---------------------------------------------------------------- replay-chain

RunResult run_replay_chain(const ExperimentConfig& cfg, const fs::path& dir) {
  if (cfg.mode != ScalarMode::exact)
    fail(ErrorCode::mode_mismatch, "replay-chain runs in exact mode only");
  RunResult result;
  const FuncModel& f = require_model(cfg, Subcommand::replay_chain);
  const Json section = cfg.raw.value("replay_chain", Json::object());
  const auto catalogue = section.contains("catalogue") ? catalogue_from_json(section.at("catalogue"))
                                                       : chain_catalogue();
  const bool expect_zero = section.value("expect_zero", only_linear(f));

  std::vector<Stats> stats(catalogue.size());
  std::vector<Json> residuals(catalogue.size(), Json::array());
  for (const auto& [x, y] : cfg.pairs) {
    const auto rs = chain_replay(catalogue, f, x, y);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      stats[i].add(rs[i].residual, cfg.mode, 0.0);
      residuals[i].push_back(point_json(rs[i].residual.value));
    }
  }

  Json report = header(Subcommand::replay_chain, cfg);
  report["catalogue_version"] = kChainCatalogueVersion;
  report["model"] = model_json(f);
  report["expect_zero"] = expect_zero;
  Json pairs = Json::array();
  for (const auto& [x, y] : cfg.pairs) pairs.push_back(Json{{"x", point_json(x)}, {"y", point_json(y)}});
  report["pairs"] = std::move(pairs);
  Json ids = Json::array();
  std::size_t nonzero_ids = 0;
  for (std::size_t i = 0; i < catalogue.size(); ++i) {
    Json row;
    row["id"] = catalogue[i].id;
    row["nonzero"] = stats[i].nonzero;
    row["max_abs"] = number_json(stats[i].max_abs);
    row["residuals"] = std::move(residuals[i]);
    ids.push_back(std::move(row));
    nonzero_ids += stats[i].nonzero > 0 ? 1 : 0;
  }
  report["identities"] = std::move(ids);
  report["nonzero_identities"] = nonzero_ids;
  const bool passed = !expect_zero || nonzero_ids == 0;
  report["passed"] = passed;

  write_json(dir / "chain_catalogue.json", catalogue_json(catalogue), result);
  write_json(dir / "chain_replay.json", report, result);
  result.exit_code = passed ? exit_code::ok : exit_code::check_failed;
  result.summary = "replay-chain: " + std::to_string(catalogue.size()) + " identities x " +
                   std::to_string(cfg.pairs.size()) + " pairs, " + std::to_string(nonzero_ids) +
                   " with nonzero residual" + (passed ? "" : " (expected all zero)") + "\n";
  return result;
}

// ---------------------------------------------------------------- recover

RecoveryOptions recovery_options(const ExperimentConfig& cfg) {
  RecoveryOptions opt;
  opt.iteration = cfg.iteration;
  opt.series = cfg.series;
  opt.additive_direction = cfg.direction_additive;
  opt.cubic_direction = cfg.direction_cubic;
  opt.threads = cfg.threads;
  return opt;
}

RunResult run_recover(const ExperimentConfig& cfg, const fs::path& dir) {
  RunResult result;
  const FuncModel& f = require_model(cfg, Subcommand::recover);
  const ControlFunction phi = cfg.phi ? *cfg.phi : certify_phi(f);
  const RecoveryReport rep = recover(f, cfg.points, phi, recovery_options(cfg));

  Json report = header(Subcommand::recover, cfg);
  report["model"] = model_json(f);
  report["phi_source"] = cfg.phi ? "config" : "certified";
  report["status"] = "ok";
  const Json body = recovery_json(rep);
  for (const auto& [k, v] : body.items()) report[k] = v;
  report["passed"] = rep.all_within_bound();

  std::ostringstream csv;
  write_recovery_csv(csv, rep);
  write_json(dir / "recover.json", report, result);
  write_text(dir / "recover.csv", csv.str(), result);
  result.exit_code = rep.all_within_bound() ? exit_code::ok : exit_code::check_failed;
  result.summary = "recover: " + std::to_string(rep.points.size()) + " points, max error " +
                   format_double(rep.max_error()) + ", " + std::to_string(rep.violations()) +
                   " bound violations, l = (" + std::to_string(rep.direction_additive.value()) + ", " +
                   std::to_string(rep.direction_cubic.value()) + ")\n";
  return result;
}

// ---------------------------------------------------------------- bounds

const char* kBoundsColumns =
    "schema_version,section,kind,phi_kind,theta,p,r,s,c,norm,direction_additive,direction_cubic,value,"
    "partial_sum,tail_bound,terms_used,status,closed_form,difference,passed\n";

struct BoundsRow {
  std::string section, kind;
  std::optional<ControlFunction> phi;
  double theta = NAN, p = NAN, r = NAN, s = NAN, c = NAN;
  double norm = 1.0;
  std::optional<int> la, lc;
  double value = NAN, partial = NAN, tail = NAN;
  std::optional<int> terms;
  std::string status;
  double closed = NAN, diff = NAN;
  std::optional<bool> passed;
};

std::string opt_num(double v) { return std::isnan(v) ? "" : format_double(v); }

void fill_phi(BoundsRow& row, const ControlFunction& phi) {
  row.phi = phi;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantPhi>) {
          row.c = v.c;
        } else if constexpr (std::is_same_v<T, SumOfPowersPhi>) {
          row.theta = v.theta;
          row.p = v.p;
        } else {
          row.theta = v.theta;
          row.r = v.r;
          row.s = v.s;
          row.p = v.r + v.s;
        }
      },
      phi.variant());
}

std::string phi_kind(const ControlFunction& phi) { return phi_json(phi).at("kind").get<std::string>(); }

std::string bounds_csv_line(const BoundsRow& r) {
  std::ostringstream o;
  o << kSchemaVersion << ',' << r.section << ',' << r.kind << ',' << (r.phi ? phi_kind(*r.phi) : "") << ','
    << opt_num(r.theta) << ',' << opt_num(r.p) << ',' << opt_num(r.r) << ',' << opt_num(r.s) << ','
    << opt_num(r.c) << ',' << format_double(r.norm) << ',' << (r.la ? std::to_string(*r.la) : "") << ','
    << (r.lc ? std::to_string(*r.lc) : "") << ',' << opt_num(r.value) << ',' << opt_num(r.partial) << ','
    << opt_num(r.tail) << ',' << (r.terms ? std::to_string(*r.terms) : "") << ',' << r.status << ','
    << opt_num(r.closed) << ',' << opt_num(r.diff) << ',' << (r.passed ? (*r.passed ? "1" : "0") : "") << '\n';
  return o.str();
}

Json bounds_row_json(const BoundsRow& r) {
  Json o;
  o["section"] = r.section;
  o["kind"] = r.kind;
  if (r.phi) o["phi"] = phi_json(*r.phi);
  if (!std::isnan(r.theta)) o["theta"] = number_json(r.theta);
  if (!std::isnan(r.p)) o["p"] = number_json(r.p);
  if (!std::isnan(r.r)) o["r"] = number_json(r.r);
  if (!std::isnan(r.s)) o["s"] = number_json(r.s);
  o["norm"] = number_json(r.norm);
  if (r.la) o["direction_additive"] = *r.la;
  if (r.lc) o["direction_cubic"] = *r.lc;
  if (!std::isnan(r.value)) o["value"] = number_json(r.value);
  if (!std::isnan(r.partial)) o["partial_sum"] = number_json(r.partial);
  if (!std::isnan(r.tail)) o["tail_bound"] = number_json(r.tail);
  if (r.terms) o["terms_used"] = *r.terms;
  o["status"] = r.status;
  if (!std::isnan(r.closed)) o["closed_form"] = number_json(r.closed);
  if (!std::isnan(r.diff)) o["difference"] = number_json(r.diff);
  if (r.passed) o["passed"] = *r.passed;
  return o;
}

void set_series(BoundsRow& row, const SeriesResult& s) {
  row.value = s.upper();
  row.partial = s.partial_sum;
  row.tail = s.tail_bound;
  row.terms = s.terms_used;
  row.status = std::string(to_string(s.status));
}

Json default_consistency() {
  Json out = Json::array();
  for (double p : {0.0, 0.5, 2.0, 2.5, 4.0, 5.0})
    out.push_back(Json{{"family", "sum"}, {"theta", 1.0}, {"p", p}, {"norm", 1.0}, {"tol", 1e-9}});
  for (double rs : {0.0, 1.0, 2.0})
    out.push_back(
        Json{{"family", "product"}, {"theta", 1.0}, {"r", rs}, {"s", rs}, {"norm", 1.0}, {"tol", 1e-9}});
  return out;
}

RunResult run_bounds(const ExperimentConfig& cfg, const fs::path& dir) {
  RunResult result;
  const Json section = cfg.raw.value("bounds", Json::object());
  std::vector<BoundsRow> rows;
  bool all_passed = true;

  for (const auto& q : section.value("series", Json::array())) {
    BoundsRow row;
    row.section = "series";
    row.kind = require(q, "kind", "bounds series").get<std::string>();
    const ControlFunction phi = phi_from_json(require(q, "phi", "bounds series"));
    fill_phi(row, phi);
    row.norm = q.value("norm", 1.0);
    const auto fixed = direction_from_json(q.value("direction", Json("auto")));
    const Direction la = fixed.value_or(auto_direction(phi, Component::additive));
    const Direction lc = fixed.value_or(auto_direction(phi, Component::cubic));
    SeriesOptions opt = cfg.series;
    opt.tol = q.value("tol", opt.tol);
    if (row.kind == "additive") {
      row.la = la.value();
      set_series(row, series_bound(SeriesKind::additive, phi, row.norm, la, opt));
    } else if (row.kind == "cubic") {
      row.lc = lc.value();
      set_series(row, series_bound(SeriesKind::cubic, phi, row.norm, lc, opt));
    } else if (row.kind == "combined") {
      row.la = la.value();
      row.lc = lc.value();
      set_series(row, combined_series_bound(phi, row.norm, la, lc, opt));
    } else {
      fail(ErrorCode::parse_error, "unknown series kind '" + row.kind + "'");
    }
    rows.push_back(std::move(row));
  }

  for (const auto& q : section.value("corollary", Json::array())) {
    BoundsRow row;
    row.section = "corollary";
    row.kind = require(q, "family", "bounds corollary").get<std::string>();
    row.norm = q.value("norm", 1.0);
    const double theta = require(q, "theta", "bounds corollary").get<double>();
    try {
      if (row.kind == "sum") {
        fill_phi(row, SumOfPowersPhi{theta, require(q, "p", "bounds corollary").get<double>()});
        row.value = corollary_sum_bound(theta, row.p, row.norm);
      } else if (row.kind == "product") {
        fill_phi(row, ProductOfPowersPhi{theta, require(q, "r", "bounds corollary").get<double>(),
                                         require(q, "s", "bounds corollary").get<double>()});
        row.value = corollary_product_bound(theta, row.r, row.s, row.norm);
      } else {
        fail(ErrorCode::parse_error, "unknown corollary family '" + row.kind + "'");
      }
      row.status = "ok";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::excluded_exponent) throw;
      row.status = "excluded";
    }
    rows.push_back(std::move(row));
  }

  const Json checks = section.contains("consistency") ? section.at("consistency") : default_consistency();
  for (const auto& q : checks) {
    BoundsRow row;
    row.section = "consistency";
    row.kind = require(q, "family", "bounds consistency").get<std::string>();
    row.norm = q.value("norm", 1.0);
    const double theta = require(q, "theta", "bounds consistency").get<double>();
    const double tol = q.value("tol", 1e-9);
    ConsistencyReport rep;
    try {
      if (row.kind == "sum") {
        const double p = require(q, "p", "bounds consistency").get<double>();
        fill_phi(row, SumOfPowersPhi{theta, p});
        rep = consistency_check(theta, p, row.norm, tol);
      } else if (row.kind == "product") {
        const double r = require(q, "r", "bounds consistency").get<double>();
        const double s = require(q, "s", "bounds consistency").get<double>();
        fill_phi(row, ProductOfPowersPhi{theta, r, s});
        rep = consistency_check_product(theta, r, s, row.norm, tol);
      } else {
        fail(ErrorCode::parse_error, "unknown consistency family '" + row.kind + "'");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::excluded_exponent) throw;
      row.status = "excluded";
      rows.push_back(std::move(row));
      continue;
    }
    row.la = rep.additive_direction.value();
    row.lc = rep.cubic_direction.value();
    row.value = rep.series_value;
    row.partial = (rep.additive.partial_sum + rep.cubic.partial_sum) / 6.0;
    row.tail = (rep.additive.tail_bound + rep.cubic.tail_bound) / 6.0;
    row.terms = std::max(rep.additive.terms_used, rep.cubic.terms_used);
    row.status = rep.additive.status == SeriesStatus::converged && rep.cubic.status == SeriesStatus::converged
                     ? "converged"
                     : "not_converged";
    row.closed = rep.closed_form;
    row.diff = rep.difference;
    row.passed = rep.passed;
    all_passed = all_passed && rep.passed;
    rows.push_back(std::move(row));
  }

  Json report = header(Subcommand::bounds, cfg);
  Json jrows = Json::array();
  std::string csv = kBoundsColumns;
  for (const auto& r : rows) {
    jrows.push_back(bounds_row_json(r));
    csv += bounds_csv_line(r);
  }
  report["rows"] = std::move(jrows);
  report["passed"] = all_passed;
  write_json(dir / "bounds.json", report, result);
  write_text(dir / "bounds.csv", csv, result);
  result.exit_code = all_passed ? exit_code::ok : exit_code::check_failed;
  result.summary = "bounds: " + std::to_string(rows.size()) + " rows, consistency " +
                   (all_passed ? "ok" : "FAILED") + "\n";
  return result;
}

// ---------------------------------------------------------------- sweep

bool excluded(double p) { return p == 1.0 || p == 3.0; }

std::vector<double> sorted_numbers(const Json& j, const char* what) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number_from_json(v));
  if (out.empty()) fail(ErrorCode::parse_error, std::string("sweep needs at least one ") + what);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* kSweepColumns =
    "schema_version,family,p,r,s,theta,epsilon,status,closed_form,series_value,series_status,"
    "direction_additive,direction_cubic,points,max_error,max_bound,bound_satisfied\n";

RunResult run_sweep(const ExperimentConfig& cfg, const fs::path& dir) {
  RunResult result;
  const Json& section = require(cfg.raw, "sweep", "config");
  const std::string family = section.value("family", std::string("sum"));
  if (family != "sum" && family != "product") fail(ErrorCode::parse_error, "sweep family must be sum or product");
  const bool demonstrate = section.value("demonstrate_divergence", false);
  const double norm_x = section.value("norm", 1.0);
  const std::uint64_t seed = section.value("seed", std::uint64_t{0});
  const FuncModel& templ = require_model(cfg, Subcommand::sweep);
  if (templ.has_noise()) fail(ErrorCode::invalid_argument, "sweep template model must be noise-free");

  std::vector<std::pair<double, double>> exps;  // (r, s) for product; (p, 0) for sum
  if (family == "sum") {
    for (double p : sorted_numbers(require(section, "p", "sweep"), "exponent")) exps.emplace_back(p, 0.0);
  } else {
    for (const auto& rs : require(section, "rs", "sweep")) {
      if (!rs.is_array() || rs.size() != 2) fail(ErrorCode::parse_error, "rs entries must be [r, s]");
      exps.emplace_back(number_from_json(rs[0]), number_from_json(rs[1]));
    }
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  }
  for (const auto& [a, b] : exps) {
    if (a < 0 || b < 0) fail(ErrorCode::invalid_argument, "sweep exponents must be >= 0");
    const double p = family == "sum" ? a : a + b;
    if (excluded(p) && !demonstrate)
      fail(ErrorCode::excluded_exponent,
           "exponent " + format_double(p) + " is excluded; set demonstrate_divergence to include it");
  }
  const auto thetas = sorted_numbers(section.value("theta", Json::array({1.0})), "theta");
  std::vector<Rational> epsilons;
  for (const auto& e : section.value("epsilon", Json::array({"1/1000"}))) epsilons.push_back(rational_from_json(e));
  std::sort(epsilons.begin(), epsilons.end());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

  std::optional<Direction> fixed_a = cfg.direction_additive, fixed_c = cfg.direction_cubic;
  if (section.contains("directions")) {
    const auto& dj = section.at("directions");
    if (!dj.is_object()) {
      fixed_a = fixed_c = direction_from_json(dj);
    } else {
      fixed_a = direction_from_json(dj.value("additive", Json("auto")));
      fixed_c = direction_from_json(dj.value("cubic", Json("auto")));
    }
  }
  const std::vector<Point> points = section.contains("samples")
                                        ? sample_points(section.at("samples"), cfg.d, cfg.mode, cfg.norm)
                                        : cfg.points;

  std::string csv = kSweepColumns;
  Json cells = Json::array();
  std::size_t failed = 0;
  for (const auto& [a, b] : exps) {
    const double p = family == "sum" ? a : a + b;
    for (double theta : thetas) {
      for (const auto& eps : epsilons) {
        const ControlFunction grid_phi =
            family == "sum" ? ControlFunction(SumOfPowersPhi{theta, p}) : ControlFunction(ProductOfPowersPhi{theta, a, b});
        const Direction la = fixed_a.value_or(auto_direction(grid_phi, Component::additive));
        const Direction lc = fixed_c.value_or(auto_direction(grid_phi, Component::cubic));
        Json cell;
        cell["family"] = family;
        cell["p"] = number_json(p);
        if (family == "product") {
          cell["r"] = number_json(a);
          cell["s"] = number_json(b);
        }
        cell["theta"] = number_json(theta);
        cell["epsilon"] = number_json(rational_to_nearest_double(eps));
        cell["epsilon_exact"] = rational_json(eps);
        cell["direction_additive"] = la.value();
        cell["direction_cubic"] = lc.value();

        double closed = NAN, max_error = NAN, max_bound = NAN;
        std::optional<bool> satisfied;
        std::string status;
        const SeriesResult series = combined_series_bound(grid_phi, norm_x, la, lc, cfg.series);
        if (excluded(p)) {
          status = "diverged";
        } else {
          closed = family == "sum" ? corollary_sum_bound(theta, p, norm_x)
                                   : corollary_product_bound(theta, a, b, norm_x);
          try {
            FuncModel f = templ;
            ControlFunction phi = grid_phi;
            if (family == "sum" && sgn(eps) > 0) {
              f = templ.plus(FuncModel(cfg.d, cfg.m, {PowerNoiseAtom{seed, eps, p}}));
              phi = certify_phi(f);
            }
            cell["phi"] = phi_json(phi);
            RecoveryOptions opt = recovery_options(cfg);
            opt.additive_direction = la;
            opt.cubic_direction = lc;
            const RecoveryReport rep = recover(f, points, phi, opt);
            max_error = rep.max_error();
            max_bound = 0.0;
            for (const auto& pr : rep.points) max_bound = std::max(max_bound, pr.bound);
            satisfied = rep.all_within_bound();
            status = *satisfied ? "ok" : "violated";
            cell["violations"] = rep.violations();
            cell["all_converged"] = rep.all_converged();
          } catch (const Error& e) {
            status = e.code() == ErrorCode::overflow_guard     ? "overflow"
                     : e.code() == ErrorCode::divergent_series ? "diverged"
                                                               : "failed";
            cell["message"] = e.what();
          }
          if (status != "ok") ++failed;
        }
        cell["status"] = status;
        cell["closed_form"] = std::isnan(closed) ? Json(nullptr) : number_json(closed);
        cell["series"] = series_json(series);
        cell["points"] = points.size();
        cell["max_error"] = std::isnan(max_error) ? Json(nullptr) : number_json(max_error);
        cell["max_bound"] = std::isnan(max_bound) ? Json(nullptr) : number_json(max_bound);
        cell["bound_satisfied"] = satisfied ? Json(*satisfied) : Json(nullptr);

        std::ostringstream row;
        row << kSchemaVersion << ',' << family << ',' << format_double(p) << ','
            << (family == "product" ? format_double(a) : "") << ','
            << (family == "product" ? format_double(b) : "") << ',' << format_double(theta) << ','
            << format_double(rational_to_nearest_double(eps)) << ',' << status << ',' << opt_num(closed) << ','
            << format_double(series.upper()) << ',' << to_string(series.status) << ',' << la.value() << ','
            << lc.value() << ',' << points.size() << ',' << opt_num(max_error) << ',' << opt_num(max_bound)
            << ',' << (satisfied ? (*satisfied ? "1" : "0") : "") << '\n';
        csv += row.str();
        cells.push_back(std::move(cell));
      }
    }
  }

  Json report = header(Subcommand::sweep, cfg);
  report["template"] = model_json(templ);
  report["family"] = family;
  report["norm"] = number_json(norm_x);
  report["cells"] = std::move(cells);
  report["failed_cells"] = failed;
  report["passed"] = failed == 0;
  write_json(dir / "sweep.json", report, result);
  write_text(dir / "sweep.csv", csv, result);
  result.exit_code = failed == 0 ? exit_code::ok : exit_code::check_failed;
  result.summary = "sweep: " + std::to_string(report.at("cells").size()) + " cells, " + std::to_string(failed) +
                   " failed\n";
  return result;
}

const char* primary_report(Subcommand sub) {
  switch (sub) {
    case Subcommand::check_lemmas: return "check_lemmas.json";
    case Subcommand::replay_chain: return "chain_replay.json";
    case Subcommand::recover: return "recover.json";
    case Subcommand::bounds: return "bounds.json";
    case Subcommand::sweep: return "sweep.json";
  }
  return "report.json";
}

}  // namespace

std::vector<Point> sample_points(const Json& spec, std::size_t d, ScalarMode mode, NormKind norm) {
  std::vector<Point> out;
  for (const auto& p : spec.value("points", Json::array())) out.push_back(point_from_json(p, d, mode, norm));
  if (spec.contains("random")) {
    const RandomSpec r = random_from_json(spec.at("random"));
    Sampler s(r.seed);
    for (std::size_t i = 0; i < r.count; ++i) out.push_back(s.point(d, mode, norm, r.lo, r.hi, r.bits));
  }
  return out;
}

std::vector<std::pair<Point, Point>> sample_pairs(const Json& spec, std::size_t d, ScalarMode mode,
                                                  NormKind norm) {
  std::vector<std::pair<Point, Point>> out;
  for (const auto& p : spec.value("explicit", Json::array())) {
    if (!p.is_array() || p.size() != 2) fail(ErrorCode::parse_error, "explicit pairs must be [x, y]");
    out.emplace_back(point_from_json(p[0], d, mode, norm), point_from_json(p[1], d, mode, norm));
  }
  if (spec.contains("random")) {
    const RandomSpec r = random_from_json(spec.at("random"));
    Sampler s(r.seed);
    for (std::size_t i = 0; i < r.count; ++i) {
      Point x = s.point(d, mode, norm, r.lo, r.hi, r.bits);
      Point y = s.point(d, mode, norm, r.lo, r.hi, r.bits);
      out.emplace_back(std::move(x), std::move(y));
    }
  }
  return out;
}

namespace {

ExperimentConfig parse_config_checked(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::parse_error, "config must be a JSON object");
  const int version = j.value("schema_version", kSchemaVersion);
  if (version != kSchemaVersion)
    fail(ErrorCode::parse_error, "unsupported schema_version " + std::to_string(version));

  ExperimentConfig c;
  c.raw = j;
  if (j.contains("dimensions")) {
    c.d = j.at("dimensions").value("d", std::size_t{1});
    c.m = j.at("dimensions").value("m", std::size_t{1});
  }
  if (c.d == 0 || c.m == 0) fail(ErrorCode::invalid_argument, "dimensions must be >= 1");
  c.norm = parse_norm_kind(j.value("norm", std::string("euclidean")));
  c.mode = parse_scalar_mode(j.value("mode", std::string("exact")));
  if (j.contains("model")) c.model = model_from_json(j.at("model"), c.d, c.m);

  if (j.contains("phi")) {
    const auto& p = j.at("phi");
    if (p.is_string()) {
      if (p.get<std::string>() != "certify") fail(ErrorCode::parse_error, "phi must be an object or \"certify\"");
    } else {
      c.phi = phi_from_json(p);
    }
  }
  if (j.contains("directions")) {
    const auto& dj = j.at("directions");
    if (!dj.is_object()) {
      c.direction_additive = c.direction_cubic = direction_from_json(dj);
    } else {
      c.direction_additive = direction_from_json(dj.value("additive", Json("auto")));
      c.direction_cubic = direction_from_json(dj.value("cubic", Json("auto")));
    }
  }

  c.points = sample_points(j.value("samples", Json::object()), c.d, c.mode, c.norm);
  const Json default_pairs = {{"random", {{"count", 10}, {"seed", 7}}}};
  c.pairs = sample_pairs(j.value("pairs", default_pairs), c.d, c.mode, c.norm);

  const Json tol = j.value("tolerances", Json::object());
  c.iteration.tol_abs = tol.value("abs", c.iteration.tol_abs);
  c.iteration.tol_rel = tol.value("rel", c.iteration.tol_rel);
  c.series.tol = tol.value("series", c.series.tol);
  if (!(c.series.tol > 0)) fail(ErrorCode::invalid_argument, "series tolerance must be > 0");
  c.iteration.n_max = j.value("n_max", c.iteration.n_max);
  if (c.iteration.n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be >= 1");
  c.threads = j.value("threads", std::size_t{1});
  if (j.contains("output")) c.output_dir = j.at("output").value("dir", std::string());
  return c;
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  try {
    return parse_config_checked(j);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
}

RunResult run(Subcommand sub, std::string_view config_text, std::string_view out_dir) {
  RunResult result;
  ExperimentConfig cfg;
  try {
    cfg = parse_config(Json::parse(config_text));
  } catch (const Error& e) {
    return {exit_code_for(e.code()), std::string("config: ") + e.what() + "\n", {}};
  } catch (const nlohmann::json::exception& e) {
    return {exit_code::config_error, std::string("config: ") + e.what() + "\n", {}};
  }

  fs::path dir = !out_dir.empty() ? fs::path(out_dir) : !cfg.output_dir.empty() ? fs::path(cfg.output_dir) : ".";
  std::string failure;
  int code = exit_code::ok;
  ErrorCode kind = ErrorCode::invalid_argument;
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::io_error, "cannot create " + dir.string() + ": " + ec.message());
    switch (sub) {
      case Subcommand::check_lemmas: return run_check_lemmas(cfg, dir);
      case Subcommand::replay_chain: return run_replay_chain(cfg, dir);
      case Subcommand::recover: return run_recover(cfg, dir);
      case Subcommand::bounds: return run_bounds(cfg, dir);
      case Subcommand::sweep: return run_sweep(cfg, dir);
    }
  } catch (const Error& e) {
    failure = e.what();
    kind = e.code();
    code = exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    failure = std::string("config: ") + e.what();
    kind = ErrorCode::parse_error;
    code = exit_code::config_error;
  } catch (const std::exception& e) {
    failure = std::string("internal error: ") + e.what();
    code = exit_code::internal;
  }

  result.exit_code = code;
  result.summary = std::string(to_string(sub)) + ": " + failure + "\n";
  if (code != exit_code::internal) {
    Json report = header(sub, cfg);
    report["status"] = "error";
    report["error"] = Json{{"code", std::string(to_string(kind))}, {"message", failure}};
    report["passed"] = false;
    try {
      write_json(dir / primary_report(sub), report, result);
    } catch (const Error&) {
      result.exit_code = exit_code::internal;
    }
  }
  return result;
}

}  // namespace acstab
