#include "kahler/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "kahler/analysis.hpp"
#include "kahler/catalog.hpp"
#include "kahler/errors.hpp"
#include "kahler/expr.hpp"
#include "kahler/identities.hpp"
#include "kahler/lagrangian.hpp"
#include "kahler/parallel.hpp"
#include "kahler/quadrature.hpp"
#include "kahler/shrinker.hpp"
#include "kahler/surface_file.hpp"

namespace kahler {
namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kVerifyFailed = 3 };

class UsageError : public Error {
public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "UsageError"; }
};

int exit_code_for(const Error& e) {
  const std::string_view k = e.kind();
  if (k == "ParseError" || k == "ParamError" || k == "UsageError" || k == "IoError" ||
      k == "UnsupportedDomainError") {
    return kUsage;
  }
  return kNumerical;
}

json error_json(const std::exception& e) {
  json j;
  if (const auto* ke = dynamic_cast<const Error*>(&e)) {
    j["kind"] = std::string(ke->kind());
  } else {
    j["kind"] = "InternalError";
  }
  j["message"] = e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["offset"] = pe->offset();
    j["line"] = pe->line();
    j["column"] = pe->column();
    j["expected"] = pe->expected();
  }
  return j;
}

json opt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

std::string csv_num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_opt(const std::optional<double>& x) { return x ? csv_num(*x) : ""; }

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    const std::string part = text.substr(start, pos - start);
    if (part.empty()) {
      throw UsageError(what + ": empty entry in '" + text + "'");
    }
    out.push_back(eval_constant(part));
    if (pos == std::string::npos) {
      return out;
    }
    start = pos + 1;
  }
}

json surface_json(const ImmersionSpec& s) {
  const Domain& d = s.domain;
  return json{{"name", s.name},
              {"source", s.source},
              {"params", s.params},
              {"domain",
               {{"description", d.describe()},
                {"chart", d.chart == SampleChart::polar ? "polar" : "cartesian"},
                {"u", {d.u.lo, d.u.hi}},
                {"v", {d.v.lo, d.v.hi}},
                {"periodic_u", d.periodic_u},
                {"periodic_v", d.periodic_v}}}};
}

json grid_json(const QuadratureGrid& g) {
  return json{{"description", g.describe()},
              {"n_u", g.s.nodes.size()},
              {"n_v", g.t.nodes.size()},
              {"rule_u", to_string(g.s.rule)},
              {"rule_v", to_string(g.t.rule)}};
}

json point_json(const SurfaceData& d) {
  return json{{"u", d.p.u},
              {"v", d.p.v},
              {"x", {d.x[0], d.x[1], d.x[2], d.x[3]}},
              {"cos_theta", d.cos_theta},
              {"sin_theta", d.sin_theta},
              {"adapted_frame", d.adapted},
              {"beta", opt(d.beta)},
              {"norm_h_sq", d.norm_h_sq},
              {"H", {d.H[0], d.H[1]}},
              {"H_norm", d.H_norm},
              {"eta", {{"re", d.eta_re}, {"im", d.eta_im}, {"abs", d.eta_abs}}},
              {"shrinker_residual", d.shrinker_residual},
              {"dbarJM_sq", opt(d.dbarJM_sq)},
              {"grad_theta", opt(d.grad_theta)},
              {"gauss_K", d.gauss_K},
              {"g", {{d.g[0][0], d.g[0][1]}, {d.g[1][0], d.g[1][1]}}},
              {"sqrt_det_g", d.sqrt_det_g}};
}

constexpr int kDefaultNodes = 64;

constexpr const char* kCsvHeader =
    "u,v,x1,y1,x2,y2,cos_theta,beta,norm_h_sq,H3,H4,H_norm,eta_abs,shrinker_residual,"
    "dbarJM_sq,grad_theta,gauss_K,error";

std::string csv_row(const SurfaceData& d) {
  std::ostringstream os;
  os << csv_num(d.p.u) << ',' << csv_num(d.p.v);
  for (std::size_t i = 0; i < 4; ++i) {
    os << ',' << csv_num(d.x[i]);
  }
  os << ',' << csv_num(d.cos_theta) << ',' << csv_opt(d.beta) << ',' << csv_num(d.norm_h_sq) << ','
     << csv_num(d.H[0]) << ',' << csv_num(d.H[1]) << ',' << csv_num(d.H_norm) << ','
     << csv_num(d.eta_abs) << ',' << csv_num(d.shrinker_residual) << ',' << csv_opt(d.dbarJM_sq)
     << ',' << csv_opt(d.grad_theta) << ',' << csv_num(d.gauss_K) << ',';
  return os.str();
}

std::string csv_error_row(ParamPoint p, const std::string& kind) {
  return csv_num(p.u) + ',' + csv_num(p.v) + std::string(15, ',') + kind;
}

struct Options {
  std::optional<int> threads;
  std::string rule_u;
  std::string rule_v;

  std::string surface;
  std::string at;
  std::string grid;
  std::optional<int> nodes_u;
  std::optional<int> nodes_v;
  bool csv = false;
  std::optional<double> tol;
  double pinch_lambda = 0.5;
  std::string loop;
  int samples = 64;
  std::optional<double> truncate_radius;
  std::string family;
  std::string init;
  int max_iter = 200;
  bool trace = false;
  std::string file;
};

class Runner {
public:
  Runner(const Options& o, std::vector<std::string> argv) : o_(o) {
    report_["schema"] = kReportSchema;
    report_["command"] = std::move(argv);
  }

  json& report() { return report_; }

  void configure_threads() {
    std::optional<int> n = o_.threads;
    if (!n) {
      if (const char* env = std::getenv("THREADS"); env != nullptr && *env != '\0') {
        int v = 0;
        const std::string_view sv(env);
        const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size() || v < 1) {
          throw UsageError("THREADS must be a positive integer, got '" + std::string(sv) + "'");
        }
        n = v;
      }
    }
    if (n) {
      if (*n < 1) {
        throw UsageError("--threads must be positive");
      }
      set_thread_count(*n);
    }
    exec_ = thread_count() > 1 ? Execution::parallel : Execution::serial;
  }

  ImmersionSpec surface() {
    ImmersionSpec s = parse_surface_arg(o_.surface);
    report_["surface"] = surface_json(s);
    return s;
  }

  [[nodiscard]] bool has_grid() const { return !o_.grid.empty() || o_.nodes_u || o_.nodes_v; }

  /// --grid NxM, then --nodes-u / --nodes-v on top.
  [[nodiscard]] std::pair<int, int> grid_size(std::pair<int, int> fallback) const {
    auto size = o_.grid.empty() ? fallback : parse_grid_size(o_.grid);
    size.first = o_.nodes_u.value_or(size.first);
    size.second = o_.nodes_v.value_or(size.second);
    if (size.first < 1 || size.second < 1) {
      throw UsageError("node counts must be positive");
    }
    return size;
  }

  QuadratureGrid grid(const Domain& domain) {
    const auto [n_u, n_v] = grid_size({kDefaultNodes, kDefaultNodes});
    std::optional<QuadratureRule> ru;
    std::optional<QuadratureRule> rv;
    if (!o_.rule_u.empty()) {
      ru = parse_rule(o_.rule_u);
    }
    if (!o_.rule_v.empty()) {
      rv = parse_rule(o_.rule_v);
    }
    QuadratureGrid g = make_grid(domain, n_u, n_v, ru, rv);
    report_["grid"] = grid_json(g);
    return g;
  }

  int analyze() {
    const ImmersionSpec s = surface();
    if (!o_.at.empty() && has_grid()) {
      throw UsageError("analyze takes --at or --grid, not both");
    }
    if (o_.at.empty() && !has_grid()) {
      throw UsageError("analyze needs --at u,v or --grid NxM");
    }
    if (!o_.at.empty()) {
      const auto uv = parse_list(o_.at, "--at");
      if (uv.size() != 2) {
        throw UsageError("--at needs exactly two coordinates 'u,v'");
      }
      const SurfaceData d = analyze_point(s, {uv[0], uv[1]});
      if (o_.csv) {
        csv_ << kCsvHeader << '\n' << csv_row(d) << '\n';
        return kOk;
      }
      report_["result"] = json{{"points", json::array({point_json(d)})}};
      return kOk;
    }
    const QuadratureGrid g = grid(s.domain);
    const std::size_t n = g.size();
    std::vector<std::optional<SurfaceData>> rows(n);
    std::vector<json> errors(n);
    for_each_index(n, exec_, [&](std::size_t k) {
      try {
        rows[k] = analyze_point(s, g.point(k));
      } catch (const Error& e) {
        errors[k] = error_json(e);
      }
    });
    std::size_t failed = 0;
    if (o_.csv) {
      csv_ << kCsvHeader << '\n';
      for (std::size_t k = 0; k < n; ++k) {
        if (rows[k]) {
          csv_ << csv_row(*rows[k]) << '\n';
        } else {
          ++failed;
          csv_ << csv_error_row(g.point(k), errors[k]["kind"].get<std::string>()) << '\n';
        }
      }
      return kOk;
    }
    json points = json::array();
    double max_cos = 0.0;
    double max_shrinker = 0.0;
    double max_H = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (rows[k]) {
        const SurfaceData& d = *rows[k];
        max_cos = std::max(max_cos, std::abs(d.cos_theta));
        max_shrinker = std::max(max_shrinker, d.shrinker_residual);
        max_H = std::max(max_H, d.H_norm);
        points.push_back(point_json(d));
      } else {
        ++failed;
        const ParamPoint p = g.point(k);
        points.push_back(json{{"u", p.u}, {"v", p.v}, {"error", errors[k]}});
      }
    }
    report_["result"] = json{{"summary",
                              {{"points", n},
                               {"failed", failed},
                               {"max_abs_cos_theta", max_cos},
                               {"max_H_norm", max_H},
                               {"max_shrinker_residual", max_shrinker}}},
                             {"points", std::move(points)}};
    return kOk;
  }

  int verify() {
    const ImmersionSpec s = surface();
    const QuadratureGrid g = grid(s.domain);
    Thresholds th;
    th.pinch_lambda = o_.pinch_lambda;
    if (!(th.pinch_lambda >= 0.0 && th.pinch_lambda < 1.0)) {
      throw UsageError("--pinch-lambda must lie in [0, 1)");
    }
    const double tol = o_.tol.value_or(1e-8);
    if (!(tol > 0.0)) {
      throw UsageError("--tol must be positive");
    }
    const IdentityReport r = run_suite(s, g, tol, exec_, th);
    json ids = json::array();
    for (const IdentityStats& st : r.stats) {
      std::string status = st.pass ? "PASS" : "FAIL";
      if (st.pass && st.points_hypothesis_met == 0) {
        status = st.points_evaluated == 0 ? "SKIPPED" : "HYPOTHESIS_NOT_MET";
      }
      json j{{"id", identity_name(st.id)},
             {"hypothesis", hypothesis_name(hypothesis_class(st.id))},
             {"status", status},
             {"points_evaluated", st.points_evaluated},
             {"points_hypothesis_met", st.points_hypothesis_met},
             {"skipped", st.skipped},
             {"max_residual", st.max_residual},
             {"mean_residual", st.mean_residual},
             {"max_residual_hypothesis_met", st.max_residual_hypothesis_met},
             {"tolerance", st.tolerance}};
      if (!st.skip_reason.empty()) {
        j["skip_reason"] = st.skip_reason;
      }
      ids.push_back(std::move(j));
    }
    report_["result"] = json{{"all_pass", r.all_pass()}, {"identities", std::move(ids)}};
    return r.all_pass() ? kOk : kVerifyFailed;
  }

  int maslov() {
    const ImmersionSpec s = surface();
    LoopSpec loop = parse_loop(o_.loop, s.domain);
    if (o_.samples < 16) {
      throw UsageError("--samples must be at least 16");
    }
    loop.samples = o_.samples;
    const MaslovIndex m = maslov_index(s, loop);
    report_["result"] = json{{"loop", loop.describe()},
                             {"winding", m.winding},
                             {"raw", m.raw},
                             {"evaluations", m.evaluations}};
    return kOk;
  }

  int area() {
    ImmersionSpec s = surface();
    std::optional<double> radius = o_.truncate_radius;
    if (!radius && s.truncate) {
      radius = 8.0;
    }
    if (radius) {
      if (!s.truncate) {
        throw UsageError("surface '" + s.name + "' has no truncation rule");
      }
      s.domain = s.truncate(*radius);
      report_["surface"]["domain"] = surface_json(s)["domain"];
    }
    const QuadratureGrid g = grid(s.domain);
    const double F = gaussian_area(s, g, exec_);
    report_["result"] = json{{"gaussian_area", F}, {"truncate_radius", opt(radius)}};
    return kOk;
  }

  int shrink() {
    const Family fam = family_by_name(o_.family);
    std::vector<double> pi0 = fam.default_init;
    if (!o_.init.empty()) {
      pi0 = parse_list(o_.init, "--init");
    }
    if (pi0.size() != fam.param_names.size()) {
      throw UsageError("family '" + fam.name + "' takes " + std::to_string(fam.param_names.size()) +
                       " parameters");
    }
    OptimizerConfig cfg;
    cfg.tol = o_.tol.value_or(cfg.tol);
    cfg.max_iter = o_.max_iter;
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1) {
      throw UsageError("--tol and --max-iter must be positive");
    }
    std::tie(cfg.grid.n_u, cfg.grid.n_v) = grid_size({cfg.grid.n_u, cfg.grid.n_v});
    cfg.grid.exec = exec_;
    report_["family"] = json{{"name", fam.name}, {"param_names", fam.param_names}};
    report_["grid"] = json{{"n_u", cfg.grid.n_u}, {"n_v", cfg.grid.n_v}};
    const OptimizerResult r = find_critical(fam, pi0, cfg);
    json result{{"init", pi0},
                {"pi", r.pi},
                {"F", r.F},
                {"grad_norm", r.grad_norm},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"stop_reason", r.stop_reason}};
    try {
      const ImmersionSpec s = fam.build(r.pi);
      const QuadratureGrid g = make_grid(s.domain, 32, 32);
      std::vector<double> res(g.size());
      for_each_index(g.size(), exec_,
                     [&](std::size_t k) { res[k] = shrinker_residual(s, g.point(k)).norm; });
      result["max_shrinker_residual"] = *std::max_element(res.begin(), res.end());
    } catch (const Error&) {
      result["max_shrinker_residual"] = nullptr;
    }
    if (o_.trace) {
      json tr = json::array();
      for (const TraceEntry& t : r.trace) {
        tr.push_back(json{{"pi", t.pi}, {"F", t.F}, {"grad_norm", t.grad_norm}, {"step", t.step}});
      }
      result["trace"] = std::move(tr);
    }
    report_["result"] = std::move(result);
    if (!r.converged) {
      report_["error"] = json{{"kind", "NonConvergenceError"}, {"message", r.stop_reason}};
      return kNumerical;
    }
    return kOk;
  }

  int catalog_list() {
    json entries = json::array();
    for (const CatalogEntry& e : catalog_entries()) {
      json params = json::array();
      for (const CatalogParam& p : e.params) {
        params.push_back(json{{"name", p.name}, {"default", p.default_value}, {"range", p.range}});
      }
      json truths = json::array();
      for (const GroundTruth& t : e.truths) {
        truths.push_back(json{{"quantity", t.quantity}, {"value", t.value}, {"source", t.source}});
      }
      entries.push_back(json{{"id", e.id},
                             {"aliases", e.aliases},
                             {"description", e.description},
                             {"params", std::move(params)},
                             {"domain", e.domain},
                             {"ground_truths", std::move(truths)}});
    }
    report_["result"] = json{{"entries", std::move(entries)}};
    return kOk;
  }

  int parse_check() {
    const SurfaceDefinition def = load_surface_definition(o_.file);
    const ImmersionSpec s = immersion_from_definition(def, "file:" + o_.file);
    report_["surface"] = surface_json(s);
    report_["result"] = json{{"valid", true},
                             {"name", def.name},
                             {"x1", def.x1_text},
                             {"y1", def.y1_text},
                             {"x2", def.x2_text},
                             {"y2", def.y2_text}};
    return kOk;
  }

  /// CSV output replaces the JSON report on success.
  [[nodiscard]] bool has_csv() const { return !csv_.str().empty(); }
  [[nodiscard]] std::string csv() const { return csv_.str(); }

private:
  const Options& o_;
  json report_;
  std::ostringstream csv_;
  Execution exec_ = Execution::serial;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Kaehler angle, Lagrangian angle and self-shrinker diagnostics for surfaces in C^2",
               "kahler"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "worker threads (default: all cores; env THREADS)");
  app.add_option("--rule-u", o.rule_u, "quadrature rule in u: trapezoid | gauss");
  app.add_option("--rule-v", o.rule_v, "quadrature rule in v: trapezoid | gauss");
  app.add_option("--nodes-u", o.nodes_u, "node count in u, overriding --grid");
  app.add_option("--nodes-v", o.nodes_v, "node count in v, overriding --grid");

  auto* analyze = app.add_subcommand("analyze", "pointwise geometry at a point or on a grid");
  analyze->add_option("--surface", o.surface, "catalog id[:params], holo:re;im or file:path")->required();
  analyze->add_option("--at", o.at, "parameter point u,v");
  analyze->add_option("--grid", o.grid, "grid size NxM");
  analyze->add_flag("--csv", o.csv, "CSV instead of JSON");

  auto* verify = app.add_subcommand("verify", "run the identity suite on a grid");
  verify->add_option("--surface", o.surface, "surface")->required();
  verify->add_option("--grid", o.grid, "grid size NxM (default 64x64)");
  verify->add_option("--tol", o.tol, "residual tolerance (default 1e-8)");
  verify->add_option("--pinch-lambda", o.pinch_lambda, "lambda in [0, 1) for PINCH");

  auto* maslov = app.add_subcommand("maslov", "winding of the Maslov form along a loop");
  maslov->add_option("--surface", o.surface, "surface")->required();
  maslov->add_option("--loop", o.loop, "u-loop[:v0] | v-loop[:u0] | circle:cu,cv,r | expr:U;V")
      ->required();
  maslov->add_option("--samples", o.samples, "initial sample count (default 64)");

  auto* area = app.add_subcommand("area", "Gaussian area F");
  area->add_option("--surface", o.surface, "surface")->required();
  area->add_option("--grid", o.grid, "grid size NxM (default 64x64)");
  area->add_option("--truncate-radius", o.truncate_radius,
                   "truncation radius for non-compact surfaces (default 8)");

  auto* shrink = app.add_subcommand("shrink", "search for a critical point of F in a family");
  shrink->add_option("--family", o.family, "product | scaling | fourier")->required();
  shrink->add_option("--init", o.init, "initial parameters p1,p2,...");
  shrink->add_option("--tol", o.tol, "gradient tolerance (default 1e-6)");
  shrink->add_option("--max-iter", o.max_iter, "iteration cap (default 200)");
  shrink->add_option("--grid", o.grid, "quadrature grid NxM (default 32x32)");
  shrink->add_flag("--trace", o.trace, "include the iterate trace");

  auto* catalog = app.add_subcommand("catalog", "built-in surfaces");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list entries with ground truths");

  auto* parse_check = app.add_subcommand("parse-check", "validate a surface definition file");
  parse_check->add_option("--file", o.file, "path")->required();

  Runner runner(o, args);
  json& report = runner.report();
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    report["error"] = json{{"kind", "UsageError"}, {"message", e.what()}};
    out << report.dump(2) << '\n';
    return kUsage;
  }

  int code = kOk;
  try {
    runner.configure_threads();
    if (analyze->parsed()) {
      code = runner.analyze();
    } else if (verify->parsed()) {
      code = runner.verify();
    } else if (maslov->parsed()) {
      code = runner.maslov();
    } else if (area->parsed()) {
      code = runner.area();
    } else if (shrink->parsed()) {
      code = runner.shrink();
    } else if (list->parsed()) {
      code = runner.catalog_list();
    } else if (parse_check->parsed()) {
      code = runner.parse_check();
    }
  } catch (const Error& e) {
    report["error"] = error_json(e);
    code = exit_code_for(e);
  } catch (const std::exception& e) {
    report["error"] = error_json(e);
    code = kNumerical;
  }
  if (code == kOk && runner.has_csv()) {
    out << runner.csv();
  } else {
    out << report.dump(2) << '\n';
  }
  return code;
}

} // namespace kahler
