#include "giantlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "giantlab/diagnostics.hpp"
#include "giantlab/errors.hpp"
#include "giantlab/generators.hpp"
#include "giantlab/monte_carlo.hpp"
#include "giantlab/rng.hpp"
#include "giantlab/theory.hpp"

namespace giantlab {

using nlohmann::json;

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v)) {
      throw ParameterError("bad grid value '" + tok + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw ParameterError("range grid must be start:stop:step");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw ParameterError("range grid needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
      out.push_back(number(tok));
    }
  }
  if (out.empty()) throw ParameterError("grid is empty");
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ParameterError("line fit needs two distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

constexpr const char* kVersion = GIANTLAB_VERSION;

// Resolved settings in a fixed order, echoed into every output.
class Echo {
public:
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    items_.emplace_back(key, s.str());
  }
  void add(const std::string& key, double value) { items_.emplace_back(key, format_number(value)); }
  void add(const std::string& key, bool value) { items_.emplace_back(key, value ? "true" : "false"); }

  std::vector<std::string> lines(const std::string& command) const {
    std::vector<std::string> out = {"giantlab " + std::string(kVersion), "command=" + command};
    for (const auto& [k, v] : items_) out.push_back(k + "=" + v);
    return out;
  }
  json to_json(const std::string& command) const {
    json j = json::object();
    j["version"] = kVersion;
    j["command"] = command;
    for (const auto& [k, v] : items_) j[k] = v;
    return j;
  }

private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::size_t as_count(double x, const char* flag) {
  if (!(x >= 1.0) || x > 4.0e9 || std::floor(x) != x) {
    throw ParameterError(std::string(flag) + ": expected a positive integer, got " + format_number(x));
  }
  return static_cast<std::size_t>(x);
}

struct GraphOptions {
  std::string kind = "regular";
  std::string graph_path;
  double n = 10000;
  int d = 3;
  int girth = 5;
  double alpha = 0.5;
  double delta = 0.1;
  double gadget_size = 10;
  int gadget_girth = 5;
  double eps = 0.5;
  double build_p = -1.0;
  int k = 2;
  int h = 4;
  int h_star = 2;
  int path_length = 2;
  std::uint64_t seed = 1;

  void add_to(CLI::App* app) {
    app->add_option("--kind", kind, "regular | high-girth | theorem2 | theorem3 | t-tree | file");
    app->add_option("--graph", graph_path, "read the graph from this file (kind=file)");
    app->add_option("-n,--n", n, "vertex count or construction target");
    app->add_option("-d,--d", d, "degree")->check(CLI::Range(2, 1000000));
    app->add_option("--girth", girth, "minimum girth (high-girth)");
    app->add_option("--alpha", alpha, "second-component exponent (theorem2)");
    app->add_option("--delta", delta, "matching fraction (theorem2)");
    app->add_option("--gadget-size", gadget_size, "gadget order (theorem2)");
    app->add_option("--gadget-girth", gadget_girth, "gadget girth (theorem2)");
    app->add_option("--eps", eps, "epsilon (theorem3)");
    app->add_option("--build-p", build_p, "construction p for theorem2/theorem3 (default: p)");
    app->add_option("--k", k, "branching (t-tree)");
    app->add_option("--depth", h, "depth (t-tree)");
    app->add_option("--h-star", h_star, "subdivided levels (t-tree)");
    app->add_option("--path-length", path_length, "subdivision length (t-tree)");
    app->add_option("--seed", seed, "master seed");
  }

  std::string resolved_kind() const { return graph_path.empty() ? kind : "file"; }

  void echo(Echo& e) const {
    const std::string k_ = resolved_kind();
    e.add("kind", k_);
    if (k_ == "file") {
      e.add("graph", graph_path);
    } else if (k_ == "regular") {
      e.add("n", n);
      e.add("d", d);
    } else if (k_ == "high-girth") {
      e.add("n", n);
      e.add("d", d);
      e.add("girth", girth);
    } else if (k_ == "theorem2") {
      e.add("n", n);
      e.add("d", d);
      e.add("alpha", alpha);
      e.add("delta", delta);
      e.add("gadget-size", gadget_size);
      e.add("gadget-girth", gadget_girth);
      e.add("build-p", build_p);
    } else if (k_ == "theorem3") {
      e.add("n", n);
      e.add("eps", eps);
      e.add("build-p", build_p);
    } else if (k_ == "t-tree") {
      e.add("k", k);
      e.add("depth", h);
      e.add("h-star", h_star);
      e.add("path-length", path_length);
    }
    e.add("seed", seed);
  }
};

struct BuiltGraph {
  Graph graph;
  json report = json::object();
  std::optional<Vertex> root;
};

BuiltGraph build_graph(const GraphOptions& o) {
  BuiltGraph out;
  const std::string kind = o.resolved_kind();
  if (kind == "file") {
    out.graph = read_graph(o.graph_path);
  } else if (kind == "regular") {
    out.graph = random_regular(as_count(o.n, "--n"), o.d, o.seed);
  } else if (kind == "high-girth") {
    out.graph = high_girth_regular(as_count(o.n, "--n"), o.d, o.girth, o.seed);
  } else if (kind == "theorem2") {
    Theorem2Params p;
    p.n_target = as_count(o.n, "--n");
    p.alpha = o.alpha;
    p.d = o.d;
    p.p = o.build_p;
    p.delta = o.delta;
    p.gadget_size = as_count(o.gadget_size, "--gadget-size");
    p.gadget_girth = o.gadget_girth;
    p.seed = o.seed;
    auto built = theorem2_build(p);
    out.graph = std::move(built.graph);
    out.report = built.report.to_json();
  } else if (kind == "theorem3") {
    Theorem3Params p;
    p.p = o.build_p;
    p.eps = o.eps;
    p.n_target = as_count(o.n, "--n");
    p.seed = o.seed;
    auto built = theorem3_build(p);
    out.graph = std::move(built.graph);
    out.root = built.root;
    out.report = built.report.to_json();
  } else if (kind == "t-tree") {
    auto built = build_t_tree(o.k, o.h, o.h_star, o.path_length);
    out.graph = std::move(built.graph);
    out.root = built.root;
    out.report["leaves"] = built.leaves.size();
  } else {
    throw ParameterError("--kind: unknown graph kind '" + o.kind + "'");
  }
  out.report["vertices"] = out.graph.num_vertices();
  out.report["edges"] = out.graph.num_edges();
  out.report["max_degree"] = out.graph.max_degree();
  return out;
}

std::uint64_t percolation_master(std::uint64_t seed) { return mix64(seed ^ 0x70657263ULL); }

json stats_json(const std::vector<ColumnStats>& stats) {
  json j = json::object();
  for (const auto& s : stats) {
    j[s.name] = {{"count", s.count}, {"mean", s.mean}, {"sd", s.sd}, {"se", s.se}};
  }
  return j;
}

json forecast_for(std::size_t max_degree, double p) {
  if (max_degree < 3 || !(p > 0.0)) return nullptr;
  return theory::forecast_json({static_cast<int>(max_degree), p});
}

struct OutputFile {
  std::ofstream file;
  std::ostream* stream = nullptr;

  OutputFile(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream = &fallback;
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for writing");
    stream = &file;
  }
  std::ostream& operator*() { return *stream; }
  void finish(const std::string& path) {
    stream->flush();
    if (!*stream) throw IoError("failed writing " + path);
  }
};

void write_comment_header(std::ostream& s, const std::vector<std::string>& lines) {
  for (const auto& l : lines) s << "# " << l << '\n';
}

void write_json_file(const std::string& path, const json& doc, std::ostream& fallback) {
  OutputFile f(path, fallback);
  *f << doc.dump(2) << '\n';
  f.finish(path);
}

struct RunOptions {
  double p = 0.75;
  double trials = 10;
  int R = 0;
  long long ecc_vertex = -1;
  int threads = 0;
  std::string csv = "-";
  std::string summary;

  void add_to(CLI::App* app, bool with_p) {
    if (with_p) app->add_option("-p,--p", p, "retention probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--trials", trials, "Monte Carlo trials");
    app->add_option("--R", R, "predictor radius (0 disables the audit)")->check(CLI::NonNegativeNumber);
    app->add_option("--ecc-vertex", ecc_vertex, "report the eccentricity of this vertex (-1: the root of theorem3 and t-tree graphs, none otherwise)");
    app->add_option("--threads", threads, "OpenMP threads (0: GIANTLAB_THREADS or all)")->check(CLI::NonNegativeNumber);
    app->add_option("--csv", csv, "per-trial CSV output ('-' for stdout)");
    app->add_option("--summary", summary, "summary JSON output");
  }

  void echo(Echo& e, bool with_p) const {
    if (with_p) e.add("p", p);
    e.add("trials", trials);
    e.add("R", R);
    e.add("ecc-vertex", ecc_vertex);
    e.add("csv", csv);
    e.add("summary", summary);
  }

  TrialOptions trial_options(const BuiltGraph& g) const {
    TrialOptions t;
    if (R > 0) t.R = R;
    if (ecc_vertex >= 0) {
      if (static_cast<std::size_t>(ecc_vertex) >= g.graph.num_vertices()) {
        throw ParameterError("--ecc-vertex: vertex out of range");
      }
      t.ecc_vertex = static_cast<Vertex>(ecc_vertex);
    } else if (ecc_vertex == -1 && g.root) {
      t.ecc_vertex = *g.root;
    }
    return t;
  }
};

void print_brief(std::ostream& out, const std::vector<ColumnStats>& stats) {
  for (const char* name : {"c1_frac", "c2_size", "e1_frac", "excess_frac", "core_v_frac", "core_e_frac",
                           "bridges_frac", "audit_e1", "audit_e2", "ecc_v"}) {
    const auto& s = find_column(stats, name);
    if (s.count == 0) continue;
    out << name << " mean=" << format_number(s.mean) << " sd=" << format_number(s.sd)
        << " se=" << format_number(s.se) << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_forecast(int d, double p, bool as_json, std::ostream& out) {
  const theory::PercolationParams params{d, p};
  const json doc = theory::forecast_json(params);
  if (as_json) {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  char buf[96];
  auto line = [&](const std::string& key, double v) {
    std::snprintf(buf, sizeof buf, "%s=%.6f\n", key.c_str(), v);
    out << buf;
  };
  out << "d=" << d << " p=" << format_number(p) << " lambda=" << format_number(params.lambda())
      << (params.supercritical() ? " supercritical" : " subcritical (no giant)") << '\n';
  for (const char* key : {"q", "theta1", "eta1", "theta2", "eta2", "excess"}) line(key, doc[key].get<double>());
  const auto& alpha = doc["alpha"];
  for (std::size_t k = 0; k < alpha.size(); ++k) line("alpha" + std::to_string(k + 1), alpha[k].get<double>());
  const auto& beta = doc["beta"];
  for (std::size_t k = 0; k < beta.size(); ++k) line("beta" + std::to_string(k + 2), beta[k].get<double>());
  return kExitOk;
}

int cmd_build(GraphOptions go, const std::string& out_path, const std::string& report_path, bool diagnostics,
              std::ostream& out) {
  if (go.build_p < 0.0) go.build_p = go.resolved_kind() == "theorem3" ? Theorem3Params{}.p : Theorem2Params{}.p;
  Echo echo;
  go.echo(echo);
  echo.add("out", out_path);
  echo.add("report", report_path);
  echo.add("diagnostics", diagnostics);
  BuiltGraph built = build_graph(go);
  json report = built.report;
  if (diagnostics) {
    const auto g = girth(built.graph);
    report["girth"] = g ? json(*g) : json(nullptr);
    report["connected"] = is_connected(built.graph);
    report["diameter_lower_bound"] = diameter_lower_bound(built.graph, 4, built.root.value_or(0));
    report["cheeger_lower_bound"] = cheeger_lower_bound(built.graph);
  }
  if (!out_path.empty()) write_graph(built.graph, out_path, echo.lines("build"));
  const json doc = {{"config", echo.to_json("build")}, {"report", report}};
  write_json_file(report_path, doc, out);
  return kExitOk;
}

int cmd_percolate(GraphOptions go, const RunOptions& ro, std::ostream& out) {
  if (go.build_p < 0.0) go.build_p = ro.p;
  Echo echo;
  go.echo(echo);
  ro.echo(echo, true);
  const BuiltGraph built = build_graph(go);
  const Graph& g = built.graph;
  const auto trials = as_count(ro.trials, "--trials");
  const auto rows = monte_carlo(g, ro.p, trials, percolation_master(go.seed), ro.trial_options(built), ro.threads);
  const auto stats = summarize(rows, g.max_degree());

  {
    OutputFile csv(ro.csv, out);
    write_comment_header(*csv, echo.lines("percolate"));
    write_csv(*csv, rows, g.max_degree());
    csv.finish(ro.csv);
  }
  if (!ro.summary.empty()) {
    json config = echo.to_json("percolate");
    config["graph_report"] = built.report;
    const json doc = {{"config", config}, {"forecast", forecast_for(g.max_degree(), ro.p)},
                      {"summary_stats", stats_json(stats)}};
    write_json_file(ro.summary, doc, out);
  }
  if (ro.csv != "-") print_brief(out, stats);
  return kExitOk;
}

int cmd_sweep(GraphOptions go, const RunOptions& ro, const std::string& p_grid, const std::string& n_grid,
              std::ostream& out) {
  if (p_grid.empty() == n_grid.empty()) {
    throw ParameterError("--p-grid/--n-grid: give exactly one grid");
  }
  const bool over_p = !p_grid.empty();
  std::vector<double> grid;
  try {
    grid = parse_grid(over_p ? p_grid : n_grid);
  } catch (const ParameterError& e) {
    throw ParameterError(std::string(over_p ? "--p-grid: " : "--n-grid: ") + e.what());
  }
  if (over_p) {
    for (double p : grid) {
      if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("--p-grid: values must lie in [0, 1]");
    }
  }
  if (go.build_p < 0.0) go.build_p = over_p ? grid.front() : ro.p;
  Echo echo;
  go.echo(echo);
  ro.echo(echo, !over_p);
  echo.add(over_p ? "p-grid" : "n-grid", over_p ? p_grid : n_grid);
  const auto trials = as_count(ro.trials, "--trials");
  const std::uint64_t master = percolation_master(go.seed);

  OutputFile csv(ro.csv, out);
  write_comment_header(*csv, echo.lines("sweep"));
  json forecasts = json::array();
  json blocks = json::array();
  std::vector<double> log_n, log_c2;
  std::optional<BuiltGraph> fixed;
  if (over_p) fixed = build_graph(go);
  std::size_t header_degree = 0;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::optional<BuiltGraph> local;
    if (!over_p) {
      GraphOptions gi = go;
      gi.n = grid[i];
      local = build_graph(gi);
    }
    const BuiltGraph& built = over_p ? *fixed : *local;
    const Graph& g = built.graph;
    const double p = over_p ? grid[i] : ro.p;
    if (i == 0) header_degree = g.max_degree();
    if (g.max_degree() != header_degree) {
      throw ParameterError("--n-grid: graphs along the grid differ in maximum degree; the CSV needs one schema");
    }
    const auto rows = monte_carlo(g, p, trials, mix64(master + i), ro.trial_options(built), ro.threads);
    const auto stats = summarize(rows, g.max_degree());
    write_csv(*csv, rows, g.max_degree(), "grid_point", format_number(grid[i]), i == 0);
    forecasts.push_back({{"grid_point", grid[i]}, {"forecast", forecast_for(g.max_degree(), p)}});
    blocks.push_back({{"grid_point", grid[i]}, {"graph_report", built.report}, {"columns", stats_json(stats)}});
    const auto& c2 = find_column(stats, "c2_size");
    if (!over_p && c2.mean > 0.0) {
      log_n.push_back(std::log(grid[i]));
      log_c2.push_back(std::log(c2.mean));
    }
  }
  csv.finish(ro.csv);

  if (!ro.summary.empty()) {
    json doc = {{"config", echo.to_json("sweep")}, {"forecast", forecasts}, {"summary_stats", blocks}};
    if (!over_p && go.resolved_kind() == "theorem2" && log_n.size() >= 2) {
      const LineFit fit = fit_line(log_n, log_c2);
      doc["slope_fit"] = {{"x", "log n"}, {"y", "log mean c2_size"}, {"slope", fit.slope},
                          {"intercept", fit.intercept}, {"r_squared", fit.r_squared}, {"points", log_n.size()}};
    }
    write_json_file(ro.summary, doc, out);
  }
  return kExitOk;
}

int cmd_audit(GraphOptions go, const RunOptions& ro, const std::string& r_grid, std::ostream& out) {
  std::vector<double> grid;
  try {
    grid = parse_grid(r_grid);
  } catch (const ParameterError& e) {
    throw ParameterError(std::string("--R-grid: ") + e.what());
  }
  for (double r : grid) {
    if (!(r >= 1.0) || std::floor(r) != r) throw ParameterError("--R-grid: radii must be positive integers");
  }
  if (go.build_p < 0.0) go.build_p = ro.p;
  Echo echo;
  go.echo(echo);
  ro.echo(echo, true);
  echo.add("R-grid", r_grid);
  const BuiltGraph built = build_graph(go);
  const Graph& g = built.graph;
  const auto trials = as_count(ro.trials, "--trials");
  const std::uint64_t master = percolation_master(go.seed);

  OutputFile csv(ro.csv, out);
  write_comment_header(*csv, echo.lines("audit"));
  json blocks = json::array();
  std::ostringstream table;
  table << "R audit_e1 audit_v1 audit_e2 audit_v2\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RunOptions local = ro;
    local.R = static_cast<int>(grid[i]);
    // Same samples for every radius, so the audits are directly comparable.
    const auto rows = monte_carlo(g, ro.p, trials, master, local.trial_options(built), ro.threads);
    const auto stats = summarize(rows, g.max_degree());
    write_csv(*csv, rows, g.max_degree(), "grid_point", format_number(grid[i]), i == 0);
    blocks.push_back({{"grid_point", grid[i]}, {"columns", stats_json(stats)}});
    table << local.R;
    for (const char* c : {"audit_e1", "audit_v1", "audit_e2", "audit_v2"}) {
      table << ' ' << format_number(find_column(stats, c).mean);
    }
    table << '\n';
  }
  csv.finish(ro.csv);
  if (!ro.summary.empty()) {
    const json doc = {{"config", echo.to_json("audit")}, {"forecast", forecast_for(g.max_degree(), ro.p)},
                      {"summary_stats", blocks}};
    write_json_file(ro.summary, doc, out);
  }
  if (ro.csv != "-") out << table.str();
  return kExitOk;
}

// Turns `key=value` lines of the --config file into `--key=value` arguments
// placed before the command-line flags, which therefore take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("--config: " + path + " line " + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    extra.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  std::vector<std::string> out{args[0]};
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"giantlab: percolation on high-girth regular expanders"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;

  int fd = 3;
  double fp = 0.75;
  bool fjson = false;
  auto* forecast = app.add_subcommand("forecast", "closed-form giant and 2-core predictions");
  forecast->add_option("-d,--d", fd, "degree")->check(CLI::Range(3, 1000000));
  forecast->add_option("-p,--p", fp, "retention probability")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            try {
              v = std::stod(s);
            } catch (const std::exception&) {
              return "value " + s + " is not a number";
            }
            return v > 0.0 && v <= 1.0 ? std::string() : "value " + s + " not in (0, 1]";
          },
          "in (0, 1]"));
  forecast->add_flag("--json", fjson, "emit JSON");
  forecast->add_option("--config", config_path, "flat key=value file; flags override it");

  GraphOptions build_go;
  std::string build_out;
  std::string build_report = "-";
  bool build_diag = false;
  auto* build = app.add_subcommand("build", "construct a graph and report on it");
  build_go.add_to(build);
  build->add_option("-o,--out", build_out, "graph file to write");
  build->add_option("--report", build_report, "report JSON ('-' for stdout)");
  build->add_flag("--diagnostics", build_diag, "measure girth, diameter bound and spectral gap");
  build->add_option("--config", config_path, "flat key=value file; flags override it");

  GraphOptions perc_go;
  RunOptions perc_ro;
  auto* percolate = app.add_subcommand("percolate", "Monte Carlo percolation on one graph");
  perc_go.add_to(percolate);
  perc_ro.add_to(percolate, true);
  percolate->add_option("--config", config_path, "flat key=value file; flags override it");

  GraphOptions sweep_go;
  RunOptions sweep_ro;
  std::string p_grid, n_grid;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo over a p-grid or an n-grid");
  sweep_go.add_to(sweep);
  sweep_ro.add_to(sweep, true);
  sweep->add_option("--p-grid", p_grid, "comma list or start:stop:step");
  sweep->add_option("--n-grid", n_grid, "comma list or start:stop:step");
  sweep->add_option("--config", config_path, "flat key=value file; flags override it");

  GraphOptions audit_go;
  RunOptions audit_ro;
  std::string r_grid = "10,20,30,40,50";
  auto* audit = app.add_subcommand("audit", "predictor audits as a function of R");
  audit_go.add_to(audit);
  audit_ro.add_to(audit, true);
  audit->add_option("--R-grid", r_grid, "radii, comma list or start:stop:step");
  audit->add_option("--config", config_path, "flat key=value file; flags override it");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (forecast->parsed()) return cmd_forecast(fd, fp, fjson, out);
    if (build->parsed()) return cmd_build(build_go, build_out, build_report, build_diag, out);
    if (percolate->parsed()) return cmd_percolate(perc_go, perc_ro, out);
    if (sweep->parsed()) return cmd_sweep(sweep_go, sweep_ro, p_grid, n_grid, out);
    if (audit->parsed()) return cmd_audit(audit_go, audit_ro, r_grid, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitGeneration;
  }
}

}  // namespace giantlab
