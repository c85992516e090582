#include "giantlab/monte_carlo.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "giantlab/errors.hpp"
#include "giantlab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace giantlab {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ResultRow run_trial(const Graph& g, double p, std::uint64_t seed, std::size_t trial, const TrialOptions& options) {
  const std::size_t n = g.num_vertices();
  const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  const EdgeMask mask = sample(g, p, seed);
  const ComponentSummary comps = components(g, mask);
  const CoreSummary core = two_core(g, mask, comps);

  ResultRow row;
  row.trial = trial;
  row.seed = seed;
  row.n = n;
  row.m = g.num_edges();
  row.p = p;
  row.R = options.R;
  row.c1_frac = static_cast<double>(comps.giant_size) * inv_n;
  row.c2_size = comps.second_size;
  row.e1_frac = static_cast<double>(comps.giant_edges) * inv_n;
  row.excess_frac = static_cast<double>(comps.giant_excess) * inv_n;
  const std::size_t max_deg = g.max_degree();
  for (std::size_t k = 1; k <= max_deg; ++k) row.d_frac.push_back(static_cast<double>(comps.degree_hist[k]) * inv_n);
  row.core_v_frac = static_cast<double>(core.giant_core_vertices) * inv_n;
  row.core_e_frac = static_cast<double>(core.giant_core_edges) * inv_n;
  for (std::size_t k = 2; k <= max_deg; ++k) {
    row.ds_frac.push_back(static_cast<double>(core.core_degree_hist[k]) * inv_n);
  }
  row.bridges_frac = static_cast<double>(core.bridges) * inv_n;
  row.noncore_giant_frac = static_cast<double>(core.other_core_vertices) * inv_n;

  if (options.R) {
    const auto pred = local_predictors(g, mask, *options.R, comps, core, Exec::serial, options.predictor_budget);
    row.audit_e1 = static_cast<double>(pred.audit_e1) * inv_n;
    row.audit_v1 = static_cast<double>(pred.audit_v1) * inv_n;
    row.audit_e2 = static_cast<double>(pred.audit_e2) * inv_n;
    row.audit_v2 = static_cast<double>(pred.audit_v2) * inv_n;
  }
  if (options.ecc_vertex) {
    row.ecc_v = component_diameter(g, mask, *options.ecc_vertex).eccentricity;
  }
  return row;
}

std::vector<ResultRow> monte_carlo_serial(const Graph& g, double p, std::size_t trials, std::uint64_t master_seed,
                                          const TrialOptions& options) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  std::vector<ResultRow> rows;
  rows.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) rows.push_back(run_trial(g, p, trial_seed(master_seed, i), i, options));
  return rows;
}

std::vector<ResultRow> monte_carlo(const Graph& g, double p, std::size_t trials, std::uint64_t master_seed,
                                   const TrialOptions& options, int threads) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  if (threads <= 0) threads = default_threads();
  std::vector<ResultRow> rows(trials);
  std::vector<std::exception_ptr> errors(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      rows[i] = run_trial(g, p, trial_seed(master_seed, i), static_cast<std::size_t>(i), options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

int default_threads() {
  if (const char* env = std::getenv("GIANTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::string> csv_columns(std::size_t max_degree) {
  std::vector<std::string> cols = {"trial", "seed", "n", "m", "p", "R", "c1_frac", "c2_size", "e1_frac", "excess_frac"};
  for (std::size_t k = 1; k <= max_degree; ++k) cols.push_back("d" + std::to_string(k) + "_frac");
  cols.emplace_back("core_v_frac");
  cols.emplace_back("core_e_frac");
  for (std::size_t k = 2; k <= max_degree; ++k) cols.push_back("ds" + std::to_string(k) + "_frac");
  for (const char* c : {"bridges_frac", "noncore_giant_frac", "audit_e1", "audit_v1", "audit_e2", "audit_v2", "ecc_v"}) {
    cols.emplace_back(c);
  }
  return cols;
}

namespace {

// Numeric view of a row in csv_columns order; nullopt marks an empty cell.
std::vector<std::optional<double>> row_values(const ResultRow& row, std::size_t max_degree) {
  auto opt_int = [](const std::optional<int>& x) -> std::optional<double> {
    if (!x) return std::nullopt;
    return static_cast<double>(*x);
  };
  std::vector<std::optional<double>> v = {
      static_cast<double>(row.trial), static_cast<double>(row.seed), static_cast<double>(row.n),
      static_cast<double>(row.m),     row.p,                         opt_int(row.R),
      row.c1_frac,                    static_cast<double>(row.c2_size), row.e1_frac,
      row.excess_frac};
  for (std::size_t k = 0; k < max_degree; ++k) v.emplace_back(k < row.d_frac.size() ? row.d_frac[k] : 0.0);
  v.emplace_back(row.core_v_frac);
  v.emplace_back(row.core_e_frac);
  for (std::size_t k = 0; k + 1 < max_degree; ++k) v.emplace_back(k < row.ds_frac.size() ? row.ds_frac[k] : 0.0);
  v.emplace_back(row.bridges_frac);
  v.emplace_back(row.noncore_giant_frac);
  v.push_back(row.audit_e1);
  v.push_back(row.audit_v1);
  v.push_back(row.audit_e2);
  v.push_back(row.audit_v2);
  v.push_back(opt_int(row.ecc_v));
  return v;
}

}  // namespace

std::vector<std::string> csv_cells(const ResultRow& row, std::size_t max_degree) {
  const auto values = row_values(row, max_degree);
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 1) {
      cells.push_back(std::to_string(row.seed));
    } else if (!values[i]) {
      cells.emplace_back();
    } else {
      cells.push_back(format_number(*values[i]));
    }
  }
  return cells;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, std::size_t max_degree,
               const std::string& prefix_column, const std::string& prefix_value, bool header) {
  auto emit = [&](const std::vector<std::string>& cells, const std::string& prefix) {
    std::string line;
    if (!prefix_column.empty()) {
      line += prefix;
      line += ',';
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) line += ',';
      line += cells[i];
    }
    line += '\n';
    out << line;
  };
  if (header) emit(csv_columns(max_degree), prefix_column);
  for (const auto& row : rows) emit(csv_cells(row, max_degree), prefix_value);
}

std::vector<ColumnStats> summarize(const std::vector<ResultRow>& rows, std::size_t max_degree) {
  const auto names = csv_columns(max_degree);
  std::vector<std::vector<std::optional<double>>> table;
  table.reserve(rows.size());
  for (const auto& row : rows) table.push_back(row_values(row, max_degree));

  std::vector<ColumnStats> out;
  for (std::size_t c = 2; c < names.size(); ++c) {
    ColumnStats s;
    s.name = names[c];
    double sum = 0.0;
    for (const auto& r : table) {
      if (!r[c]) continue;
      ++s.count;
      sum += *r[c];
    }
    if (s.count > 0) {
      s.mean = sum / static_cast<double>(s.count);
      double ss = 0.0;
      for (const auto& r : table) {
        if (r[c]) ss += (*r[c] - s.mean) * (*r[c] - s.mean);
      }
      if (s.count > 1) {
        s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.count));
      }
    }
    out.push_back(s);
  }
  return out;
}

const ColumnStats& find_column(const std::vector<ColumnStats>& stats, const std::string& name) {
  for (const auto& s : stats) {
    if (s.name == name) return s;
  }
  throw ParameterError("no column named " + name);
}

}  // namespace giantlab
