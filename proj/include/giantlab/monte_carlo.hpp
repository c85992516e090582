#pragma once

// Repeated percolation trials on a fixed graph, one ResultRow per trial, and
// the CSV/summary formats the CLI writes.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "giantlab/graph.hpp"
#include "giantlab/percolation.hpp"

namespace giantlab {

struct TrialOptions {
  std::optional<int> R;                // run the predictor audit at this radius
  std::optional<Vertex> ecc_vertex;    // report the eccentricity of this vertex
  std::uint64_t predictor_budget = kDefaultPredictorBudget;
};

struct ResultRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;
  std::optional<int> R;
  double c1_frac = 0.0;
  std::size_t c2_size = 0;
  double e1_frac = 0.0;
  double excess_frac = 0.0;
  std::vector<double> d_frac;   // k = 1..max_degree
  double core_v_frac = 0.0;
  double core_e_frac = 0.0;
  std::vector<double> ds_frac;  // k = 2..max_degree
  double bridges_frac = 0.0;
  double noncore_giant_frac = 0.0;
  std::optional<double> audit_e1;
  std::optional<double> audit_v1;
  std::optional<double> audit_e2;
  std::optional<double> audit_v2;
  std::optional<int> ecc_v;
};

/// One trial with the given sample seed. Kernels run serially inside.
ResultRow run_trial(const Graph& g, double p, std::uint64_t seed, std::size_t trial, const TrialOptions& options);

/// Trials 0..trials-1 with seeds trial_seed(master_seed, i), distributed over
/// `threads` OpenMP threads (0 = default). Rows come back in trial order and
/// do not depend on the schedule.
std::vector<ResultRow> monte_carlo(const Graph& g, double p, std::size_t trials, std::uint64_t master_seed,
                                   const TrialOptions& options, int threads = 0);

/// Reference implementation: the same trials in a plain loop.
std::vector<ResultRow> monte_carlo_serial(const Graph& g, double p, std::size_t trials, std::uint64_t master_seed,
                                          const TrialOptions& options);

/// Thread count from GIANTLAB_THREADS if set, otherwise the OpenMP default.
int default_threads();

/// Column names in CSV order for graphs of the given maximum degree:
/// trial, seed, n, m, p, R, c1_frac, c2_size, e1_frac, excess_frac,
/// d1_frac..dD_frac, core_v_frac, core_e_frac, ds2_frac..dsD_frac,
/// bridges_frac, noncore_giant_frac, audit_e1, audit_v1, audit_e2, audit_v2,
/// ecc_v.
std::vector<std::string> csv_columns(std::size_t max_degree);

/// Cells of a row in csv_columns order; missing values are empty strings.
std::vector<std::string> csv_cells(const ResultRow& row, std::size_t max_degree);

/// Header line plus one line per row. `prefix_column`, when nonempty, is
/// prepended with the same `prefix_value` on every row.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, std::size_t max_degree,
               const std::string& prefix_column = {}, const std::string& prefix_value = {},
               bool header = true);

struct ColumnStats {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (0 when count < 2)
  double se = 0.0;  // sd / sqrt(count)
};

/// Statistics for every numeric column except trial and seed; empty cells are
/// skipped.
std::vector<ColumnStats> summarize(const std::vector<ResultRow>& rows, std::size_t max_degree);

const ColumnStats& find_column(const std::vector<ColumnStats>& stats, const std::string& name);

/// "%.12g" formatting shared by all numeric output.
std::string format_number(double x);

}  // namespace giantlab
