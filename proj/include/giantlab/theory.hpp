#pragma once

// Closed-form predictions for supercritical bond percolation on high-girth
// d-regular expanders: the Bin(d-1, p) extinction probability q, giant and
// 2-core densities, degree profiles, the large-d series, and densities of
// local structures (paths, rooted trees) inside the giant.

#include <string>
#include <vector>

#include <json.hpp>

namespace giantlab::theory {

struct PercolationParams {
  int d = 3;
  double p = 0.5;

  double lambda() const noexcept { return p * (d - 1); }
  bool supercritical() const noexcept { return lambda() > 1.0; }

  /// Throws ParameterError unless d >= 3 and 0 < p <= 1.
  void validate() const;
};

struct GiantForecast {
  double q = 1.0;
  double theta1 = 0.0;
  double eta1 = 0.0;
  double theta2 = 0.0;
  double eta2 = 0.0;
  double excess1 = 0.0;
  double excess2 = 0.0;
  bool supercritical = false;
};

/// Degree profiles of the giant and its 2-core. Both vectors are indexed
/// directly by degree k and have size d + 1; alpha[0], beta[0] and beta[1]
/// are always zero.
struct DegreeForecast {
  std::vector<double> alpha;
  std::vector<double> beta;
};

struct SeriesForecast {
  double q = 1.0;
  double theta1 = 0.0;
  double eta1 = 0.0;
  double theta2 = 0.0;
  double eta2 = 0.0;
  double excess = 0.0;
  bool truncation_warning = false;  // xi > 0.3
};

struct DensityResult {
  double value = 0.0;
  bool subcritical_warning = false;
};

/// Rooted tree given by parent pointers; parent[root] == -1.
class RootedTreeShape {
public:
  explicit RootedTreeShape(std::vector<int> parent);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int root() const noexcept { return root_; }
  int depth() const noexcept { return depth_; }
  /// Number of vertices at the maximal depth.
  int boundary_count() const noexcept;
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& parents() const noexcept { return parent_; }
  int depth_of(int v) const { return level_[v]; }

  /// Canonical string of the rooted-isomorphism class (sorted nested parens).
  std::string canonical() const;
  std::string canonical(int v) const;

private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> level_;
  int root_ = -1;
  int depth_ = 0;
};

struct TreeDensity {
  double alpha_T = 0.0;
  double giant_density = 0.0;
  int boundary_leaves = 0;
};

inline constexpr int kMaxTreeDepth = 4;

double solve_q(const PercolationParams& params);
GiantForecast giant_forecast(const PercolationParams& params);
DegreeForecast degree_forecast(const PercolationParams& params);
SeriesForecast large_d_series(double xi);
DensityResult path_density(const PercolationParams& params, int ell);
TreeDensity tree_density(const PercolationParams& params, const RootedTreeShape& shape);

/// Binomial probability mass P(Bin(n, x) = k).
double binomial_pmf(int n, int k, double x);

/// The documented key schema: q, theta1, eta1, theta2, eta2, excess,
/// alpha[] (k = 1..d), beta[] (k = 2..d), plus d, p, lambda, supercritical.
nlohmann::json forecast_json(const PercolationParams& params);

}  // namespace giantlab::theory
