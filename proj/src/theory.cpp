#include "giantlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "giantlab/errors.hpp"

namespace giantlab::theory {

namespace {

constexpr int kFixedPointIterations = 100000;
constexpr double kFixedPointStep = 1e-14;

double offspring_pgf(const PercolationParams& params, double q) {
  return std::pow(1.0 - params.p + params.p * q, params.d - 1);
}

// Leftmost root of g(q) - q on [0, 1 - 1e-9]; g(0) - q > 0 whenever p < 1.
double bisect_q(const PercolationParams& params) {
  double lo = 0.0;
  double hi = 1.0 - 1e-9;
  if (offspring_pgf(params, hi) - hi >= 0.0) {
    return hi;
  }
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (offspring_pgf(params, mid) - mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

void PercolationParams::validate() const {
  if (d < 3) {
    throw ParameterError("degree d must be at least 3, got " + std::to_string(d));
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw ParameterError("retention probability p must lie in (0, 1], got " + std::to_string(p));
  }
}

double binomial_pmf(int n, int k, double x) {
  if (k < 0 || k > n) return 0.0;
  if (x <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (x >= 1.0) return k == n ? 1.0 : 0.0;
  if (n <= 1000) {
    double coeff = 1.0;
    const int kk = std::min(k, n - k);
    for (int i = 1; i <= kk; ++i) {
      coeff = coeff * (n - kk + i) / i;
    }
    return coeff * std::pow(x, k) * std::pow(1.0 - x, n - k);
  }
  const double log_coeff = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_coeff + k * std::log(x) + (n - k) * std::log1p(-x));
}

double solve_q(const PercolationParams& params) {
  params.validate();
  if (!params.supercritical()) return 1.0;
  if (params.p == 1.0) return 0.0;

  // Monotone iteration from 0 converges to the smallest fixed point.
  double q = 0.0;
  for (int i = 0; i < kFixedPointIterations; ++i) {
    const double next = offspring_pgf(params, q);
    if (std::abs(next - q) <= kFixedPointStep) {
      return next;
    }
    q = next;
  }
  return bisect_q(params);
}

GiantForecast giant_forecast(const PercolationParams& params) {
  GiantForecast f;
  f.q = solve_q(params);
  f.supercritical = params.supercritical();
  if (!f.supercritical) return f;

  const double p = params.p;
  const double d = params.d;
  const double q = f.q;
  f.theta1 = 1.0 - q * (1.0 - p) - p * q * q;
  f.eta1 = 0.5 * p * d * (1.0 - q * q);
  f.theta2 = 1.0 - q - (d - 1.0) * p * q * (1.0 - q);
  f.eta2 = 0.5 * p * d * (1.0 - q) * (1.0 - q);
  f.excess1 = f.eta1 - f.theta1;
  f.excess2 = f.eta2 - f.theta2;
  return f;
}

DegreeForecast degree_forecast(const PercolationParams& params) {
  const double q = solve_q(params);
  const int d = params.d;
  DegreeForecast f;
  f.alpha.assign(d + 1, 0.0);
  f.beta.assign(d + 1, 0.0);
  if (!params.supercritical()) return f;

  for (int k = 1; k <= d; ++k) {
    f.alpha[k] = binomial_pmf(d, k, params.p) * (1.0 - std::pow(q, k));
  }
  // Binomial form of the 2-core profile; finite at p = 1 where q = 0.
  const double survive = params.p * (1.0 - q);
  for (int k = 2; k <= d; ++k) {
    f.beta[k] = binomial_pmf(d, k, survive);
  }
  return f;
}

SeriesForecast large_d_series(double xi) {
  if (!(xi > 0.0)) {
    throw ParameterError("xi must be positive");
  }
  const double x2 = xi * xi;
  const double x3 = x2 * xi;
  SeriesForecast s;
  s.q = 1.0 - 2.0 * xi + 8.0 / 3.0 * x2 - 28.0 / 9.0 * x3;
  s.theta1 = 2.0 * xi - 8.0 / 3.0 * x2 + 28.0 / 9.0 * x3;
  s.eta1 = 2.0 * xi - 8.0 / 3.0 * x2 + 34.0 / 9.0 * x3;
  s.theta2 = 2.0 * x2 - 4.0 * x3;
  s.eta2 = 2.0 * x2 - 10.0 / 3.0 * x3;
  s.excess = 2.0 / 3.0 * x3;
  s.truncation_warning = xi > 0.3;
  return s;
}

DensityResult path_density(const PercolationParams& params, int ell) {
  params.validate();
  if (ell < 1) {
    throw ParameterError("path length must be at least 1");
  }
  if (!params.supercritical()) {
    return {0.0, true};
  }
  const double q = solve_q(params);
  const double p = params.p;
  const double d = params.d;
  const double s = 1.0 - p + p * q;
  const double tail = q == 0.0 ? 0.0 : std::pow(q, ell + 1) * std::pow(s, 1 - ell);
  return {0.5 * d * std::pow(d - 1.0, ell - 1) * std::pow(p, ell) * (1.0 - tail), false};
}

// ---------------------------------------------------------------------------

RootedTreeShape::RootedTreeShape(std::vector<int> parent) : parent_(std::move(parent)) {
  const int n = size();
  if (n == 0) {
    throw ParameterError("tree shape must have at least one vertex");
  }
  children_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    const int u = parent_[v];
    if (u == -1) {
      if (root_ != -1) throw ParameterError("tree shape has more than one root");
      root_ = v;
    } else if (u < 0 || u >= n || u == v) {
      throw ParameterError("tree shape has an invalid parent pointer at vertex " + std::to_string(v));
    } else {
      children_[u].push_back(v);
    }
  }
  if (root_ == -1) {
    throw ParameterError("tree shape has no root");
  }
  level_.assign(n, -1);
  std::queue<int> frontier;
  frontier.push(root_);
  level_[root_] = 0;
  int reached = 0;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    ++reached;
    depth_ = std::max(depth_, level_[u]);
    for (int c : children_[u]) {
      level_[c] = level_[u] + 1;
      frontier.push(c);
    }
  }
  if (reached != n) {
    throw ParameterError("tree shape contains a cycle");
  }
}

int RootedTreeShape::boundary_count() const noexcept {
  return static_cast<int>(std::count(level_.begin(), level_.end(), depth_));
}

std::string RootedTreeShape::canonical(int v) const {
  std::vector<std::string> parts;
  parts.reserve(children_[v].size());
  for (int c : children_[v]) parts.push_back(canonical(c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& s : parts) out += s;
  out += ')';
  return out;
}

std::string RootedTreeShape::canonical() const { return canonical(root_); }

TreeDensity tree_density(const PercolationParams& params, const RootedTreeShape& shape) {
  params.validate();
  const int k = shape.depth();
  if (k < 1 || k > kMaxTreeDepth) {
    throw ParameterError("tree shape depth must lie in [1, " + std::to_string(kMaxTreeDepth) +
                         "], got " + std::to_string(k));
  }
  for (int v = 0; v < shape.size(); ++v) {
    const int cap = v == shape.root() ? params.d : params.d - 1;
    if (static_cast<int>(shape.children(v).size()) > cap) {
      throw ParameterError("tree shape vertex " + std::to_string(v) + " exceeds the degree bound");
    }
  }

  // Probability that the open cluster below a tree vertex matches the shape
  // subtree at v. Non-root vertices of the percolated tree have d-1 children.
  struct Dp {
    const RootedTreeShape& shape;
    int d;
    int k;
    double p;
    double operator()(int v, int available) const {
      if (shape.depth_of(v) == k) return 1.0;
      const auto& kids = shape.children(v);
      const int r = static_cast<int>(kids.size());
      if (r > available) return 0.0;
      std::map<std::string, int> multiplicity;
      double product = 1.0;
      for (int c : kids) {
        ++multiplicity[shape.canonical(c)];
        product *= (*this)(c, d - 1);
      }
      double arrangements = factorial(r);
      for (const auto& entry : multiplicity) arrangements /= factorial(entry.second);
      return binomial_pmf(available, r, p) * arrangements * product;
    }
  };

  TreeDensity out;
  out.alpha_T = Dp{shape, params.d, k, params.p}(shape.root(), params.d);
  out.boundary_leaves = shape.boundary_count();
  const double q = solve_q(params);
  out.giant_density = (1.0 - std::pow(q, out.boundary_leaves)) * out.alpha_T;
  return out;
}

nlohmann::json forecast_json(const PercolationParams& params) {
  const auto giant = giant_forecast(params);
  const auto degrees = degree_forecast(params);
  nlohmann::json j;
  j["d"] = params.d;
  j["p"] = params.p;
  j["lambda"] = params.lambda();
  j["supercritical"] = giant.supercritical;
  j["q"] = giant.q;
  j["theta1"] = giant.theta1;
  j["eta1"] = giant.eta1;
  j["theta2"] = giant.theta2;
  j["eta2"] = giant.eta2;
  j["excess"] = giant.excess1;
  j["alpha"] = std::vector<double>(degrees.alpha.begin() + 1, degrees.alpha.end());
  j["beta"] = std::vector<double>(degrees.beta.begin() + 2, degrees.beta.end());
  return j;
}

}  // namespace giantlab::theory
