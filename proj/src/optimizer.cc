//
// Copyright 2026 The plrvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "plrvo/optimizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "plrvo/numerics.h"
#include "plrvo/status.h"

namespace plrvo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThetaCapShrink = 1.0 - 1e-6;
// Final theta precision, and the looser one used while probing (k, C).
constexpr double kThetaRelTol = 1e-10;
constexpr double kProbeThetaRelTol = 1e-6;
constexpr double kGoldenTol = 1e-5;
constexpr std::size_t kColumnBatch = 16;
constexpr double kRefineRelImprovement = 1e-4;
constexpr int kMaxRefineRounds = 20;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

double C1Margin(double k, double theta, const FeasibilityConfig& cfg) {
  absl::StatusOr<double> cdf =
      RegularizedLowerGamma(k, (1.0 / cfg.scale_cap) / theta);
  if (!cdf.ok()) return -kInf;
  return cfg.gamma_cdf_tol - *cdf;
}

double C4Margin(double k, double theta, const FeasibilityConfig& cfg) {
  return (k - 1.0) * theta - 1.0 / cfg.distortion_cap;
}

double MgfMargin(double theta, double clip_C, const FeasibilityConfig& cfg) {
  return 1.0 - cfg.lambda_max * clip_C * theta;
}

// Evaluation context shared by both phases; counts accountant calls.
class Searcher {
 public:
  explicit Searcher(const FeasibilityConfig& cfg) : cfg_(cfg) {}

  // Epsilon under the search accounting, +inf on accountant errors.
  double Epsilon(double k, double theta, double clip_C) {
    ++evaluations_;
    absl::StatusOr<double> eps = internal::PointEpsilon(
        k, theta, clip_C, cfg_, cfg_.search_accounting);
    return eps.ok() ? *eps : kInf;
  }

  bool PrivacyOk(double k, double theta, double clip_C) {
    return Epsilon(k, theta, clip_C) <= cfg_.target.epsilon_star();
  }

  // Largest theta in (0, ThetaCap(C)] satisfying every constraint for this
  // (k, C), or 0 when none does. Uses the interval structure of the
  // feasible theta set.
  double ThetaMax(double k, double clip_C, double rel_tol) {
    if (!(k > 1.0)) return 0.0;
    const double top = ThetaCap(cfg_, clip_C);
    if (!internal::CheapConstraintsPass(k, top, clip_C, cfg_)) return 0.0;
    // Smallest theta passing c1 and c4: bisect in log theta.
    double lo = std::min(cfg_.theta_min, top);
    double hi = top;
    if (!internal::CheapConstraintsPass(k, lo, clip_C, cfg_)) {
      while (hi / lo - 1.0 > rel_tol) {
        const double mid = std::sqrt(lo * hi);
        if (internal::CheapConstraintsPass(k, mid, clip_C, cfg_)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      lo = hi;
    }
    if (PrivacyOk(k, top, clip_C)) return top;
    if (!PrivacyOk(k, lo, clip_C)) return 0.0;
    hi = top;
    while (hi / lo - 1.0 > rel_tol) {
      const double mid = std::sqrt(lo * hi);
      if (PrivacyOk(k, mid, clip_C)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  std::int64_t evaluations() const { return evaluations_; }

 private:
  const FeasibilityConfig& cfg_;
  std::atomic<std::int64_t> evaluations_{0};
};

struct Point {
  double k = 0.0;
  double theta = 0.0;
  double clip = 0.0;
  double objective = -kInf;
};

// Golden-section maximization of f on [a, b]; returns the best probe.
template <typename F>
std::pair<double, double> GoldenMax(F&& f, double a, double b) {
  double best_x = a, best_f = f(a);
  auto consider = [&](double x, double fx) {
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  const double fb = f(b);
  consider(b, fb);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  while (std::fabs(b - a) > kGoldenTol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return {best_x, best_f};
}

}  // namespace

bool ConstraintReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.pass; });
}

absl::Status ValidateConfig(const FeasibilityConfig& cfg) {
  if (!(cfg.clip_min > 0.0) || !std::isfinite(cfg.clip_max) ||
      !(cfg.clip_min <= cfg.clip_max)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "clip bounds must satisfy 0 < clip_min <= clip_max, got [",
        cfg.clip_min, ", ", cfg.clip_max, "]"));
  }
  if (!(cfg.gamma_cdf_tol > 0.0 && cfg.gamma_cdf_tol < 1.0)) {
    return absl::InvalidArgumentError("gamma_cdf_tol must lie in (0, 1)");
  }
  if (!(cfg.distortion_cap > 0.0) || !(cfg.scale_cap > 0.0)) {
    return absl::InvalidArgumentError(
        "distortion_cap and scale_cap must be > 0");
  }
  if (cfg.steps_T < 1 || cfg.model_dim_N < 1 || cfg.lambda_max < 1) {
    return absl::InvalidArgumentError(
        "steps_T, model_dim_N and lambda_max must be >= 1");
  }
  if (!(cfg.sampling_rate_zeta >= 0.0 && cfg.sampling_rate_zeta <= 1.0)) {
    return absl::InvalidArgumentError("sampling rate must lie in [0, 1]");
  }
  if (cfg.k_points < 1 || cfg.theta_points < 1 || cfg.clip_points < 1) {
    return absl::InvalidArgumentError("grid sizes must be >= 1");
  }
  if (!(cfg.k_min > 1.0 && cfg.k_min <= cfg.k_max && std::isfinite(cfg.k_max))) {
    return absl::InvalidArgumentError(
        "k range must satisfy 1 < k_min <= k_max");
  }
  if (!(cfg.theta_min > 0.0)) {
    return absl::InvalidArgumentError("theta_min must be > 0");
  }
  return absl::OkStatus();
}

double ThetaCap(const FeasibilityConfig& cfg, double clip_C) {
  return kThetaCapShrink / (clip_C * (cfg.lambda_max + 1.0));
}

namespace internal {

std::vector<double> LogGrid(double lo, double hi, int count) {
  if (count <= 1 || lo == hi) return {lo};
  std::vector<double> grid(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    grid[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> LinearGrid(double lo, double hi, int count) {
  if (count <= 1 || lo == hi) return {lo};
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

absl::StatusOr<double> PointEpsilon(double k, double theta, double clip_C,
                                    const FeasibilityConfig& cfg,
                                    const AccountOptions& options) {
  PLRVO_ASSIGN_OR_RETURN(GammaPlrvParams params,
                         GammaPlrvParams::Create(k, theta));
  PLRVO_ASSIGN_OR_RETURN(
      AccountingJob job,
      AccountingJob::Create(cfg.steps_T, cfg.sampling_rate_zeta,
                            cfg.model_dim_N, clip_C, cfg.target.delta_star(),
                            cfg.lambda_max));
  PLRVO_ASSIGN_OR_RETURN(AccountResult result, Account(params, job, options));
  return result.epsilon;
}

bool CheapConstraintsPass(double k, double theta, double clip_C,
                          const FeasibilityConfig& cfg) {
  return k > 1.0 && MgfMargin(theta, clip_C, cfg) > 0.0 &&
         C4Margin(k, theta, cfg) >= 0.0 && C1Margin(k, theta, cfg) >= 0.0;
}

}  // namespace internal

ConstraintReport CheckFeasible(double k, double theta, double clip_C,
                               const FeasibilityConfig& cfg) {
  ConstraintReport report;
  const double c0 = std::min(clip_C - cfg.clip_min, cfg.clip_max - clip_C);
  const double c1 = C1Margin(k, theta, cfg);
  const double c3 = k - 1.0;
  const double c4 = C4Margin(k, theta, cfg);
  const double mgf = MgfMargin(theta, clip_C, cfg);

  double c2 = -kInf;
  report.epsilon = kInf;
  if (c3 > 0.0 && mgf > 0.0 && clip_C > 0.0 && theta > 0.0) {
    absl::StatusOr<double> eps =
        internal::PointEpsilon(k, theta, clip_C, cfg, AccountOptions{});
    if (eps.ok()) {
      report.epsilon = *eps;
      c2 = cfg.target.epsilon_star() - *eps;
    }
  }
  report.checks = {
      {"c0", c0 >= 0.0, c0}, {"c1", c1 >= 0.0, c1}, {"c2", c2 >= 0.0, c2},
      {"c3", c3 > 0.0, c3},  {"c4", c4 >= 0.0, c4}, {"mgf", mgf > 0.0, mgf},
  };
  return report;
}

absl::StatusOr<std::pair<double, double>> GammaPlrvKBounds(double clip_C,
                                                           double theta,
                                                           int eta) {
  if (!(clip_C > 0.0) || !(theta > 0.0)) {
    return absl::InvalidArgumentError("clip and theta must be > 0");
  }
  if (eta < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("eta must be >= 2, got ", eta));
  }
  const double ct = clip_C * theta;
  const double e = static_cast<double>(eta);
  if (!(ct * (e - 1.0) < 1.0)) {
    return DomainError(absl::StrCat("log argument 1 - C theta (eta - 1) = ",
                                    1.0 - ct * (e - 1.0), " is not positive"));
  }
  const double log_term = std::log1p(-ct * (e - 1.0));
  const double quad = ct * ct * (e - e * e);
  const double disc = 16.0 * log_term * log_term + 11.09375 * quad;
  if (disc < 0.0) {
    return NegativeDiscriminantError(absl::StrCat(
        "discriminant ", disc, " < 0 at eta = ", eta, ": no admissible k"));
  }
  const double root = std::sqrt(disc);
  double k1 = (4.0 * log_term - root) / (2.0 * quad);
  double k2 = (4.0 * log_term + root) / (2.0 * quad);
  if (k1 > k2) std::swap(k1, k2);
  return std::make_pair(k1, k2);
}

absl::StatusOr<std::pair<double, double>> GammaPlrvKRange(double clip_C,
                                                          double theta,
                                                          int lambda_max) {
  std::pair<double, double> range{-kInf, kInf};
  for (int eta = 2; eta <= lambda_max + 1; ++eta) {
    PLRVO_ASSIGN_OR_RETURN(auto bounds, GammaPlrvKBounds(clip_C, theta, eta));
    range.first = std::max(range.first, bounds.first);
    range.second = std::min(range.second, bounds.second);
  }
  if (range.first > range.second) {
    return InfeasibleError(absl::StrCat("k bounds are disjoint: [",
                                        range.first, ", ", range.second, "]"));
  }
  return range;
}

absl::StatusOr<OptimizationResult> Solve(const FeasibilityConfig& cfg) {
  PLRVO_RETURN_IF_ERROR(ValidateConfig(cfg));
  Searcher searcher(cfg);

  const std::vector<double> clips =
      internal::LinearGrid(cfg.clip_min, cfg.clip_max, cfg.clip_points);
  const std::vector<double> ks =
      internal::LogGrid(cfg.k_min, cfg.k_max, cfg.k_points);

  // Phase A: one column per (C, k). Within a column the grid thetas passing
  // c1, c4 and mgf form a contiguous run [lo, top] and epsilon is monotone
  // along it, so the best feasible theta is found by bisection. Columns are
  // visited in decreasing order of their bound C (k - 1) theta[top] in
  // fixed-size batches; once a bound falls below the incumbent the rest
  // cannot improve on it. The batch size does not depend on the thread count,
  // so neither the result nor the diagnostics do.
  struct Column {
    double k = 0.0;
    double clip = 0.0;
    std::vector<double> thetas;
    int lo = 0;
    int top = -1;
    double bound = -kInf;
    Point best;
    double min_epsilon = kInf;
  };
  const std::int64_t columns =
      static_cast<std::int64_t>(clips.size() * ks.size());
  std::vector<Column> grid(columns);
  ParallelFor(
      columns,
      [&](std::int64_t index) {
        Column& col = grid[index];
        col.clip = clips[index / ks.size()];
        col.k = ks[index % ks.size()];
        const double cap = ThetaCap(cfg, col.clip);
        if (cap < cfg.theta_min) return;
        col.thetas = internal::LogGrid(cfg.theta_min, cap, cfg.theta_points);
        auto cheap = [&](double theta) {
          if (!internal::CheapConstraintsPass(col.k, theta, col.clip, cfg)) {
            return false;
          }
          if (!cfg.use_k_bounds_prefilter) return true;
          absl::StatusOr<std::pair<double, double>> range =
              GammaPlrvKRange(col.clip, theta, cfg.lambda_max);
          return range.ok() && col.k >= range->first &&
                 col.k <= range->second;
        };
        const int n = static_cast<int>(col.thetas.size());
        int lo = 0;
        while (lo < n && !cheap(col.thetas[lo])) ++lo;
        if (lo == n) return;
        int top = lo;
        while (top + 1 < n && cheap(col.thetas[top + 1])) ++top;
        col.lo = lo;
        col.top = top;
        col.bound = col.clip * (col.k - 1.0) * col.thetas[top];
      },
      cfg.exec);

  std::vector<std::int64_t> order;
  for (std::int64_t i = 0; i < columns; ++i) {
    if (grid[i].top >= 0) order.push_back(i);
  }
  const std::int64_t cheap_columns = static_cast<std::int64_t>(order.size());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return grid[a].bound > grid[b].bound;
                   });

  OptimizationResult result;
  Point best;
  std::int64_t best_index = -1;
  double min_epsilon = kInf;
  for (std::size_t start = 0; start < order.size(); start += kColumnBatch) {
    if (grid[order[start]].bound < best.objective) break;
    const std::size_t stop = std::min(order.size(), start + kColumnBatch);
    const double incumbent = best.objective;
    ParallelFor(
        static_cast<std::int64_t>(stop - start),
        [&](std::int64_t offset) {
          Column& col = grid[order[start + offset]];
          if (col.bound < incumbent) return;
          // Only thetas whose objective reaches the incumbent matter.
          int first = col.lo;
          while (first <= col.top &&
                 col.clip * (col.k - 1.0) * col.thetas[first] < incumbent) {
            ++first;
          }
          if (first > col.top) return;
          int good = -1;
          if (searcher.PrivacyOk(col.k, col.thetas[col.top], col.clip)) {
            good = col.top;
          } else {
            const double eps_first =
                searcher.Epsilon(col.k, col.thetas[first], col.clip);
            if (first == col.lo) col.min_epsilon = eps_first;
            if (!(eps_first <= cfg.target.epsilon_star())) return;
            good = first;
            int bad = col.top;
            while (bad - good > 1) {
              const int mid = (good + bad) / 2;
              if (searcher.PrivacyOk(col.k, col.thetas[mid], col.clip)) {
                good = mid;
              } else {
                bad = mid;
              }
            }
          }
          const double theta = col.thetas[good];
          col.best = {col.k, theta, col.clip,
                      col.clip * (col.k - 1.0) * theta};
        },
        cfg.exec);
    for (std::size_t i = start; i < stop; ++i) {
      const std::int64_t index = order[i];
      const Column& col = grid[index];
      ++result.grid_columns_searched;
      min_epsilon = std::min(min_epsilon, col.min_epsilon);
      if (col.best.objective > best.objective ||
          (col.best.objective == best.objective && best_index >= 0 &&
           index < best_index)) {
        best = col.best;
        best_index = index;
      }
    }
  }
  if (best_index < 0) {
    if (cheap_columns == 0) {
      return InfeasibleError(absl::StrCat(
          "no grid point satisfies c1, c4 and mgf in any of ", columns,
          " (k, C) columns"));
    }
    return InfeasibleError(absl::StrFormat(
        "c2 violated everywhere: %d of %d (k, C) columns satisfy c1, c4 and "
        "mgf, smallest epsilon found %.6g > target %.6g",
        cheap_columns, columns, min_epsilon, cfg.target.epsilon_star()));
  }
  const Point grid_best = best;

  // Phase B: coordinate-wise golden section on phi(k, C).
  const double k_ratio =
      ks.size() > 1 ? ks[1] / ks[0] : 1.0;
  const double clip_step =
      clips.size() > 1 ? clips[1] - clips[0] : 0.0;
  auto phi = [&](double k, double clip) -> Point {
    const double theta = searcher.ThetaMax(k, clip, kProbeThetaRelTol);
    if (theta <= 0.0) return {k, 0.0, clip, -kInf};
    return {k, theta, clip, clip * (k - 1.0) * theta};
  };
  {
    const Point start = phi(best.k, best.clip);
    if (start.objective > best.objective) best = start;
  }
  for (int round = 0; round < kMaxRefineRounds; ++round) {
    ++result.refinement_rounds;
    const double before = best.objective;
    if (k_ratio > 1.0) {
      const double a = std::log(std::max(cfg.k_min, best.k / k_ratio));
      const double b = std::log(std::min(cfg.k_max, best.k * k_ratio));
      const double clip = best.clip;
      Point found = best;
      GoldenMax(
          [&](double log_k) {
            const Point p = phi(std::exp(log_k), clip);
            if (p.objective > found.objective) found = p;
            return p.objective;
          },
          a, b);
      best = found;
    }
    if (clip_step > 0.0) {
      const double a = std::max(cfg.clip_min, best.clip - clip_step);
      const double b = std::min(cfg.clip_max, best.clip + clip_step);
      const double k = best.k;
      Point found = best;
      GoldenMax(
          [&](double clip) {
            const Point p = phi(k, clip);
            if (p.objective > found.objective) found = p;
            return p.objective;
          },
          a, b);
      best = found;
    }
    if (!(best.objective > before * (1.0 + kRefineRelImprovement))) break;
  }

  {
    const double theta = searcher.ThetaMax(best.k, best.clip, kThetaRelTol);
    const double objective = best.clip * (best.k - 1.0) * theta;
    if (objective > best.objective) best = {best.k, theta, best.clip, objective};
  }
  ConstraintReport report = CheckFeasible(best.k, best.theta, best.clip, cfg);
  if (!report.all_pass()) {
    // The refined point sits on the c2 boundary found with the search
    // accounting; fall back to the verified grid point if exact accounting
    // disagrees.
    best = grid_best;
    report = CheckFeasible(best.k, best.theta, best.clip, cfg);
    if (!report.all_pass()) {
      return absl::InternalError(
          "best grid point failed re-verification with exact accounting");
    }
  }
  result.k_star = best.k;
  result.theta_star = best.theta;
  result.clip_star = best.clip;
  result.achieved_epsilon = report.epsilon;
  result.achieved_distortion = 1.0 / ((best.k - 1.0) * best.theta);
  result.snr = best.clip * (best.k - 1.0) * best.theta;
  result.constraint_report = std::move(report);
  result.accountant_evaluations = searcher.evaluations();
  return result;
}

}  // namespace plrvo
