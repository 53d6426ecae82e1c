#include "polya/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "polya/error.hpp"
#include "polya/format.hpp"

namespace polya {
namespace {

std::size_t argmin_index(std::span<const double> g) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (g[j] < g[best]) best = j;
  }
  return best;
}

struct LineMinimum {
  double alpha;
  double value;
};

// Golden-section search for a convex phi on [0, 1].
template <typename Phi>
LineMinimum golden_section(Phi&& phi, double tolerance) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.0, b = 1.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi(d);
    }
  }
  return fc <= fd ? LineMinimum{c, fc} : LineMinimum{d, fd};
}

}  // namespace

DescentResult frank_wolfe_simplex(const SimplexObjective& objective,
                                  std::size_t dimension, double budget,
                                  const DescentConfig& cfg) {
  if (dimension == 0) throw Error("frank_wolfe_simplex: empty domain");
  if (!(budget >= 0.0)) throw Error("frank_wolfe_simplex: negative budget");
  if (cfg.max_iterations == 0 || !(cfg.line_search_tolerance > 0.0) ||
      !(cfg.gap_tolerance > 0.0) || !(cfg.min_decrease > 0.0)) {
    throw Error("frank_wolfe_simplex: iteration cap and tolerances must be positive");
  }

  DescentResult result;
  std::vector<double> grad(dimension), scratch_grad(dimension);
  std::vector<double>& x = result.x;
  x.assign(dimension, 0.0);

  if (budget == 0.0) {
    result.objective = objective(x, grad);
    result.converged = true;
    return result;
  }

  std::size_t start = 0;
  if (cfg.start == StartVertex::kSteepest) {
    std::vector<double> uniform(dimension, budget / static_cast<double>(dimension));
    objective(uniform, grad);
    start = argmin_index(grad);
  }
  x[start] = budget;
  double f = objective(x, grad);

  std::vector<double> trial(dimension);
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    const std::size_t i = argmin_index(grad);
    double gap = -budget * grad[i];
    for (std::size_t j = 0; j < dimension; ++j) gap += grad[j] * x[j];
    result.gap = gap;
    result.iterations = k - 1;
    if (gap <= cfg.gap_tolerance) {
      result.converged = true;
      break;
    }

    // Pairwise: alpha is the fraction of x[away] moved onto i.
    std::size_t away = i;
    if (cfg.step_rule == DescentStepRule::kPairwise) {
      for (std::size_t j = 0; j < dimension; ++j) {
        if (x[j] > 0.0 && (away == i || grad[j] > grad[away])) away = j;
      }
    }
    auto point = [&](double alpha) {
      if (away != i) {
        trial = x;
        const double moved = alpha * x[away];
        trial[away] = alpha == 1.0 ? 0.0 : x[away] - moved;
        trial[i] += moved;
        return;
      }
      for (std::size_t j = 0; j < dimension; ++j) {
        trial[j] = (1.0 - alpha) * x[j] + (j == i ? alpha * budget : 0.0);
      }
    };
    auto phi = [&](double alpha) {
      point(alpha);
      return objective(trial, scratch_grad);
    };
    LineMinimum best = golden_section(phi, cfg.line_search_tolerance);
    if (const double f1 = phi(1.0); f1 <= best.value) best = {1.0, f1};

    if (!(best.value < f - cfg.min_decrease)) {
      // No representable progress along the Frank-Wolfe direction.
      result.converged = true;
      break;
    }
    point(best.alpha);
    x.swap(trial);
    f = objective(x, grad);
    if (cfg.record_trace) result.trace.push_back({k, f, gap, best.alpha});
    result.iterations = k;
  }

  // Gap at the returned iterate.
  const std::size_t i = argmin_index(grad);
  double gap = -budget * grad[i];
  for (std::size_t j = 0; j < dimension; ++j) gap += grad[j] * x[j];
  result.gap = std::max(gap, 0.0);
  result.objective = f;
  return result;
}

void write_trace_csv(std::ostream& os, const std::vector<DescentStep>& trace) {
  os << "iteration,objective,gap,step_size\n";
  for (const auto& s : trace) {
    os << s.iteration << ',' << format_double(s.objective) << ','
       << format_double(s.gap) << ',' << format_double(s.step_size) << '\n';
  }
}

DescentResult optimize_init(const Network& net, std::span<const double> red,
                            double budget, const DescentConfig& cfg) {
  // Validates the red-mass precondition up front.
  std::vector<double> probe(net.size(), 0.0);
  infection_rate_time1(net, red, probe);
  auto f = [&](std::span<const double> black, std::span<double> grad) {
    auto vg = infection_rate_time1(net, red, black);
    std::copy(vg.gradient.begin(), vg.gradient.end(), grad.begin());
    return vg.value;
  };
  return frank_wolfe_simplex(f, net.size(), budget, cfg);
}

DescentResult optimize_cure_step(const UrnState& state, double budget,
                                 std::span<const double> infection,
                                 const DescentConfig& cfg,
                                 const ExposureOptions& exposure) {
  auto f = [&](std::span<const double> x, std::span<double> grad) {
    auto r = expected_exposure(state, x, infection, exposure);
    std::copy(r.grad_curing.begin(), r.grad_curing.end(), grad.begin());
    return r.value;
  };
  return frank_wolfe_simplex(f, state.size(), budget, cfg);
}

DescentResult optimize_infection_step(const UrnState& state, double budget,
                                      std::span<const double> curing,
                                      const DescentConfig& cfg,
                                      const ExposureOptions& exposure) {
  auto f = [&](std::span<const double> y, std::span<double> grad) {
    auto r = expected_exposure(state, curing, y, exposure);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = -r.grad_infection[j];
    return -r.value;
  };
  DescentResult r = frank_wolfe_simplex(f, state.size(), budget, cfg);
  r.objective = -r.objective;
  for (auto& s : r.trace) s.objective = -s.objective;
  return r;
}

GameSolution nash_solve(const UrnState& state, double curing_budget,
                        double infection_budget, const GameConfig& cfg) {
  const std::size_t n = state.size();
  if (!(curing_budget >= 0.0) || !(infection_budget >= 0.0)) {
    throw Error("nash_solve: budgets must be nonnegative");
  }
  auto value_at = [&](std::span<const double> x, std::span<const double> y) {
    return expected_exposure(state, x, y, cfg.exposure).value;
  };

  std::vector<double> avg_x(n, 0.0);
  std::vector<double> avg_y(n, infection_budget / static_cast<double>(n));
  GameSolution best;
  best.exploitability = std::numeric_limits<double>::infinity();

  // x_{k} = BR(avg_y_{k-1}); carried across rounds since it also certifies
  // the lower side of the previous round.
  DescentResult br_x = optimize_cure_step(state, curing_budget, avg_y,
                                          cfg.best_response, cfg.exposure);
  for (std::size_t k = 1; k <= cfg.max_rounds; ++k) {
    const double w = 1.0 / static_cast<double>(k);
    for (std::size_t j = 0; j < n; ++j) {
      avg_x[j] += w * (br_x.x[j] - avg_x[j]);
    }
    if (k == 1) avg_y.assign(n, 0.0);

    DescentResult br_y = optimize_infection_step(
        state, infection_budget, avg_x, cfg.best_response, cfg.exposure);
    for (std::size_t j = 0; j < n; ++j) {
      avg_y[j] += w * (br_y.x[j] - avg_y[j]);
    }
    br_x = optimize_cure_step(state, curing_budget, avg_y, cfg.best_response,
                              cfg.exposure);

    // Upper: max_y E(avg_x, y) <= E(avg_x, br_y) + gap_y.
    // Lower: min_x E(x, avg_y) >= E(br_x, avg_y) - gap_x.
    const double upper = br_y.objective + br_y.gap;
    const double lower = br_x.objective - br_x.gap;
    const double eps = std::max(upper - lower, 0.0);
    if (eps < best.exploitability) {
      best.curing = avg_x;
      best.infection = avg_y;
      best.exploitability = eps;
    }
    best.rounds = k;
    if (best.exploitability < cfg.exploitability_tolerance) {
      best.converged = true;
      break;
    }
  }
  best.value = value_at(best.curing, best.infection);
  return best;
}

}  // namespace polya
