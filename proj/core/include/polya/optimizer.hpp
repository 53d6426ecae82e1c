#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "polya/exact.hpp"
#include "polya/network.hpp"
#include "polya/urn_state.hpp"

namespace polya {

// Returns f(x) and writes the gradient into `grad` (same size as x).
using SimplexObjective =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

enum class StartVertex {
  kFirstNode,  // all budget on node 1
  kSteepest,   // all budget on the steepest-descent vertex at the uniform point
};

enum class DescentStepRule {
  kClassic,   // move towards the best vertex: x + a (v - x), a in [0, 1]
  kPairwise,  // shift mass from the worst active coordinate to the best one
};

struct DescentConfig {
  std::size_t max_iterations = 5000;
  double line_search_tolerance = 1e-8;
  // Stop once the Frank-Wolfe duality gap falls below this.
  double gap_tolerance = 1e-9;
  // Stop once the best step decreases the objective by no more than this.
  double min_decrease = 1e-15;
  StartVertex start = StartVertex::kSteepest;
  DescentStepRule step_rule = DescentStepRule::kPairwise;
  bool record_trace = false;
};

struct DescentStep {
  std::size_t iteration;
  double objective;
  double gap;
  double step_size;
};

struct DescentResult {
  std::vector<double> x;
  double objective = 0.0;
  // Frank-Wolfe gap grad f(x) . (x - vertex) at the returned iterate; an upper
  // bound on f(x) - min f for convex f.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<DescentStep> trace;
};

/// Conditional-gradient descent over {x >= 0, sum x = budget}.
///
/// Each iteration picks the vertex of the steepest coordinate (lowest index on
/// ties). The classic rule moves towards it; the pairwise rule moves mass onto
/// it from the active coordinate with the largest gradient, which avoids the
/// zig-zag of the classic rule near faces. The step comes from golden-section
/// search with the full step always compared too, so a linear objective lands
/// on its optimal vertex in one step. The objective never increases.
DescentResult frank_wolfe_simplex(const SimplexObjective& objective,
                                  std::size_t dimension, double budget,
                                  const DescentConfig& cfg = {});

// Writes iteration,objective,gap,step_size rows.
void write_trace_csv(std::ostream& os, const std::vector<DescentStep>& trace);

// Minimizes the time-1 infection rate over black initializations with the
// given budget. Requires every super urn to hold red mass.
DescentResult optimize_init(const Network& net, std::span<const double> red,
                            double budget, const DescentConfig& cfg = {});

// Minimizes the one-step expected exposure over the curing step for a fixed
// infection step.
DescentResult optimize_cure_step(const UrnState& state, double budget,
                                 std::span<const double> infection,
                                 const DescentConfig& cfg = {},
                                 const ExposureOptions& exposure = {});

// Maximizes the one-step expected exposure over the infection step for a
// fixed curing step (the infection player's best response).
DescentResult optimize_infection_step(const UrnState& state, double budget,
                                      std::span<const double> curing,
                                      const DescentConfig& cfg = {},
                                      const ExposureOptions& exposure = {});

struct GameConfig {
  std::size_t max_rounds = 200;
  // Accept once the certified exploitability drops below this.
  double exploitability_tolerance = 1e-4;
  DescentConfig best_response{};
  ExposureOptions exposure{};
};

struct GameSolution {
  std::vector<double> curing;     // x*
  std::vector<double> infection;  // y*
  double value = 0.0;             // E(x*, y*)
  // Upper bound on max_y E(x*, y) - min_x E(x, y*), inflated by the
  // best-response duality gaps.
  double exploitability = 0.0;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Zero-sum curing/infection game on the one-step expected exposure.
///
/// Alternating best responses against the running averages of the opponent
/// (fictitious play); every round certifies the averaged pair by computing
/// both best responses, and the pair with the smallest certified
/// exploitability is kept.
GameSolution nash_solve(const UrnState& state, double curing_budget,
                        double infection_budget, const GameConfig& cfg = {});

}  // namespace polya
