#include "meproute/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "meproute/errors.hpp"

namespace meproute {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) throw Error("empty exponent set");
  double max_v = values[0];
  for (double v : values) max_v = std::max(max_v, v);
  if (!std::isfinite(max_v)) return max_v;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max_v);
  return max_v + std::log(sum);
}

std::vector<double> association_probabilities(const ProblemInstance& instance,
                                              std::span<const Point> codevectors, double beta,
                                              const MetricFn& metric, double* max_row_error) {
  const int n = instance.size();
  std::vector<double> assoc(static_cast<std::size_t>(n) * codevectors.size());
  std::vector<double> row(codevectors.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Node& node = instance.nodes[i];
    for (std::size_t j = 0; j < codevectors.size(); ++j) {
      row[j] = -beta * (metric ? metric(node.position, codevectors[j], node.radius)
                               : squared_distance(node.position, codevectors[j]));
    }
    const double norm = log_sum_exp(row);
    double total = 0.0;
    for (std::size_t j = 0; j < codevectors.size(); ++j) {
      const double p = std::exp(row[j] - norm);
      assoc[static_cast<std::size_t>(i) * codevectors.size() + j] = p;
      total += p;
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  if (max_row_error) *max_row_error = worst;
  return assoc;
}

double basic_free_energy(const ProblemInstance& instance, std::span<const Point> codevectors,
                         double beta, const MetricFn& metric) {
  const int n = instance.size();
  std::vector<double> row(codevectors.size());
  double f = 0.0;
  for (int i = 0; i < n; ++i) {
    const Node& node = instance.nodes[i];
    for (std::size_t j = 0; j < codevectors.size(); ++j) {
      row[j] = -beta * (metric ? metric(node.position, codevectors[j], node.radius)
                               : squared_distance(node.position, codevectors[j]));
    }
    f += log_sum_exp(row);
  }
  return -f / beta;
}

SweepResult fixed_point_sweep(AnnealState& state, const ProblemInstance& instance,
                              const VariantRules& rules, double sweep_tol, int max_sweeps,
                              Trace* trace) {
  const int n = state.n();
  SweepResult result;
  double prev_f = 0.0;
  bool have_prev_f = false;
  bool flagged = false;

  while (result.sweeps < max_sweeps) {
    double row_error = 0.0;
    state.assoc =
        association_probabilities(instance, state.codevectors, state.beta, rules.metric,
                                  &row_error);
    const PartitionTable table = rules.partition(state);
    if (trace) {
      trace->max_assoc_row_error = std::max(trace->max_assoc_row_error, row_error);
      trace->max_partition_error =
          std::max(trace->max_partition_error, table.normalization_error);
    }

    double max_disp = 0.0;
    for (int j = 0; j < n; ++j) {
      const Point fresh = rules.update(j, state, table, trace);
      if (!std::isfinite(fresh.x) || !std::isfinite(fresh.y)) {
        std::ostringstream msg;
        msg << "numerical divergence at beta=" << state.beta << " theta=" << state.theta
            << " codevector " << j + 1;
        throw NumericalDivergence(msg.str());
      }
      max_disp = std::max(max_disp, euclidean_distance(fresh, state.codevectors[j]));
      state.codevectors[j] = fresh;  // in-place: later updates see this move
    }
    ++result.sweeps;
    result.max_displacement = max_disp;

    const double f = rules.free_energy(state);
    if (have_prev_f && !flagged && f > prev_f + 1e-6 * std::abs(prev_f)) {
      if (trace) {
        std::ostringstream msg;
        msg << "free energy increased across a sweep at beta=" << state.beta
            << " theta=" << state.theta;
        trace->note(msg.str());
      }
      flagged = true;
    }
    prev_f = f;
    have_prev_f = true;
    state.free_energy = f;

    if (max_disp < sweep_tol) {
      result.converged = true;
      break;
    }
  }

  if (!result.converged && trace) {
    std::ostringstream msg;
    msg << "sweep hit max_sweeps=" << max_sweeps << " at beta=" << state.beta
        << " theta=" << state.theta << " (displacement " << result.max_displacement << ")";
    trace->note(msg.str());
  }
  return result;
}

Schedule Schedule::defaults_for(const ProblemInstance& instance) {
  double variance = instance.coordinate_variance();
  if (!(variance > 0.0)) variance = 1.0;
  const double scale = instance.coordinate_scale();

  Schedule schedule;
  schedule.beta_init = 1.0 / (10.0 * variance);
  schedule.beta_growth = 1.05;
  schedule.beta_max = 1e5 / variance;
  schedule.theta_init = 1.0;
  schedule.theta_decay = 0.95;
  schedule.theta_min = 1e-4;
  schedule.stability_tol = 1e-3;
  schedule.sweep_tol = 1e-8 * scale;
  schedule.max_sweeps = 500;
  schedule.perturbation = 1e-6;
  schedule.rng_seed = 1;
  return schedule;
}

void Schedule::validate() const {
  if (!(beta_init > 0.0) || !(beta_init < beta_max)) throw Error("require 0 < beta_init < beta_max");
  if (!(beta_growth > 1.0)) throw Error("beta_growth must exceed 1");
  if (!(theta_init > 0.0) || !(theta_min > 0.0) || !(theta_min < theta_init)) {
    throw Error("require 0 < theta_min < theta_init");
  }
  if (!(theta_decay > 0.0) || !(theta_decay < 1.0)) throw Error("theta_decay must be in (0,1)");
  if (!(stability_tol > 0.0) || !(sweep_tol > 0.0)) throw Error("tolerances must be positive");
  if (max_sweeps < 1) throw Error("max_sweeps must be positive");
  if (perturbation < 0.0) throw Error("perturbation must be nonnegative");
}

std::string Trace::to_csv() const {
  std::string out = "step,beta,theta,free_energy,sq_tour_length,sweeps\n";
  char line[192];
  for (const TraceStep& s : steps) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%d\n", s.step, s.beta, s.theta,
                  s.free_energy, s.sq_tour_length, s.sweeps);
    out += line;
  }
  return out;
}

namespace {

// Deterministic uniform draws; resolution 2^-53.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

namespace {

AnnealResult anneal_single(const ProblemInstance& instance, const Schedule& schedule,
                           const VariantRules& rules, const SolverOptions& options) {
  instance.validate();
  schedule.validate();

  const int n = instance.size();
  const double scale = instance.coordinate_scale();
  std::mt19937_64 rng(schedule.rng_seed);

  AnnealState state;
  state.beta = schedule.beta_init;
  state.theta = schedule.theta_init;
  state.codevectors.resize(n);
  const Point center = instance.centroid();
  const double ring = 1e-3 * scale;
  const double phase = 2.0 * M_PI * unit_draw(rng);
  for (int j = 0; j < n; ++j) {
    const double angle = phase + 2.0 * M_PI * j / n;
    state.codevectors[j] = {center.x + ring * std::cos(angle),
                            center.y + ring * std::sin(angle)};
  }

  AnnealResult out;
  Trace& trace = out.trace;
  int step = 0;
  auto sweep_and_record = [&]() {
    const SweepResult sr =
        fixed_point_sweep(state, instance, rules, schedule.sweep_tol, schedule.max_sweeps, &trace);
    TraceStep ts;
    ts.step = step++;
    ts.beta = state.beta;
    ts.theta = state.theta;
    ts.free_energy = state.free_energy;
    ts.sq_tour_length = rules.chain_sq_length(state.codevectors);
    ts.sweeps = sr.sweeps;
    ts.converged = sr.converged;
    if (options.record_codevectors) ts.codevectors = state.codevectors;
    trace.steps.push_back(std::move(ts));
  };

  sweep_and_record();
  double prev_length = trace.steps.back().sq_tour_length;
  while (!(state.beta >= schedule.beta_max && state.theta <= schedule.theta_min)) {
    // Equilibrate at this beta: while the squared tour length keeps moving
    // between steps, decay theta (down to its floor) and re-sweep. beta never
    // grows through an unfinished reorganization. The stability reference is
    // the instance scale, so collapsed-chain float noise reads as stable.
    for (int hold = 0;; ++hold) {
      const double length = trace.steps.back().sq_tour_length;
      const bool stable =
          std::abs(length - prev_length) <= schedule.stability_tol * scale * scale;
      prev_length = length;
      if (stable) break;
      if (hold >= 10 * schedule.max_sweeps) {
        trace.note("tour length refused to settle; forcing the schedule on");
        break;
      }
      if (state.theta > schedule.theta_min) state.theta *= schedule.theta_decay;
      sweep_and_record();
    }
    if (state.beta < schedule.beta_max) {
      state.beta *= schedule.beta_growth;
      if (options.theta_reset) state.theta = schedule.theta_init;
      for (Point& y : state.codevectors) {
        const double ux = 2.0 * unit_draw(rng) - 1.0;
        const double uy = 2.0 * unit_draw(rng) - 1.0;
        y.x += schedule.perturbation * scale * ux;
        y.y += schedule.perturbation * scale * uy;
      }
      sweep_and_record();
    } else if (state.theta > schedule.theta_min) {
      state.theta *= schedule.theta_decay;
      sweep_and_record();
    }
  }

  state.assoc = association_probabilities(instance, state.codevectors, state.beta, rules.metric);
  const PartitionTable table = rules.partition(state);
  out.solution = extract_solution(state, instance, table, &trace);
  return out;
}

}  // namespace

AnnealResult anneal(const ProblemInstance& instance, const Schedule& schedule,
                    const VariantRules& rules, const SolverOptions& options) {
  if (schedule.restarts <= 1) return anneal_single(instance, schedule, rules, options);
  AnnealResult best;
  bool have_best = false;
  for (int r = 0; r < schedule.restarts; ++r) {
    Schedule restarted = schedule;
    restarted.rng_seed = schedule.rng_seed + static_cast<std::uint64_t>(r);
    AnnealResult candidate = anneal_single(instance, restarted, rules, options);
    if (!have_best || candidate.solution.squared_length < best.solution.squared_length) {
      best = std::move(candidate);
      best.trace.note("selected restart " + std::to_string(r + 1) + " of " +
                      std::to_string(schedule.restarts));
      have_best = true;
    }
  }
  return best;
}

AnnealResult anneal(const ProblemInstance& instance, const Schedule& schedule,
                    const SolverOptions& options) {
  return anneal(instance, schedule, make_rules(instance, options), options);
}

}  // namespace meproute
