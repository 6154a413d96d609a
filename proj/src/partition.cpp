#include "meproute/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "meproute/engine.hpp"
#include "meproute/errors.hpp"

namespace meproute {

namespace {

void check_salesmen(int m, int available_breaks, int wanted_breaks) {
  if (m < 2) throw Error("partition requires at least two salesmen");
  if (wanted_breaks > available_breaks) throw Error("too many salesmen");
  if (m > 3) throw Error("partition enumeration supports m <= 3");
}

// Normalizes log-weights in place into probabilities; returns the log normalizer.
double softmax_in_place(std::vector<double>& w) {
  const double norm = log_sum_exp(w);
  for (double& v : w) v = std::exp(v - norm);
  return norm;
}

double mass_error(const std::vector<double>& prob) {
  const double total = std::accumulate(prob.begin(), prob.end(), 0.0);
  return std::abs(total - 1.0);
}

}  // namespace

double PartitionTable::total_mass() const {
  if (ordered_pairs) return std::accumulate(pair_prob.begin(), pair_prob.end(), 0.0);
  return std::accumulate(prob.begin(), prob.end(), 0.0);
}

std::vector<int> PartitionTable::argmax_breaks() const {
  if (empty()) return {};
  if (ordered_pairs) {
    // Combined unordered mass: 2q(k,l) off the diagonal, q(k,k) on it.
    int best_k = 0, best_l = 0;
    double best = -1.0;
    for (int k = 0; k < n; ++k) {
      for (int l = k; l < n; ++l) {
        const double mass = k == l ? q(k, k) : q(k, l) + q(l, k);
        if (mass > best) {
          best = mass;
          best_k = k;
          best_l = l;
        }
      }
    }
    return {best_k, best_l};
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s < prob.size(); ++s) {
    if (prob[s] > prob[best]) best = s;
  }
  return states[best];
}

PartitionTable nonreturning_partition(std::span<const Point> codevectors, double beta, double theta,
                                      int m) {
  const int n = static_cast<int>(codevectors.size());
  check_salesmen(m, n - 1, m - 1);

  PartitionTable table;
  table.variant = Variant::NonReturningMTSP;
  table.m = m;
  table.n = n;

  std::vector<double> link(n - 1);
  for (int l = 0; l + 1 < n; ++l) link[l] = squared_distance(codevectors[l], codevectors[l + 1]);

  std::vector<double> logw;
  if (m == 2) {
    for (int k = 0; k + 1 < n; ++k) {
      table.states.push_back({k});
      logw.push_back(beta * theta * link[k]);
    }
  } else {
    for (int a = 0; a + 1 < n; ++a) {
      for (int b = a + 1; b + 1 < n; ++b) {
        table.states.push_back({a, b});
        logw.push_back(beta * theta * (link[a] + link[b]));
      }
    }
  }

  table.log_norm = softmax_in_place(logw);
  table.prob = std::move(logw);
  table.normalization_error = mass_error(table.prob);
  table.marginal.assign(n, 0.0);
  for (std::size_t s = 0; s < table.states.size(); ++s) {
    for (int l : table.states[s]) table.marginal[l] += table.prob[s];
  }
  return table;
}

PartitionTable returning_partition(std::span<const Point> codevectors, double beta, double theta,
                                   int m, bool strict_printed_form) {
  const int n = static_cast<int>(codevectors.size());
  check_salesmen(m, n, m);

  PartitionTable table;
  table.variant = Variant::ReturningMTSP;
  table.m = m;
  table.n = n;

  std::vector<double> link(n);
  for (int l = 0; l < n; ++l) link[l] = squared_distance(codevectors[l], codevectors[(l + 1) % n]);
  auto added = [&](int from, int to) {
    return squared_distance(codevectors[from], codevectors[(to + 1) % n]);
  };

  if (m == 2) {
    table.ordered_pairs = true;
    std::vector<double> logw(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double cost_k = added(k, l) - link[k];
        const double cost_l = added(l, k) - link[l];
        if (strict_printed_form) {
          const double terms[2] = {-beta * theta * cost_k, -beta * theta * cost_l};
          logw[static_cast<std::size_t>(k) * n + l] = log_sum_exp(terms);
        } else {
          logw[static_cast<std::size_t>(k) * n + l] = -beta * theta * (cost_k + cost_l);
        }
      }
    }
    table.log_norm = softmax_in_place(logw);
    table.pair_prob = std::move(logw);
    table.normalization_error = mass_error(table.pair_prob);
    table.pair_row.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      double row = 0.0;
      for (int l = 0; l < n; ++l) row += table.q(k, l);
      table.pair_row[k] = row;
    }
    return table;
  }

  // m == 3: sorted distinct triples; in cyclic sorted order each break
  // reconnects to the successor of the previous break.
  std::vector<double> logw;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        table.states.push_back({a, b, c});
        const double costs[3] = {added(a, c) - link[a], added(b, a) - link[b],
                                 added(c, b) - link[c]};
        if (strict_printed_form) {
          const double terms[3] = {-beta * theta * costs[0], -beta * theta * costs[1],
                                   -beta * theta * costs[2]};
          logw.push_back(log_sum_exp(terms));
        } else {
          logw.push_back(-beta * theta * (costs[0] + costs[1] + costs[2]));
        }
      }
    }
  }
  table.log_norm = softmax_in_place(logw);
  table.prob = std::move(logw);
  table.normalization_error = mass_error(table.prob);
  table.marginal.assign(n, 0.0);
  table.prev_joint.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (std::size_t s = 0; s < table.states.size(); ++s) {
    const auto& st = table.states[s];
    const double p = table.prob[s];
    for (int i = 0; i < 3; ++i) {
      const int here = st[i];
      const int prev = st[(i + 2) % 3];
      table.marginal[here] += p;
      table.prev_joint[static_cast<std::size_t>(here) * n + prev] += p;
    }
  }
  return table;
}

PartitionTable depot_partition(std::span<const Point> codevectors, Point depot, double beta,
                               double theta, int m, double eta) {
  const int n = static_cast<int>(codevectors.size());
  check_salesmen(m, n - 1, m - 1);
  if (eta != 0.0 && m != 2) throw Error("eta balancing is defined for two salesmen");

  PartitionTable table;
  table.variant = Variant::SingleDepotReturningMTSP;
  table.m = m;
  table.n = n;

  std::vector<double> link(n - 1), to_depot(n);
  for (int l = 0; l + 1 < n; ++l) link[l] = squared_distance(codevectors[l], codevectors[l + 1]);
  for (int j = 0; j < n; ++j) to_depot[j] = squared_distance(codevectors[j], depot);

  std::vector<double> logw;
  if (m == 2) {
    // prefix[t] = sum of the first t link lengths.
    std::vector<double> prefix(n, 0.0);
    for (int l = 0; l + 1 < n; ++l) prefix[l + 1] = prefix[l] + link[l];
    const double total = prefix[n - 1];
    for (int k = 0; k + 1 < n; ++k) {
      table.states.push_back({k});
      double cost = -link[k] + (1.0 + eta) * to_depot[k] + (1.0 - eta) * to_depot[k + 1];
      cost += eta * (prefix[k] - (total - prefix[k + 1]));
      logw.push_back(-beta * theta * cost);
    }
  } else {
    for (int a = 0; a + 1 < n; ++a) {
      for (int b = a + 1; b + 1 < n; ++b) {
        table.states.push_back({a, b});
        const double cost = (-link[a] + to_depot[a] + to_depot[a + 1]) +
                            (-link[b] + to_depot[b] + to_depot[b + 1]);
        logw.push_back(-beta * theta * cost);
      }
    }
  }

  table.log_norm = softmax_in_place(logw);
  table.prob = std::move(logw);
  table.normalization_error = mass_error(table.prob);
  table.marginal.assign(n, 0.0);
  for (std::size_t s = 0; s < table.states.size(); ++s) {
    for (int l : table.states[s]) table.marginal[l] += table.prob[s];
  }
  return table;
}

}  // namespace meproute
