#include "hhc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hhc {

namespace {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const bool le = a.f1 <= b.f1 && a.f2 <= b.f2 && a.f3 <= b.f3;
  const bool lt = a.f1 < b.f1 || a.f2 < b.f2 || a.f3 < b.f3;
  return le && lt;
}

struct Search {
  const Instance& inst;
  VariantId variant;
  DecodeParams params;
  OracleResult result;
  double best_value = std::numeric_limits<double>::infinity();

  void consider(const Chromosome& ch) {
    std::vector<int> windows(inst.n(), 0);
    enumerate_windows(ch, 0, windows);
  }

  void enumerate_windows(const Chromosome& ch, int patient, std::vector<int>& windows) {
    if (patient == inst.n()) {
      evaluate(ch, windows);
      return;
    }
    const int count = static_cast<int>(inst.patients[patient].windows.size());
    for (int w = 0; w < count; ++w) {
      windows[patient] = w;
      enumerate_windows(ch, patient + 1, windows);
    }
  }

  void evaluate(const Chromosome& ch, const std::vector<int>& windows) {
    DecodeParams p = params;
    p.forced_window = windows;
    const auto sched = decode(inst, ch, variant, p);
    if (!sched.feasible) return;
    if (variant == VariantId::MULTIOBJ) {
      const auto v = objective_vector(sched);
      for (const auto& other : result.pareto_vectors)
        if (dominates(other, v) ||
            (other.f1 == v.f1 && other.f2 == v.f2 && other.f3 == v.f3))
          return;
      std::vector<ObjectiveVector> kept;
      std::vector<Chromosome> witnesses;
      for (std::size_t i = 0; i < result.pareto_vectors.size(); ++i)
        if (!dominates(v, result.pareto_vectors[i])) {
          kept.push_back(result.pareto_vectors[i]);
          witnesses.push_back(result.pareto_witnesses[i]);
        }
      kept.push_back(v);
      witnesses.push_back(ch);
      result.pareto_vectors = std::move(kept);
      result.pareto_witnesses = std::move(witnesses);
      result.feasible = true;
      return;
    }
    const double z = objective(sched, variant, params);
    if (z < best_value - 1e-9) {
      best_value = z;
      result.best = ch;
      result.value = z;
      result.feasible = true;
    }
  }
};

void assign_rec(const Instance& inst, Chromosome& ch, std::size_t pos, Search& search) {
  if (pos == ch.size()) {
    search.consider(ch);
    return;
  }
  const auto& g = ch.genes[pos];
  for (int k = 1; k <= inst.c(); ++k) {
    if (!inst.caregiver(k).skilled(g.service)) continue;
    bool dup = false;
    for (std::size_t i = 0; i < pos; ++i)
      if (ch.genes[i].patient == g.patient && ch.assignment[i] == k) dup = true;
    if (dup) continue;
    ch.assignment[pos] = k;
    assign_rec(inst, ch, pos + 1, search);
  }
}

}  // namespace

OracleResult brute_force_solve(const Instance& inst, VariantId variant, const OracleLimits& limits,
                               const DecodeParams& params) {
  const auto genes = demanded_pairs(inst);
  if (static_cast<int>(genes.size()) > limits.max_genes)
    throw std::invalid_argument("oracle: too many genes");
  if (inst.c() > limits.max_caregivers)
    throw std::invalid_argument("oracle: too many caregivers");
  for (const auto& p : inst.patients)
    if (static_cast<int>(p.windows.size()) > limits.max_windows)
      throw std::invalid_argument("oracle: too many windows");

  Search search{inst, variant, params, {}, std::numeric_limits<double>::infinity()};

  std::vector<std::size_t> order(genes.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    Chromosome ch;
    for (std::size_t i : order) ch.genes.push_back(genes[i]);
    ch.assignment.assign(genes.size(), 0);
    assign_rec(inst, ch, 0, search);
  } while (std::next_permutation(order.begin(), order.end()));

  return search.result;
}

ReferenceRecourse reference_expected_recourse(const Instance& inst, const Chromosome& ch,
                                              RecourseKind kind, const StochasticConfig& config,
                                              std::uint64_t replications) {
  double mean = 0, m2 = 0;
  for (std::uint64_t r = 1; r <= replications; ++r) {
    const auto sc = sample_scenario(inst, config, r);
    double value = 0;
    if (kind == RecourseKind::Penalty) {
      const auto out = simulate_penalty_recourse(inst, ch, sc);
      value = config.alpha * out.tardiness + config.gamma * out.overtime;
    } else {
      value = config.alpha * simulate_skip_recourse(inst, ch, sc).skipped;
    }
    const double delta = value - mean;
    mean += delta / static_cast<double>(r);
    m2 += delta * (value - mean);
  }
  ReferenceRecourse ref;
  ref.mean = mean;
  ref.replications = replications;
  if (replications > 1)
    ref.standard_error =
        std::sqrt(m2 / static_cast<double>(replications - 1) / static_cast<double>(replications));
  return ref;
}

}  // namespace hhc
