#include "hhc/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hhc/io.hpp"
#include "json.hpp"

namespace hhc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 3> as_array(const ObjectiveVector& v) { return {v.f1, v.f2, v.f3}; }

bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const auto x = as_array(a), y = as_array(b);
  bool le = true, lt = false;
  for (int i = 0; i < 3; ++i) {
    if (x[i] > y[i]) le = false;
    if (x[i] < y[i]) lt = true;
  }
  return le && lt;
}

}  // namespace

Evaluated evaluate_multiobj(const Instance& inst, const Chromosome& ch,
                            const DecodeParams& params) {
  const auto s = decode(inst, ch, VariantId::MULTIOBJ, params);
  Evaluated e;
  e.f = objective_vector(s);
  e.penalty = s.penalty + (s.sync_converged ? 0 : 1e6);
  e.feasible = s.feasible;
  return e;
}

bool constrained_dominates(const Evaluated& a, const Evaluated& b) {
  if (a.feasible && !b.feasible) return true;
  if (!a.feasible && b.feasible) return false;
  if (!a.feasible && !b.feasible) return a.penalty < b.penalty;
  return pareto_dominates(a.f, b.f);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Evaluated>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (constrained_dominates(pts[p], pts[q]))
        dominated[p].push_back(q);
      else if (constrained_dominates(pts[q], pts[p]))
        ++count[p];
    }
    if (count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t p : current)
      for (std::size_t q : dominated[p])
        if (--count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<Evaluated>& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  for (int obj = 0; obj < 3; ++obj) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const auto key = [&](std::size_t i) { return as_array(front[i].f)[obj]; };
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    const double range = key(idx.back()) - key(idx.front());
    dist[idx.front()] = kInf;
    dist[idx.back()] = kInf;
    if (range <= 0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (dist[idx[i]] != kInf)
        dist[idx[i]] += (key(idx[i + 1]) - key(idx[i - 1])) / (2 * range);
  }
  return dist;
}

namespace {

struct Pool {
  std::vector<Chromosome> chromosomes;
  std::vector<Evaluated> values;
};

void dedupe_front(Front& front) {
  std::vector<FrontMember> out;
  for (auto& m : front.members) {
    bool dup = false;
    for (const auto& kept : out)
      if (kept.chromosome == m.chromosome) dup = true;
    if (!dup) out.push_back(std::move(m));
  }
  front.members = std::move(out);
}

void prune_to_capacity(Front& front) {
  if (!front.capacity) return;
  while (front.members.size() > *front.capacity) {
    std::vector<Evaluated> pts;
    for (const auto& m : front.members) pts.push_back({m.f, m.penalty, m.feasible});
    const auto dist = crowding_distance(pts);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < dist.size(); ++i)
      if (dist[i] < dist[worst]) worst = i;
    front.members.erase(front.members.begin() + static_cast<long>(worst));
  }
}

void archive_insert(Front& ep, FrontMember member) {
  const Evaluated cand{member.f, member.penalty, member.feasible};
  for (const auto& m : ep.members) {
    const Evaluated e{m.f, m.penalty, m.feasible};
    if (constrained_dominates(e, cand)) return;
    if (m.chromosome == member.chromosome && as_array(m.f) == as_array(member.f)) return;
  }
  std::vector<FrontMember> kept;
  for (auto& m : ep.members) {
    const Evaluated e{m.f, m.penalty, m.feasible};
    if (!constrained_dominates(cand, e)) kept.push_back(std::move(m));
  }
  kept.push_back(std::move(member));
  ep.members = std::move(kept);
}

}  // namespace

Front nsga2_solve(const Instance& inst, const MoeaParams& params, Rng& rng) {
  const int N = std::max(4, params.population > 0 ? params.population : 10 * inst.n());
  const int budget = params.evaluations > 0 ? params.evaluations : 50 * N;
  const int generations = std::max(1, budget / N);
  const std::uint64_t base = rng.next_u64();

  Pool pop;
  for (int i = 0; i < N; ++i) {
    auto s = Rng::stream(base, "nsga2-init", static_cast<std::uint64_t>(i));
    pop.chromosomes.push_back(random_chromosome(inst, s));
    pop.values.push_back(evaluate_multiobj(inst, pop.chromosomes.back(), params.decode));
  }

  std::vector<int> rank(N, 0);
  std::vector<double> crowd(N, 0);
  const auto recompute_order = [&](const Pool& p, std::vector<int>& ranks,
                                   std::vector<double>& crowding) {
    ranks.assign(p.values.size(), 0);
    crowding.assign(p.values.size(), 0);
    const auto fronts = fast_nondominated_sort(p.values);
    for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
      std::vector<Evaluated> sub;
      for (std::size_t i : fronts[fi]) sub.push_back(p.values[i]);
      const auto d = crowding_distance(sub);
      for (std::size_t j = 0; j < fronts[fi].size(); ++j) {
        ranks[fronts[fi][j]] = static_cast<int>(fi);
        crowding[fronts[fi][j]] = d[j];
      }
    }
  };
  recompute_order(pop, rank, crowd);

  for (int gen = 1; gen <= generations; ++gen) {
    const auto crowded_better = [&](std::size_t a, std::size_t b) {
      if (rank[a] != rank[b]) return rank[a] < rank[b];
      return crowd[a] > crowd[b];
    };
    Pool merged = pop;
    for (int slot = 0; slot < N; ++slot) {
      auto s = Rng::stream(base, "nsga2-slot",
                           (static_cast<std::uint64_t>(gen) << 32) |
                               static_cast<std::uint64_t>(slot));
      const auto pa = tournament_select(pop.chromosomes.size(), 2, crowded_better, s);
      const auto pb = tournament_select(pop.chromosomes.size(), 2, crowded_better, s);
      Chromosome kid = s.bernoulli(params.pc_nsga2)
                           ? uox_crossover(pop.chromosomes[pa], pop.chromosomes[pb], s)
                           : pop.chromosomes[pa];
      kid = repair(inst, mutate(inst, kid, s, params.pm), s);
      merged.values.push_back(evaluate_multiobj(inst, kid, params.decode));
      merged.chromosomes.push_back(std::move(kid));
    }

    const auto fronts = fast_nondominated_sort(merged.values);
    Pool next;
    for (const auto& front : fronts) {
      if (next.chromosomes.size() + front.size() <= static_cast<std::size_t>(N)) {
        for (std::size_t i : front) {
          next.chromosomes.push_back(merged.chromosomes[i]);
          next.values.push_back(merged.values[i]);
        }
      } else {
        std::vector<Evaluated> sub;
        for (std::size_t i : front) sub.push_back(merged.values[i]);
        const auto d = crowding_distance(sub);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
        for (std::size_t j : order) {
          if (next.chromosomes.size() >= static_cast<std::size_t>(N)) break;
          next.chromosomes.push_back(merged.chromosomes[front[j]]);
          next.values.push_back(merged.values[front[j]]);
        }
      }
      if (next.chromosomes.size() >= static_cast<std::size_t>(N)) break;
    }
    pop = std::move(next);
    recompute_order(pop, rank, crowd);
  }

  Front result;
  const auto fronts = fast_nondominated_sort(pop.values);
  if (!fronts.empty())
    for (std::size_t i : fronts[0])
      result.members.push_back({pop.chromosomes[i], pop.values[i].f, pop.values[i].penalty,
                                pop.values[i].feasible});
  dedupe_front(result);
  return result;
}

std::vector<WeightVector> weight_vectors(int count, int objectives, int neighborhood) {
  if (objectives != 3) throw std::invalid_argument("three objectives supported");
  if (count < objectives) throw std::invalid_argument("need at least m weight vectors");

  // Smallest simplex-lattice granularity H with C(H+2, 2) >= count.
  int H = 1;
  while ((H + 1) * (H + 2) / 2 < count) ++H;
  std::vector<std::array<double, 3>> lattice;
  for (int i = H; i >= 0; --i)
    for (int j = H - i; j >= 0; --j)
      lattice.push_back({double(i) / H, double(j) / H, double(H - i - j) / H});
  lattice.resize(count);

  std::vector<WeightVector> out(count);
  for (int i = 0; i < count; ++i) out[i].lambda = lattice[i];
  const int T = std::clamp(neighborhood, 1, count);
  for (int i = 0; i < count; ++i) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    const auto d2 = [&](std::size_t j) {
      double sum = 0;
      for (int k = 0; k < 3; ++k) {
        const double diff = out[i].lambda[k] - out[j].lambda[k];
        sum += diff * diff;
      }
      return sum;
    };
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return d2(a) < d2(b); });
    out[i].neighbors.assign(idx.begin(), idx.begin() + T);
  }
  return out;
}

double tchebycheff(const ObjectiveVector& f, const std::array<double, 3>& lambda,
                   const ObjectiveVector& z) {
  const auto fv = as_array(f), zv = as_array(z);
  double best = 0;
  for (int i = 0; i < 3; ++i) best = std::max(best, lambda[i] * std::abs(fv[i] - zv[i]));
  return best;
}

Front moead_solve(const Instance& inst, const MoeaParams& params,
                  const std::vector<Chromosome>* initial, Rng& rng) {
  const int N = std::max(3, params.population > 0 ? params.population : 10 * inst.n());
  const int T = params.neighborhood > 0 ? params.neighborhood : std::max(2, inst.n());
  const int budget = params.evaluations > 0 ? params.evaluations : 50 * N;
  const std::uint64_t base = rng.next_u64();

  const auto weights = weight_vectors(N, 3, T);

  std::vector<Chromosome> pop;
  std::vector<Evaluated> values;
  for (int i = 0; i < N; ++i) {
    auto s = Rng::stream(base, "moead-init", static_cast<std::uint64_t>(i));
    if (initial && i < static_cast<int>(initial->size()))
      pop.push_back((*initial)[i]);
    else
      pop.push_back(random_chromosome(inst, s));
    values.push_back(evaluate_multiobj(inst, pop.back(), params.decode));
  }

  ObjectiveVector z{kInf, kInf, kInf};
  const auto lower = [&](const ObjectiveVector& f) {
    z.f1 = std::min(z.f1, f.f1);
    z.f2 = std::min(z.f2, f.f2);
    z.f3 = std::min(z.f3, f.f3);
  };
  for (const auto& v : values) lower(v.f);

  // EP stays unbounded during the run; dominated members are evicted on
  // insertion and the capacity prune happens once at the end.
  Front ep;
  for (std::size_t i = 0; i < pop.size(); ++i)
    archive_insert(ep, {pop[i], values[i].f, values[i].penalty, values[i].feasible});

  // Offspring preference toward a sub-problem holder: feasibility first,
  // then penalty among infeasibles, then the Tchebycheff value.
  const auto improves = [&](const Evaluated& cand, const Evaluated& cur,
                            const std::array<double, 3>& lambda) {
    if (cand.feasible != cur.feasible) return cand.feasible;
    if (!cand.feasible) return cand.penalty < cur.penalty;
    return tchebycheff(cand.f, lambda, z) < tchebycheff(cur.f, lambda, z);
  };

  int evaluations = 0;
  std::uint64_t step = 0;
  while (evaluations < budget) {
    for (int i = 0; i < N && evaluations < budget; ++i) {
      auto s = Rng::stream(base, "moead-step", step++);
      const auto& B = weights[i].neighbors;
      const auto pa = B[s.uniform_index(B.size())];
      const auto pb = B[s.uniform_index(B.size())];
      Chromosome kid = s.bernoulli(params.pc_moead) ? uox_crossover(pop[pa], pop[pb], s)
                                                    : pop[pa];
      kid = repair(inst, mutate(inst, kid, s, params.pm), s);
      const auto value = evaluate_multiobj(inst, kid, params.decode);
      ++evaluations;
      lower(value.f);
      for (std::size_t j : B)
        if (improves(value, values[j], weights[j].lambda)) {
          pop[j] = kid;
          values[j] = value;
        }
      archive_insert(ep, {kid, value.f, value.penalty, value.feasible});
    }
  }

  ep.capacity = params.archive_capacity > 0 ? params.archive_capacity
                                            : static_cast<std::size_t>(N);
  dedupe_front(ep);
  prune_to_capacity(ep);
  return ep;
}

Front hybrid_solve(const Instance& inst, const MoeaParams& params, Rng& rng) {
  const auto seeds = nsga2_solve(inst, params, rng);
  std::vector<Chromosome> initial;
  for (const auto& m : seeds.members) initial.push_back(m.chromosome);
  return moead_solve(inst, params, &initial, rng);
}

std::string front_csv(const Front& front) {
  std::ostringstream os;
  os << "f1,f2,f3,penalty,chromosome\n";
  for (const auto& m : front.members) {
    const auto compact = nlohmann::json::parse(chromosome_to_json(m.chromosome)).dump();
    os << csv_number(m.f.f1) << ',' << csv_number(m.f.f2) << ',' << csv_number(m.f.f3) << ','
       << csv_number(m.penalty) << ',' << csv_field(compact) << "\n";
  }
  return os.str();
}

}  // namespace hhc
