#include "hhc/ga.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hhc/io.hpp"

namespace hhc {

namespace {

std::vector<int> qualified_caregivers(const Instance& inst, int service) {
  std::vector<int> out;
  for (int k = 1; k <= inst.c(); ++k)
    if (inst.caregiver(k).skilled(service)) out.push_back(k);
  return out;
}

}  // namespace

std::vector<VisitGene> uox_patient_row(const std::vector<VisitGene>& p1,
                                       const std::vector<VisitGene>& p2,
                                       const std::vector<bool>& mask) {
  std::vector<VisitGene> out(p1.size());
  std::vector<bool> kept(p1.size(), false);
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (mask[i]) {
      out[i] = p1[i];
      kept[i] = true;
    }
  // Count preserved copies so duplicate genes are handled multiset-wise.
  std::map<std::pair<int, int>, int> preserved;
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (mask[i]) ++preserved[{p1[i].patient, p1[i].service}];
  std::vector<VisitGene> fill;
  for (const auto& g : p2) {
    auto it = preserved.find({g.patient, g.service});
    if (it != preserved.end() && it->second > 0)
      --it->second;
    else
      fill.push_back(g);
  }
  std::size_t next = 0;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!kept[i]) out[i] = fill[next++];
  return out;
}

std::vector<int> uox_caregiver_row(const std::vector<int>& p1, const std::vector<int>& p2,
                                   const std::vector<bool>& mask) {
  std::vector<int> out(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) out[i] = mask[i] ? p1[i] : p2[i];
  return out;
}

Chromosome uox_crossover(const Chromosome& parent1, const Chromosome& parent2, Rng& rng) {
  const std::size_t n = parent1.size();
  std::vector<bool> gene_mask(n), caregiver_mask(n);
  for (std::size_t i = 0; i < n; ++i) gene_mask[i] = rng.bernoulli(0.5);
  for (std::size_t i = 0; i < n; ++i) caregiver_mask[i] = rng.bernoulli(0.5);
  Chromosome out;
  out.genes = uox_patient_row(parent1.genes, parent2.genes, gene_mask);
  out.assignment = uox_caregiver_row(parent1.assignment, parent2.assignment, caregiver_mask);
  return out;
}

std::pair<Chromosome, Chromosome> two_point_rows(const Chromosome& parent1,
                                                 const Chromosome& parent2, int p1, int p2) {
  const auto make = [&](const Chromosome& keep, const Chromosome& other) {
    const std::size_t n = keep.size();
    Chromosome out;
    out.genes.resize(n);
    out.assignment.resize(n);
    std::vector<bool> inside(n, false);
    std::map<std::pair<int, int>, int> segment;
    for (int i = p1 - 1; i <= p2 - 1; ++i) {
      inside[i] = true;
      out.genes[i] = keep.genes[i];
      out.assignment[i] = keep.assignment[i];
      ++segment[{keep.genes[i].patient, keep.genes[i].service}];
    }
    std::vector<VisitGene> fill;
    for (const auto& g : other.genes) {
      auto it = segment.find({g.patient, g.service});
      if (it != segment.end() && it->second > 0)
        --it->second;
      else
        fill.push_back(g);
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!inside[i]) {
        out.genes[i] = fill[next++];
        out.assignment[i] = other.assignment[i];
      }
    return out;
  };
  return {make(parent1, parent2), make(parent2, parent1)};
}

std::pair<Chromosome, Chromosome> two_point_crossover(const Chromosome& parent1,
                                                      const Chromosome& parent2, Rng& rng) {
  const int n = static_cast<int>(parent1.size());
  int a = rng.uniform_int(1, n);
  int b = rng.uniform_int(1, n);
  if (a > b) std::swap(a, b);
  return two_point_rows(parent1, parent2, a, b);
}

Chromosome mutate(const Instance& inst, const Chromosome& ch, Rng& rng, double ps) {
  Chromosome out = ch;
  if (out.size() >= 2 && rng.bernoulli(ps)) {
    // Exchange two visiting positions; assignments stay with their slots.
    const auto i = rng.uniform_index(out.size());
    auto j = rng.uniform_index(out.size() - 1);
    if (j >= i) ++j;
    std::swap(out.genes[i], out.genes[j]);
  }
  if (!out.genes.empty() && rng.bernoulli(ps)) {
    const auto i = rng.uniform_index(out.size());
    const auto options = qualified_caregivers(inst, out.genes[i].service);
    out.assignment[i] = options[rng.uniform_index(options.size())];
  }
  return out;
}

Chromosome repair(const Instance& inst, const Chromosome& ch, Rng& rng) {
  Chromosome out = ch;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!inst.caregiver(out.assignment[i]).skilled(out.genes[i].service)) {
      const auto options = qualified_caregivers(inst, out.genes[i].service);
      out.assignment[i] = options[rng.uniform_index(options.size())];
    }
  }
  // Duplicate (patient, caregiver) pairs: redo the clashing patient's
  // assignments as a matching over qualified caregivers. Current caregivers
  // get first preference so valid slots survive untouched.
  std::map<int, std::vector<std::size_t>> by_patient;
  for (std::size_t i = 0; i < out.size(); ++i) by_patient[out.genes[i].patient].push_back(i);
  for (const auto& [patient, slots] : by_patient) {
    std::set<int> distinct;
    bool conflict = false;
    for (auto i : slots)
      if (!distinct.insert(out.assignment[i]).second) conflict = true;
    if (!conflict) continue;

    std::vector<std::vector<int>> options;
    for (auto i : slots) {
      auto opts = qualified_caregivers(inst, out.genes[i].service);
      for (std::size_t j = opts.size(); j > 1; --j)
        std::swap(opts[j - 1], opts[rng.uniform_index(j)]);
      const auto cur = std::find(opts.begin(), opts.end(), out.assignment[i]);
      if (cur != opts.end()) std::iter_swap(opts.begin(), cur);
      options.push_back(std::move(opts));
    }

    std::map<int, std::size_t> owner;
    std::function<bool(std::size_t, std::set<int>&)> augment =
        [&](std::size_t slot, std::set<int>& visited) {
          for (int k : options[slot]) {
            if (!visited.insert(k).second) continue;
            const auto held = owner.find(k);
            if (held == owner.end() || augment(held->second, visited)) {
              owner[k] = slot;
              return true;
            }
          }
          return false;
        };
    bool complete = true;
    for (std::size_t slot = 0; slot < slots.size(); ++slot) {
      std::set<int> visited;
      if (!augment(slot, visited)) complete = false;
    }
    if (!complete) continue;
    for (const auto& [caregiver, slot] : owner) out.assignment[slots[slot]] = caregiver;
  }
  return out;
}

std::size_t tournament_select(std::size_t population, int size,
                              const std::function<bool(std::size_t, std::size_t)>& better,
                              Rng& rng) {
  if (population == 0) throw std::invalid_argument("tournament on empty population");
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(size), population);
  std::vector<std::size_t> pool(population);
  for (std::size_t i = 0; i < population; ++i) pool[i] = i;
  std::size_t best = 0;
  for (std::size_t i = 0; i < take; ++i) {
    const auto pick = i + rng.uniform_index(population - i);
    std::swap(pool[i], pool[pick]);
    if (i == 0 || better(pool[i], best)) best = pool[i];
  }
  return best;
}

FitnessValue fitness(const Instance& inst, const Chromosome& ch, FitnessKind kind,
                     const GaParams& params) {
  FitnessValue v;
  switch (kind) {
    case FitnessKind::Deterministic: {
      const auto s = decode(inst, ch, VariantId::SPR_PENALTY, params.decode);
      v.key[0] = s.cost_total + params.beta * (s.tardiness_total + s.overtime_total);
      break;
    }
    case FitnessKind::Spr: {
      const auto s = decode(inst, ch, VariantId::SPR_PENALTY, params.decode);
      const auto est = estimate(inst, ch, RecourseKind::Penalty, params.stochastic);
      v.key[0] = s.cost_total + est.mean;
      break;
    }
    case FitnessKind::Lex: {
      const auto s = decode(inst, ch, VariantId::SPR_SKIP, params.decode);
      double over = 0;
      for (int k = 0; k < inst.c(); ++k) {
        const auto& mv = inst.caregiver(k + 1).max_visits;
        if (mv && s.caregivers[k].visits > *mv) over += s.caregivers[k].visits - *mv;
      }
      const auto est = estimate(inst, ch, RecourseKind::Skip, params.stochastic);
      v.key = {over, est.mean, s.cost_total};
      break;
    }
  }
  return v;
}

Chromosome random_chromosome(const Instance& inst, Rng& rng) {
  Chromosome ch;
  ch.genes = demanded_pairs(inst);
  for (std::size_t i = ch.genes.size(); i > 1; --i)
    std::swap(ch.genes[i - 1], ch.genes[rng.uniform_index(i)]);
  ch.assignment.resize(ch.genes.size());
  for (std::size_t i = 0; i < ch.genes.size(); ++i) {
    const auto options = qualified_caregivers(inst, ch.genes[i].service);
    ch.assignment[i] = options[rng.uniform_index(options.size())];
  }
  return repair(inst, ch, rng);
}

std::string ga_trace_csv(const std::vector<GaTraceEntry>& trace) {
  std::ostringstream os;
  os << "generation,best_f1,best_f2,best_f3,mean_fitness\n";
  for (const auto& e : trace)
    os << e.generation << ',' << csv_number(e.best.key[0]) << ',' << csv_number(e.best.key[1])
       << ',' << csv_number(e.best.key[2]) << ',' << csv_number(e.mean_fitness) << "\n";
  return os.str();
}

GaResult ga_solve(const Instance& inst, VariantId variant, const GaParams& params, Rng& rng) {
  (void)variant;
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  const int pop_size = std::max(2, params.population > 0 ? params.population : 20 * inst.n());
  const int stop = params.stop_no_improve > 0 ? params.stop_no_improve
                                              : std::max(1, 5 * inst.n());
  const std::uint64_t base = rng.next_u64();

  GaResult res;
  if (demanded_pairs(inst).empty()) {
    res.value = fitness(inst, res.best, params.kind, params);
    res.trace.push_back({0, res.value, res.value.scalar()});
    return res;
  }

  std::vector<Chromosome> population;
  std::vector<FitnessValue> values;
  for (int i = 0; i < pop_size; ++i) {
    auto s = Rng::stream(base, "ga-init", static_cast<std::uint64_t>(i));
    population.push_back(random_chromosome(inst, s));
    values.push_back(fitness(inst, population.back(), params.kind, params));
  }

  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (values[i] < values[best_idx]) best_idx = i;
  res.best = population[best_idx];
  res.value = values[best_idx];

  const auto mean_of = [&] {
    double m = 0;
    for (const auto& v : values) m += v.scalar();
    return m / static_cast<double>(values.size());
  };
  res.trace.push_back({0, res.value, mean_of()});

  int no_improve = 0;
  int generation = 0;
  while (no_improve < stop) {
    if (params.time_limit_ms > 0 && elapsed() > params.time_limit_ms) break;
    ++generation;
    std::vector<Chromosome> offspring;
    offspring.reserve(population.size());
    const auto better = [&](std::size_t a, std::size_t b) { return values[a] < values[b]; };
    int slot = 0;
    while (offspring.size() < population.size()) {
      auto s = Rng::stream(base, "ga-slot",
                           (static_cast<std::uint64_t>(generation) << 32) |
                               static_cast<std::uint64_t>(slot++));
      const auto pa = tournament_select(population.size(), params.tournament, better, s);
      const auto pb = tournament_select(population.size(), params.tournament, better, s);
      std::vector<Chromosome> kids;
      if (s.bernoulli(params.pc)) {
        if (params.crossover == CrossoverKind::Uox) {
          kids.push_back(uox_crossover(population[pa], population[pb], s));
        } else {
          auto [c1, c2] = two_point_crossover(population[pa], population[pb], s);
          kids.push_back(std::move(c1));
          kids.push_back(std::move(c2));
        }
      } else {
        kids.push_back(population[pa]);
      }
      for (auto& kid : kids) {
        if (offspring.size() >= population.size()) break;
        kid = repair(inst, mutate(inst, kid, s, params.ps), s);
        offspring.push_back(std::move(kid));
      }
    }
    population = std::move(offspring);
    for (std::size_t i = 0; i < population.size(); ++i)
      values[i] = fitness(inst, population[i], params.kind, params);

    bool improved = false;
    for (std::size_t i = 0; i < population.size(); ++i)
      if (values[i] < res.value) {
        res.value = values[i];
        res.best = population[i];
        improved = true;
      }
    no_improve = improved ? 0 : no_improve + 1;
    res.trace.push_back({generation, res.value, mean_of()});
  }
  return res;
}

}  // namespace hhc
