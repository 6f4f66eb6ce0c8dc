#include "hhc/gvns.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <sstream>

#include "hhc/io.hpp"

namespace hhc {

namespace {

constexpr double kEps = 1e-9;

// One caregiver may serve at most one service of a patient.
bool pair_free(const Chromosome& ch, int patient, int caregiver, std::size_t except) {
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i == except) continue;
    if (ch.genes[i].patient == patient && ch.assignment[i] == caregiver) return false;
  }
  return true;
}

bool switch_ok(const Instance& inst, const Chromosome& ch, std::size_t i, int caregiver) {
  return caregiver != ch.assignment[i] &&
         inst.caregiver(caregiver).skilled(ch.genes[i].service) &&
         pair_free(ch, ch.genes[i].patient, caregiver, i);
}

bool inter_swap_ok(const Instance& inst, const Chromosome& ch, std::size_t i, std::size_t j) {
  const int ki = ch.assignment[i], kj = ch.assignment[j];
  if (!inst.caregiver(kj).skilled(ch.genes[i].service)) return false;
  if (!inst.caregiver(ki).skilled(ch.genes[j].service)) return false;
  if (ki != kj) {
    if (!pair_free(ch, ch.genes[i].patient, kj, i)) return false;
    if (!pair_free(ch, ch.genes[j].patient, ki, j)) return false;
    // Swapping within one patient would leave the pair set unchanged only
    // if both genes belong to it; the pair_free checks above already pass then.
    if (ch.genes[i].patient == ch.genes[j].patient) return true;
  }
  return true;
}

Chromosome apply_shift(const Chromosome& ch, std::size_t from, std::size_t to) {
  Chromosome out = ch;
  const auto gene = out.genes[from];
  const int cg = out.assignment[from];
  out.genes.erase(out.genes.begin() + static_cast<long>(from));
  out.assignment.erase(out.assignment.begin() + static_cast<long>(from));
  out.genes.insert(out.genes.begin() + static_cast<long>(to), gene);
  out.assignment.insert(out.assignment.begin() + static_cast<long>(to), cg);
  return out;
}

struct Move {
  NeighborhoodKind kind;
  std::size_t i = 0, j = 0;  // SWITCH: j is the caregiver id
};

std::vector<Move> enumerate_moves(const Instance& inst, const Chromosome& ch,
                                  NeighborhoodKind kind) {
  std::vector<Move> moves;
  const std::size_t n = ch.size();
  switch (kind) {
    case NeighborhoodKind::Switch:
      for (std::size_t i = 0; i < n; ++i)
        for (int k = 1; k <= inst.c(); ++k)
          if (switch_ok(inst, ch, i, k)) moves.push_back({kind, i, std::size_t(k)});
      break;
    case NeighborhoodKind::InterSwap:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (inter_swap_ok(inst, ch, i, j)) moves.push_back({kind, i, j});
      break;
    case NeighborhoodKind::IntraShift:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) moves.push_back({kind, i, j});
      break;
    case NeighborhoodKind::IntraSwap:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) moves.push_back({kind, i, j});
      break;
  }
  return moves;
}

Chromosome apply_move(const Chromosome& ch, const Move& m) {
  Chromosome out = ch;
  switch (m.kind) {
    case NeighborhoodKind::Switch:
      out.assignment[m.i] = static_cast<int>(m.j);
      break;
    case NeighborhoodKind::InterSwap:
      std::swap(out.assignment[m.i], out.assignment[m.j]);
      break;
    case NeighborhoodKind::IntraShift:
      out = apply_shift(ch, m.i, m.j);
      break;
    case NeighborhoodKind::IntraSwap:
      std::swap(out.genes[m.i], out.genes[m.j]);
      std::swap(out.assignment[m.i], out.assignment[m.j]);
      break;
  }
  return out;
}

}  // namespace

std::string neighborhood_name(NeighborhoodKind kind) {
  switch (kind) {
    case NeighborhoodKind::Switch: return "switch";
    case NeighborhoodKind::InterSwap: return "inter-swap";
    case NeighborhoodKind::IntraShift: return "shift";
    case NeighborhoodKind::IntraSwap: return "intra-swap";
  }
  return "?";
}

std::vector<Chromosome> neighbors(const Instance& inst, const Chromosome& ch,
                                  NeighborhoodKind kind) {
  std::vector<Chromosome> out;
  for (const auto& m : enumerate_moves(inst, ch, kind)) out.push_back(apply_move(ch, m));
  return out;
}

Chromosome shake(const Instance& inst, const Chromosome& ch, NeighborhoodKind kind, int strength,
                 Rng& rng) {
  Chromosome cur = ch;
  for (int step = 0; step < strength; ++step) {
    const auto moves = enumerate_moves(inst, cur, kind);
    if (moves.empty()) break;
    cur = apply_move(cur, moves[rng.uniform_index(moves.size())]);
  }
  return cur;
}

Chromosome vnd(const Instance& inst, const Chromosome& start, VariantId variant,
               const GvnsParams& params) {
  Chromosome cur = start;
  double cur_z = penalized_objective(decode(inst, cur, variant, params.decode), variant,
                                     params.decode);
  std::size_t level = 0;
  while (level < params.local_search_order.size()) {
    const auto kind = params.local_search_order[level];
    double best_z = cur_z;
    Chromosome best;
    bool improved = false;
    for (const auto& m : enumerate_moves(inst, cur, kind)) {
      auto cand = apply_move(cur, m);
      const double z =
          penalized_objective(decode(inst, cand, variant, params.decode), variant, params.decode);
      if (z < best_z - kEps) {
        best_z = z;
        best = std::move(cand);
        improved = true;
      }
    }
    if (improved) {
      cur = std::move(best);
      cur_z = best_z;
      level = 0;
    } else {
      ++level;
    }
  }
  return cur;
}

Chromosome initial_solution(const Instance& inst, VariantId variant, Rng& rng) {
  auto genes = demanded_pairs(inst);
  bool single_window = true;
  for (const auto& p : inst.patients)
    if (p.windows.size() > 1) single_window = false;

  if (single_window) {
    const bool by_end = variant == VariantId::SOFT_MTW;
    std::stable_sort(genes.begin(), genes.end(), [&](const VisitGene& a, const VisitGene& b) {
      const auto& wa = inst.patient(a.patient).windows[0];
      const auto& wb = inst.patient(b.patient).windows[0];
      return (by_end ? wa.b : wa.a) < (by_end ? wb.b : wb.a);
    });
  } else {
    for (std::size_t i = genes.size(); i > 1; --i)
      std::swap(genes[i - 1], genes[rng.uniform_index(i)]);
  }

  Chromosome ch;
  ch.genes = genes;
  ch.assignment.assign(genes.size(), 0);
  std::vector<double> clock(inst.c());
  std::vector<int> at(inst.c(), inst.depot_out());
  for (int k = 0; k < inst.c(); ++k) clock[k] = inst.caregiver(k + 1).duty.a;

  for (std::size_t i = 0; i < genes.size(); ++i) {
    // Earliest-arriving qualified caregiver not already serving this patient;
    // under multiple windows the choice is random instead.
    std::vector<int> options;
    for (int k = 1; k <= inst.c(); ++k)
      if (inst.caregiver(k).skilled(genes[i].service) &&
          pair_free(ch, genes[i].patient, k, i))
        options.push_back(k);
    if (options.empty())
      for (int k = 1; k <= inst.c(); ++k)
        if (inst.caregiver(k).skilled(genes[i].service)) options.push_back(k);
    int pick;
    if (single_window) {
      pick = options[0];
      double best_arrival = clock[pick - 1] + inst.travel[at[pick - 1]][genes[i].patient];
      for (int k : options) {
        const double a = clock[k - 1] + inst.travel[at[k - 1]][genes[i].patient];
        if (a < best_arrival - kEps) {
          best_arrival = a;
          pick = k;
        }
      }
    } else {
      pick = options[rng.uniform_index(options.size())];
    }
    ch.assignment[i] = pick;
    const auto& w = inst.patient(genes[i].patient).windows[0];
    clock[pick - 1] = std::max(clock[pick - 1] + inst.travel[at[pick - 1]][genes[i].patient], w.a) +
                      inst.duration(genes[i].patient, genes[i].service);
    at[pick - 1] = genes[i].patient;
  }
  return ch;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  os << "iteration,elapsed_ms,best_z,penalty\n";
  for (const auto& e : trace)
    os << e.iteration << ',' << csv_number(e.elapsed_ms) << ',' << csv_number(e.best_z) << ','
       << csv_number(e.penalty) << "\n";
  return os.str();
}

GvnsResult gvns_solve(const Instance& inst, VariantId variant, const GvnsParams& params,
                      Rng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  const int m2 = params.shake_strength > 0 ? params.shake_strength : inst.c() + 1;

  GvnsResult res;
  res.best = vnd(inst, initial_solution(inst, variant, rng), variant, params);
  res.schedule = decode(inst, res.best, variant, params.decode);
  res.z = penalized_objective(res.schedule, variant, params.decode);
  res.trace.push_back({0, elapsed(), res.z, res.schedule.penalty});

  if (res.best.size() == 0) return res;

  int no_improve = 0;
  int iteration = 0;
  while (no_improve < params.stop_no_improve) {
    if (params.time_limit_ms > 0 && elapsed() > params.time_limit_ms) break;
    ++iteration;
    bool improved = false;
    std::size_t k = 0;
    while (k < params.shake_order.size()) {
      auto cand = vnd(inst, shake(inst, res.best, params.shake_order[k], m2, rng), variant,
                      params);
      const auto sched = decode(inst, cand, variant, params.decode);
      const double z = penalized_objective(sched, variant, params.decode);
      if (z < res.z - kEps) {
        res.best = std::move(cand);
        res.schedule = sched;
        res.z = z;
        improved = true;
        k = 0;
      } else {
        ++k;
      }
    }
    no_improve = improved ? 0 : no_improve + 1;
    res.trace.push_back({iteration, elapsed(), res.z, res.schedule.penalty});
  }
  return res;
}

}  // namespace hhc
