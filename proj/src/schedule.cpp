#include "hhc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hhc/io.hpp"

namespace hhc {

namespace {

constexpr double kEps = 1e-9;
constexpr double kHuge = 1e18;

double travel_between(const Instance& inst, const Scenario* sc, int i, int j) {
  return sc ? sc->travel[i][j] : inst.travel[i][j];
}

double service_time(const Instance& inst, const Scenario* sc, int patient, int service) {
  return sc ? sc->durations[patient - 1][service - 1] : inst.duration(patient, service);
}

std::vector<std::vector<int>> routes_of(const Instance& inst, const Chromosome& ch) {
  std::vector<std::vector<int>> routes(inst.c());
  for (std::size_t i = 0; i < ch.size(); ++i) routes[ch.assignment[i] - 1].push_back(static_cast<int>(i));
  return routes;
}

void finalize_loads(const Instance& inst, const Scenario* sc, const Chromosome& ch, Schedule& s) {
  const auto routes = routes_of(inst, ch);
  for (int k = 0; k < inst.c(); ++k) {
    auto& load = s.caregivers[k];
    load.visits = static_cast<int>(routes[k].size());
    if (routes[k].empty()) {
      load.return_time = inst.caregiver(k + 1).duty.a;
      continue;
    }
    int prev = inst.depot_out();
    double trav = 0, serv = 0, wait = 0;
    for (int gi : routes[k]) {
      const auto& v = s.visits[gi];
      trav += travel_between(inst, sc, prev, v.patient);
      s.cost_total += inst.cost[prev][v.patient];
      if (!v.skipped) {
        serv += v.completion - v.start;
        wait += v.wait;
      }
      prev = v.patient;
    }
    trav += travel_between(inst, sc, prev, inst.depot_in());
    s.cost_total += inst.cost[prev][inst.depot_in()];
    load.wait = wait;
    load.working = trav + serv;
    load.return_time = s.visits[routes[k].back()].completion +
                       travel_between(inst, sc, prev, inst.depot_in());
    load.overtime = std::max(0.0, load.return_time - inst.caregiver(k + 1).duty.b);
    s.travel_total += trav;
  }
  double mean = 0;
  for (const auto& load : s.caregivers) mean += load.working;
  mean /= std::max(1, inst.c());
  for (auto& load : s.caregivers) {
    load.deviation = std::abs(load.working - mean);
    s.deviation_total += load.deviation;
    s.wait_total += load.wait;
    s.overtime_total += load.overtime;
  }
}

}  // namespace

std::string variant_name(VariantId v) {
  switch (v) {
    case VariantId::SOFT_MTW: return "soft-mtw";
    case VariantId::HARD_MSMTW: return "hard-msmtw";
    case VariantId::SPR_PENALTY: return "spr-penalty";
    case VariantId::SPR_SKIP: return "spr-skip";
    case VariantId::MULTIOBJ: return "multiobj";
  }
  return "?";
}

std::optional<VariantId> variant_from_name(const std::string& name) {
  if (name == "soft-mtw") return VariantId::SOFT_MTW;
  if (name == "hard-msmtw") return VariantId::HARD_MSMTW;
  if (name == "spr-penalty") return VariantId::SPR_PENALTY;
  if (name == "spr-skip") return VariantId::SPR_SKIP;
  if (name == "multiobj") return VariantId::MULTIOBJ;
  return std::nullopt;
}

SplitResult split_early_arrival(double early, double alpha, double gamma, double e_max,
                                double w_k, double w_max) {
  SplitResult r;
  if (alpha <= gamma) {
    if (early <= e_max + kEps) {
      r.earliness = early;
      r.new_wait = w_k;
    } else if (w_k + early - e_max <= w_max + kEps) {
      r.earliness = e_max;
      r.new_wait = w_k + early - e_max;
    } else {
      r.feasible = false;
    }
  } else {
    if (early + w_k <= w_max + kEps) {
      r.earliness = 0;
      r.new_wait = w_k + early;
    } else if (w_k + early - w_max <= e_max + kEps) {
      r.earliness = w_k + early - w_max;
      r.new_wait = w_max;
    } else {
      r.feasible = false;
    }
  }
  return r;
}

PeriodChoice select_period_soft(const Patient& patient, double arrival, const DecodeParams& p,
                                double duration, double wait_so_far) {
  PeriodChoice best;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < patient.windows.size(); ++l) {
    const auto& w = patient.windows[l];
    double u = 0, v = 0, added = 0;
    bool ok = true;
    if (arrival >= w.a - kEps) {
      v = std::max(0.0, arrival + duration - w.b);
    } else {
      const auto split = split_early_arrival(w.a - arrival, p.alpha, p.gamma, p.e_max,
                                             wait_so_far, p.w_max);
      if (!split.feasible) continue;
      u = split.earliness;
      added = split.new_wait - wait_so_far;
      v = std::max(0.0, arrival + added + duration - w.b);
    }
    ok = v <= p.t_max + kEps;
    if (!ok) continue;
    const double score = p.alpha * u + p.beta * v + p.gamma * added;
    if (score < best_score - kEps) {
      best_score = score;
      best = {static_cast<int>(l), u, v, added, true};
    }
  }
  return best;
}

namespace {

void decode_soft(const Instance& inst, const Chromosome& ch, const DecodeParams& p,
                 const Scenario* sc, Schedule& s) {
  const auto routes = routes_of(inst, ch);
  for (int k = 0; k < inst.c(); ++k) {
    const auto& cg = inst.caregiver(k + 1);
    double clock = cg.duty.a;  // S_0k = d_k, no waiting at the center
    int prev = inst.depot_out();
    double wait_k = 0;
    for (int gi : routes[k]) {
      auto& v = s.visits[gi];
      const auto& patient = inst.patient(v.patient);
      const double t = service_time(inst, sc, v.patient, v.service);
      v.arrival = clock + travel_between(inst, sc, prev, v.patient);

      PeriodChoice choice;
      if (p.forced_window) {
        // Restricted evaluation of the single forced window.
        Patient one = patient;
        one.windows = {patient.windows[(*p.forced_window)[v.patient - 1]]};
        choice = select_period_soft(one, v.arrival, p, t, wait_k);
        if (choice.feasible) choice.window = (*p.forced_window)[v.patient - 1];
      } else {
        choice = select_period_soft(patient, v.arrival, p, t, wait_k);
      }

      if (!choice.feasible) {
        // Every window violates a limit: take the least-violating one and
        // carry the overflow as penalty.
        s.feasible = false;
        double best_score = std::numeric_limits<double>::infinity();
        int pick = 0;
        double pu = 0, pv = 0, padd = 0, pviol = 0;
        const std::size_t wlo =
            p.forced_window ? static_cast<std::size_t>((*p.forced_window)[v.patient - 1]) : 0;
        const std::size_t whi = p.forced_window ? wlo + 1 : patient.windows.size();
        for (std::size_t l = wlo; l < whi; ++l) {
          const auto& w = patient.windows[l];
          double u = 0, added = 0;
          if (v.arrival < w.a) {
            u = std::min(w.a - v.arrival, p.e_max);
            added = w.a - v.arrival - u;
          }
          const double tv = std::max(0.0, v.arrival + added + t - w.b);
          const double viol = std::max(0.0, wait_k + added - p.w_max) + std::max(0.0, tv - p.t_max);
          const double score = p.alpha * u + p.beta * tv + p.gamma * added + 1e6 * viol;
          if (score < best_score) {
            best_score = score;
            pick = static_cast<int>(l);
            pu = u;
            pv = tv;
            padd = added;
            pviol = viol;
          }
        }
        choice = {pick, pu, pv, padd, false};
        s.penalty += pviol;
      }

      wait_k += choice.added_wait;
      v.wait = choice.added_wait;
      v.earliness = choice.earliness;
      v.tardiness = choice.tardiness;
      v.start = v.arrival + choice.added_wait;
      v.completion = v.start + t;
      s.selected_window[v.patient - 1] = choice.window;
      s.patient_earliness[v.patient - 1] += choice.earliness;
      s.patient_tardiness[v.patient - 1] += choice.tardiness;
      s.earliness_total += choice.earliness;
      s.tardiness_total += choice.tardiness;
      clock = v.completion;
      prev = v.patient;
    }
  }
}

// Phase I of the hard-window decode: event-ordered sweep that fixes a window per
// patient at the first caregiver arrival (earliest window of minimal tardiness).
void choose_windows_hard(const Instance& inst, const Chromosome& ch, const DecodeParams& p,
                         const Scenario* sc, Schedule& s) {
  if (p.forced_window) {
    s.selected_window = *p.forced_window;
    return;
  }
  const auto routes = routes_of(inst, ch);
  std::vector<std::size_t> pos(inst.c(), 0);
  std::vector<double> clock(inst.c());
  std::vector<int> prev(inst.c(), inst.depot_out());
  for (int k = 0; k < inst.c(); ++k) clock[k] = inst.caregiver(k + 1).duty.a;
  std::vector<int>& chosen = s.selected_window;

  while (true) {
    int pick = -1;
    double pick_arrival = 0;
    for (int k = 0; k < inst.c(); ++k) {
      if (pos[k] >= routes[k].size()) continue;
      const auto& v = s.visits[routes[k][pos[k]]];
      const double a = clock[k] + travel_between(inst, sc, prev[k], v.patient);
      if (pick < 0 || a < pick_arrival - kEps) {
        pick = k;
        pick_arrival = a;
      }
    }
    if (pick < 0) break;
    auto& v = s.visits[routes[pick][pos[pick]]];
    const auto& patient = inst.patient(v.patient);
    const double t = service_time(inst, sc, v.patient, v.service);
    if (chosen[v.patient - 1] < 0) {
      double best_tard = std::numeric_limits<double>::infinity();
      int best_l = 0;
      for (std::size_t l = 0; l < patient.windows.size(); ++l) {
        const auto& w = patient.windows[l];
        const double tard = std::max(0.0, std::max(pick_arrival, w.a) + t - w.b);
        if (tard < best_tard - kEps) {
          best_tard = tard;
          best_l = static_cast<int>(l);
        }
      }
      chosen[v.patient - 1] = best_l;
    }
    const auto& w = patient.windows[chosen[v.patient - 1]];
    clock[pick] = std::max(pick_arrival, w.a) + t;
    prev[pick] = v.patient;
    ++pos[pick];
  }
}

void decode_hard(const Instance& inst, const Chromosome& ch, const DecodeParams& p,
                 const Scenario* sc, Schedule& s) {
  choose_windows_hard(inst, ch, p, sc, s);
  for (auto& w : s.selected_window)
    if (w < 0) w = 0;  // patients with no visit (cannot happen for valid chromosomes)

  const auto routes = routes_of(inst, ch);
  const int max_sweeps = p.max_iter_syn > 0 ? p.max_iter_syn : 2 * inst.c();

  // Phase II: synchronized-start fixpoint, SS_i monotonically raised to the
  // maximum of the window start and all serving caregivers' arrivals.
  std::vector<double> ss(inst.n(), 0);
  std::vector<bool> synced(inst.n(), false);
  for (const auto& patient : inst.patients) {
    if (patient.simultaneous && patient.demands.size() >= 2) {
      synced[patient.id - 1] = true;
      ss[patient.id - 1] = patient.windows[s.selected_window[patient.id - 1]].a;
    }
  }

  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps < max_sweeps) {
    changed = false;
    ++sweeps;
    for (int k = 0; k < inst.c(); ++k) {
      double clock = inst.caregiver(k + 1).duty.a;
      int prev = inst.depot_out();
      for (int gi : routes[k]) {
        auto& v = s.visits[gi];
        const int pi = v.patient - 1;
        const double t = service_time(inst, sc, v.patient, v.service);
        v.arrival = clock + travel_between(inst, sc, prev, v.patient);
        if (synced[pi]) {
          if (v.arrival > ss[pi] + kEps) {
            ss[pi] = v.arrival;
            changed = true;
          }
          v.start = ss[pi];
        } else {
          v.start = std::max(v.arrival, inst.patient(v.patient).windows[s.selected_window[pi]].a);
        }
        v.completion = v.start + t;
        v.wait = v.start - v.arrival;
        clock = v.completion;
        prev = v.patient;
      }
    }
  }
  s.sync_converged = !changed;

  for (auto& v : s.visits) {
    const auto& w = inst.patient(v.patient).windows[s.selected_window[v.patient - 1]];
    v.tardiness = std::max(0.0, v.completion - w.b);
    s.patient_tardiness[v.patient - 1] += v.tardiness;
    s.tardiness_total += v.tardiness;
  }
}

void decode_skip(const Instance& inst, const Chromosome& ch, const DecodeParams& p,
                 const Scenario* sc, Schedule& s) {
  (void)p;
  const auto routes = routes_of(inst, ch);
  for (int k = 0; k < inst.c(); ++k) {
    double clock = inst.caregiver(k + 1).duty.a;
    int prev = inst.depot_out();
    for (int gi : routes[k]) {
      auto& v = s.visits[gi];
      const auto& patient = inst.patient(v.patient);
      const double t = service_time(inst, sc, v.patient, v.service);
      v.arrival = clock + travel_between(inst, sc, prev, v.patient);

      double best_tard = std::numeric_limits<double>::infinity();
      int best_l = 0;
      for (std::size_t l = 0; l < patient.windows.size(); ++l) {
        const auto& w = patient.windows[l];
        const double tard = std::max(0.0, std::max(v.arrival, w.a) + t - w.b);
        if (tard < best_tard - kEps) {
          best_tard = tard;
          best_l = static_cast<int>(l);
        }
      }
      s.selected_window[v.patient - 1] = best_l;
      if (best_tard > kEps) {
        // Skipped: the caregiver passes through the location without serving.
        v.skipped = true;
        v.start = v.arrival;
        v.completion = v.arrival;
        s.patient_skipped[v.patient - 1] = true;
        ++s.skipped_count;
      } else {
        const auto& w = patient.windows[best_l];
        v.start = std::max(v.arrival, w.a);
        v.wait = v.start - v.arrival;
        v.completion = v.start + t;
      }
      clock = v.completion;
      prev = v.patient;
    }
  }
}

}  // namespace

Schedule decode(const Instance& inst, const Chromosome& ch, VariantId variant,
                const DecodeParams& params, const Scenario* scenario) {
  if (ch.genes.size() != ch.assignment.size())
    throw std::invalid_argument("decode: malformed chromosome");

  Schedule s;
  s.visits.resize(ch.size());
  for (std::size_t i = 0; i < ch.size(); ++i) {
    s.visits[i].gene = static_cast<int>(i);
    s.visits[i].patient = ch.genes[i].patient;
    s.visits[i].service = ch.genes[i].service;
    s.visits[i].caregiver = ch.assignment[i];
  }
  s.selected_window.assign(inst.n(), -1);
  s.patient_earliness.assign(inst.n(), 0);
  s.patient_tardiness.assign(inst.n(), 0);
  s.patient_skipped.assign(inst.n(), false);
  s.caregivers.resize(inst.c());

  switch (variant) {
    case VariantId::SOFT_MTW:
      decode_soft(inst, ch, params, scenario, s);
      break;
    case VariantId::HARD_MSMTW:
    case VariantId::MULTIOBJ:
    case VariantId::SPR_PENALTY:
      decode_hard(inst, ch, params, scenario, s);
      break;
    case VariantId::SPR_SKIP:
      decode_skip(inst, ch, params, scenario, s);
      break;
  }
  for (auto& w : s.selected_window)
    if (w < 0) w = 0;

  finalize_loads(inst, scenario, ch, s);

  switch (variant) {
    case VariantId::SOFT_MTW:
      s.penalty += s.overtime_total;
      if (s.penalty > kEps) s.feasible = false;
      break;
    case VariantId::HARD_MSMTW:
    case VariantId::MULTIOBJ:
    case VariantId::SPR_PENALTY:
      s.penalty = s.tardiness_total + s.overtime_total;
      s.feasible = s.sync_converged && s.penalty <= kEps;
      break;
    case VariantId::SPR_SKIP: {
      bool over = false;
      for (int k = 0; k < inst.c(); ++k) {
        const auto& mv = inst.caregiver(k + 1).max_visits;
        if (mv && s.caregivers[k].visits > *mv) over = true;
      }
      s.feasible = !over;
      break;
    }
  }
  return s;
}

double objective(const Schedule& s, VariantId variant, const DecodeParams& p) {
  switch (variant) {
    case VariantId::SOFT_MTW:
      return p.alpha * s.earliness_total + p.beta * s.tardiness_total + p.gamma * s.wait_total;
    case VariantId::HARD_MSMTW:
    case VariantId::MULTIOBJ:
      return p.hard_alpha * s.wait_total + p.hard_beta * s.deviation_total;
    case VariantId::SPR_PENALTY:
      return s.cost_total + p.penalty_beta * (s.tardiness_total + s.overtime_total);
    case VariantId::SPR_SKIP:
      return s.cost_total;
  }
  return 0;
}

double penalized_objective(const Schedule& s, VariantId variant, const DecodeParams& p) {
  if (!s.sync_converged) return kHuge;
  switch (variant) {
    case VariantId::SOFT_MTW:
    case VariantId::HARD_MSMTW:
    case VariantId::MULTIOBJ:
      return objective(s, variant, p) + p.penalty_gamma * s.penalty;
    case VariantId::SPR_PENALTY:
    case VariantId::SPR_SKIP:
      return objective(s, variant, p);
  }
  return 0;
}

ObjectiveVector objective_vector(const Schedule& s) {
  return {s.travel_total, s.wait_total, s.deviation_total};
}

std::string FeasibilityViolation::describe() const {
  std::ostringstream os;
  os << rule;
  if (patient) os << " patient=" << patient;
  if (caregiver) os << " caregiver=" << caregiver;
  if (amount != 0) os << " amount=" << amount;
  return os.str();
}

std::vector<FeasibilityViolation> feasibility_check(const Instance& inst, const Chromosome& ch,
                                                    const Schedule& s, VariantId variant) {
  std::vector<FeasibilityViolation> out;
  for (const auto& v : validate_chromosome(inst, ch))
    out.push_back({"Encoding: " + v.describe(), v.patient, 0, 0});

  const auto routes = routes_of(inst, ch);
  const bool soft = variant == VariantId::SOFT_MTW;
  const DecodeParams defaults;

  for (int k = 0; k < inst.c(); ++k) {
    const auto& cg = inst.caregiver(k + 1);
    double prev_completion = cg.duty.a;
    int prev = inst.depot_out();
    for (int gi : routes[k]) {
      const auto& v = s.visits[gi];
      if (v.skipped) {
        prev_completion = v.completion;
        prev = v.patient;
        continue;
      }
      const double min_arrival = prev_completion + inst.travel[prev][v.patient];
      if (v.start < min_arrival - 1e-6)
        out.push_back({"StartOrder", v.patient, k + 1, min_arrival - v.start});
      if (v.start < v.arrival - 1e-6)
        out.push_back({"StartBeforeArrival", v.patient, k + 1, v.arrival - v.start});
      prev_completion = v.completion;
      prev = v.patient;
    }
    const auto& load = s.caregivers[k];
    if (load.return_time > cg.duty.b + 1e-6)
      out.push_back({"DutyViolation", 0, k + 1, load.return_time - cg.duty.b});
    if (cg.max_visits && load.visits > *cg.max_visits)
      out.push_back({"MaxVisits", 0, k + 1, double(load.visits - *cg.max_visits)});
  }

  for (const auto& patient : inst.patients) {
    const int pi = patient.id - 1;
    std::vector<const VisitTiming*> served;
    for (const auto& v : s.visits)
      if (v.patient == patient.id && !v.skipped) served.push_back(&v);
    if (served.empty()) continue;
    const auto& w = patient.windows[s.selected_window[pi]];
    for (const auto* v : served) {
      if (soft) {
        const double u = s.patient_earliness[pi];
        const double tard = s.patient_tardiness[pi];
        if (u > defaults.e_max + 1e-6 && v->start < w.a - u - 1e-6)
          out.push_back({"WindowEarliness", patient.id, v->caregiver, u});
        if (tard > defaults.t_max + 1e-6)
          out.push_back({"WindowTardiness", patient.id, v->caregiver, tard});
      } else {
        if (v->start < w.a - 1e-6)
          out.push_back({"WindowStart", patient.id, v->caregiver, w.a - v->start});
        if (v->completion > w.b + 1e-6)
          out.push_back({"WindowEnd", patient.id, v->caregiver, v->completion - w.b});
        // Earliest-start rule: start = max(window start, arrival) for independent
        // visits; the synchronized start for simultaneous ones.
        if (!(patient.simultaneous && patient.demands.size() >= 2)) {
          const double expect = std::max(w.a, v->arrival);
          if (std::abs(v->start - expect) > 1e-6)
            out.push_back({"EarliestStart", patient.id, v->caregiver, v->start - expect});
        }
      }
    }
    if (patient.simultaneous && patient.demands.size() >= 2 && served.size() >= 2) {
      double ss = std::max(w.a, served[0]->arrival);
      for (const auto* v : served) ss = std::max(ss, v->arrival);
      for (const auto* v : served) {
        if (std::abs(v->start - served[0]->start) > 1e-6)
          out.push_back({"SyncViolation", patient.id, v->caregiver,
                         v->start - served[0]->start});
        else if (!soft && std::abs(v->start - ss) > 1e-6)
          out.push_back({"SyncEarliestStart", patient.id, v->caregiver, v->start - ss});
      }
    }
  }
  return out;
}

std::string schedule_report_csv(const Instance& inst, const Schedule& s) {
  std::ostringstream os;
  os << "caregiver,patient,service,window,arrival,start,completion,slack\n";
  const auto routes = [&] {
    std::vector<std::vector<const VisitTiming*>> r(inst.c());
    for (const auto& v : s.visits) r[v.caregiver - 1].push_back(&v);
    return r;
  }();
  for (int k = 0; k < inst.c(); ++k) {
    for (const auto* v : routes[k]) {
      const auto& w = inst.patient(v->patient).windows[s.selected_window[v->patient - 1]];
      os << (k + 1) << ',' << v->patient << ',' << v->service << ','
         << (s.selected_window[v->patient - 1] + 1) << ',' << csv_number(v->arrival) << ','
         << csv_number(v->start) << ',' << csv_number(v->completion) << ','
         << csv_number(w.b - v->completion) << "\n";
    }
  }
  return os.str();
}

}  // namespace hhc
