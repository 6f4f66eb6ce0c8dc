#include "hhc/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hhc {

bool Caregiver::skilled(int service) const {
  return std::find(skills.begin(), skills.end(), service) != skills.end();
}

int Instance::total_services() const {
  int total = 0;
  for (const auto& p : patients) total += static_cast<int>(p.demands.size());
  return total;
}

Instance build_instance(const std::vector<std::pair<double, double>>& coords,
                        std::vector<PatientSpec> patients,
                        std::vector<CaregiverSpec> caregivers,
                        const std::vector<DurationSpec>& durations,
                        double horizon) {
  const int n = static_cast<int>(patients.size());
  if (coords.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("build_instance: coords must hold center plus one entry per patient");

  Instance inst;
  inst.horizon = horizon;
  inst.center_x = coords[0].first;
  inst.center_y = coords[0].second;

  std::set<int> seen_ids;
  for (auto& ps : patients) {
    if (!seen_ids.insert(ps.id).second)
      throw std::invalid_argument("build_instance: duplicate patient id " + std::to_string(ps.id));
    if (ps.demands.empty())
      throw std::invalid_argument("build_instance: patient " + std::to_string(ps.id) + " has no demands");
    Patient p;
    p.id = ps.id;
    p.x = coords[ps.id].first;
    p.y = coords[ps.id].second;
    p.demands = ps.demands;
    std::sort(p.demands.begin(), p.demands.end());
    p.simultaneous = ps.simultaneous;
    p.windows = ps.windows;
    inst.patients.push_back(std::move(p));
  }
  std::sort(inst.patients.begin(), inst.patients.end(),
            [](const Patient& a, const Patient& b) { return a.id < b.id; });

  for (auto& cs : caregivers) {
    Caregiver c;
    c.id = cs.id;
    c.duty = cs.duty;
    c.skills = cs.skills;
    std::sort(c.skills.begin(), c.skills.end());
    c.max_visits = cs.max_visits;
    inst.caregivers.push_back(std::move(c));
  }
  std::sort(inst.caregivers.begin(), inst.caregivers.end(),
            [](const Caregiver& a, const Caregiver& b) { return a.id < b.id; });

  int max_service = 0;
  for (const auto& p : inst.patients)
    for (int s : p.demands) max_service = std::max(max_service, s);
  for (const auto& c : inst.caregivers)
    for (int s : c.skills) max_service = std::max(max_service, s);

  inst.durations.assign(n, std::vector<double>(max_service, 0.0));
  for (const auto& d : durations) {
    if (d.patient < 1 || d.patient > n || d.service < 1 || d.service > max_service)
      throw std::invalid_argument("build_instance: duration for unknown (patient, service)");
    inst.durations[d.patient - 1][d.service - 1] = d.minutes;
  }

  // Every demanded pair needs a duration and a skilled caregiver.
  for (const auto& p : inst.patients) {
    for (int s : p.demands) {
      if (inst.durations[p.id - 1][s - 1] <= 0)
        throw std::invalid_argument("build_instance: missing duration for patient " +
                                    std::to_string(p.id) + " service " + std::to_string(s));
      bool skilled = false;
      for (const auto& c : inst.caregivers) skilled = skilled || c.skilled(s);
      if (!skilled)
        throw std::invalid_argument("build_instance: no caregiver skilled for service " +
                                    std::to_string(s));
    }
  }

  // Node coordinates: 0 = center, 1..n = patients, n+1 = center again.
  std::vector<std::pair<double, double>> node(n + 2);
  node[0] = coords[0];
  for (const auto& p : inst.patients) node[p.id] = {p.x, p.y};
  node[n + 1] = coords[0];

  inst.travel.assign(n + 2, std::vector<double>(n + 2, 0.0));
  for (int i = 0; i < n + 2; ++i) {
    for (int j = 0; j < n + 2; ++j) {
      if (i == j) continue;
      const double dx = node[i].first - node[j].first;
      const double dy = node[i].second - node[j].second;
      inst.travel[i][j] = std::floor(std::sqrt(dx * dx + dy * dy));
    }
  }
  inst.travel[0][n + 1] = inst.travel[n + 1][0] = 0;
  inst.cost = inst.travel;

  validate_instance(inst);
  return inst;
}

void validate_instance(const Instance& inst) {
  const int n = inst.n();
  if (inst.travel.size() != static_cast<std::size_t>(n) + 2 ||
      inst.cost.size() != static_cast<std::size_t>(n) + 2)
    throw std::invalid_argument("instance: travel/cost must be (n+2)x(n+2)");
  for (int i = 0; i < n + 2; ++i) {
    if (inst.travel[i].size() != static_cast<std::size_t>(n) + 2)
      throw std::invalid_argument("instance: ragged travel matrix");
    if (inst.travel[i][i] != 0 || inst.cost[i][i] != 0)
      throw std::invalid_argument("instance: nonzero diagonal");
    for (int j = 0; j < n + 2; ++j) {
      if (inst.travel[i][j] < 0 || inst.cost[i][j] < 0)
        throw std::invalid_argument("instance: negative travel or cost");
    }
  }
  for (int j = 0; j < n + 2; ++j) {
    if (j != 0 && j != n + 1 &&
        (inst.travel[0][j] != inst.travel[n + 1][j] || inst.travel[j][0] != inst.travel[j][n + 1]))
      throw std::invalid_argument("instance: depot rows 0 and n+1 must match");
  }
  for (const auto& p : inst.patients) {
    if (p.demands.empty()) throw std::invalid_argument("instance: patient without demands");
    if (p.simultaneous && p.demands.size() < 2)
      throw std::invalid_argument("instance: simultaneous patient needs >= 2 demands");
    if (p.windows.empty()) throw std::invalid_argument("instance: patient without windows");
    for (const auto& w : p.windows) {
      if (w.a < 0 || w.a > w.b) throw std::invalid_argument("instance: bad time window");
    }
    for (std::size_t i = 0; i < p.windows.size(); ++i)
      for (std::size_t j = i + 1; j < p.windows.size(); ++j)
        if (p.windows[i] == p.windows[j])
          throw std::invalid_argument("instance: identical windows for one patient");
    for (int s : p.demands) {
      if (inst.duration(p.id, s) <= 0)
        throw std::invalid_argument("instance: missing duration");
      bool any = false;
      for (const auto& c : inst.caregivers) any = any || c.skilled(s);
      if (!any) throw std::invalid_argument("instance: unserviceable demand");
    }
  }
  for (const auto& c : inst.caregivers) {
    if (c.skills.empty()) throw std::invalid_argument("instance: caregiver without skills");
    if (c.max_visits && *c.max_visits < 1)
      throw std::invalid_argument("instance: max_visits must be >= 1");
  }
}

std::string Violation::describe() const {
  switch (kind) {
    case ViolationKind::MissingGene:
      return "MissingGene(" + std::to_string(patient) + "," + std::to_string(service) + ")";
    case ViolationKind::DuplicateGene:
      return "DuplicateGene(" + std::to_string(patient) + "," + std::to_string(service) +
             ") at index " + std::to_string(index);
    case ViolationKind::UnknownGene:
      return "UnknownGene(" + std::to_string(patient) + "," + std::to_string(service) +
             ") at index " + std::to_string(index);
    case ViolationKind::UnskilledAssignment:
      return "UnskilledAssignment at index " + std::to_string(index);
    case ViolationKind::DuplicatePatientCaregiverPair:
      return "DuplicatePatientCaregiverPair(patient " + std::to_string(patient) + ") at index " +
             std::to_string(index);
    case ViolationKind::LengthMismatch:
      return "LengthMismatch";
    case ViolationKind::UnknownCaregiver:
      return "UnknownCaregiver at index " + std::to_string(index);
  }
  return "Unknown";
}

std::vector<VisitGene> demanded_pairs(const Instance& inst) {
  std::vector<VisitGene> pairs;
  for (const auto& p : inst.patients)
    for (int s : p.demands) pairs.push_back({p.id, s});
  return pairs;
}

std::vector<Violation> validate_chromosome(const Instance& inst, const Chromosome& ch) {
  std::vector<Violation> out;
  if (ch.genes.size() != ch.assignment.size()) {
    out.push_back({ViolationKind::LengthMismatch, 0, 0, -1});
    return out;
  }

  std::map<std::pair<int, int>, int> count;  // (patient, service) -> occurrences
  for (std::size_t i = 0; i < ch.genes.size(); ++i) {
    const auto& g = ch.genes[i];
    const bool known_patient = g.patient >= 1 && g.patient <= inst.n();
    const bool demanded =
        known_patient && std::find(inst.patient(g.patient).demands.begin(),
                                   inst.patient(g.patient).demands.end(),
                                   g.service) != inst.patient(g.patient).demands.end();
    if (!demanded) {
      out.push_back({ViolationKind::UnknownGene, g.patient, g.service, static_cast<int>(i)});
      continue;
    }
    if (++count[{g.patient, g.service}] > 1)
      out.push_back({ViolationKind::DuplicateGene, g.patient, g.service, static_cast<int>(i)});
  }
  for (const auto& p : inst.patients)
    for (int s : p.demands)
      if (count.find({p.id, s}) == count.end())
        out.push_back({ViolationKind::MissingGene, p.id, s, -1});

  std::set<std::pair<int, int>> pk;  // (patient, caregiver)
  for (std::size_t i = 0; i < ch.genes.size(); ++i) {
    const int k = ch.assignment[i];
    if (k < 1 || k > inst.c()) {
      out.push_back({ViolationKind::UnknownCaregiver, 0, 0, static_cast<int>(i)});
      continue;
    }
    if (!inst.caregiver(k).skilled(ch.genes[i].service))
      out.push_back({ViolationKind::UnskilledAssignment, ch.genes[i].patient, ch.genes[i].service,
                     static_cast<int>(i)});
    if (!pk.insert({ch.genes[i].patient, k}).second)
      out.push_back({ViolationKind::DuplicatePatientCaregiverPair, ch.genes[i].patient, 0,
                     static_cast<int>(i)});
  }
  return out;
}

}  // namespace hhc
