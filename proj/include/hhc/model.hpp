#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hhc {

// One availability period [a, b] in minutes.
struct TimeWindow {
  double a = 0;
  double b = 0;
  bool operator==(const TimeWindow&) const = default;
};

struct Patient {
  int id = 0;  // 1..n
  double x = 0, y = 0;
  std::vector<int> demands;  // service ids, nonempty, sorted
  bool simultaneous = false;
  std::vector<TimeWindow> windows;  // nonempty, ordered
};

struct Caregiver {
  int id = 0;  // 1..c
  TimeWindow duty;
  std::vector<int> skills;  // nonempty, sorted
  std::optional<int> max_visits;

  bool skilled(int service) const;
};

struct Instance {
  std::vector<Patient> patients;
  std::vector<Caregiver> caregivers;
  // durations[p-1][s-1] = service minutes, 0 when not demanded
  std::vector<std::vector<double>> durations;
  // (n+2)x(n+2) over nodes {0=center, 1..n, n+1=center copy}
  std::vector<std::vector<double>> travel;
  std::vector<std::vector<double>> cost;
  double horizon = 600;
  double center_x = 0, center_y = 0;

  int n() const { return static_cast<int>(patients.size()); }
  int c() const { return static_cast<int>(caregivers.size()); }
  int depot_out() const { return 0; }
  int depot_in() const { return n() + 1; }
  double duration(int patient, int service) const { return durations[patient - 1][service - 1]; }
  const Patient& patient(int id) const { return patients[id - 1]; }
  const Caregiver& caregiver(int id) const { return caregivers[id - 1]; }
  int total_services() const;
};

struct VisitGene {
  int patient = 0;
  int service = 0;
  bool operator==(const VisitGene&) const = default;
};

// Two-row encoding: ordered visit genes plus a parallel caregiver assignment.
struct Chromosome {
  std::vector<VisitGene> genes;
  std::vector<int> assignment;

  std::size_t size() const { return genes.size(); }
  bool operator==(const Chromosome&) const = default;
};

struct PatientSpec {
  int id = 0;
  std::vector<int> demands;
  bool simultaneous = false;
  std::vector<TimeWindow> windows;
};

struct CaregiverSpec {
  int id = 0;
  TimeWindow duty;
  std::vector<int> skills;
  std::optional<int> max_visits;
};

struct DurationSpec {
  int patient = 0;
  int service = 0;
  double minutes = 0;
};

// coords[0] is the center, coords[i] the location of patient i.
// Travel = floor of Euclidean distance; cost = travel; node n+1 mirrors node 0.
Instance build_instance(const std::vector<std::pair<double, double>>& coords,
                        std::vector<PatientSpec> patients,
                        std::vector<CaregiverSpec> caregivers,
                        const std::vector<DurationSpec>& durations,
                        double horizon = 600);

// Validates Instance invariants; throws std::invalid_argument on the first failure.
void validate_instance(const Instance& instance);

enum class ViolationKind {
  MissingGene,
  DuplicateGene,
  UnknownGene,
  UnskilledAssignment,
  DuplicatePatientCaregiverPair,
  LengthMismatch,
  UnknownCaregiver,
};

struct Violation {
  ViolationKind kind;
  int patient = 0;
  int service = 0;
  int index = -1;  // offending gene index when applicable
  std::string describe() const;
};

// Reports every broken Chromosome invariant; empty list iff valid. Never throws.
std::vector<Violation> validate_chromosome(const Instance& instance, const Chromosome& chromosome);

inline bool is_valid(const Instance& instance, const Chromosome& chromosome) {
  return validate_chromosome(instance, chromosome).empty();
}

// All demanded (patient, service) pairs in patient-id order.
std::vector<VisitGene> demanded_pairs(const Instance& instance);

}  // namespace hhc
