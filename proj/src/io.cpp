#include "hhc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hhc {

using nlohmann::json;

std::string instance_to_json(const Instance& inst) {
  json j;
  j["horizon"] = inst.horizon;
  j["center"] = {inst.center_x, inst.center_y};
  j["patients"] = json::array();
  for (const auto& p : inst.patients) {
    json w = json::array();
    for (const auto& tw : p.windows) w.push_back({tw.a, tw.b});
    j["patients"].push_back({{"id", p.id},
                             {"loc", {p.x, p.y}},
                             {"demands", p.demands},
                             {"simultaneous", p.simultaneous},
                             {"windows", w}});
  }
  j["caregivers"] = json::array();
  for (const auto& c : inst.caregivers) {
    json cj = {{"id", c.id}, {"duty", {c.duty.a, c.duty.b}}, {"skills", c.skills}};
    if (c.max_visits) cj["max_visits"] = *c.max_visits;
    j["caregivers"].push_back(cj);
  }
  j["durations"] = json::array();
  for (const auto& p : inst.patients)
    for (int s : p.demands)
      j["durations"].push_back(
          {{"patient", p.id}, {"service", s}, {"minutes", inst.duration(p.id, s)}});
  j["travel"] = inst.travel;
  j["cost"] = inst.cost;
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  json j = json::parse(text);

  std::vector<std::pair<double, double>> coords;
  std::vector<PatientSpec> patients;
  std::vector<CaregiverSpec> caregivers;
  std::vector<DurationSpec> durations;

  const auto center = j.at("center");
  std::size_t npat = j.at("patients").size();
  coords.resize(npat + 1);
  coords[0] = {center[0].get<double>(), center[1].get<double>()};

  for (const auto& pj : j.at("patients")) {
    PatientSpec ps;
    ps.id = pj.at("id").get<int>();
    coords.at(ps.id) = {pj.at("loc")[0].get<double>(), pj.at("loc")[1].get<double>()};
    ps.demands = pj.at("demands").get<std::vector<int>>();
    ps.simultaneous = pj.value("simultaneous", false);
    for (const auto& w : pj.at("windows")) ps.windows.push_back({w[0].get<double>(), w[1].get<double>()});
    patients.push_back(std::move(ps));
  }
  for (const auto& cj : j.at("caregivers")) {
    CaregiverSpec cs;
    cs.id = cj.at("id").get<int>();
    cs.duty = {cj.at("duty")[0].get<double>(), cj.at("duty")[1].get<double>()};
    cs.skills = cj.at("skills").get<std::vector<int>>();
    if (cj.contains("max_visits")) cs.max_visits = cj.at("max_visits").get<int>();
    caregivers.push_back(std::move(cs));
  }
  for (const auto& dj : j.at("durations"))
    durations.push_back({dj.at("patient").get<int>(), dj.at("service").get<int>(),
                         dj.at("minutes").get<double>()});

  Instance inst = build_instance(coords, std::move(patients), std::move(caregivers), durations,
                                 j.value("horizon", 600.0));
  if (j.contains("travel")) inst.travel = j.at("travel").get<std::vector<std::vector<double>>>();
  if (j.contains("cost")) inst.cost = j.at("cost").get<std::vector<std::vector<double>>>();
  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(inst) << "\n";
}

std::string chromosome_to_json(const Chromosome& ch) {
  json j;
  j["genes"] = json::array();
  for (const auto& g : ch.genes) j["genes"].push_back({g.patient, g.service});
  j["assignment"] = ch.assignment;
  return j.dump(2);
}

Chromosome chromosome_from_json(const std::string& text) {
  json j = json::parse(text);
  Chromosome ch;
  for (const auto& g : j.at("genes")) ch.genes.push_back({g[0].get<int>(), g[1].get<int>()});
  ch.assignment = j.at("assignment").get<std::vector<int>>();
  return ch;
}

Chromosome load_chromosome(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return chromosome_from_json(ss.str());
}

void save_chromosome(const Chromosome& ch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << chromosome_to_json(ch) << "\n";
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_number(double value) {
  char buf[64];
  if (value == static_cast<long long>(value) && std::abs(value) < 1e15)
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(value));
  else
    std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace hhc
