#include "hhc/instancegen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "hhc/rng.hpp"

namespace hhc {

namespace {

Recipe base_recipe(int n, int c, int windows, double msf) {
  Recipe r;
  r.n = n;
  r.c = c;
  r.windows_per_patient = windows;
  r.multi_service_fraction = msf;
  r.simultaneous_fraction = msf > 0 ? 0.5 : 0;
  return r;
}

Recipe large_recipe(int n, int c, int doubles, int triples) {
  Recipe r = base_recipe(n, c, 3, 0.35);
  r.area = 200;
  r.skill_grouping = SkillGrouping::Random;
  r.double_service_count = doubles;
  r.triple_service_count = triples;
  return r;
}

}  // namespace

Recipe preset(const std::string& name) {
  // Subsets A..C and G..I request single services; D..F and J..L add 30%
  // double services. Second trios use two availability periods.
  static const std::map<std::string, Recipe> table = [] {
    std::map<std::string, Recipe> t;
    t["A"] = base_recipe(10, 3, 1, 0);
    t["B"] = base_recipe(25, 5, 1, 0);
    t["C"] = base_recipe(50, 10, 1, 0);
    t["D"] = base_recipe(10, 3, 1, 0.3);
    t["E"] = base_recipe(25, 5, 1, 0.3);
    t["F"] = base_recipe(50, 10, 1, 0.3);
    t["G"] = base_recipe(10, 3, 2, 0);
    t["H"] = base_recipe(25, 5, 2, 0);
    t["I"] = base_recipe(50, 10, 2, 0);
    t["J"] = base_recipe(10, 3, 2, 0.3);
    t["K"] = base_recipe(25, 5, 2, 0.3);
    t["L"] = base_recipe(50, 10, 2, 0.3);
    t["M"] = base_recipe(10, 3, 2, 0.4);
    t["Small"] = t["M"];
    t["SS-A"] = base_recipe(10, 3, 1, 0);
    t["SS-B"] = base_recipe(25, 5, 1, 0);
    t["SS-C"] = base_recipe(50, 10, 1, 0);
    t["SS"] = t["SS-A"];
    t["MSS-D"] = base_recipe(10, 3, 1, 0.3);
    t["MSS-E"] = base_recipe(25, 5, 1, 0.3);
    t["MSS-F"] = base_recipe(50, 10, 1, 0.3);
    t["MSS"] = t["MSS-D"];
    for (auto [sub, mv, n, c] : {std::tuple{"A", 4, 10, 3}, std::tuple{"B", 8, 25, 5},
                                 std::tuple{"C", 10, 50, 10}}) {
      Recipe stw = base_recipe(n, c, 1, 0.3);
      stw.max_visits = mv;
      t[std::string("STW-") + sub] = stw;
      Recipe mtw = stw;
      mtw.windows_per_patient = 2;
      t[std::string("MTW-") + sub] = mtw;
    }
    t["STW"] = t["STW-A"];
    t["MTW"] = t["MTW-A"];
    t["Large-N100s"] = large_recipe(70, 20, 18, 6);
    t["Large-N100p"] = large_recipe(100, 20, 0, 0);
    t["Large-N200s"] = large_recipe(140, 40, 36, 12);
    t["Large-N200p"] = large_recipe(200, 40, 0, 0);
    t["Large"] = t["Large-N100s"];
    t["N"] = t["Large-N100s"];
    return t;
  }();
  const auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown preset: " + name);
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (char c = 'A'; c <= 'N'; ++c) names.push_back(std::string(1, c));
  for (const auto* s : {"SS", "SS-A", "SS-B", "SS-C", "MSS", "MSS-D", "MSS-E", "MSS-F",
                        "STW", "STW-A", "STW-B", "STW-C", "MTW", "MTW-A", "MTW-B", "MTW-C",
                        "Small", "Large", "Large-N100s", "Large-N100p", "Large-N200s",
                        "Large-N200p"})
    names.push_back(s);
  return names;
}

namespace {

constexpr int kServices = 6;
constexpr int kMaxRetries = 10000;

std::vector<int> draw_distinct(Rng& rng, int count, const std::vector<int>& pool) {
  std::vector<int> bag = pool;
  std::vector<int> out;
  for (int i = 0; i < count && !bag.empty(); ++i) {
    const auto idx = rng.uniform_index(bag.size());
    out.push_back(bag[idx]);
    bag.erase(bag.begin() + static_cast<long>(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TimeWindow> draw_windows(Rng& rng, const Recipe& r) {
  const double tw = r.tw_length;
  std::vector<TimeWindow> out;
  switch (r.windows_per_patient) {
    case 1: {
      const double a = rng.uniform_int(0, static_cast<int>(r.horizon - tw));
      out.push_back({a, a + tw});
      break;
    }
    case 2: {
      // First period inside [0, 300], second inside [300, 600] with a gap
      // of at least 120 minutes between them.
      const double a1 = rng.uniform_int(0, static_cast<int>(300 - tw));
      double a2 = 0;
      bool ok = false;
      for (int retry = 0; retry < kMaxRetries; ++retry) {
        a2 = rng.uniform_int(300, static_cast<int>(r.horizon - tw));
        if (a2 - (a1 + tw) >= 120) {
          ok = true;
          break;
        }
      }
      if (!ok) throw std::runtime_error("two-window separation retry limit exceeded");
      out.push_back({a1, a1 + tw});
      out.push_back({a2, a2 + tw});
      break;
    }
    case 3: {
      for (double lo : {0.0, 200.0, 400.0}) {
        const double a = rng.uniform_int(static_cast<int>(lo), static_cast<int>(lo + 200 - tw));
        out.push_back({a, a + tw});
      }
      break;
    }
    default:
      throw std::invalid_argument("windows_per_patient must be 1..3");
  }
  return out;
}

// Guarantees every patient admits an injective service-to-caregiver
// assignment; tiny demand sets (at most 3) make greedy augmentation enough.
void ensure_serviceable(std::vector<PatientSpec>& patients, std::vector<CaregiverSpec>& caregivers,
                        SkillGrouping grouping) {
  auto group_of = [](int service) { return service <= 3 ? 0 : 1; };
  for (const auto& p : patients) {
    std::set<int> used;
    for (int service : p.demands) {
      int pick = -1;
      for (const auto& cg : caregivers) {
        if (used.count(cg.id)) continue;
        if (std::find(cg.skills.begin(), cg.skills.end(), service) != cg.skills.end()) {
          pick = cg.id;
          break;
        }
      }
      if (pick < 0) {
        // Teach the least-loaded unused caregiver of the right group.
        CaregiverSpec* best = nullptr;
        for (auto& cg : caregivers) {
          if (used.count(cg.id)) continue;
          if (grouping == SkillGrouping::Grouped &&
              group_of(cg.skills.front()) != group_of(service))
            continue;
          if (!best || cg.skills.size() < best->skills.size()) best = &cg;
        }
        if (!best)
          for (auto& cg : caregivers)
            if (!used.count(cg.id) && (!best || cg.skills.size() < best->skills.size()))
              best = &cg;
        if (!best) throw std::runtime_error("not enough caregivers for a multi-service patient");
        best->skills.push_back(service);
        std::sort(best->skills.begin(), best->skills.end());
        pick = best->id;
      }
      used.insert(pick);
    }
  }
}

}  // namespace

Instance generate(const Recipe& recipe, std::uint64_t seed) {
  if (recipe.n <= 0 || recipe.c <= 0) throw std::invalid_argument("recipe needs n, c > 0");
  if (recipe.tw_length > recipe.horizon) throw std::invalid_argument("tw_length > horizon");

  std::vector<std::pair<double, double>> coords;
  {
    auto rng = Rng::stream(seed, "locations", 0);
    coords.emplace_back(rng.uniform_real(0, recipe.area), rng.uniform_real(0, recipe.area));
  }
  for (int i = 1; i <= recipe.n; ++i) {
    auto rng = Rng::stream(seed, "locations", i);
    coords.emplace_back(rng.uniform_real(0, recipe.area), rng.uniform_real(0, recipe.area));
  }

  // Demand plan: how many patients get 3, 2, or 1 services, then which ones.
  const int triples = recipe.triple_service_count.value_or(0);
  const int doubles = recipe.double_service_count.value_or(
      static_cast<int>(std::lround(recipe.n * recipe.multi_service_fraction)));
  if (triples + doubles > recipe.n) throw std::invalid_argument("multi-service counts exceed n");

  std::vector<int> order(recipe.n);
  for (int i = 0; i < recipe.n; ++i) order[i] = i + 1;
  {
    auto rng = Rng::stream(seed, "demand-plan", 0);
    for (int i = recipe.n - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_index(static_cast<std::size_t>(i) + 1)]);
  }
  std::vector<int> demand_count(recipe.n + 1, 1);
  std::vector<int> multi;
  for (int i = 0; i < triples; ++i) demand_count[order[i]] = 3;
  for (int i = triples; i < triples + doubles; ++i) demand_count[order[i]] = 2;
  for (int i = 0; i < triples + doubles; ++i) multi.push_back(order[i]);
  std::sort(multi.begin(), multi.end());

  std::vector<bool> simultaneous(recipe.n + 1, false);
  if (!multi.empty()) {
    auto rng = Rng::stream(seed, "sync-plan", 0);
    std::vector<int> shuffled = multi;
    for (std::size_t i = shuffled.size() - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[rng.uniform_index(i + 1)]);
    const int sync = static_cast<int>(
        std::lround(static_cast<double>(multi.size()) * recipe.simultaneous_fraction));
    for (int i = 0; i < sync; ++i) simultaneous[shuffled[i]] = true;
  }

  std::vector<int> all_services;
  for (int s = 1; s <= kServices; ++s) all_services.push_back(s);

  std::vector<PatientSpec> patients;
  std::vector<DurationSpec> durations;
  for (int i = 1; i <= recipe.n; ++i) {
    PatientSpec p;
    p.id = i;
    {
      auto rng = Rng::stream(seed, "demands", i);
      p.demands = draw_distinct(rng, demand_count[i], all_services);
    }
    p.simultaneous = simultaneous[i];
    {
      auto rng = Rng::stream(seed, "windows", i);
      p.windows = draw_windows(rng, recipe);
    }
    {
      auto rng = Rng::stream(seed, "durations", i);
      for (int s : p.demands)
        durations.push_back({i, s,
                             double(rng.uniform_int(static_cast<int>(recipe.duration_lo),
                                                    static_cast<int>(recipe.duration_hi)))});
    }
    patients.push_back(std::move(p));
  }

  std::vector<CaregiverSpec> caregivers;
  const int first_group = (recipe.c + 1) / 2;
  for (int k = 1; k <= recipe.c; ++k) {
    CaregiverSpec cg;
    cg.id = k;
    cg.duty = {0, recipe.horizon};
    cg.max_visits = recipe.max_visits;
    auto rng = Rng::stream(seed, "skills", k);
    const int count = rng.uniform_int(1, 3);
    if (recipe.skill_grouping == SkillGrouping::Grouped) {
      const std::vector<int> pool =
          k <= first_group ? std::vector<int>{1, 2, 3} : std::vector<int>{4, 5, 6};
      cg.skills = draw_distinct(rng, count, pool);
    } else {
      cg.skills = draw_distinct(rng, count, all_services);
    }
    caregivers.push_back(std::move(cg));
  }

  ensure_serviceable(patients, caregivers, recipe.skill_grouping);

  return build_instance(coords, std::move(patients), std::move(caregivers), durations,
                        recipe.horizon);
}

std::string recipe_to_json(const Recipe& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["c"] = r.c;
  j["area"] = r.area;
  j["duration_range"] = {r.duration_lo, r.duration_hi};
  j["windows_per_patient"] = r.windows_per_patient;
  j["multi_service_fraction"] = r.multi_service_fraction;
  j["simultaneous_fraction"] = r.simultaneous_fraction;
  j["horizon"] = r.horizon;
  j["tw_length"] = r.tw_length;
  j["skill_grouping"] = r.skill_grouping == SkillGrouping::Grouped ? "grouped" : "random";
  if (r.max_visits) j["max_visits"] = *r.max_visits;
  if (r.double_service_count) j["double_service_count"] = *r.double_service_count;
  if (r.triple_service_count) j["triple_service_count"] = *r.triple_service_count;
  return j.dump(2);
}

Recipe recipe_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Recipe r;
  r.n = j.at("n").get<int>();
  r.c = j.at("c").get<int>();
  if (j.contains("area")) r.area = j["area"].get<double>();
  if (j.contains("duration_range")) {
    r.duration_lo = j["duration_range"][0].get<double>();
    r.duration_hi = j["duration_range"][1].get<double>();
  }
  if (j.contains("windows_per_patient")) r.windows_per_patient = j["windows_per_patient"].get<int>();
  if (j.contains("multi_service_fraction"))
    r.multi_service_fraction = j["multi_service_fraction"].get<double>();
  if (j.contains("simultaneous_fraction"))
    r.simultaneous_fraction = j["simultaneous_fraction"].get<double>();
  if (j.contains("horizon")) r.horizon = j["horizon"].get<double>();
  if (j.contains("tw_length")) r.tw_length = j["tw_length"].get<double>();
  if (j.contains("skill_grouping"))
    r.skill_grouping = j["skill_grouping"].get<std::string>() == "random" ? SkillGrouping::Random
                                                                          : SkillGrouping::Grouped;
  if (j.contains("max_visits")) r.max_visits = j["max_visits"].get<int>();
  if (j.contains("double_service_count"))
    r.double_service_count = j["double_service_count"].get<int>();
  if (j.contains("triple_service_count"))
    r.triple_service_count = j["triple_service_count"].get<int>();
  return r;
}

}  // namespace hhc
