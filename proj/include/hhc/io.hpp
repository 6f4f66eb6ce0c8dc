#pragma once

#include <string>

#include "hhc/model.hpp"

namespace hhc {

// Instance JSON: horizon, center, patients, caregivers, durations, optional
// explicit travel/cost matrices (derived from coordinates when absent).
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

// Solution JSON: {"genes": [[patient, service], ...], "assignment": [caregiver, ...]}
std::string chromosome_to_json(const Chromosome& chromosome);
Chromosome chromosome_from_json(const std::string& text);

Chromosome load_chromosome(const std::string& path);
void save_chromosome(const Chromosome& chromosome, const std::string& path);

// RFC-4180 field quoting; numbers use '.' decimal separator.
std::string csv_field(const std::string& value);
std::string csv_number(double value);

}  // namespace hhc
