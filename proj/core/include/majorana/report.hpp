#pragma once

#include <string>

#include "majorana/berry.hpp"

namespace majorana {

struct StarLine {
  Vec3 n{};
  double theta = 0.0;
  double phi = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
};

struct StarReport {
  double j = 0.0;
  bool renormalized = false;
  std::vector<StarLine> stars;
};

// Machine-readable report documents. Floating-point numbers are printed with
// 17 significant digits so that parse(emit(report)) reproduces every field
// bit-exactly.
std::string berry_report_to_json(const BerryReport& rep);
BerryReport berry_report_from_json(const std::string& text);

std::string rigid_report_to_json(const RigidReport& rep);
std::string star_report_to_json(const StarReport& rep);

// Human-readable decomposition table.
std::string berry_report_table(const BerryReport& rep);
std::string star_report_table(const StarReport& rep);

}  // namespace majorana
