#pragma once

#include <cstdint>
#include <variant>

#include "majorana/stellar.hpp"

namespace majorana {

// Angular schedule along a great circle: alpha(u) = offset + 2*pi*turns*u +
// sum_k cos_coeffs[k] cos(2*pi*(k+1)*u) + sin_coeffs[k] sin(2*pi*(k+1)*u),
// u in [0, 1]. Integer turns keep the schedule closed.
struct Schedule {
  double offset = 0.0;
  int turns = 0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

struct CorotationSpec {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

struct RigidRotationSpec {
  Constellation stars;
  Vec3 axis{0.0, 0.0, 1.0};
  double angle = 0.0;
};

struct SlidingSpec {
  Vec3 normal{0.0, 0.0, 1.0};
  std::vector<Schedule> schedules;
};

struct FourierRandomSpec {
  int two_j = 2;
  uint64_t seed = 0;
  int modes = 3;
  double amplitude = 0.4;
};

struct SampledSpec {
  std::vector<std::vector<Star>> star_samples;  // either this ...
  std::vector<SpinState> amp_samples;           // ... or this is set
};

struct PathSpec {
  std::variant<CorotationSpec, RigidRotationSpec, SlidingSpec, FourierRandomSpec, SampledSpec>
      payload;
  int samples = 2000;
  double continuity_bound = 0.1;
};

// Two stars on fixed latitude circles, corotating about z through a full turn.
StarLoop make_corotation_loop(double theta1, double theta2, double phi1, double phi2,
                              int samples);

// Collective rotation of a constellation about an axis; the rotation must
// return the multiset to itself (possibly permuted).
StarLoop make_rigid_rotation_loop(const Constellation& c, const Star& axis, double angle,
                                  int samples);

// Stars sliding along a common great circle with the given schedules.
StarLoop make_sliding_loop(const Vec3& normal, const std::vector<Schedule>& schedules,
                           int samples);

// Independent smooth random closed curves, one per star, from a truncated
// Fourier series in R^3 projected to the sphere. Deterministic in the seed.
StarLoop make_fourier_loop(int two_j, uint64_t seed, int modes, double amplitude, int samples);

// Sample count that keeps the largest angular step of the Fourier loop at or
// below max_step.
int fourier_recommended_samples(int two_j, uint64_t seed, int modes, double amplitude,
                                double max_step);

// Largest star step in the loop, radians.
double max_angular_step(const StarLoop& loop);

// Closed form for a full corotation turn: pi cos(theta1) + pi cos(theta2) +
// 2 pi cos(vartheta) C(Theta) cos(Theta), with vartheta the barycenter
// colatitude. Meaningful mod 2*pi.
double corotation_closed_form(double theta1, double theta2, double phi1, double phi2);

StarLoop generate_loop(const PathSpec& spec);

}  // namespace majorana
