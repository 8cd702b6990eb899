#pragma once

#include <cstdint>
#include <variant>

#include "liddi/types.hpp"

namespace liddi {

struct Fixed {
  CVec3 d;
};
struct IsotropicAtom {
  double d_mag;
};
struct RandomMolecule {
  double d_mag;
  long samples = 100000;
  std::uint64_t seed = 1;
};

using OrientationModel = std::variant<Fixed, IsotropicAtom, RandomMolecule>;

CVec3 effective_dipole(const OrientationModel& model, const CVec3& e_L);

struct MonteCarloEstimate {
  double mean;
  double std_error;
  long samples;
};

// <(d1.e_k)(d2.e_k)(d1.e_L)(d2.e_L)> over independent isotropic d1, d2.
// Work is split into a fixed number of shards so the result does not depend on threads.
MonteCarloEstimate isotropic_average_oracle(double d_mag, const Vec3& e_L, const Vec3& e_k,
                                            long samples, std::uint64_t seed, int threads = 1);

}  // namespace liddi
