#pragma once

#include "liddi/dressing.hpp"
#include "liddi/spectra.hpp"
#include "liddi/types.hpp"

namespace liddi {

enum class StateSource { User, Steady, Transient, ClosedForm, LargeDetuning };
const char* name(StateSource s);

struct PotentialBreakdown {
  double u_z = 0, u_plus = 0, u_minus = 0, total = 0;
  Vec3 r12 = Vec3::Zero();
  StateSource source = StateSource::User;
  bool warning = false;  // set when a soft precondition was exceeded

  double linear() const { return u_z; }
  double nonlinear() const { return u_plus + u_minus; }
};

struct RateBreakdown {
  double r_z = 0, r_plus = 0, r_minus = 0, total = 0;
};

PotentialBreakdown liddi_potential(const TwoAtomState& rho, const CouplingTable& table,
                                   const DressedFrame& frame, const Vec3& r12,
                                   StateSource source = StateSource::User);

RateBreakdown scattering_rate(const TwoAtomState& rho, const CouplingTable& table,
                              const DressedFrame& frame);

PotentialBreakdown steady_state_potential_closed(const CouplingTable& table,
                                                 const DressedFrame& frame, const Vec3& r12,
                                                 double gamma_plus_11, double gamma_minus_11);

PotentialBreakdown transient_potential_closed(const CouplingTable& table,
                                              const DressedFrame& frame, const Vec3& r12);

PotentialBreakdown large_detuning_potential(const CouplingTable& table,
                                            const DressedFrame& frame, const Vec3& r12);

// Prediction of treatments that keep only the elastic channel at w_L.
double linear_comparator(const CouplingTable& table, const DressedFrame& frame, const Vec3& r12);

}  // namespace liddi
