#pragma once

#include <array>
#include <cmath>

#include "liddi/types.hpp"

namespace liddi {

// Classical drive. k_L is built from a direction so that |k_L| = omega_L (c = 1).
struct LaserDrive {
  double omega_L;
  Vec3 k_L;
  CVec3 e_L;
  cplx rabi;

  LaserDrive(double omega_L, const Vec3& k_direction, const CVec3& polarization, cplx rabi);
};

struct AtomParams {
  double omega_e;
  CVec3 dipole;
  Vec3 position;

  AtomParams(double omega_e, const CVec3& dipole, const Vec3& position);
};

struct DressedFrame {
  double omega_L = 0;
  double delta = 0;
  double rabi_abs = 0;
  double rabi_phase = 0;
  double omega_bar = 0;
  double c_plus = 0;
  double c_minus = 0;
  double c_z = 0;
  Vec3 k_L = Vec3::Zero();

  double omega(Channel c) const;
  double coefficient(Channel c) const;
  // Weight (coefficient squared, with the factor 2 on z) entering H_DD and R.
  double weight(Channel c) const;
  cplx site_phase(const Vec3& r) const;  // exp(-i k_L . r)
  double cos_phase(const Vec3& r12) const { return std::cos(k_L.dot(r12)); }
};

DressedFrame dressed_frame(const LaserDrive& laser, const AtomParams& atom);
// Frame from the bare numbers; used heavily by tests and the validation suite.
DressedFrame dressed_frame(double omega_L, double delta, double rabi_abs,
                           const Vec3& k_L = Vec3::Zero(), double rabi_phase = 0);

struct DressedStates {
  cplx a_plus_g, a_plus_e;
  cplx a_minus_g, a_minus_e;
  double eps_plus, eps_minus;

  Eigen::Vector2cd plus() const { return {a_plus_g, a_plus_e}; }
  Eigen::Vector2cd minus() const { return {a_minus_g, a_minus_e}; }
};

DressedStates dressed_states(const DressedFrame& frame, cplx site_phase = 1.0);

// The single-atom Hamiltonian in the rotating frame, basis (g, e).
Mat2c drive_hamiltonian(const DressedFrame& frame, cplx site_phase = 1.0);

struct SidebandWeights {
  double w_z, w_plus, w_minus;
  double sum() const { return w_z + w_plus + w_minus; }
};

SidebandWeights sideband_weights(const DressedFrame& frame);

TwoAtomState ground_pair_state(const DressedFrame& frame1, const DressedFrame& frame2);

double rabi_population(const DressedFrame& frame, double t);

}  // namespace liddi
