#include "liddi/dressing.hpp"

#include <cmath>

#include "liddi/errors.hpp"

namespace liddi {

namespace {

// Omega_bar + delta and Omega_bar - delta without cancellation.
struct SplitSums {
  double opb, omb;
};

SplitSums split_sums(double delta, double rabi_abs, double omega_bar) {
  const double r2 = rabi_abs * rabi_abs;
  if (delta >= 0) {
    const double opb = omega_bar + delta;
    return {opb, opb > 0 ? r2 / opb : 0.0};
  }
  const double omb = omega_bar - delta;
  return {r2 / omb, omb};
}

}  // namespace

LaserDrive::LaserDrive(double omega_L_, const Vec3& k_direction, const CVec3& polarization,
                       cplx rabi_)
    : omega_L(omega_L_), e_L(polarization), rabi(rabi_) {
  if (!(omega_L > 0)) throw InvalidArgument("laser frequency must be positive");
  const double kn = k_direction.norm();
  if (!(kn > 0)) throw InvalidArgument("laser wavevector direction must be nonzero");
  if (std::abs(e_L.norm() - 1.0) > 1e-12)
    throw UnnormalizedPolarization("laser polarization must have unit norm");
  k_L = k_direction * (omega_L / kn);
}

AtomParams::AtomParams(double omega_e_, const CVec3& dipole_, const Vec3& position_)
    : omega_e(omega_e_), dipole(dipole_), position(position_) {
  if (!(omega_e > 0)) throw InvalidArgument("transition frequency must be positive");
  if (!(dipole.norm() > 0)) throw InvalidArgument("dipole must be nonzero");
}

double DressedFrame::omega(Channel c) const {
  switch (c) {
    case Channel::Plus: return omega_L + omega_bar;
    case Channel::Z: return omega_L;
    case Channel::Minus: return omega_L - omega_bar;
  }
  return omega_L;
}

double DressedFrame::coefficient(Channel c) const {
  switch (c) {
    case Channel::Plus: return c_plus;
    case Channel::Z: return c_z;
    case Channel::Minus: return c_minus;
  }
  return 0;
}

double DressedFrame::weight(Channel c) const {
  const double k = coefficient(c);
  return c == Channel::Z ? 2 * k * k : k * k;
}

cplx DressedFrame::site_phase(const Vec3& r) const { return std::polar(1.0, -k_L.dot(r)); }

DressedFrame dressed_frame(double omega_L, double delta, double rabi_abs, const Vec3& k_L,
                           double rabi_phase) {
  if (rabi_abs < 0) throw InvalidArgument("Rabi magnitude must be non-negative");
  DressedFrame f;
  f.omega_L = omega_L;
  f.delta = delta;
  f.rabi_abs = rabi_abs;
  f.rabi_phase = rabi_phase;
  f.k_L = k_L;
  f.omega_bar = std::hypot(rabi_abs, delta);
  if (!(f.omega_bar > 0)) throw DegenerateFrame("zero drive at zero detuning leaves no dressed basis");
  const auto s = split_sums(delta, rabi_abs, f.omega_bar);
  f.c_plus = -s.omb / (2 * f.omega_bar);
  f.c_minus = s.opb / (2 * f.omega_bar);
  f.c_z = rabi_abs / (2 * f.omega_bar);
  return f;
}

DressedFrame dressed_frame(const LaserDrive& laser, const AtomParams& atom) {
  return dressed_frame(laser.omega_L, laser.omega_L - atom.omega_e, std::abs(laser.rabi),
                       laser.k_L, std::arg(laser.rabi));
}

Mat2c drive_hamiltonian(const DressedFrame& f, cplx site_phase) {
  // site_phase is exp(-i k.r), so the local drive is Omega * conj(site_phase).
  const cplx om = std::polar(f.rabi_abs, f.rabi_phase) * std::conj(site_phase);
  Mat2c h;
  h << f.delta / 2, std::conj(om) / 2.0, om / 2.0, -f.delta / 2;
  return h;
}

DressedStates dressed_states(const DressedFrame& f, cplx site_phase) {
  if (!(f.omega_bar > 0)) throw DegenerateFrame("dressed basis undefined");
  const auto s = split_sums(f.delta, f.rabi_abs, f.omega_bar);
  const cplx om = std::polar(1.0, f.rabi_phase) * std::conj(site_phase);
  const cplx ph = f.rabi_abs > 0 ? om / std::abs(om) : cplx(1.0);
  const double big = std::sqrt(s.opb / (2 * f.omega_bar));
  const double small = std::sqrt(s.omb / (2 * f.omega_bar));
  DressedStates d;
  d.a_plus_g = big;
  d.a_plus_e = ph * small;
  d.a_minus_g = -small;
  d.a_minus_e = ph * big;
  d.eps_plus = f.omega_bar / 2;
  d.eps_minus = -f.omega_bar / 2;
  return d;
}

SidebandWeights sideband_weights(const DressedFrame& f) {
  if (!(f.omega_bar > 0)) throw DegenerateFrame("dressed basis undefined");
  return {f.weight(Channel::Z), f.weight(Channel::Plus), f.weight(Channel::Minus)};
}

TwoAtomState ground_pair_state(const DressedFrame& f1, const DressedFrame& f2) {
  const auto s1 = dressed_states(f1);
  const auto s2 = dressed_states(f2);
  // <s|g> for s = +, -
  const cplx g1[2] = {std::conj(s1.a_plus_g), std::conj(s1.a_minus_g)};
  const cplx g2[2] = {std::conj(s2.a_plus_g), std::conj(s2.a_minus_g)};
  Eigen::Vector4cd v;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) v(2 * a + b) = g1[a] * g2[b];
  TwoAtomState st;
  st.rho = v * v.adjoint();
  return st;
}

double rabi_population(const DressedFrame& f, double t) {
  if (t < 0) throw InvalidArgument("time must be non-negative");
  const double s = std::sin(f.omega_bar * t / 2);
  const double r = f.rabi_abs / f.omega_bar;
  return r * r * s * s;
}

}  // namespace liddi
