#include "liddi/observables.hpp"

#include <cmath>

#include "liddi/errors.hpp"

namespace liddi {

namespace {

double real_delta(const CouplingTable& t, Channel c) {
  const cplx d = t.d(c)(0, 1);
  if (std::abs(d.imag()) > 1e-9 * std::abs(d))
    throw ComplexDelta(std::string("Delta_12 in channel ") + name(c) + " has a significant imaginary part");
  return d.real();
}

PotentialBreakdown finish(PotentialBreakdown p) {
  p.total = p.u_z + p.u_plus + p.u_minus;
  return p;
}

// -(|Omega|^2 / 2 delta^2) Delta^z cos(k.r12), shared so both callers agree bit for bit.
double linear_term(const CouplingTable& t, const DressedFrame& f, const Vec3& r12) {
  if (f.delta == 0) throw InvalidArgument("large-detuning forms need a nonzero detuning");
  const double x = f.rabi_abs / f.delta;
  return -0.5 * x * x * real_delta(t, Channel::Z) * f.cos_phase(r12);
}

}  // namespace

const char* name(StateSource s) {
  switch (s) {
    case StateSource::User: return "user";
    case StateSource::Steady: return "steady";
    case StateSource::Transient: return "transient";
    case StateSource::ClosedForm: return "closed_form";
    case StateSource::LargeDetuning: return "large_detuning";
  }
  return "user";
}

PotentialBreakdown liddi_potential(const TwoAtomState& rho, const CouplingTable& table,
                                   const DressedFrame& f, const Vec3& r12, StateSource source) {
  const double theta = f.k_L.dot(r12);
  const double p22 = rho.rho(1, 1).real(), p33 = rho.rho(2, 2).real();
  const cplx r23 = rho.rho(1, 2);
  PotentialBreakdown p;
  p.r12 = r12;
  p.source = source;
  p.u_z = -real_delta(table, Channel::Z) * f.weight(Channel::Z) * std::cos(theta) * (1 - 2 * (p22 + p33));
  p.u_plus = -real_delta(table, Channel::Plus) * f.weight(Channel::Plus) *
             2 * (std::polar(1.0, theta) * r23).real();
  p.u_minus = -real_delta(table, Channel::Minus) * f.weight(Channel::Minus) *
              2 * (std::polar(1.0, -theta) * r23).real();
  return finish(p);
}

RateBreakdown scattering_rate(const TwoAtomState& rho, const CouplingTable& table, const DressedFrame& f) {
  const double p_plus = (rho.rho(0, 0) + rho.rho(1, 1)).real();
  const double p_minus = (rho.rho(2, 2) + rho.rho(3, 3)).real();
  RateBreakdown r;
  r.r_z = table.g(Channel::Z)(0, 0).real() * f.weight(Channel::Z);
  r.r_plus = table.g(Channel::Plus)(0, 0).real() * f.weight(Channel::Plus) * p_plus;
  r.r_minus = table.g(Channel::Minus)(0, 0).real() * f.weight(Channel::Minus) * p_minus;
  r.total = r.r_z + r.r_plus + r.r_minus;
  return r;
}

PotentialBreakdown steady_state_potential_closed(const CouplingTable& table, const DressedFrame& f,
                                                 const Vec3& r12, double gp, double gm) {
  if (gp == 0 && gm == 0) throw ZeroDenominator("both sideband decay rates vanish");
  // (delta -+ Omega_bar)^2 = 4 Omega_bar^2 c_pm^2
  const double ob2 = f.omega_bar * f.omega_bar;
  const double den = 4 * ob2 * (gp * f.c_plus * f.c_plus + gm * f.c_minus * f.c_minus);
  const double r4 = std::pow(f.rabi_abs, 4);
  double ratio = 0;
  if (r4 > 0) {
    if (den == 0) throw ZeroDenominator("steady-state denominator vanishes");
    ratio = 4 * gp * gm * r4 / (den * den);
  }
  PotentialBreakdown p;
  p.r12 = r12;
  p.source = StateSource::ClosedForm;
  p.u_z = -f.weight(Channel::Z) * (1 - ratio) * real_delta(table, Channel::Z) * f.cos_phase(r12);
  return finish(p);
}

PotentialBreakdown transient_potential_closed(const CouplingTable& table, const DressedFrame& f,
                                              const Vec3& r12) {
  const double ob2 = f.omega_bar * f.omega_bar;
  const double r2 = f.rabi_abs * f.rabi_abs;
  const double c = f.cos_phase(r12);
  const double omb2 = 4 * ob2 * f.c_plus * f.c_plus;   // (Omega_bar - delta)^2
  const double opb2 = 4 * ob2 * f.c_minus * f.c_minus; // (Omega_bar + delta)^2
  PotentialBreakdown p;
  p.r12 = r12;
  p.source = StateSource::ClosedForm;
  p.u_z = -(r2 * f.delta * f.delta / (2 * ob2 * ob2)) * real_delta(table, Channel::Z) * c;
  p.u_plus = -(r2 * omb2 / (8 * ob2 * ob2)) * real_delta(table, Channel::Plus) * c;
  p.u_minus = -(r2 * opb2 / (8 * ob2 * ob2)) * real_delta(table, Channel::Minus) * c;
  return finish(p);
}

PotentialBreakdown large_detuning_potential(const CouplingTable& table, const DressedFrame& f,
                                            const Vec3& r12) {
  PotentialBreakdown p;
  p.r12 = r12;
  p.source = StateSource::LargeDetuning;
  p.u_z = linear_term(table, f, r12);
  const double x = f.rabi_abs / f.delta;
  const double pref = -0.5 * x * x * f.cos_phase(r12);
  if (f.delta > 0)
    p.u_minus = pref * real_delta(table, Channel::Minus);
  else
    p.u_plus = pref * real_delta(table, Channel::Plus);
  p.warning = std::abs(x) > 0.1;
  return finish(p);
}

double linear_comparator(const CouplingTable& table, const DressedFrame& f, const Vec3& r12) {
  return linear_term(table, f, r12);
}

}  // namespace liddi
