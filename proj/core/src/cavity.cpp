#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "liddi/errors.hpp"
#include "liddi/spectra.hpp"

namespace liddi {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

struct ModeSum {
  double x1, x2;
  double spacing;  // pi / L
  double wi;

  double s(long n) const { return std::sin(n * x1) * std::sin(n * x2); }
};

// Sum over n of s_n wi^2 / (w_n (w_n - wi)) for n in [from, to]; absolutely convergent.
double remainder(const ModeSum& m, long from, long to) {
  double acc = 0;
  for (long n = from; n <= to; ++n) {
    const double wn = n * m.spacing;
    acc += m.s(n) * (m.wi * m.wi / (wn * (wn - m.wi)));
  }
  return acc;
}

double abel_sum(const ModeSum& m, double lambda, long N) {
  double acc = 0;
  for (long n = 1; n <= N; ++n) {
    const double wn = n * m.spacing;
    acc += m.s(n) * (wn / (wn - m.wi)) * std::exp(-wn / lambda);
  }
  return acc;
}

}  // namespace

double cavity_rddi(const IdealCavity& cav, double z1, double z2, double omega_i,
                   const CavitySumOptions& opt) {
  const double L = cav.length;
  if (z1 < 0 || z1 > L || z2 < 0 || z2 > L) throw InvalidArgument("atom positions must lie inside the cavity");
  if (!(omega_i > 0)) throw InvalidArgument("frequency must be positive");
  const double spacing = kPi / L;
  const long m = std::lround(omega_i / spacing);
  if (m >= 1 && std::abs(omega_i - m * spacing) <= 1e-9 * m * spacing)
    throw ResonantMode("frequency coincides with cavity mode " + std::to_string(m));
  if (z1 == 0 || z1 == L || z2 == 0 || z2 == L) return 0.0;
  if (z1 == z2) throw NonConvergent("mode sum diverges for coincident positions");

  const ModeSum ms{kPi * z1 / L, kPi * z2 / L, spacing, omega_i};
  const double pref = cav.d_perp2 / (L * cav.area);
  const long order = static_cast<long>(omega_i / spacing) + 1;

  if (cav.method == CavitySummation::Kummer) {
    // w_n/(w_n - wi) = 1 + wi/w_n + wi^2/(w_n (w_n - wi)). The first piece Abel-sums
    // to zero for z1 != z2; the second has the closed form below.
    const double a1 = (L / kPi) * 0.5 *
                      std::log(std::abs(std::sin(0.5 * (ms.x1 + ms.x2)) /
                                        std::sin(0.5 * std::abs(ms.x1 - ms.x2))));
    const long N = cav.mode_cutoff > 0 ? cav.mode_cutoff : std::max(4096L, 2000 * order);
    const double head = remainder(ms, 1, N);
    const double full = head + remainder(ms, N + 1, 2 * N);
    const double r1 = pref * (omega_i * a1 + head);
    const double r2 = pref * (omega_i * a1 + full);
    // Measured against the size of the pieces, since the closed form and the
    // remainder can cancel to a small total.
    const double scale = std::max(std::abs(r2), pref * (std::abs(omega_i * a1) + std::abs(head)));
    if (std::abs(r2 - r1) > opt.tolerance * scale)
      throw NonConvergent("cavity mode sum changed by more than the tolerance when the cutoff doubled");
    return r2;
  }

  const double lambda = cav.regulator > 0 ? cav.regulator : 50 * omega_i;
  auto richardson = [&](double lam) {
    const long N = cav.mode_cutoff > 0 ? cav.mode_cutoff
                                       : static_cast<long>(std::ceil(40 * lam / spacing)) + order;
    return 2 * abel_sum(ms, 2 * lam, 2 * N) - abel_sum(ms, lam, N);
  };
  const double r1 = pref * richardson(lambda);
  const double r2 = pref * richardson(2 * lambda);
  if (std::abs(r2 - r1) > opt.tolerance * std::abs(r2))
    throw NonConvergent("regulated cavity sum changed by more than the tolerance when the regulator doubled");
  return r2;
}

}  // namespace liddi
