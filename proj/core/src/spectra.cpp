#include "liddi/spectra.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "liddi/errors.hpp"
#include "quadrature.hpp"

namespace liddi {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_pair(int nu, int nup) {
  if (nu < 0 || nu > 1 || nup < 0 || nup > 1) throw InvalidArgument("site index must be 0 or 1");
}

cplx lorentz_weight(const Lorentzian& l, int nu, int nup) {
  if (nu == nup) return nu == 0 ? l.w11 : l.w22;
  return nu == 0 ? l.w12 : std::conj(l.w12);
}

double lorentz_density(const Lorentzian& l, double w) {
  const double a = l.width / 2, x = w - l.omega0;
  return a / (kPi * (x * x + a * a));
}

// Unit-weight PV integral over the whole real line: a symmetric fold around
// w_i inside the window plus closed-form tails outside it.
double lorentz_pv(const Lorentzian& l, double wi, const PvOptions& opt) {
  const double a = l.width / 2, s = wi - l.omega0;
  const double h = opt.window_factor * l.width;
  auto fold = [&](double u) {
    return (lorentz_density(l, wi + u) - lorentz_density(l, wi - u)) / u;
  };
  std::vector<double> pts{0.0};
  for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
    const double u = std::abs(s) + k * a;
    if (u > 0 && u < h) pts.push_back(u);
  }
  pts.push_back(h);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  detail::QuadOptions q;
  q.rel_tol = opt.rel_tol * 1e-2;
  q.abs_tol = q.rel_tol * 1e-4 / a;  // Delta is of order 1/a for unit weight
  auto r = detail::integrate<double>(fold, pts, q);
  if (!r.converged) throw QuadratureFailure("Lorentzian principal value did not converge");

  const double p = (s + h) / a, m = (s - h) / a;
  double arc;  // atan(p) - atan(m) - pi
  if (p > 0 && m < 0)
    arc = std::atan(1 / m) - std::atan(1 / p);
  else
    arc = std::atan(p) - std::atan(m) - kPi;
  const double logs = 0.5 * std::log(((s + h) * (s + h) + a * a) / ((s - h) * (s - h) + a * a));
  const double tails = a / (kPi * (s * s + a * a)) * (logs + (s / a) * arc);
  return r.value + tails;
}

bool near_mode(const IdealCavity& c, double w, long* n_out = nullptr) {
  const double spacing = kPi / c.length;
  const long n = std::lround(w / spacing);
  if (n_out) *n_out = n;
  if (n < 1) return false;
  const double wn = n * spacing;
  return std::abs(w - wn) <= 1e-9 * wn;
}

}  // namespace

// ---------------------------------------------------------------- tabulated

struct Tabulated::Interp {
  using P = boost::math::interpolators::pchip<std::vector<double>>;
  P g11, g22, g12_re, g12_im;
};

Tabulated::Tabulated(std::vector<double> omega, std::vector<double> g11, std::vector<double> g22,
                     std::vector<cplx> g12)
    : omega_(std::move(omega)) {
  const std::size_t n = omega_.size();
  if (n < 16) throw InvalidArgument("tabulated spectrum needs at least 16 rows");
  if (g11.size() != n || g22.size() != n || g12.size() != n)
    throw InvalidArgument("tabulated spectrum columns differ in length");
  for (std::size_t i = 1; i < n; ++i)
    if (!(omega_[i] > omega_[i - 1])) throw InvalidArgument("tabulated omega must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i)
    if (g11[i] < 0 || g22[i] < 0) throw InvalidArgument("tabulated G_11 and G_22 must be non-negative");
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = g12[i].real();
    im[i] = g12[i].imag();
  }
  auto x = [&] { return omega_; };
  interp_ = std::make_shared<const Interp>(Interp{Interp::P(x(), std::move(g11)),
                                                  Interp::P(x(), std::move(g22)),
                                                  Interp::P(x(), std::move(re)),
                                                  Interp::P(x(), std::move(im))});
}

Tabulated Tabulated::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open tabulated spectrum " + path);
  std::string line;
  std::getline(in, line);
  line.erase(std::remove(line.begin(), line.end(), '\r'), line.end());
  if (line != "omega,g11,g22,g12_re,g12_im")
    throw InvalidArgument(path + ": header must be omega,g11,g22,g12_re,g12_im");
  std::vector<double> w, a, b;
  std::vector<cplx> c;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double v[5];
    for (double& x : v)
      if (!(ss >> x)) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 5 numbers");
    w.push_back(v[0]);
    a.push_back(v[1]);
    b.push_back(v[2]);
    c.emplace_back(v[3], v[4]);
  }
  return Tabulated(std::move(w), std::move(a), std::move(b), std::move(c));
}

cplx Tabulated::g(int nu, int nup, double w) const {
  check_pair(nu, nup);
  if (w < omega_.front() || w > omega_.back()) return 0.0;
  const auto& I = *interp_;
  if (nu == nup) return nu == 0 ? I.g11(w) : I.g22(w);
  const cplx z(I.g12_re(w), I.g12_im(w));
  return nu == 0 ? z : std::conj(z);
}

namespace {

cplx tabulated_pv(const Tabulated& t, int nu, int nup, double wi, const PvOptions& opt) {
  const double lo = t.omega_min(), hi = t.omega_max();
  const auto& grid = t.omega();
  detail::QuadOptions q;
  q.rel_tol = opt.rel_tol * 1e-2;
  q.max_intervals = static_cast<int>(grid.size()) * 4 + 4000;
  auto g = [&](double w) { return t.g(nu, nup, w); };
  double gmax = 0;
  for (double x : grid) gmax = std::max(gmax, std::abs(g(x)));
  q.abs_tol = q.rel_tol * 1e-4 * gmax;

  if (wi == lo || wi == hi) throw OutOfRange("principal value undefined at the grid edge");
  if (wi < lo || wi > hi) {
    auto r = detail::integrate<cplx>([&](double w) { return g(w) / (w - wi); }, grid, q);
    if (!r.converged) throw QuadratureFailure("tabulated dispersion integral did not converge");
    return r.value;
  }
  const double h = std::min(wi - lo, hi - wi);
  std::vector<double> pts{0.0, h};
  for (double x : grid) {
    const double u = std::abs(x - wi);
    if (u > 0 && u < h) pts.push_back(u);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto fold = detail::integrate<cplx>([&](double u) { return (g(wi + u) - g(wi - u)) / u; }, pts, q);
  if (!fold.converged) throw QuadratureFailure("tabulated principal value did not converge");
  cplx rest = 0;
  std::vector<double> rp;
  if (wi - lo > h) {
    for (double x : grid)
      if (x < wi - h) rp.push_back(x);
    rp.push_back(wi - h);
  } else if (hi - wi > h) {
    rp.push_back(wi + h);
    for (double x : grid)
      if (x > wi + h) rp.push_back(x);
  }
  if (rp.size() > 1) {
    auto r = detail::integrate<cplx>([&](double w) { return g(w) / (w - wi); }, rp, q);
    if (!r.converged) throw QuadratureFailure("tabulated principal value did not converge");
    rest = r.value;
  }
  return fold.value + rest;
}

}  // namespace

// ---------------------------------------------------------------- spectrum

void ReservoirSpectrum::validate() const {
  std::visit(overloaded{
                 [](const FreeSpace& f) {
                   if (!(f.dipole.norm() > 0)) throw InvalidArgument("free-space dipole must be nonzero");
                 },
                 [](const IdealCavity& c) {
                   if (!(c.length > 0) || !(c.area > 0)) throw InvalidArgument("cavity length and area must be positive");
                   if (c.d_perp2 < 0) throw InvalidArgument("cavity d_perp^2 must be non-negative");
                   if (c.regulator < 0 || c.mode_cutoff < 0) throw InvalidArgument("cavity regulator and cutoff must be non-negative");
                 },
                 [](const Lorentzian& l) {
                   if (l.w11 < 0 || l.w22 < 0) throw InvalidArgument("Lorentzian self weights must be non-negative");
                   if (!(l.width > 0)) throw InvalidArgument("Lorentzian width must be positive");
                 },
                 [](const Tabulated&) {},
             },
             model);
  if (tau_c && !(*tau_c > 0)) throw InvalidArgument("tau_c must be positive");
}

double ReservoirSpectrum::correlation_time(const DressedFrame& frame) const {
  if (tau_c) return *tau_c;
  return std::visit(overloaded{
                        [&](const FreeSpace&) { return 1.0 / frame.omega(Channel::Minus); },
                        [](const IdealCavity& c) { return c.length; },
                        [](const Lorentzian& l) { return 1.0 / l.width; },
                        [](const Tabulated& t) { return 1.0 / (t.omega_max() - t.omega_min()); },
                    },
                    model);
}

double free_space_gamma(const CVec3& dipole, double omega) {
  if (!(omega > 0)) throw InvalidArgument("frequency must be positive");
  return dipole.squaredNorm() * omega * omega * omega / (3 * kPi);
}

cplx gamma_at(const ReservoirSpectrum& spec, int nu, int nup, double omega, const SitePair&) {
  check_pair(nu, nup);
  if (!(omega > 0)) throw InvalidArgument("frequency must be positive");
  return std::visit(
      overloaded{
          [&](const FreeSpace& f) -> cplx { return nu == nup ? free_space_gamma(f.dipole, omega) : 0.0; },
          [&](const IdealCavity& c) -> cplx {
            if (near_mode(c, omega)) throw ResonantMode("frequency coincides with a cavity mode");
            return 0.0;
          },
          [&](const Lorentzian& l) -> cplx { return 2 * kPi * lorentz_weight(l, nu, nup) * lorentz_density(l, omega); },
          [&](const Tabulated& t) -> cplx {
            if (omega < t.omega_min() || omega > t.omega_max())
              throw OutOfRange("frequency outside the tabulated grid");
            return 2 * kPi * t.g(nu, nup, omega);
          },
      },
      spec.model);
}

cplx delta_at(const ReservoirSpectrum& spec, int nu, int nup, double omega_i, const SitePair& sites,
              const PvOptions& opt) {
  check_pair(nu, nup);
  if (!(omega_i > 0)) throw InvalidArgument("frequency must be positive");
  return std::visit(
      overloaded{
          [&](const FreeSpace&) -> cplx { return 0.0; },
          [&](const IdealCavity& c) -> cplx {
            if (nu == nup) return 0.0;
            return cavity_rddi(c, sites[0].z(), sites[1].z(), omega_i);
          },
          [&](const Lorentzian& l) -> cplx { return lorentz_weight(l, nu, nup) * lorentz_pv(l, omega_i, opt); },
          [&](const Tabulated& t) -> cplx { return tabulated_pv(t, nu, nup, omega_i, opt); },
      },
      spec.model);
}

// ---------------------------------------------------------------- table

void CouplingTable::refresh(const DressedFrame& f) {
  tilde_gamma_plus = gamma[idx(Channel::Plus)](0, 0).real() * f.weight(Channel::Plus);
  tilde_gamma_minus = gamma[idx(Channel::Minus)](0, 0).real() * f.weight(Channel::Minus);
  tilde_gamma_z = gamma[idx(Channel::Z)](0, 0).real() * f.c_z * f.c_z;
  tilde_delta_plus = delta[idx(Channel::Plus)](0, 1).real() * f.weight(Channel::Plus);
  tilde_delta_minus = delta[idx(Channel::Minus)](0, 1).real() * f.weight(Channel::Minus);
}

CouplingTable flat_table(const DressedFrame& frame, double gamma11, double delta12, double gamma12) {
  CouplingTable t;
  for (int i = 0; i < 3; ++i) {
    t.gamma[i] << gamma11, gamma12, gamma12, gamma11;
    t.delta[i] << 0.0, delta12, delta12, 0.0;
  }
  t.refresh(frame);
  return t;
}

CouplingTable coupling_table(const ReservoirSpectrum& spec, const DressedFrame& frame,
                             const SitePair& positions, const CouplingOptions& opt) {
  CouplingTable t;
  for (Channel c : kChannels) {
    const double w = frame.omega(c);
    if (!(w > 0)) throw InvalidArgument(std::string("sideband frequency ") + name(c) + " is not positive");
    Mat2c g, d;
    g(0, 0) = gamma_at(spec, 0, 0, w, positions);
    g(1, 1) = gamma_at(spec, 1, 1, w, positions);
    g(0, 1) = gamma_at(spec, 0, 1, w, positions);
    g(1, 0) = std::conj(g(0, 1));
    if (spec.sidecar) {
      const double fs = free_space_gamma(spec.sidecar->dipole, w);
      g(0, 0) += fs;
      g(1, 1) += fs;
    }
    // Hermitian parts of the diagonal are real by construction.
    g(0, 0) = g(0, 0).real();
    g(1, 1) = g(1, 1).real();
    if (std::holds_alternative<IdealCavity>(spec.model)) {
      const auto& cav = std::get<IdealCavity>(spec.model);
      d(0, 1) = cavity_rddi(cav, positions[0].z(), positions[1].z(), w, opt.cavity);
    } else {
      d(0, 1) = delta_at(spec, 0, 1, w, positions, opt.pv);
    }
    d(1, 0) = std::conj(d(0, 1));
    const double self = opt.self_shift ? (*opt.self_shift)[idx(c)] : 0.0;
    d(0, 0) = self;
    d(1, 1) = self;
    t.gamma[idx(c)] = g;
    t.delta[idx(c)] = d;
  }
  t.refresh(frame);
  return t;
}

// ---------------------------------------------------------------- diagnostics

MarkovReport markov_validity(double tau_c, const DressedFrame& frame, const CouplingTable& table,
                             double T, double margin) {
  if (!(T > 0)) throw InvalidArgument("coarse-graining time must be positive");
  MarkovReport r;
  r.T = T;
  r.tau_c = tau_c;
  r.margin = margin;
  for (int i = 0; i < 3; ++i)
    r.max_rate = std::max({r.max_rate, table.gamma[i].cwiseAbs().maxCoeff(),
                           table.delta[i].cwiseAbs().maxCoeff()});
  r.secular_ratio = T * frame.omega_bar;
  r.markov_ratio = T / tau_c;
  r.resolution_ratio = T * r.max_rate;
  r.ok_secular = r.secular_ratio >= margin;
  r.ok_markov = r.markov_ratio >= margin;
  r.ok_resolution = r.resolution_ratio <= 1.0 / margin;
  return r;
}

MarkovReport markov_validity(const ReservoirSpectrum& spec, const DressedFrame& frame,
                             const CouplingTable& table, double T, double margin) {
  return markov_validity(spec.correlation_time(frame), frame, table, T, margin);
}

namespace {

// Window half width in units of 1/T; the tail beyond it is closed analytically.
constexpr double kSincWindow = 200.0;

// 1/2 - Si(x)/pi from the auxiliary-function asymptotics; x >= kSincWindow keeps the
// truncated series far below double precision.
double sinc_tail_factor(double x) {
  const double y = 1.0 / (x * x);
  const double f = (1 - y * (2 - y * (24 - y * (720 - y * 40320)))) / x;
  const double g = y * (1 - y * (6 - y * (120 - y * (5040 - y * 362880))));
  return (f * std::cos(x) + g * std::sin(x)) / kPi;
}

}  // namespace

cplx coarse_grained_rate(const ReservoirSpectrum& spec, const DressedFrame& frame, double T, int nu,
                         int nup, Channel i, const SitePair& sites, const PvOptions& opt) {
  check_pair(nu, nup);
  if (!(T > 0)) throw InvalidArgument("coarse-graining time must be positive");
  if (std::holds_alternative<IdealCavity>(spec.model))
    throw InvalidArgument("coarse-grained rates are not available for the ideal cavity");
  const double wi = frame.omega(i);
  if (!(wi > 0)) throw InvalidArgument("sideband frequency must be positive");

  // 0.5 Gamma - i Delta on the whole axis, with zero density where the model has none.
  auto chi = [&](double w) -> cplx {
    cplx gam = 0, del = 0;
    std::visit(overloaded{
                   [&](const FreeSpace& f) {
                     if (nu == nup && w > 0) gam = free_space_gamma(f.dipole, w);
                   },
                   [&](const IdealCavity&) {},
                   [&](const Lorentzian& l) {
                     gam = 2 * kPi * lorentz_weight(l, nu, nup) * lorentz_density(l, w);
                     del = lorentz_weight(l, nu, nup) * lorentz_pv(l, w, opt);
                   },
                   [&](const Tabulated& t) {
                     gam = 2 * kPi * t.g(nu, nup, w);
                     del = tabulated_pv(t, nu, nup, w, opt);
                   },
               },
               spec.model);
    return 0.5 * gam - cplx(0, 1) * del;
  };
  (void)sites;

  const cplx c0 = chi(wi);
  // The window must also reach past any narrow feature, or the constant tail misses it.
  double H = kSincWindow / T;
  if (const auto* l = std::get_if<Lorentzian>(&spec.model))
    H = std::max(H, std::abs(l->omega0 - wi) + 50 * l->width);
  std::vector<double> pts;
  for (double u = 0; u < H; u += kPi / T) pts.push_back(u);
  pts.push_back(H);
  if (const auto* l = std::get_if<Lorentzian>(&spec.model)) {
    const double u0 = std::abs(l->omega0 - wi);
    for (double k : {-1.0, 0.0, 1.0})
      if (u0 + k * l->width > 0 && u0 + k * l->width < H) pts.push_back(u0 + k * l->width);
    std::sort(pts.begin(), pts.end());
  }
  detail::QuadOptions q;
  q.rel_tol = std::max(opt.rel_tol, 1e-9);
  q.abs_tol = q.rel_tol * 1e-2 * std::abs(c0);
  q.max_intervals = static_cast<int>(pts.size()) * 8 + 4000;
  auto body = detail::integrate<cplx>(
      [&](double u) { return (chi(wi + u) + chi(wi - u) - 2.0 * c0) * std::sin(u * T) / (kPi * u); },
      pts, q);
  if (!body.converged) throw QuadratureFailure("coarse-grained overlap did not converge");
  const cplx tail = (chi(wi + H) + chi(wi - H) - 2.0 * c0) * sinc_tail_factor(H * T);
  return c0 + body.value + tail;
}

}  // namespace liddi
