#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "liddi/errors.hpp"
#include "liddi/spectra.hpp"
#include "liddi_app/oracles.hpp"

using namespace liddi;
using doctest::Approx;

namespace {

const double kPi = std::acos(-1.0);

ReservoirSpectrum lorentz(double W, double w0, double width) {
  Lorentzian l;
  l.w11 = l.w22 = W;
  l.w12 = W;
  l.omega0 = w0;
  l.width = width;
  return ReservoirSpectrum(l);
}

Tabulated sampled(double lo, double hi, int n, auto&& g11) {
  std::vector<double> w(n), a(n), b(n);
  std::vector<cplx> c(n);
  for (int i = 0; i < n; ++i) {
    w[i] = lo + (hi - lo) * i / (n - 1);
    a[i] = b[i] = g11(w[i]);
    c[i] = a[i];
  }
  return Tabulated(w, a, b, c);
}

IdealCavity cavity() {
  IdealCavity c;
  c.length = 1.0;
  c.area = 1.0;
  c.d_perp2 = 1.0;
  return c;
}

}  // namespace

TEST_CASE("free-space rate") {
  const CVec3 d(1, 0, 0);
  CHECK(free_space_gamma(d, 1.0) == Approx(0.1061033).epsilon(1e-7));
  CHECK(free_space_gamma(d, 2.0) / free_space_gamma(d, 1.0) == 8.0);
  CHECK(free_space_gamma(2.0 * d, 1.3) / free_space_gamma(d, 1.3) == Approx(4.0).epsilon(1e-15));
  ReservoirSpectrum fs(FreeSpace{d});
  CHECK(gamma_at(fs, 0, 1, 1.0) == cplx(0.0));
  CHECK(delta_at(fs, 0, 1, 1.0) == cplx(0.0));
}

TEST_CASE("Lorentzian rate and normalization") {
  const auto s = lorentz(1.0, 10.0, 0.2);
  CHECK(gamma_at(s, 0, 0, 10.0).real() == Approx(20.0).epsilon(1e-14));
  // Trapezoid over +-2000 widths; the missing tails carry a/(pi*400) of the weight.
  const auto far = lorentz(1.0, 1000.0, 0.2);
  double acc = 0;
  const int n = 2000000;
  const double lo = 1000.0 - 400, hi = 1000.0 + 400, h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double w = lo + i * h;
    acc += (i == 0 || i == n ? 0.5 : 1.0) * gamma_at(far, 0, 0, w).real() / (2 * kPi);
  }
  CHECK(acc * h == Approx(1.0).epsilon(5e-4));
}

TEST_CASE("Lorentzian dispersion against the contour result") {
  const auto s = lorentz(1.0, 10.0, 0.2);
  CHECK(delta_at(s, 0, 1, 9.0).real() == Approx(0.990099).epsilon(1e-6));
  CHECK(delta_at(s, 0, 1, 9.0).real() > 0);
  double worst = 0;
  for (int k = -500; k <= 500; ++k) {
    const double wi = 10.0 + k * 0.002;
    if (std::abs(wi - 10.0) < 0.2 / 100) continue;
    const double ref = oracle::lorentz_delta(1.0, 10.0, 0.2, wi);
    worst = std::max(worst, std::abs(delta_at(s, 0, 1, wi).real() - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-6);
  CHECK(std::abs(delta_at(s, 0, 1, 10.0).real()) < 1e-8);
  // Far from the line the tails carry everything.
  CHECK(delta_at(s, 0, 1, 50.0).real() == Approx(oracle::lorentz_delta(1, 10, 0.2, 50)).epsilon(1e-9));
}

TEST_CASE("tabulated dispersion on closed-form profiles") {
  // Constant density c on [a, b]: Delta = c ln((b - w)/(w - a)).
  const auto flat = sampled(1.0, 21.0, 64, [](double) { return 0.3; });
  ReservoirSpectrum fs(flat);
  for (double wi : {2.0, 7.5, 11.0, 19.9}) {
    const double ref = 0.3 * std::log((21.0 - wi) / (wi - 1.0));
    CHECK(std::abs(delta_at(fs, 0, 0, wi).real() - ref) < 1e-9);
  }
  CHECK(std::abs(delta_at(fs, 0, 1, 11.0).real()) < 1e-12);

  // Linear density alpha + beta w; the monotone cubic is exact on it.
  const auto ramp = sampled(2.0, 12.0, 40, [](double w) { return 0.5 + 0.1 * w; });
  ReservoirSpectrum rs(ramp);
  for (double wi : {3.0, 6.1, 10.5}) {
    const double ref = (0.5 + 0.1 * wi) * std::log((12.0 - wi) / (wi - 2.0)) + 0.1 * (12.0 - 2.0);
    CHECK(std::abs(delta_at(rs, 1, 1, wi).real() - ref) < 1e-9);
  }
  // Outside the grid the integral is ordinary.
  const double out = 0.3 * std::log((21.0 - 30.0) / (1.0 - 30.0));
  CHECK(std::abs(delta_at(fs, 0, 0, 30.0).real() - out) < 1e-9);

  CHECK_THROWS_AS(gamma_at(fs, 0, 0, 0.5), OutOfRange);
  CHECK(gamma_at(fs, 0, 0, 5.0).real() == Approx(2 * kPi * 0.3));
}

TEST_CASE("symmetric tabulated profile gives zero shift at its center") {
  const auto t = sampled(4.0, 16.0, 121, [](double w) { return std::exp(-(w - 10) * (w - 10)); });
  ReservoirSpectrum s(t);
  CHECK(std::abs(delta_at(s, 0, 0, 10.0).real()) < 1e-10);
}

TEST_CASE("flat tabulated spectrum gives equal channel shifts") {
  const auto t = sampled(1.0, 2e6 + 1.0, 64, [](double) { return 1.0; });
  ReservoirSpectrum s(t);
  const auto f = dressed_frame(1e6, 3.0, 4.0);
  const auto tab = coupling_table(s, f, {Vec3::Zero(), Vec3::Zero()});
  const double dz = tab.d(Channel::Z)(0, 1).real();
  CHECK(std::abs(tab.d(Channel::Plus)(0, 1).real() - dz) < 1e-4);
  CHECK(std::abs(tab.d(Channel::Minus)(0, 1).real() - dz) < 1e-4);
}

TEST_CASE("tabulated CSV loader") {
  const std::string path = (std::filesystem::temp_directory_path() / "liddi_spectrum_test.csv").string();
  {
    std::ofstream out(path);
    out << "omega,g11,g22,g12_re,g12_im\n";
    for (int i = 0; i < 20; ++i) out << 1.0 + i << ",0.5,0.25,0.1,0.05\n";
  }
  const auto t = Tabulated::load_csv(path);
  CHECK(t.omega().size() == 20);
  CHECK(t.g(0, 1, 4.5) == cplx(0.1, 0.05));
  CHECK(t.g(1, 0, 4.5) == cplx(0.1, -0.05));
  {
    std::ofstream out(path);
    out << "omega,g11\n1,2\n";
  }
  CHECK_THROWS_AS(Tabulated::load_csv(path), InvalidArgument);
  std::vector<double> w(20), g(20, 1.0);
  for (int i = 0; i < 20; ++i) w[i] = 20 - i;
  CHECK_THROWS_AS(Tabulated(w, g, g, std::vector<cplx>(20)), InvalidArgument);
  std::filesystem::remove(path);
}

TEST_CASE("cavity mode sum") {
  const auto c = cavity();
  const double L = c.length, fsr = kPi / L;
  SUBCASE("node") {
    CHECK(cavity_rddi(c, 0.0, 0.37, 10.3) == 0.0);
    CHECK(cavity_rddi(c, 0.37, L, 10.3) == 0.0);
  }
  SUBCASE("swap symmetry is exact") {
    const double a = cavity_rddi(c, 0.213, 0.671, 17.0);
    const double b = cavity_rddi(c, 0.671, 0.213, 17.0);
    CHECK(a == b);
  }
  SUBCASE("cutoff doubling") {
    for (auto [z1, z2, w] : {std::tuple{0.21, 0.64, 10.3}, {0.33, 0.5, 31.0}, {0.1, 0.9, 4.0}}) {
      IdealCavity a = c, b = c;
      a.mode_cutoff = 200000;
      b.mode_cutoff = 400000;
      const double ra = cavity_rddi(a, z1, z2, w), rb = cavity_rddi(b, z1, z2, w);
      CHECK(std::abs(ra - rb) < 1e-6 * std::abs(rb));
    }
  }
  SUBCASE("small total from cancelling pieces") {
    // Closed-form part and remainder nearly cancel here; the total is ~1% of either.
    IdealCavity a = c, b = c;
    a.length = b.length = 0.94;
    b.mode_cutoff = 400000;
    const double r = cavity_rddi(a, 0.21, 0.64, 10 * kPi);
    const double ref = cavity_rddi(b, 0.21, 0.64, 10 * kPi);
    CHECK(std::abs(r - ref) < 1e-6 * std::abs(ref));
  }
  SUBCASE("near-resonant pole dominance") {
    const int m = 5;
    const double wi = m * fsr - 0.5e-3 * fsr;
    const double z1 = 0.5 * L / m, z2 = 2.5 * L / m;  // antinodes of mode 5, opposite signs
    const double full = cavity_rddi(c, z1, z2, wi);
    const double pole = oracle::cavity_pole(L, c.area, c.d_perp2, m, z1, z2, wi);
    CHECK(std::abs(full - pole) < 0.01 * std::abs(pole));
  }
  SUBCASE("regulated route agrees") {
    IdealCavity r = c;
    r.method = CavitySummation::AbelRichardson;
    CavitySumOptions loose;
    loose.tolerance = 1e-3;
    const double k = cavity_rddi(c, 0.21, 0.64, 10.3);
    const double a = cavity_rddi(r, 0.21, 0.64, 10.3, loose);
    CHECK(std::abs(a - k) < 1e-3 * std::abs(k));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(cavity_rddi(c, 0.2, 0.4, 3 * fsr), ResonantMode);
    CHECK_THROWS_AS(cavity_rddi(c, 0.2, 1.4, 10.0), InvalidArgument);
    ReservoirSpectrum s(c);
    CHECK(gamma_at(s, 0, 0, 2.5 * fsr) == cplx(0.0));
    CHECK_THROWS_AS(gamma_at(s, 0, 0, 2 * fsr), ResonantMode);
  }
}

TEST_CASE("coupling table") {
  const auto f = dressed_frame(100.0, 3.0, 4.0);
  SUBCASE("flat rates give the dressed weights") {
    const auto t = flat_table(f, 2.0, 0.7);
    CHECK(t.tilde_gamma_plus == Approx(0.04 * 2.0));
    CHECK(t.tilde_gamma_minus == Approx(0.64 * 2.0));
    CHECK(t.tilde_gamma_z == Approx(0.16 * 2.0));
    CHECK(t.tilde_delta_minus == Approx(0.64 * 0.7));
  }
  SUBCASE("Hermitian in the site indices") {
    Lorentzian l;
    l.w11 = 1;
    l.w22 = 0.8;
    l.w12 = cplx(0.3, 0.2);
    l.omega0 = 101;
    l.width = 0.5;
    const auto t = coupling_table(ReservoirSpectrum(l), f, {Vec3::Zero(), Vec3::Zero()});
    for (int i = 0; i < 3; ++i) {
      CHECK((t.delta[i] - t.delta[i].adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((t.gamma[i] - t.gamma[i].adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("cavity with a free-space sidecar") {
    ReservoirSpectrum s(cavity());
    s.sidecar = FreeSpace{CVec3(0.1, 0, 0)};
    const auto t = coupling_table(s, dressed_frame(30.0, 3.0, 4.0), {Vec3(0, 0, 0.3), Vec3(0, 0, 0.55)});
    CHECK(t.g(Channel::Z)(0, 0).real() == Approx(free_space_gamma(CVec3(0.1, 0, 0), 30.0)));
    CHECK(t.g(Channel::Z)(0, 1) == cplx(0.0));
    CHECK(t.d(Channel::Z)(0, 1).real() == cavity_rddi(cavity(), 0.3, 0.55, 30.0));
  }
  SUBCASE("bare limit keeps only the lower channel") {
    const auto b = dressed_frame(100.0, 1.0, 0.0);
    const auto t = flat_table(b, 1.0, 1.0);
    CHECK(t.tilde_gamma_plus == 0.0);
    CHECK(t.tilde_delta_plus == 0.0);
    CHECK(t.tilde_gamma_z == 0.0);
    CHECK(t.tilde_delta_minus == 1.0);
  }
}

TEST_CASE("Markov diagnostics") {
  const auto f = dressed_frame(100.0, 3.0, 4.0);
  auto t = flat_table(f, 0.001, 0.0005);
  const auto ok = markov_validity(0.01, f, t, 10.0);
  CHECK(ok.ok_secular);
  CHECK(ok.ok_markov);
  CHECK(ok.ok_resolution);
  const auto short_t = markov_validity(0.01, f, t, 0.05);
  CHECK_FALSE(short_t.ok_secular);
  CHECK(short_t.secular_ratio == Approx(0.25));
  const auto long_t = markov_validity(0.01, f, t, 1e6);
  CHECK_FALSE(long_t.ok_resolution);
  CHECK(lorentz(1, 10, 0.2).correlation_time(f) == Approx(5.0));
}

TEST_CASE("coarse-grained overlap") {
  const double W = 1, w0 = 100.0, width = 0.2;
  const auto s = lorentz(W, w0, width);
  const auto f = dressed_frame(99.7, 1.0, 0.0);  // lower sideband at 98.7
  const double wi = f.omega(Channel::Minus);
  SUBCASE("closed-form agreement across T") {
    for (double T : {0.5, 5.0, 50.0, 500.0}) {
      const cplx got = coarse_grained_rate(s, f, T, 0, 1, Channel::Minus);
      const cplx ref = oracle::lorentz_coarse(W, w0, width, wi, T);
      CHECK(std::abs(got - ref) < 1e-6 * std::abs(ref));
    }
  }
  SUBCASE("long windows approach the Markov rate") {
    const double T = 1e3 / width;
    const cplx got = coarse_grained_rate(s, f, T, 0, 1, Channel::Z);
    const cplx lim = 0.5 * gamma_at(s, 0, 1, f.omega_L) - cplx(0, 1) * delta_at(s, 0, 1, f.omega_L);
    CHECK(std::abs(got - lim) < 5e-3 * std::abs(lim));
  }
  SUBCASE("short windows vanish") {
    const cplx got = coarse_grained_rate(s, f, 1e-4, 0, 1, Channel::Minus);
    CHECK(std::abs(got) < 2e-4);
  }
  SUBCASE("flat density") {
    const auto t = sampled(1.0, 2e4 + 1.0, 64, [](double) { return 0.25; });
    ReservoirSpectrum fs(t);
    const auto g = dressed_frame(1e4 + 1.0, 1.0, 0.0);
    const cplx got = coarse_grained_rate(fs, g, 3.0, 0, 0, Channel::Z);
    const cplx lim = 0.5 * gamma_at(fs, 0, 0, g.omega_L) - cplx(0, 1) * delta_at(fs, 0, 0, g.omega_L);
    CHECK(std::abs(got - lim) < 1e-9);
  }
  SUBCASE("cavity is rejected") {
    CHECK_THROWS_AS(coarse_grained_rate(ReservoirSpectrum(cavity()), f, 1.0, 0, 1, Channel::Z), InvalidArgument);
  }
}
