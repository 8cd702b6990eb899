#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "liddi/errors.hpp"
#include "liddi/liouvillian.hpp"
#include "liddi_app/oracles.hpp"

using namespace liddi;
using doctest::Approx;

namespace {

CouplingTable table(const DressedFrame& f, std::array<double, 3> g11, std::array<double, 3> d12) {
  CouplingTable t;
  for (int i = 0; i < 3; ++i) {
    t.gamma[i] << g11[i], 0.0, 0.0, g11[i];
    t.delta[i] << 0.0, d12[i], d12[i], 0.0;
  }
  t.refresh(f);
  return t;
}

TwoAtomState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat4c a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(n(rng), n(rng));
  Mat4c rho = a * a.adjoint();
  return {rho / rho.trace()};
}

Mat4c propagate(const GeneratorMatrix& g, const Mat4c& rho, double t) {
  const Mat16c e = (g.liouvillian * t).exp();
  return unvec(e * vec(rho));
}

}  // namespace

TEST_CASE("vectorization is column stacking") {
  Mat4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(i, j);
  const auto v = vec(m);
  CHECK(v(1 + 4 * 2) == cplx(1, 2));
  CHECK(unvec(v) == m);
}

TEST_CASE("H_DD examples") {
  const auto f = dressed_frame(100.0, 3.0, 4.0);
  const auto h = build_hdd(table(f, {0, 0, 0}, {0, 1, 0}), f, Vec3::Zero());
  Eigen::Vector4d want(-0.32, 0.32, 0.32, -0.32);
  CHECK((h.diagonal().real() - want).norm() < 1e-15);
  CHECK((h - Mat4c(h.diagonal().asDiagonal())).norm() == 0.0);
  CHECK(build_hdd(table(f, {0, 0, 0}, {0, 0, 0}), f, Vec3::Zero()).norm() == 0.0);

  // Bare limit: -(Delta^- sigma+_1 sigma-_2 + h.c.), and sigma+_1 sigma-_2 = |3><2|.
  const auto b = dressed_frame(100.0, 1.0, 0.0);
  const auto hb = build_hdd(table(b, {0, 0, 0}, {0.4, 0.5, 0.7}), b, Vec3(0.3, 0, 0));
  Mat4c ref = Mat4c::Zero();
  ref(2, 1) = -0.7;
  ref(1, 2) = -0.7;
  CHECK((hb - ref).norm() < 1e-15);
}

TEST_CASE("explicit H_DD form with a laser phase") {
  const auto f = dressed_frame(10.0, -1.3, 0.8, Vec3(0, 0, 10));
  const Vec3 r12(0.1, 0.2, 0.037);
  const double th = f.k_L.dot(r12);
  const auto t = table(f, {0, 0, 0}, {0.3, -0.6, 1.1});
  const Mat4c S1p = sigma_op(0, Channel::Plus), S1m = sigma_op(0, Channel::Minus);
  const Mat4c S2p = sigma_op(1, Channel::Plus), S2m = sigma_op(1, Channel::Minus);
  const Mat4c zz = sigma_op(0, Channel::Z) * sigma_op(1, Channel::Z);
  const cplx e(std::cos(th), std::sin(th));
  const Mat4c ex = -(-0.6) * f.weight(Channel::Z) * std::cos(th) * zz -
                   0.3 * f.weight(Channel::Plus) * (Mat4c(e * S1m * S2p) + Mat4c(std::conj(e) * S1p * S2m)) -
                   1.1 * f.weight(Channel::Minus) * (Mat4c(std::conj(e) * S1m * S2p) + Mat4c(e * S1p * S2m));
  CHECK((build_hdd(t, f, r12) - ex).norm() < 1e-14);
}

TEST_CASE("complex and unphysical inputs") {
  const auto f = dressed_frame(100.0, 3.0, 4.0);
  auto t = table(f, {1, 1, 1}, {1, 1, 1});
  t.delta[0](0, 1) = cplx(1, 1e-3);
  t.delta[0](1, 0) = cplx(1, -1e-3);
  CHECK_THROWS_AS(build_hdd(t, f, Vec3::Zero()), ComplexDelta);
  auto n = table(f, {1, -0.5, 1}, {0, 0, 0});
  CHECK_THROWS_AS(build_liouvillian(n, f, Vec3::Zero()), NonPhysicalDissipator);
  auto c = table(f, {1, 1, 1}, {0, 0, 0});
  c.gamma[1](0, 1) = c.gamma[1](1, 0) = 1.5;
  CHECK_THROWS_AS(build_liouvillian(c, f, Vec3::Zero()), NonPhysicalDissipator);
}

TEST_CASE("generator preserves the trace") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2);
  for (int k = 0; k < 20; ++k) {
    const auto f = dressed_frame(50.0, u(rng) - 1, u(rng), Vec3(50, 0, 0));
    auto t = table(f, {u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
    t.gamma[2](0, 1) = t.gamma[2](1, 0) = 0.3 * t.gamma[2](0, 0);
    const auto g = build_liouvillian(t, f, Vec3(0.01 * u(rng), 0, 0));
    CHECK(g.trace_residual() < 1e-12);
    CHECK((g.hamiltonian - g.hamiltonian.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("bare single-atom decay") {
  const auto f = dressed_frame(100.0, 1.0, 0.0);
  CouplingTable t;
  t.gamma[idx(Channel::Minus)](0, 0) = 0.8;
  t.refresh(f);
  const auto g = build_liouvillian(t, f, Vec3::Zero());
  TwoAtomState s;
  s.rho(2, 2) = 1;  // atom 1 excited (|->), atom 2 in the ground state
  const Mat4c r = propagate(g, s.rho, 1.5);
  CHECK(r(2, 2).real() == Approx(std::exp(-0.8 * 1.5)).epsilon(1e-12));
  CHECK(r(0, 0).real() == Approx(1 - std::exp(-0.8 * 1.5)).epsilon(1e-12));
}

TEST_CASE("population block reproduces the printed steady-state system") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    const double delta = 3 * u(rng);
    const auto f = dressed_frame(40.0, delta == 0 ? 0.5 : delta, 0.2 + 3 * std::abs(u(rng)));
    const auto t = table(f, {0.1 + std::abs(u(rng)), 0.1 + std::abs(u(rng)), 0.1 + std::abs(u(rng))},
                         {u(rng), u(rng), u(rng)});
    const auto g = build_liouvillian(t, f, Vec3::Zero());
    const auto pg = population_generator(g);
    const auto ps = oracle::printed_steady_system(t.tilde_gamma_plus, t.tilde_gamma_minus, t.tilde_gamma_z,
                                                  t.tilde_delta_plus, t.tilde_delta_minus);
    CHECK((pg.M - ps.A).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((pg.b + ps.c).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(pg.closure < 1e-12);
  }
}

TEST_CASE("evolution") {
  const auto f = dressed_frame(100.0, 3.0, 4.0);
  SUBCASE("zero generator leaves the state alone") {
    GeneratorMatrix g;
    std::mt19937_64 rng(1);
    const auto s = random_state(rng);
    const auto tr = evolve(g, s, 2.0, 0.1);
    CHECK(tr.states.back().rho == s.rho);
  }
  SUBCASE("ground pair is stationary without dissipation") {
    const auto t = table(f, {0, 0, 0}, {1.0, 0.7, 0.5});
    const auto g = build_liouvillian(t, f, Vec3::Zero());
    const double dt = 0.05 / g.norm();
    const double T = 10 / (t.tilde_delta_plus + t.tilde_delta_minus);
    const auto tr = evolve(g, ground_pair_state(f, f), T, dt, {10});
    double worst = 0;
    for (const auto& s : tr.states)
      for (auto [i, j] : {std::pair{1, 1}, {2, 2}, {1, 2}}) worst = std::max(worst, std::abs(s.rho(i, j) - 0.16));
    CHECK(worst < 1e-8);
  }
  SUBCASE("purity is conserved without dissipation") {
    std::mt19937_64 rng(9);
    const auto t = table(f, {0, 0, 0}, {0.4, -0.9, 0.5});
    const auto g = build_liouvillian(t, f, Vec3(0.003, 0, 0.01));
    const auto s = random_state(rng);
    const auto tr = evolve(g, s, 20.0, 0.05 / g.norm());
    const auto& e = tr.states.back().rho;
    CHECK(std::abs((e * e).trace().real() - (s.rho * s.rho).trace().real()) < 1e-8);
  }
  SUBCASE("fourth-order step halving") {
    std::mt19937_64 rng(21);
    const auto t = table(f, {0.5, 0.3, 0.8}, {0.4, -0.9, 0.5});
    const auto g = build_liouvillian(t, f, Vec3(0.01, 0, 0));
    const auto s = random_state(rng);
    const double dt = 0.05 / g.norm(), T = 3.0;
    const Mat4c exact = propagate(g, s.rho, T);
    const double e1 = (evolve(g, s, T, dt).states.back().rho - exact).norm();
    const double e2 = (evolve(g, s, T, dt / 2).states.back().rho - exact).norm();
    const double e3 = (evolve(g, s, T, dt / 4).states.back().rho - exact).norm();
    CHECK(e1 / e2 > 8);
    CHECK(e2 / e3 > 8);
  }
  SUBCASE("step bound") {
    const auto g = build_liouvillian(table(f, {1, 1, 1}, {1, 1, 1}), f, Vec3::Zero());
    CHECK_THROWS_AS(evolve(g, ground_pair_state(f, f), 1.0, 0.1 / g.norm()), StepTooLarge);
  }
}

TEST_CASE("steady state") {
  SUBCASE("flat rates, delta 3, |Omega| 4") {
    const auto f = dressed_frame(100.0, 3.0, 4.0);
    const auto s = steady_state(build_liouvillian(table(f, {1, 1, 1}, {0, 0, 0}), f, Vec3::Zero()));
    CHECK(std::abs(s.rho(1, 1).real() - 0.0256 / 0.4624) < 1e-9);
    CHECK(std::abs(s.rho(1, 1).real() - 0.0553633) < 5e-8);
    CHECK(std::abs(s.rho(2, 2).real() - 0.0256 / 0.4624) < 1e-9);
    CHECK(std::abs(s.rho(1, 2)) < 1e-10);
  }
  SUBCASE("pure decay relaxes to the dressed ground pair") {
    const auto f = dressed_frame(100.0, 2.0, 0.0);
    const auto s = steady_state(build_liouvillian(table(f, {0, 0, 1}, {0, 0, 0.3}), f, Vec3::Zero()));
    CHECK(std::abs(s.rho(0, 0) - 1.0) < 1e-10);
  }
  SUBCASE("near-bare drive") {
    const auto f = dressed_frame(100.0, 2.0, 2e-8);
    const auto s = steady_state(build_liouvillian(table(f, {1, 1, 1}, {0.2, 0.3, 0.4}), f, Vec3::Zero()));
    CHECK(std::abs(s.rho(0, 0) - 1.0) < 1e-6);
  }
  SUBCASE("Hamiltonian-only generator has no unique kernel") {
    const auto f = dressed_frame(100.0, 3.0, 4.0);
    CHECK_THROWS_AS(steady_state(build_liouvillian(table(f, {0, 0, 0}, {1, 1, 1}), f, Vec3::Zero())),
                    DegenerateKernel);
  }
}

TEST_CASE("reduced transient dynamics") {
  const auto f = dressed_frame(100.0, 3.0, 4.0, Vec3(100, 0, 0));
  SUBCASE("ground pair stays put") {
    const auto t = table(f, {0, 0, 0}, {1.0, 0.3, 0.5});
    const auto c = transient_reduced(t, f, Vec3::Zero(), ground_pair_state(f, f), 7.0);
    CHECK(c.rho22 == Approx(0.16).epsilon(1e-14));
    CHECK(c.rho33 == Approx(0.16).epsilon(1e-14));
    CHECK(c.re_rho23 == Approx(0.16).epsilon(1e-14));
    CHECK(std::abs(c.im_rho23) < 1e-15);
  }
  SUBCASE("no coupling, no motion") {
    std::mt19937_64 rng(2);
    const auto s = random_state(rng);
    const auto c = transient_reduced(table(f, {0, 0, 0}, {0, 0.5, 0}), f, Vec3::Zero(), s, 3.0);
    CHECK(c.rho22 == Approx(s.rho(1, 1).real()));
    CHECK(c.im_rho23 == Approx(s.rho(1, 2).imag()));
  }
  SUBCASE("matches the full generator for any phase") {
    std::mt19937_64 rng(4);
    for (double x : {0.0, 0.004, 0.0123}) {
      const Vec3 r12(x, 0, 0);
      const auto t = table(f, {0, 0, 0}, {0.8, 0.4, -0.6});
      const auto g = build_liouvillian(t, f, r12);
      const auto s = random_state(rng);
      const double T = 2.5;
      const auto tr = evolve(g, s, T, 0.005 / g.norm());
      const Mat4c& e = tr.states.back().rho;
      const auto c = transient_reduced(t, f, r12, s, T);
      CHECK(std::abs(c.rho22 - e(1, 1).real()) < 1e-9);
      CHECK(std::abs(c.rho33 - e(2, 2).real()) < 1e-9);
      CHECK(std::abs(c.re_rho23 - e(1, 2).real()) < 1e-9);
      CHECK(std::abs(c.im_rho23 - e(1, 2).imag()) < 1e-9);
    }
  }
}
