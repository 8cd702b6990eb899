#include "liddi_app/validate.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "liddi/errors.hpp"
#include "liddi/liouvillian.hpp"
#include "liddi/observables.hpp"
#include "liddi/orientation.hpp"
#include "liddi_app/oracles.hpp"
#include "liddi_app/runner.hpp"

namespace liddi::app {

namespace {

const double kPi = std::acos(-1.0);

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

double safe_dt(const GeneratorMatrix& g) { return 0.5 * EvolveOptions{}.step_factor / g.norm(); }

std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(4) << x;
  return o.str();
}

// Wraps a check so timing and unexpected exceptions end up in the report.
CheckResult timed(std::string id, std::string title, double threshold,
                  const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.threshold = threshold;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    r.detail = std::string(e.kind()) + ": " + e.what();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckResult weight_sum() {
  return timed("1", "weight-sum identity", 1e-12, [](CheckResult& r) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> e(-3, 3), s(0, 1);
    double worst = 0;
    for (int k = 0; k < 10000; ++k) {
      const double delta = (s(rng) < 0.5 ? -1 : 1) * std::pow(10.0, e(rng));
      const double rabi = std::pow(10.0, e(rng));
      const auto f = dressed_frame(1e4, delta, rabi);
      worst = std::max(worst, std::abs(sideband_weights(f).sum() - 1));
    }
    r.residual = worst;
    r.passed = worst < r.threshold;
    r.detail = "max |w_z + w_plus + w_minus - 1| over 10^4 draws";
  });
}

CheckResult bare_reduction() {
  return timed("2", "bare-atom reduction", 1e-6, [](CheckResult& r) {
    const double delta = 1.0, dm = 0.4;
    const auto f = dressed_frame(100.0, delta, 1e-8 * delta);
    const auto t = table(f, {0, 0, 0}, {0.25, 0.6, dm});
    const auto g = build_liouvillian(t, f, Vec3::Zero());

    // Bare product states written in the dressed basis.
    const auto d = dressed_states(f);
    const cplx e[2] = {std::conj(d.a_plus_e), std::conj(d.a_minus_e)};
    const cplx gr[2] = {std::conj(d.a_plus_g), std::conj(d.a_minus_g)};
    Eigen::Vector4cd eg, ge;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        eg(2 * a + b) = e[a] * gr[b];
        ge(2 * a + b) = gr[a] * e[b];
      }
    TwoAtomState s0;
    s0.rho = eg * eg.adjoint();

    const double period = kPi / dm;
    EvolveOptions eo;
    eo.emit_every = 20;
    const auto tr = evolve(g, s0, period, safe_dt(g), eo);
    auto transfer = [&](const TwoAtomState& s) { return (ge.adjoint() * s.rho * ge)(0, 0).real(); };

    // Frequency from the first emitted point past a phase of 0.5 rad, then the
    // whole record is compared with sin^2 at that frequency.
    std::size_t k = 0;
    while (tr.t[k] * dm < 0.5) ++k;
    const double w = std::asin(std::sqrt(transfer(tr.states[k]))) / tr.t[k];
    double shape = 0;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      const double sn = std::sin(w * tr.t[i]);
      shape = std::max(shape, std::abs(transfer(tr.states[i]) - sn * sn));
    }
    const double rel = std::abs(w - dm) / dm;
    const double u_tr = std::abs(transient_potential_closed(t, f, Vec3::Zero()).total) / dm;
    const double u_num = std::abs(liddi_potential(ground_pair_state(f, f), t, f, Vec3::Zero()).total) / dm;
    r.residual = rel;
    r.passed = rel < 1e-6 && shape < 1e-6 && u_tr < 1e-12 && u_num < 1e-12;
    r.detail = "exchange frequency rel. error " + fmt(rel) + ", waveform error " + fmt(shape) +
               ", |U|/Delta_minus " + fmt(std::max(u_tr, u_num)) + " (limit 1e-12)";
  });
}

CheckResult steady_closed_form() {
  return timed("3", "steady-state closed form", 1e-9, [](CheckResult& r) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0, coh = 0;
    for (int k = 0; k < 100; ++k) {
      const double delta = (u(rng) < 0.5 ? -1 : 1) * (0.2 + 4.8 * u(rng));
      const double rabi = 0.2 + 4.8 * u(rng);
      const double gp = 0.1 + u(rng), gz = 0.1 + u(rng), gm = 0.1 + u(rng);
      const auto f = dressed_frame(60.0, delta, rabi);
      const auto t = table(f, {gp, gz, gm}, {2 * u(rng) - 1, 2 * u(rng) - 1, 2 * u(rng) - 1});
      const auto s = steady_state(build_liouvillian(t, f, Vec3::Zero()));
      const double ob2 = rabi * rabi + delta * delta, ob = std::sqrt(ob2);
      const double want = oracle::steady_rho22(gp * (delta - ob) * (delta - ob) / (4 * ob2),
                                               gm * (delta + ob) * (delta + ob) / (4 * ob2));
      worst = std::max({worst, std::abs(s.rho(1, 1).real() - want), std::abs(s.rho(2, 2).real() - want)});
      coh = std::max(coh, std::abs(s.rho(1, 2)));
    }
    const auto f = dressed_frame(60.0, 3.0, 4.0);
    const auto t = table(f, {1, 1, 1}, {0.3, 1.0, 0.7});
    const double p22 = steady_state(build_liouvillian(t, f, Vec3::Zero())).rho(1, 1).real();
    const double exact = 16.0 / 289.0;  // 0.04 * 0.64 / 0.68^2
    const double inst = std::abs(p22 - exact);
    const bool printed = std::abs(exact - 0.0553633) < 5e-8;
    r.residual = std::max(worst, inst);
    r.passed = worst < 1e-9 && coh < 1e-10 && inst < 1e-9 && printed;
    r.detail = "100 draws: max |rho22 - oracle| " + fmt(worst) + ", max |rho23| " + fmt(coh) +
               "; delta=3 |Omega|=4: rho22 = " + fmt(p22) + " vs 16/289, diff " + fmt(inst);
  });
}

CheckResult printed_matrix() {
  return timed("4", "printed 5x5 steady-state system", 1e-10, [](CheckResult& r) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0, closure = 0;
    for (int k = 0; k < 20; ++k) {
      const double d = 3 * u(rng);
      const auto f = dressed_frame(40.0, d == 0 ? 0.5 : d, 0.2 + 3 * std::abs(u(rng)));
      const auto t = table(f, {0.1 + std::abs(u(rng)), 0.1 + std::abs(u(rng)), 0.1 + std::abs(u(rng))},
                           {u(rng), u(rng), u(rng)});
      const auto pg = population_generator(build_liouvillian(t, f, Vec3::Zero()));
      // Rates recomputed from the raw inputs rather than the table's cached weights.
      const double ob2 = f.rabi_abs * f.rabi_abs + f.delta * f.delta, ob = std::sqrt(ob2);
      const double cp = (f.delta - ob) * (f.delta - ob) / (4 * ob2);
      const double cm = (f.delta + ob) * (f.delta + ob) / (4 * ob2);
      const double cz = f.rabi_abs * f.rabi_abs / (4 * ob2);
      const auto ps = oracle::printed_steady_system(
          t.g(Channel::Plus)(0, 0).real() * cp, t.g(Channel::Minus)(0, 0).real() * cm,
          t.g(Channel::Z)(0, 0).real() * cz, t.d(Channel::Plus)(0, 1).real() * cp,
          t.d(Channel::Minus)(0, 1).real() * cm);
      worst = std::max({worst, (pg.M - ps.A).cwiseAbs().maxCoeff(), (pg.b + ps.c).cwiseAbs().maxCoeff()});
      closure = std::max(closure, pg.closure);
    }
    r.residual = worst;
    r.passed = worst < r.threshold && closure < 1e-12;
    r.detail = "20 draws: max entrywise difference " + fmt(worst) + ", leakage out of the block " + fmt(closure);
  });
}

CheckResult transient_constancy() {
  return timed("5", "transient constancy", 1e-8, [](CheckResult& r) {
    double worst = 0;
    for (auto [delta, rabi, dp, dz, dm] : {std::tuple{3.0, 4.0, 1.0, 0.7, 0.5}, {-2.0, 1.5, 0.3, -0.4, 0.9},
                                          {0.7, 0.2, -0.6, 0.2, 0.8}, {5.0, 0.5, 0.4, 1.0, 0.7}}) {
      const auto f = dressed_frame(50.0, delta, rabi);
      const auto t = table(f, {0, 0, 0}, {dp, dz, dm});
      const auto g = build_liouvillian(t, f, Vec3::Zero());
      const double T = 10 / std::abs(t.tilde_delta_plus + t.tilde_delta_minus);
      const auto tr = evolve(g, ground_pair_state(f, f), T, safe_dt(g), {10});
      const double want = rabi * rabi / (4 * (rabi * rabi + delta * delta));
      for (const auto& s : tr.states)
        for (auto [i, j] : {std::pair{1, 1}, {2, 2}, {1, 2}}) worst = std::max(worst, std::abs(s.rho(i, j) - want));
    }
    r.residual = worst;
    r.passed = worst < r.threshold;
    r.detail = "4 instances, max deviation of rho22, rho33, rho23 from |Omega|^2/(4 Omega_bar^2)";
  });
}

CheckResult large_detuning() {
  return timed("6", "large-detuning consistency", 1e-2, [](CheckResult& r) {
    auto residual = [](double x) {
      const auto f = dressed_frame(50.0, 1.0, x);
      const auto t = table(f, {0, 0, 0}, {0.4, 1.0, 0.7});
      const auto g = build_liouvillian(t, f, Vec3::Zero());
      const auto tr = evolve(g, ground_pair_state(f, f), 20.0, safe_dt(g), {100});
      const double full = liddi_potential(tr.states.back(), t, f, Vec3::Zero(), StateSource::Transient).total;
      const double est = large_detuning_potential(t, f, Vec3::Zero()).total;
      return std::abs(full - est) / std::abs(est);
    };
    const double r1 = residual(0.05), r2 = residual(0.025);
    const double p = std::log2(r1 / r2);
    r.residual = r1;
    r.passed = r1 < r.threshold && std::abs(p - 2) <= 0.2;
    r.detail = "relative residual " + fmt(r1) + " at 0.05, " + fmt(r2) + " at 0.025, exponent " + fmt(p);
  });
}

CheckResult kramers_kronig() {
  return timed("7", "Kramers-Kronig dispersion", 1e-6, [](CheckResult& r) {
    const double W = 1, w0 = 10, g = 0.2;
    Lorentzian l;
    l.w11 = l.w22 = W;
    l.w12 = W;
    l.omega0 = w0;
    l.width = g;
    const ReservoirSpectrum s(l);
    double worst = 0;
    int n = 0;
    for (int k = -250; k <= 250; ++k) {
      const double wi = w0 + k * g / 50;
      if (std::abs(wi - w0) < g / 100) continue;
      const double ref = oracle::lorentz_delta(W, w0, g, wi);
      worst = std::max(worst, std::abs(delta_at(s, 0, 1, wi).real() - ref) / std::abs(ref));
      ++n;
    }
    r.residual = worst;
    r.passed = worst < r.threshold;
    r.detail = std::to_string(n) + " points in [w0 - 5 FWHM, w0 + 5 FWHM], max relative error";
  });
}

CheckResult cavity_sum() {
  return timed("8", "cavity mode sum", 1e-6, [](CheckResult& r) {
    IdealCavity c;
    c.length = 1;
    c.area = 1;
    c.d_perp2 = 1;
    const double fsr = kPi / c.length;
    double worst = 0;
    for (auto [z1, z2, w] : {std::tuple{0.21, 0.64, 10.3}, {0.33, 0.5, 31.0}, {0.1, 0.9, 4.0}, {0.45, 0.55, 60.0}}) {
      const long order = static_cast<long>(w / fsr) + 1;
      IdealCavity a = c, b = c;
      a.mode_cutoff = std::max(4096L, 2000 * order);
      b.mode_cutoff = 2 * a.mode_cutoff;
      const double ra = cavity_rddi(a, z1, z2, w), rb = cavity_rddi(b, z1, z2, w);
      worst = std::max(worst, std::abs(ra - rb) / std::abs(rb));
    }
    const bool node = cavity_rddi(c, 0.0, 0.37, 10.3) == 0.0 && cavity_rddi(c, 0.37, c.length, 10.3) == 0.0;
    const int m = 5;
    const double wi = m * fsr - 0.5e-3 * fsr;
    const double z1 = 0.5 * c.length / m, z2 = 2.5 * c.length / m;
    const double pole = oracle::cavity_pole(c.length, c.area, c.d_perp2, m, z1, z2, wi);
    const double dom = std::abs(cavity_rddi(c, z1, z2, wi) - pole) / std::abs(pole);
    r.residual = worst;
    r.passed = worst < r.threshold && node && dom < 0.01;
    r.detail = "cutoff doubling " + fmt(worst) + ", node exact zero " + (node ? "yes" : "no") +
               ", single-pole deviation " + fmt(dom) + " (limit 0.01)";
  });
}

CheckResult state_health() {
  return timed("9", "state health along trajectories", 1e-9, [](CheckResult& r) {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0, 1);
    StateHealth worst;
    worst.min_eigenvalue = 1;
    for (int k = 0; k < 8; ++k) {
      const auto f = dressed_frame(30.0, 4 * u(rng) - 2, 0.3 + 3 * u(rng), Vec3(30, 0, 0));
      CouplingTable t;
      for (int i = 0; i < 3; ++i) {
        const double g11 = u(rng), g22 = u(rng);
        const cplx g12 = 0.8 * std::sqrt(g11 * g22) * std::polar(1.0, 2 * kPi * u(rng));
        t.gamma[i] << g11, g12, std::conj(g12), g22;
        const double d12 = 2 * u(rng) - 1;
        t.delta[i] << 0.0, d12, d12, 0.0;
      }
      t.refresh(f);
      const auto g = build_liouvillian(t, f, Vec3(0.05 * u(rng), 0, 0));
      const auto tr = evolve(g, random_state(rng), 20.0, safe_dt(g));
      worst.trace_error = std::max(worst.trace_error, tr.worst.trace_error);
      worst.hermiticity = std::max(worst.hermiticity, tr.worst.hermiticity);
      worst.min_eigenvalue = std::min(worst.min_eigenvalue, tr.worst.min_eigenvalue);
    }
    r.residual = worst.trace_error;
    r.passed = worst.trace_error < 1e-9 && worst.hermiticity < 1e-10 && worst.min_eigenvalue >= -1e-8;
    r.detail = "8 dissipative trajectories: trace error " + fmt(worst.trace_error) + ", Hermiticity " +
               fmt(worst.hermiticity) + ", min eigenvalue " + fmt(worst.min_eigenvalue);
  });
}

Tabulated sampled(double lo, double hi, int n, const std::function<double(double)>& g) {
  std::vector<double> w(n), a(n);
  std::vector<cplx> c(n);
  for (int i = 0; i < n; ++i) {
    w[i] = lo + (hi - lo) * i / (n - 1);
    a[i] = g(w[i]);
    c[i] = a[i];
  }
  return Tabulated(w, a, a, c);
}

CheckResult nonlinear_separation() {
  return timed("10", "nonlinear vs linear separation", 0.3, [](CheckResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    const double wl = 100, delta = 1, rabi = 0.2;
    const auto f = dressed_frame(wl, delta, rabi);
    const SitePair at{Vec3::Zero(), Vec3::Zero()};
    auto separation = [&](const Tabulated& tab, double* spread) {
      const auto t = coupling_table(ReservoirSpectrum(tab), f, at);
      double lo = INFINITY, hi = 0;
      for (Channel c : kChannels) {
        lo = std::min(lo, std::abs(t.d(c)(0, 1).real()));
        hi = std::max(hi, std::abs(t.d(c)(0, 1).real()));
      }
      *spread = hi / lo;
      const double total = transient_potential_closed(t, f, Vec3::Zero()).total;
      return std::abs(linear_comparator(t, f, Vec3::Zero()) - total) / std::abs(total);
    };
    // A line just below the lower sideband: Delta at w_- is ten times Delta at w_+.
    const double a = 0.1;
    const auto sloped = sampled(80, 120, 4001, [&](double w) {
      const double x = w - 98.85;
      return a / (kPi * (x * x + a * a));
    });
    double spread_s, spread_f;
    const double sep = separation(sloped, &spread_s);
    const auto flat = sampled(wl - 1e3, wl + 1e6, 64, [](double) { return 1.0; });
    const double same = separation(flat, &spread_f);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool sloped_ok = sep > 0.3 && spread_s >= 10;
    const bool flat_ok = same < 1e-10;
    // Report the clause that decides the outcome: the sloped one unless only the flat one fails.
    if (sloped_ok && !flat_ok) {
      r.residual = same;
      r.threshold = 1e-10;
    } else {
      r.residual = sep;
    }
    r.passed = sloped_ok && flat_ok && secs < 60;
    r.detail = "sloped (Delta spread " + fmt(spread_s) + "x): " + fmt(sep) + (sloped_ok ? " > 0.3, ok" : ", needs > 0.3") +
               "; flat (spread " + fmt(spread_f) + "x): " + fmt(same) + (flat_ok ? " < 1e-10, ok" : ", needs < 1e-10");
  });
}

CheckResult orientation_average(int threads) {
  return timed("11", "isotropic orientation factor", 1e-2, [threads](CheckResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    const Vec3 z(0, 0, 1);
    for (const Vec3& ek : {Vec3(0, 0, 1), Vec3(Vec3(1, 0, 1).normalized()), Vec3(Vec3(1, 2, 2).normalized())}) {
      const double c = z.dot(ek);
      const auto est = isotropic_average_oracle(1.0, z, ek, 1000000, 2024, threads);
      worst = std::max(worst, std::abs(est.mean - c * c / 9) / (c * c / 9));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.residual = worst;
    r.passed = worst < r.threshold && secs < 30;
    r.detail = "three (e_L, e_k) pairs at 10^6 samples, max relative deviation from (e_L.e_k)^2/9";
  });
}

CheckResult rabi_oracle() {
  return timed("12", "Rabi population oracle", 1e-10, [](CheckResult& r) {
    std::mt19937_64 rng(1212);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      const double delta = 10 * u(rng) - 5, rabi = 0.1 + 4.9 * u(rng);
      const auto f = dressed_frame(100.0, delta, rabi);
      const double tmax = 20 / std::hypot(delta, rabi);
      for (int j = 0; j <= 40; ++j) {
        const double t = tmax * j / 40;
        worst = std::max(worst, std::abs(rabi_population(f, t) - oracle::rabi_by_expm(delta, rabi, t)));
      }
    }
    r.residual = worst;
    r.passed = worst < r.threshold;
    r.detail = "50 draws x 41 times in [0, 20/Omega_bar], max absolute difference";
  });
}

}  // namespace

CheckResult steady_potential_check(const SuiteOptions& opt) {
  return timed("S1", "steady-state potential oracle", 1e-9, [&opt](CheckResult& r) {
    std::mt19937_64 rng(1301);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0, side = 0;
    for (int k = 0; k < 20; ++k) {
      const double delta = (u(rng) < 0.5 ? -1 : 1) * (0.3 + 3 * u(rng)), rabi = 0.3 + 3 * u(rng);
      const double gp = 0.1 + u(rng), gm = 0.1 + u(rng), dz = 0.2 + u(rng);
      const auto f = dressed_frame(40.0, delta, rabi, Vec3(40, 0, 0));
      const auto t = table(f, {gp, 0.1 + u(rng), gm}, {u(rng) - 0.5, dz, u(rng) - 0.5});
      const Vec3 r12(0.02 * u(rng), 0, 0);
      auto p = liddi_potential(steady_state(build_liouvillian(t, f, r12)), t, f, r12, StateSource::Steady);
      if (opt.mutation == Mutation::FlipLinearSign) {
        p.u_z = -p.u_z;
        p.total = p.u_z + p.u_plus + p.u_minus;
      }
      const double ob2 = rabi * rabi + delta * delta, ob = std::sqrt(ob2);
      const double p22 = oracle::steady_rho22(gp * (delta - ob) * (delta - ob) / (4 * ob2),
                                              gm * (delta + ob) * (delta + ob) / (4 * ob2));
      const double want = -(rabi * rabi / (2 * ob2)) * (1 - 4 * p22) * dz * std::cos(40 * r12.x());
      worst = std::max(worst, std::abs(p.total - want) / std::abs(want));
      side = std::max(side, std::abs(p.u_plus) + std::abs(p.u_minus));
    }
    r.residual = worst;
    r.passed = worst < r.threshold && side < 1e-10;
    r.detail = "20 draws: potential of the numerical steady state vs closed form, U_plus + U_minus " + fmt(side);
  });
}

CheckResult config_precondition_check(const RunConfig& cfg) {
  return timed("P1", "configured system preconditions", 0, [&cfg](CheckResult& r) {
    try {
      const auto sys = build_system(cfg, load_tabulated(cfg));
      build_liouvillian(sys.table, sys.frame, sys.r12);
      r.passed = true;
      r.detail = "coupling table and generator accepted";
    } catch (const Error& e) {
      r.passed = false;
      r.detail = std::string("precondition failed: ") + e.kind() + ": " + e.what();
    } catch (const ConfigError& e) {
      r.passed = false;
      r.detail = std::string("precondition failed: ") + e.what();
    }
  });
}

CheckResult run_criterion(int n, const SuiteOptions& opt) {
  switch (n) {
    case 1: return weight_sum();
    case 2: return bare_reduction();
    case 3: return steady_closed_form();
    case 4: return printed_matrix();
    case 5: return transient_constancy();
    case 6: return large_detuning();
    case 7: return kramers_kronig();
    case 8: return cavity_sum();
    case 9: return state_health();
    case 10: return nonlinear_separation();
    case 11: return orientation_average(opt.threads);
    case 12: return rabi_oracle();
  }
  throw InvalidArgument("criterion number out of range");
}

std::vector<CheckResult> validate_suite(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  for (int n = 1; n <= kCriteria; ++n) out.push_back(run_criterion(n, opt));
  out.push_back(steady_potential_check(opt));
  if (opt.config) out.push_back(config_precondition_check(*opt.config));
  return out;
}

void print_report(const std::vector<CheckResult>& rs, std::ostream& out) {
  for (const auto& r : rs) {
    out << std::left << std::setw(4) << r.id << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(36) << r.title
        << " residual " << std::setw(11) << fmt(r.residual) << " (" << std::fixed << std::setprecision(2)
        << r.seconds << " s)" << std::defaultfloat << "\n      " << r.detail << "\n";
  }
}

}  // namespace liddi::app
