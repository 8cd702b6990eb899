#pragma once

// Reference values computed by routes that share no code with the library
// implementations they check.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>

namespace liddi::oracle {

using cplx = std::complex<double>;

// Dispersive part of a Lorentzian line by residues: W (w0 - w) / ((w0 - w)^2 + (FWHM/2)^2).
inline double lorentz_delta(double W, double omega0, double width, double w) {
  const double a = width / 2, x = omega0 - w;
  return W * x / (x * x + a * a);
}

// Sinc-window overlap of 0.5 Gamma - i Delta for a Lorentzian, closed form.
inline cplx lorentz_coarse(double W, double omega0, double width, double wi, double T) {
  const double a = width / 2, s = wi - omega0;
  const cplx z(a, -s);
  return W * (1.0 - std::exp(-z * T)) / z;
}

// Excited population after exact 2x2 propagation from |g>, basis (g, e).
inline double rabi_by_expm(double delta, double rabi_abs, double t) {
  Eigen::Matrix2cd h;
  h << delta / 2, rabi_abs / 2, rabi_abs / 2, -delta / 2;
  const Eigen::Matrix2cd u = (cplx(0, -t) * h).exp();
  return std::norm(u(1, 0));
}

// Single cavity mode term w_m d^2 / (L A) * sin sin / (w_m - wi).
inline double cavity_pole(double L, double A, double d2, int m, double z1, double z2, double wi) {
  const double pi = std::acos(-1.0);
  const double wm = m * pi / L;
  return wm * d2 / (L * A) * std::sin(m * pi * z1 / L) * std::sin(m * pi * z2 / L) / (wm - wi);
}

// Steady-state populations of the exchange block, Gt- Gt+ / (Gt- + Gt+)^2.
inline double steady_rho22(double gt_plus, double gt_minus) {
  const double s = gt_plus + gt_minus;
  return gt_plus * gt_minus / (s * s);
}

// Coefficient matrix and right-hand side of the printed steady-state system A x = c
// on x = (rho11, rho22, rho33, Re rho23, Im rho23).
struct PrintedSystem {
  Eigen::Matrix<double, 5, 5> A;
  Eigen::Matrix<double, 5, 1> c;
};

inline PrintedSystem printed_steady_system(double gp, double gm, double gz, double dp, double dm) {
  const double D = dm + dp;
  const double dec = -gm - gp - 4 * gz;
  PrintedSystem s;
  s.A << -2 * gp, gm, gm, 0, 0,
         -gm + gp, -2 * gm - gp, -gm, 0, 2 * D,
         -gm + gp, -gm, -2 * gm - gp, 0, -2 * D,
         0, 0, 0, dec, 0,
         0, -D, D, 0, dec;
  s.c << 0, -gm, -gm, 0, 0;
  return s;
}

}  // namespace liddi::oracle
