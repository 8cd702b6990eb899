#include "liddi/liouvillian.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "liddi/errors.hpp"

namespace liddi {

namespace {

const cplx I1(0, 1);

Mat16c kron(const Mat4c& a, const Mat4c& b) {
  Mat16c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// vec(A rho B) = (B^T kron A) vec(rho)
Mat16c sandwich(const Mat4c& a, const Mat4c& b) { return kron(b.transpose(), a); }

double hermiticity(const Mat4c& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

void check_real_delta(const CouplingTable& t) {
  for (Channel c : kChannels) {
    const cplx d = t.d(c)(0, 1);
    if (std::abs(d.imag()) > 1e-9 * std::abs(d))
      throw ComplexDelta(std::string("Delta_12 in channel ") + name(c) + " has a significant imaginary part");
    if (std::abs(t.d(c)(1, 0) - std::conj(d)) > 1e-9 * std::max(1.0, std::abs(d)))
      throw ComplexDelta(std::string("Delta in channel ") + name(c) + " is not Hermitian");
  }
}

void check_dissipator(const CouplingTable& t) {
  for (Channel c : kChannels) {
    const Mat2c& g = t.g(c);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw NonPhysicalDissipator(std::string("Gamma in channel ") + name(c) + " is not Hermitian");
    const Mat2c herm = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat2c> es(herm);
    if (es.eigenvalues().minCoeff() < -1e-9 * scale)
      throw NonPhysicalDissipator(std::string("Gamma in channel ") + name(c) + " has a negative eigenvalue");
  }
}

}  // namespace

StateHealth check_state(const TwoAtomState& s) {
  StateHealth h;
  h.trace_error = std::abs(s.rho.trace() - 1.0);
  h.hermiticity = hermiticity(s.rho);
  Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (s.rho + s.rho.adjoint()), Eigen::EigenvaluesOnly);
  h.min_eigenvalue = es.eigenvalues().minCoeff();
  return h;
}

Vec16c vec(const Mat4c& m) {
  Vec16c v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(i + 4 * j) = m(i, j);
  return v;
}

Mat4c unvec(const Vec16c& v) {
  Mat4c m;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) m(i, j) = v(i + 4 * j);
  return m;
}

Mat4c sigma_op(int atom, Channel c) {
  Mat2c s = Mat2c::Zero();
  switch (c) {
    case Channel::Plus: s(0, 1) = 1; break;   // |+><-|
    case Channel::Minus: s(1, 0) = 1; break;  // |-><+|
    case Channel::Z: s(0, 0) = 1; s(1, 1) = -1; break;
  }
  const Mat2c id = Mat2c::Identity();
  return atom == 0 ? kron2(s, id) : kron2(id, s);
}

Mat4c dressed_op(const DressedFrame& f, int atom, Channel c, const Vec3& r) {
  return f.coefficient(c) * f.site_phase(r) * sigma_op(atom, c);
}

double GeneratorMatrix::trace_residual() const {
  double worst = 0;
  for (int k = 0; k < 16; ++k) {
    cplx s = 0;
    for (int i = 0; i < 4; ++i) s += liouvillian(5 * i, k);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

double GeneratorMatrix::norm() const {
  Eigen::JacobiSVD<Mat16c> svd(liouvillian);
  return svd.singularValues()(0);
}

Mat4c build_hdd(const CouplingTable& table, const DressedFrame& f, const Vec3& r12) {
  check_real_delta(table);
  const Vec3 r[2] = {r12, Vec3::Zero()};
  Mat4c h = Mat4c::Zero();
  for (Channel c : kChannels) {
    const double d12 = table.d(c)(0, 1).real();
    if (d12 == 0) continue;
    const Mat4c s1 = dressed_op(f, 0, c, r[0]);
    const Mat4c s2 = dressed_op(f, 1, c, r[1]);
    h -= d12 * (s1 * s2.adjoint() + s2 * s1.adjoint());
  }
  return 0.5 * (h + h.adjoint());
}

GeneratorMatrix build_liouvillian(const CouplingTable& table, const DressedFrame& f, const Vec3& r12) {
  check_dissipator(table);
  GeneratorMatrix g;
  g.hamiltonian = build_hdd(table, f, r12);
  const Mat4c id = Mat4c::Identity();
  g.liouvillian = -I1 * (sandwich(g.hamiltonian, id) - sandwich(id, g.hamiltonian));

  const Vec3 r[2] = {r12, Vec3::Zero()};
  for (Channel c : kChannels) {
    Mat4c s[2] = {dressed_op(f, 0, c, r[0]), dressed_op(f, 1, c, r[1])};
    for (int nu = 0; nu < 2; ++nu)
      for (int nup = 0; nup < 2; ++nup) {
        const cplx gam = table.g(c)(nu, nup);
        if (gam == 0.0) continue;
        // jump operators A_nu = S~^dagger_nu; A_nu rho A_nu'^dagger - {A_nu'^dagger A_nu, rho}/2
        const Mat4c a = s[nu].adjoint();
        const Mat4c ap_dag = s[nup];
        const Mat4c prod = ap_dag * a;
        g.liouvillian += gam * (sandwich(a, ap_dag) - 0.5 * sandwich(prod, id) - 0.5 * sandwich(id, prod));
      }
  }
  if (g.trace_residual() > 1e-10) throw InvariantViolation("generator does not preserve the trace");
  return g;
}

Trajectory evolve(const GeneratorMatrix& gen, const TwoAtomState& rho0, double t_final, double dt,
                  const EvolveOptions& opt) {
  if (!(dt > 0) || !(t_final >= 0)) throw InvalidArgument("time step must be positive and final time non-negative");
  if (opt.emit_every < 1) throw InvalidArgument("emit_every must be at least 1");
  const double nrm = gen.norm();
  if (nrm > 0 && dt > opt.step_factor / nrm)
    throw StepTooLarge("time step exceeds " + std::to_string(opt.step_factor) + "/||L||");
  const auto h0 = check_state(rho0);
  if (!h0.ok()) throw InvalidArgument("initial state violates density-matrix invariants");

  const long n = t_final > 0 ? static_cast<long>(std::ceil(t_final / dt - 1e-12)) : 0;
  const double h = n > 0 ? t_final / n : 0.0;
  const Mat16c& L = gen.liouvillian;
  Vec16c y = vec(rho0.rho);
  Trajectory tr;
  tr.worst = h0;
  auto emit = [&](long k) {
    TwoAtomState s{unvec(y)};
    const auto hs = check_state(s);
    if (hs.trace_error > 1e-8) throw InvariantViolation("trace drifted beyond 1e-8");
    if (hs.hermiticity > 1e-10) throw InvariantViolation("state lost Hermiticity");
    if (hs.min_eigenvalue < -1e-8) throw InvariantViolation("state lost positivity");
    tr.worst.trace_error = std::max(tr.worst.trace_error, hs.trace_error);
    tr.worst.hermiticity = std::max(tr.worst.hermiticity, hs.hermiticity);
    tr.worst.min_eigenvalue = std::min(tr.worst.min_eigenvalue, hs.min_eigenvalue);
    tr.t.push_back(k * h);
    tr.states.push_back(s);
  };
  emit(0);
  for (long k = 1; k <= n; ++k) {
    const Vec16c k1 = L * y;
    const Vec16c k2 = L * (y + 0.5 * h * k1);
    const Vec16c k3 = L * (y + 0.5 * h * k2);
    const Vec16c k4 = L * (y + h * k3);
    y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (k % opt.emit_every == 0 || k == n) emit(k);
  }
  return tr;
}

TwoAtomState steady_state(const GeneratorMatrix& gen) {
  Eigen::JacobiSVD<Mat16c> svd(gen.liouvillian, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  if (!(smax > 0)) throw DegenerateKernel("generator is identically zero");
  if (!(s(15) < 1e-10 * smax) || !(s(14) > 1e-6 * smax))
    throw DegenerateKernel("generator kernel is not one-dimensional");
  Mat4c rho = unvec(svd.matrixV().col(15));
  rho /= rho.trace();
  TwoAtomState st{0.5 * (rho + rho.adjoint())};
  if (hermiticity(rho) > 1e-8) throw InvariantViolation("kernel vector is not Hermitian");
  const auto h = check_state(st);
  if (!h.ok()) throw InvariantViolation("steady state violates density-matrix invariants");
  return st;
}

TransientComponents transient_reduced(const CouplingTable& table, const DressedFrame& f,
                                      const Vec3& r12, const TwoAtomState& rho0, double t) {
  const double theta = f.k_L.dot(r12);
  const cplx J = table.tilde_delta_plus * std::polar(1.0, theta) +
                 table.tilde_delta_minus * std::polar(1.0, -theta);
  const double jr = J.real(), ji = J.imag();
  Eigen::Matrix4d A;
  A << 0, 0, 2 * ji, 2 * jr,
       0, 0, -2 * ji, -2 * jr,
       -ji, ji, 0, 0,
       -jr, jr, 0, 0;
  const Eigen::Vector4d x0(rho0.rho(1, 1).real(), rho0.rho(2, 2).real(), rho0.rho(1, 2).real(),
                           rho0.rho(1, 2).imag());
  const Eigen::Matrix4d E = (A * t).exp();
  const Eigen::Vector4d x = E * x0;
  return {x(0), x(1), x(2), x(3)};
}

PopulationGenerator population_generator(const GeneratorMatrix& gen) {
  // Real parameters of a Hermitian rho: 4 diagonals, then (Re, Im) of each upper pair.
  struct Param {
    int a, b;
    bool imag;
  };
  std::vector<Param> params;
  for (int i = 0; i < 4; ++i) params.push_back({i, i, false});
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      params.push_back({i, j, false});
      params.push_back({i, j, true});
    }
  auto coef = [&](int row, const Param& p) -> cplx {
    const cplx cab = gen.liouvillian(row, p.a + 4 * p.b);
    if (p.a == p.b) return cab;
    const cplx cba = gen.liouvillian(row, p.b + 4 * p.a);
    return p.imag ? I1 * (cab - cba) : cab + cba;
  };
  // x = (rho11, rho22, rho33, Re rho23, Im rho23)
  const int rows[5] = {0, 5, 10, 1 + 4 * 2, 1 + 4 * 2};
  auto part = [](int k, cplx z) { return k == 4 ? z.imag() : z.real(); };
  auto is_x = [](const Param& p) {
    return (p.a == p.b && p.a < 3) || (p.a == 1 && p.b == 2);
  };
  auto x_col = [](const Param& p) {
    if (p.a == p.b) return p.a;
    return p.imag ? 4 : 3;
  };
  PopulationGenerator out;
  out.M.setZero();
  out.b.setZero();
  out.closure = 0;
  for (int k = 0; k < 5; ++k) {
    const double c44 = part(k, coef(rows[k], {3, 3, false}));
    out.b(k) = c44;
    for (const auto& p : params) {
      if (p.a == 3 && p.b == 3) continue;
      const double c = part(k, coef(rows[k], p));
      if (is_x(p))
        out.M(k, x_col(p)) += c - (p.a == p.b ? c44 : 0.0);
      else
        out.closure = std::max(out.closure, std::abs(c));
    }
  }
  return out;
}

}  // namespace liddi
