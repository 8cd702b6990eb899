#pragma once

#include <vector>

#include "liddi/dressing.hpp"
#include "liddi/spectra.hpp"
#include "liddi/types.hpp"

namespace liddi {

// Column-stacking vectorization: vec(rho)[i + 4 j] = rho(i, j).
Vec16c vec(const Mat4c& m);
Mat4c unvec(const Vec16c& v);

// Two-atom dressed operators. Atom 1 is the major tensor index.
Mat4c sigma_op(int atom, Channel c);  // S^+, S^z or S^- acting on one atom
Mat4c dressed_op(const DressedFrame& frame, int atom, Channel c, const Vec3& r);

struct GeneratorMatrix {
  Mat16c liouvillian = Mat16c::Zero();
  Mat4c hamiltonian = Mat4c::Zero();

  double trace_residual() const;
  double norm() const;  // spectral norm of the Liouvillian
};

Mat4c build_hdd(const CouplingTable& table, const DressedFrame& frame, const Vec3& r12);
GeneratorMatrix build_liouvillian(const CouplingTable& table, const DressedFrame& frame,
                                  const Vec3& r12);

struct Trajectory {
  std::vector<double> t;
  std::vector<TwoAtomState> states;
  StateHealth worst;  // worst values seen over all emitted states
};

struct EvolveOptions {
  int emit_every = 1;
  double step_factor = 0.05;  // dt must not exceed step_factor / ||L||
};

Trajectory evolve(const GeneratorMatrix& gen, const TwoAtomState& rho0, double t_final, double dt,
                  const EvolveOptions& opt = {});

TwoAtomState steady_state(const GeneratorMatrix& gen);

struct TransientComponents {
  double rho22, rho33, re_rho23, im_rho23;
};

// Dissipationless dynamics of the {|2>, |3>} block. The exchange coupling is
// J = Dt+ exp(i theta) + Dt- exp(-i theta), theta = k_L . r12.
TransientComponents transient_reduced(const CouplingTable& table, const DressedFrame& frame,
                                      const Vec3& r12, const TwoAtomState& rho0, double t);

// Affine map d/dt x = M x + b on x = (rho11, rho22, rho33, Re rho23, Im rho23),
// read off the generator after eliminating rho44 through the trace. closure is the
// largest coefficient coupling x to any other matrix element (0 when x is closed).
struct PopulationGenerator {
  Eigen::Matrix<double, 5, 5> M;
  Eigen::Matrix<double, 5, 1> b;
  double closure;
};
PopulationGenerator population_generator(const GeneratorMatrix& gen);

}  // namespace liddi
