#pragma once

#include <Eigen/Dense>
#include <complex>

namespace liddi {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec16c = Eigen::Matrix<cplx, 16, 1>;
using Mat16c = Eigen::Matrix<cplx, 16, 16>;

// Sideband channel labels. Index order + z - is used for every per-channel array.
enum class Channel { Plus = 0, Z = 1, Minus = 2 };
inline constexpr Channel kChannels[3] = {Channel::Plus, Channel::Z, Channel::Minus};
inline constexpr int idx(Channel c) { return static_cast<int>(c); }
inline constexpr const char* name(Channel c) {
  return c == Channel::Plus ? "plus" : c == Channel::Z ? "z" : "minus";
}

// Two-atom density matrix in the dressed product basis
// |1> = |+,+>, |2> = |+,->, |3> = |-,+>, |4> = |-,->.
struct TwoAtomState {
  Mat4c rho = Mat4c::Zero();
};

struct StateHealth {
  double trace_error = 0;
  double hermiticity = 0;
  double min_eigenvalue = 0;
  bool ok(double trace_tol = 1e-10, double herm_tol = 1e-10, double eig_floor = -1e-8) const {
    return trace_error <= trace_tol && hermiticity <= herm_tol && min_eigenvalue >= eig_floor;
  }
};

StateHealth check_state(const TwoAtomState& s);

}  // namespace liddi
