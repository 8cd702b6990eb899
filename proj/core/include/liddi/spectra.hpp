#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liddi/dressing.hpp"
#include "liddi/types.hpp"

namespace liddi {

struct FreeSpace {
  CVec3 dipole;
};

enum class CavitySummation {
  // Closed-form Abel limits for the slowly convergent pieces plus a directly
  // summed, absolutely convergent remainder. Default.
  Kummer,
  // Abel factor exp(-w_n / Lambda) with Richardson extrapolation over Lambda, 2 Lambda.
  AbelRichardson,
};

// Perfect planar cavity along z with walls at 0 and L, modes w_n = n pi / L.
struct IdealCavity {
  double length = 1;
  double area = 1;
  double d_perp2 = 1;
  long mode_cutoff = 0;   // 0 picks a cutoff from the frequency
  double regulator = 0;   // Lambda; 0 means 50x the evaluation frequency
  CavitySummation method = CavitySummation::Kummer;
};

// G(w) = (W / pi) a / ((w - w0)^2 + a^2), a = FWHM / 2, extended over the whole real line.
struct Lorentzian {
  double w11 = 1, w22 = 1;
  cplx w12 = 0;
  double omega0 = 1;
  double width = 0.1;
};

class Tabulated {
 public:
  Tabulated(std::vector<double> omega, std::vector<double> g11, std::vector<double> g22,
            std::vector<cplx> g12);
  static Tabulated load_csv(const std::string& path);

  const std::vector<double>& omega() const { return omega_; }
  double omega_min() const { return omega_.front(); }
  double omega_max() const { return omega_.back(); }
  // Interpolated G_{nu nu'}(w); zero outside the grid.
  cplx g(int nu, int nup, double w) const;

 private:
  struct Interp;
  std::vector<double> omega_;
  std::shared_ptr<const Interp> interp_;
};

using SpectrumModel = std::variant<FreeSpace, IdealCavity, Lorentzian, Tabulated>;

struct ReservoirSpectrum {
  SpectrumModel model;
  std::optional<double> tau_c;       // overrides the width-based estimate
  std::optional<FreeSpace> sidecar;  // adds free-space Gamma_11, Gamma_22 in coupling_table

  ReservoirSpectrum(SpectrumModel m) : model(std::move(m)) { validate(); }
  void validate() const;
  double correlation_time(const DressedFrame& frame) const;
};

struct PvOptions {
  double rel_tol = 1e-8;
  double window_factor = 100;  // half window in units of the spectral width
  int max_depth = 40;
};

using SitePair = std::array<Vec3, 2>;

cplx gamma_at(const ReservoirSpectrum& spec, int nu, int nup, double omega,
              const SitePair& sites = {Vec3::Zero(), Vec3::Zero()});
cplx delta_at(const ReservoirSpectrum& spec, int nu, int nup, double omega_i,
              const SitePair& sites = {Vec3::Zero(), Vec3::Zero()},
              const PvOptions& opt = {});

double free_space_gamma(const CVec3& dipole, double omega);

struct CavitySumOptions {
  double tolerance = 1e-6;
};
double cavity_rddi(const IdealCavity& cav, double z1, double z2, double omega_i,
                   const CavitySumOptions& opt = {});

// Delta and Gamma matrices per channel, plus the dressed combinations.
struct CouplingTable {
  std::array<Mat2c, 3> delta{Mat2c::Zero(), Mat2c::Zero(), Mat2c::Zero()};
  std::array<Mat2c, 3> gamma{Mat2c::Zero(), Mat2c::Zero(), Mat2c::Zero()};
  double tilde_gamma_plus = 0, tilde_gamma_minus = 0, tilde_gamma_z = 0;
  double tilde_delta_plus = 0, tilde_delta_minus = 0;

  const Mat2c& d(Channel c) const { return delta[idx(c)]; }
  const Mat2c& g(Channel c) const { return gamma[idx(c)]; }
  // Fill the tilde weights from the current matrices.
  void refresh(const DressedFrame& frame);
};

// Table with identical atoms and the same numbers for every channel.
CouplingTable flat_table(const DressedFrame& frame, double gamma11, double delta12,
                         double gamma12 = 0);

struct CouplingOptions {
  PvOptions pv;
  CavitySumOptions cavity;
  std::optional<std::array<double, 3>> self_shift;  // opt-in constants for Delta_{nu nu}
};

CouplingTable coupling_table(const ReservoirSpectrum& spec, const DressedFrame& frame,
                             const SitePair& positions, const CouplingOptions& opt = {});

struct MarkovReport {
  double T = 0;
  double tau_c = 0;
  double max_rate = 0;
  double secular_ratio = 0;     // T * omega_bar
  double markov_ratio = 0;      // T / tau_c
  double resolution_ratio = 0;  // T * max rate
  bool ok_secular = false, ok_markov = false, ok_resolution = false;
  double margin = 10;
  bool ok() const { return ok_secular && ok_markov && ok_resolution; }
};

MarkovReport markov_validity(double tau_c, const DressedFrame& frame, const CouplingTable& table,
                             double T, double margin = 10);
MarkovReport markov_validity(const ReservoirSpectrum& spec, const DressedFrame& frame,
                             const CouplingTable& table, double T, double margin = 10);

// Finite-T overlap of 0.5 Gamma - i Delta with the sinc window of width ~1/T.
cplx coarse_grained_rate(const ReservoirSpectrum& spec, const DressedFrame& frame, double T,
                         int nu, int nup, Channel i,
                         const SitePair& sites = {Vec3::Zero(), Vec3::Zero()},
                         const PvOptions& opt = {});

}  // namespace liddi
