#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liddi/dressing.hpp"
#include "liddi/spectra.hpp"
#include "liddi_app/config.hpp"

namespace liddi::app {

enum ExitCode { kExitOk = 0, kExitInput = 1, kExitValidation = 2 };

// Everything the tasks need at one parameter point.
struct System {
  DressedFrame frame;
  Vec3 r12 = Vec3::Zero();
  SitePair sites{Vec3::Zero(), Vec3::Zero()};
  std::optional<ReservoirSpectrum> spectrum;  // absent for a directly given table
  CouplingTable table;
  double tau_c = 0;
};

// Loaded once per run so a sweep does not re-read the spectrum file at every point.
std::optional<Tabulated> load_tabulated(const RunConfig& cfg);

System build_system(const RunConfig& cfg, const std::optional<Tabulated>& tab = std::nullopt);

// Coarse-graining time used for the Markov report when none is configured: the
// geometric mean of the lower bound max(1/Omega_bar, tau_c) and the upper bound 1/max rate.
double default_coarse_time(const System& s);

std::vector<std::string> task_columns(Task t);

struct PointResult {
  double value = 0;  // swept parameter, NaN without a sweep
  std::vector<std::vector<double>> rows;
  std::string error;  // "<Kind>: message" when the point failed
  std::optional<MarkovReport> markov;
  bool warning = false;
};

// One sweep point; numeric failures are caught and recorded in the result.
PointResult evaluate_point(const RunConfig& cfg, const std::optional<Tabulated>& tab);

struct RunOptions {
  std::optional<Task> task;
  std::optional<std::string> out;
  int threads = 0;  // 0 reads LIDDI_THREADS, then the hardware
};

// Full CLI behaviour behind main(): returns the process exit status.
int run(const ConfigDoc& doc, const RunOptions& opt, std::ostream& out, std::ostream& err);

int thread_budget(int requested);

}  // namespace liddi::app
