#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liddi/types.hpp"

namespace liddi::app {

// Input problem with the location that caused it. line is 0 when the field was absent.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& what);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// Flat view of a config file: every entry keyed by its full dotted path.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigDoc {
  std::vector<ConfigEntry> entries;
  std::string origin;  // file name for diagnostics; relative paths resolve against its directory

  const ConfigEntry* find(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
};

ConfigDoc parse_document(const std::string& text, const std::string& origin = "<string>");
ConfigDoc load_document(const std::string& path);

enum class Task { Potential, Steady, Evolve, Scatter, Rddi, Validate };
enum class Orientation { Fixed, Isotropic, Molecule };
enum class SpectrumKind { FreeSpace, Cavity, Lorentzian, Tabulated, Table };
enum class StateChoice { Transient, Steady, Evolved, LargeDetuning };

const char* name(Task t);
Task parse_task(const std::string& s);

struct LaserConfig {
  double omega_L = 0;
  double rabi_abs = 0;
  double rabi_phase = 0;
  Vec3 k_direction{1, 0, 0};
  CVec3 polarization{0, 0, 1};
};

struct AtomConfig {
  double omega_e = 0;
  Orientation orientation = Orientation::Fixed;
  CVec3 dipole{0, 0, 1};
  double d_mag = 1;
  long samples = 100000;
  std::uint64_t seed = 1;
  Vec3 position = Vec3::Zero();
};

struct SpectrumConfig {
  SpectrumKind kind = SpectrumKind::Lorentzian;
  // lorentzian
  double w11 = 1, w22 = 1;
  cplx w12 = 1;
  double omega0 = 1, width = 0.1;
  // cavity
  double length = 1, area = 1;
  std::optional<double> d_perp2;
  double regulator = 0;
  bool abel = false;
  // tabulated
  std::string file;
  // table: per channel, order + z -
  std::array<double, 3> gamma11{}, gamma22{};
  std::array<cplx, 3> gamma12{}, delta12{};
  // shared
  std::optional<double> tau_c;
  bool free_space_sidecar = false;
};

struct SweepConfig {
  std::string parameter;  // empty: single point
  double start = 0, stop = 0;
  int count = 1;
  bool log = false;
  std::string label;
};

struct NumericsConfig {
  double pv_tolerance = 1e-8;
  double cavity_tolerance = 1e-6;
  long cavity_cutoff = 0;
  double dt = 0;  // 0 picks step_factor / ||L||
  double t_final = 1;
  int emit_every = 1;
  std::optional<double> coarse_time_T;
  double markov_margin = 10;
  StateChoice state = StateChoice::Transient;
};

struct OutputConfig {
  std::string path;  // "-" is stdout; empty derives from the config file name
  bool json = false;
  double energy_unit = 1;
};

struct RunConfig {
  Task task = Task::Potential;
  LaserConfig laser;
  std::array<AtomConfig, 2> atoms;
  SpectrumConfig spectrum;
  SweepConfig sweep;
  NumericsConfig numerics;
  OutputConfig output;
  std::string base_dir;  // directory used to resolve relative file names
  std::string origin;
};

RunConfig build_config(const ConfigDoc& doc);
// Canonical text form. Parsing it yields the same RunConfig, so the text is a fixed point.
std::string serialize(const RunConfig& cfg);

// Path understood by the sweep: any numeric scalar key, a vector component such as
// atom2.position.z, or r12 which moves atom 2 along the line from atom 1.
void apply_parameter(ConfigDoc& doc, const RunConfig& base, const std::string& path, double value);
std::vector<double> sweep_values(const SweepConfig& s);
std::string sweep_label(const SweepConfig& s);

std::string format_double(double x);
std::string format_complex(cplx z);

}  // namespace liddi::app
