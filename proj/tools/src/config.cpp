#include "liddi_app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace liddi::app {

namespace fs = std::filesystem;

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : std::runtime_error(what), field_(std::move(field)), line_(line) {}

const ConfigEntry* ConfigDoc::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

void ConfigDoc::set(const std::string& key, const std::string& value) {
  for (auto& e : entries)
    if (e.key == key) {
      e.value = value;
      return;
    }
  entries.push_back({key, value, 0});
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_name(const std::string& s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return s.find("..") == std::string::npos;
}

std::string location(const std::string& origin, int line) {
  return origin + ":" + std::to_string(line) + ": ";
}

}  // namespace

ConfigDoc parse_document(const std::string& text, const std::string& origin) {
  ConfigDoc doc;
  doc.origin = origin;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // Comments run from # to the end of the line unless the # sits inside quotes.
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const std::string s = trim(std::string_view(raw).substr(0, cut));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("", line, location(origin, line) + "unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!valid_name(section))
        throw ConfigError(section, line, location(origin, line) + "invalid section name '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", line, location(origin, line) + "expected 'key = value'");
    const std::string k = trim(std::string_view(s).substr(0, eq));
    std::string v = trim(std::string_view(s).substr(eq + 1));
    if (!valid_name(k)) throw ConfigError(k, line, location(origin, line) + "invalid key '" + k + "'");
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    const std::string key = section.empty() ? k : section + "." + k;
    if (const auto* prev = doc.find(key))
      throw ConfigError(key, line,
                        location(origin, line) + "duplicate key '" + key + "' (first set on line " +
                            std::to_string(prev->line) + ")");
    doc.entries.push_back({key, v, line});
  }
  return doc;
}

ConfigDoc load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

const char* name(Task t) {
  switch (t) {
    case Task::Potential: return "potential";
    case Task::Steady: return "steady";
    case Task::Evolve: return "evolve";
    case Task::Scatter: return "scatter";
    case Task::Rddi: return "rddi";
    case Task::Validate: return "validate";
  }
  return "potential";
}

Task parse_task(const std::string& s) {
  for (Task t : {Task::Potential, Task::Steady, Task::Evolve, Task::Scatter, Task::Rddi, Task::Validate})
    if (s == name(t)) return t;
  throw ConfigError("task", 0, "unknown task '" + s + "'");
}

// ---------------------------------------------------------------- formatting

std::string format_double(double x) {
  // Shortest text that reads back to the same double.
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_complex(cplx z) {
  if (z.imag() == 0) return format_double(z.real());
  std::string im = format_double(std::abs(z.imag()));
  return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

namespace {

std::string format_vec(const Vec3& v) {
  return format_double(v.x()) + ", " + format_double(v.y()) + ", " + format_double(v.z());
}

std::string format_cvec(const CVec3& v) {
  return format_complex(v.x()) + ", " + format_complex(v.y()) + ", " + format_complex(v.z());
}

template <class T, std::size_t N, class F>
std::string format_list(const std::array<T, N>& a, F f) {
  std::string s;
  for (std::size_t i = 0; i < N; ++i) s += (i ? ", " : "") + f(a[i]);
  return s;
}

std::optional<double> read_double(std::string_view s) {
  double x;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto r = std::from_chars(b, e, x);
  if (r.ec != std::errc() || r.ptr != e) return std::nullopt;
  return x;
}

// Accepts 1.5, 2i, -0.5i, 1+2i, 1e-3-4e-2i.
std::optional<cplx> read_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    if (auto x = read_double(s)) return cplx(*x, 0);
    return std::nullopt;
  }
  s.remove_suffix(1);
  if (s.empty()) return cplx(0, 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  for (std::size_t i = s.size() - 1; i > 0; --i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      auto re = read_double(s.substr(0, i));
      std::string_view ims = s.substr(i);
      std::optional<double> im;
      if (ims == "+") im = 1;
      else if (ims == "-") im = -1;
      else im = read_double(ims);
      if (re && im) return cplx(*re, *im);
      return std::nullopt;
    }
  }
  if (s == "-") return cplx(0, -1);
  if (auto im = read_double(s)) return cplx(0, *im);
  return std::nullopt;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  return out;
}

// Reads typed values out of a document and remembers which keys were consumed.
class Reader {
 public:
  explicit Reader(const ConfigDoc& d) : doc_(d) {}

  bool has(const std::string& k) const { return doc_.find(k) != nullptr; }
  int line(const std::string& k) const {
    const auto* e = doc_.find(k);
    return e ? e->line : 0;
  }

  [[noreturn]] void fail(const std::string& k, const std::string& msg) const {
    const int l = line(k);
    const std::string where = l ? doc_.origin + ":" + std::to_string(l) + ": " : doc_.origin + ": ";
    throw ConfigError(k, l, where + k + ": " + msg);
  }

  const std::string* raw(const std::string& k) {
    const auto* e = doc_.find(k);
    if (!e) return nullptr;
    used_.insert(k);
    return &e->value;
  }

  std::string str(const std::string& k, const std::string& def) {
    const auto* v = raw(k);
    return v ? *v : def;
  }

  double num(const std::string& k, double def) {
    const auto* v = raw(k);
    if (!v) return def;
    auto x = read_double(*v);
    if (!x || !std::isfinite(*x)) fail(k, "expected a finite number, got '" + *v + "'");
    return *x;
  }

  std::optional<double> opt_num(const std::string& k) {
    if (!has(k)) return std::nullopt;
    return num(k, 0);
  }

  double required(const std::string& k) {
    if (!has(k)) fail(k, "required key is missing");
    return num(k, 0);
  }

  long integer(const std::string& k, long def) {
    const auto* v = raw(k);
    if (!v) return def;
    long x;
    auto r = std::from_chars(v->data(), v->data() + v->size(), x);
    if (r.ec != std::errc() || r.ptr != v->data() + v->size()) fail(k, "expected an integer, got '" + *v + "'");
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& k, std::uint64_t def) {
    const auto* v = raw(k);
    if (!v) return def;
    std::uint64_t x;
    auto r = std::from_chars(v->data(), v->data() + v->size(), x);
    if (r.ec != std::errc() || r.ptr != v->data() + v->size())
      fail(k, "expected a non-negative integer, got '" + *v + "'");
    return x;
  }

  bool boolean(const std::string& k, bool def) {
    const auto* v = raw(k);
    if (!v) return def;
    if (*v == "true") return true;
    if (*v == "false") return false;
    fail(k, "expected true or false, got '" + *v + "'");
  }

  cplx complex(const std::string& k, cplx def) {
    const auto* v = raw(k);
    if (!v) return def;
    auto z = read_complex(*v);
    if (!z) fail(k, "expected a number such as 1.5, 2i or 1-0.5i, got '" + *v + "'");
    return *z;
  }

  Vec3 vec(const std::string& k, const Vec3& def) {
    const auto* v = raw(k);
    if (!v) return def;
    const auto parts = split_list(*v);
    if (parts.size() != 3) fail(k, "expected three comma-separated components");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      auto x = read_double(parts[i]);
      if (!x || !std::isfinite(*x)) fail(k, "component '" + parts[i] + "' is not a finite number");
      out[i] = *x;
    }
    return out;
  }

  CVec3 cvec(const std::string& k, const CVec3& def) {
    const auto* v = raw(k);
    if (!v) return def;
    const auto parts = split_list(*v);
    if (parts.size() != 3) fail(k, "expected three comma-separated components");
    CVec3 out;
    for (int i = 0; i < 3; ++i) {
      auto z = read_complex(parts[i]);
      if (!z) fail(k, "component '" + parts[i] + "' is not a number");
      out[i] = *z;
    }
    return out;
  }

  template <class T>
  std::array<T, 3> triple(const std::string& k, const std::array<T, 3>& def) {
    const auto* v = raw(k);
    if (!v) return def;
    const auto parts = split_list(*v);
    if (parts.size() != 3) fail(k, "expected three values for the channels +, z, -");
    std::array<T, 3> out;
    for (int i = 0; i < 3; ++i) {
      auto z = read_complex(parts[i]);
      if (!z) fail(k, "component '" + parts[i] + "' is not a number");
      if constexpr (std::is_same_v<T, double>) {
        if (z->imag() != 0) fail(k, "channel values must be real");
        out[i] = z->real();
      } else {
        out[i] = *z;
      }
    }
    return out;
  }

  // Keys that exist but were never read are typos or belong to another variant.
  // The hint is appended only for keys in its section.
  void reject_unused(const std::string& section, const std::string& hint) const {
    for (const auto& e : doc_.entries)
      if (!used_.count(e.key)) {
        const std::string where = doc_.origin + ":" + std::to_string(e.line) + ": ";
        const bool inside = e.key.rfind(section + ".", 0) == 0;
        throw ConfigError(e.key, e.line, where + "unknown or unused key '" + e.key + "'" + (inside ? hint : ""));
      }
  }

 private:
  const ConfigDoc& doc_;
  std::set<std::string> used_;
};

void positive(Reader& r, const std::string& k, double v) {
  if (!(v > 0)) r.fail(k, "must be positive");
}

const char* kind_name(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::FreeSpace: return "free_space";
    case SpectrumKind::Cavity: return "cavity";
    case SpectrumKind::Lorentzian: return "lorentzian";
    case SpectrumKind::Tabulated: return "tabulated";
    case SpectrumKind::Table: return "table";
  }
  return "lorentzian";
}

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::Fixed: return "fixed";
    case Orientation::Isotropic: return "isotropic";
    case Orientation::Molecule: return "molecule";
  }
  return "fixed";
}

const char* state_name(StateChoice s) {
  switch (s) {
    case StateChoice::Transient: return "transient";
    case StateChoice::Steady: return "steady";
    case StateChoice::Evolved: return "evolved";
    case StateChoice::LargeDetuning: return "large_detuning";
  }
  return "transient";
}

}  // namespace

RunConfig build_config(const ConfigDoc& doc) {
  Reader r(doc);
  RunConfig c;
  c.origin = doc.origin;
  c.base_dir = fs::path(doc.origin).parent_path().string();

  if (!r.has("task")) r.fail("task", "required key is missing");
  try {
    c.task = parse_task(r.str("task", ""));
  } catch (const ConfigError& e) {
    r.fail("task", e.what());
  }

  auto& L = c.laser;
  L.omega_L = r.required("laser.omega_L");
  positive(r, "laser.omega_L", L.omega_L);
  L.rabi_abs = r.required("laser.rabi_abs");
  if (L.rabi_abs < 0) r.fail("laser.rabi_abs", "must be non-negative");
  L.rabi_phase = r.num("laser.rabi_phase", 0);
  L.k_direction = r.vec("laser.k_direction", L.k_direction);
  if (!(L.k_direction.norm() > 0)) r.fail("laser.k_direction", "must be nonzero");
  L.polarization = r.cvec("laser.polarization", L.polarization);
  if (std::abs(L.polarization.norm() - 1) > 1e-12) r.fail("laser.polarization", "must have unit norm");

  for (int i = 0; i < 2; ++i) {
    const std::string p = "atom" + std::to_string(i + 1) + ".";
    auto& a = c.atoms[i];
    if (i == 1 && !r.has(p + "omega_e")) {
      a.omega_e = c.atoms[0].omega_e;
    } else {
      a.omega_e = r.required(p + "omega_e");
      positive(r, p + "omega_e", a.omega_e);
    }
    const std::string o = r.str(p + "orientation", "fixed");
    if (o == "fixed") {
      a.orientation = Orientation::Fixed;
      a.dipole = r.cvec(p + "dipole", a.dipole);
      if (!(a.dipole.norm() > 0)) r.fail(p + "dipole", "must be nonzero");
    } else if (o == "isotropic" || o == "molecule") {
      a.orientation = o == "isotropic" ? Orientation::Isotropic : Orientation::Molecule;
      a.d_mag = r.num(p + "d_mag", 1);
      positive(r, p + "d_mag", a.d_mag);
      if (a.orientation == Orientation::Molecule) {
        a.samples = r.integer(p + "samples", a.samples);
        if (a.samples < 1000) r.fail(p + "samples", "must be at least 1000");
        a.seed = r.unsigned_integer(p + "seed", a.seed);
      }
    } else {
      r.fail(p + "orientation", "expected fixed, isotropic or molecule");
    }
    a.position = r.vec(p + "position", a.position);
  }
  if (std::abs(c.atoms[0].omega_e - c.atoms[1].omega_e) > 1e-12 * c.atoms[0].omega_e)
    r.fail("atom2.omega_e", "both atoms must share the transition frequency");

  auto& S = c.spectrum;
  const std::string type = r.str("spectrum.type", "");
  if (type.empty()) r.fail("spectrum.type", "required key is missing");
  if (type == "free_space") {
    S.kind = SpectrumKind::FreeSpace;
  } else if (type == "cavity") {
    S.kind = SpectrumKind::Cavity;
    S.length = r.num("spectrum.length", 1);
    positive(r, "spectrum.length", S.length);
    S.area = r.num("spectrum.area", 1);
    positive(r, "spectrum.area", S.area);
    S.d_perp2 = r.opt_num("spectrum.d_perp2");
    if (S.d_perp2 && *S.d_perp2 < 0) r.fail("spectrum.d_perp2", "must be non-negative");
    S.regulator = r.num("spectrum.regulator", 0);
    if (S.regulator < 0) r.fail("spectrum.regulator", "must be non-negative");
    const std::string m = r.str("spectrum.method", "kummer");
    if (m != "kummer" && m != "abel") r.fail("spectrum.method", "expected kummer or abel");
    S.abel = m == "abel";
  } else if (type == "lorentzian") {
    S.kind = SpectrumKind::Lorentzian;
    S.w11 = r.num("spectrum.w11", 1);
    S.w22 = r.num("spectrum.w22", S.w11);
    S.w12 = r.complex("spectrum.w12", S.w11);
    S.omega0 = r.required("spectrum.omega0");
    S.width = r.required("spectrum.width");
    positive(r, "spectrum.width", S.width);
    if (S.w11 < 0) r.fail("spectrum.w11", "must be non-negative");
    if (S.w22 < 0) r.fail("spectrum.w22", "must be non-negative");
  } else if (type == "tabulated") {
    S.kind = SpectrumKind::Tabulated;
    S.file = r.str("spectrum.file", "");
    if (S.file.empty()) r.fail("spectrum.file", "required key is missing");
  } else if (type == "table") {
    S.kind = SpectrumKind::Table;
    S.gamma11 = r.triple<double>("spectrum.gamma11", S.gamma11);
    S.gamma22 = r.triple<double>("spectrum.gamma22", S.gamma11);
    S.gamma12 = r.triple<cplx>("spectrum.gamma12", S.gamma12);
    S.delta12 = r.triple<cplx>("spectrum.delta12", S.delta12);
  } else {
    r.fail("spectrum.type", "expected free_space, cavity, lorentzian, tabulated or table");
  }
  S.tau_c = r.opt_num("spectrum.tau_c");
  if (S.tau_c) positive(r, "spectrum.tau_c", *S.tau_c);
  if (S.kind != SpectrumKind::FreeSpace && S.kind != SpectrumKind::Table)
    S.free_space_sidecar = r.boolean("spectrum.free_space_sidecar", false);

  auto& W = c.sweep;
  W.parameter = r.str("sweep.parameter", "");
  if (!W.parameter.empty()) {
    W.start = r.required("sweep.start");
    W.stop = r.num("sweep.stop", W.start);
    W.count = static_cast<int>(r.integer("sweep.count", 1));
    if (W.count < 1) r.fail("sweep.count", "must be at least 1");
    const std::string sp = r.str("sweep.spacing", "linear");
    if (sp != "linear" && sp != "log") r.fail("sweep.spacing", "expected linear or log");
    W.log = sp == "log";
    if (W.log && !(W.start > 0 && W.stop > 0)) r.fail("sweep.spacing", "log spacing needs positive start and stop");
    W.label = r.str("sweep.label", "");
  }

  auto& N = c.numerics;
  N.pv_tolerance = r.num("numerics.pv_tolerance", N.pv_tolerance);
  positive(r, "numerics.pv_tolerance", N.pv_tolerance);
  N.cavity_tolerance = r.num("numerics.cavity_tolerance", N.cavity_tolerance);
  positive(r, "numerics.cavity_tolerance", N.cavity_tolerance);
  N.cavity_cutoff = r.integer("numerics.cavity_cutoff", 0);
  if (N.cavity_cutoff < 0) r.fail("numerics.cavity_cutoff", "must be non-negative");
  N.dt = r.num("numerics.dt", 0);
  if (N.dt < 0) r.fail("numerics.dt", "must be non-negative");
  N.t_final = r.num("numerics.t_final", N.t_final);
  if (N.t_final < 0) r.fail("numerics.t_final", "must be non-negative");
  N.emit_every = static_cast<int>(r.integer("numerics.emit_every", 1));
  if (N.emit_every < 1) r.fail("numerics.emit_every", "must be at least 1");
  N.coarse_time_T = r.opt_num("numerics.coarse_time_T");
  if (N.coarse_time_T) positive(r, "numerics.coarse_time_T", *N.coarse_time_T);
  N.markov_margin = r.num("numerics.markov_margin", N.markov_margin);
  positive(r, "numerics.markov_margin", N.markov_margin);
  const std::string st = r.str("numerics.state", "transient");
  if (st == "transient") N.state = StateChoice::Transient;
  else if (st == "steady") N.state = StateChoice::Steady;
  else if (st == "evolved") N.state = StateChoice::Evolved;
  else if (st == "large_detuning") N.state = StateChoice::LargeDetuning;
  else r.fail("numerics.state", "expected transient, steady, evolved or large_detuning");

  auto& O = c.output;
  O.path = r.str("output.path", "");
  const std::string f = r.str("output.format", "csv");
  if (f != "csv" && f != "json") r.fail("output.format", "expected csv or json");
  O.json = f == "json";
  O.energy_unit = r.num("output.energy_unit", 1);
  positive(r, "output.energy_unit", O.energy_unit);

  r.reject_unused("spectrum", " for spectrum type " + type);
  return c;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };

  kv("task", name(c.task));
  o << "\n[laser]\n";
  kv("omega_L", format_double(c.laser.omega_L));
  kv("rabi_abs", format_double(c.laser.rabi_abs));
  kv("rabi_phase", format_double(c.laser.rabi_phase));
  kv("k_direction", format_vec(c.laser.k_direction));
  kv("polarization", format_cvec(c.laser.polarization));
  for (int i = 0; i < 2; ++i) {
    const auto& a = c.atoms[i];
    o << "\n[atom" << i + 1 << "]\n";
    kv("omega_e", format_double(a.omega_e));
    kv("orientation", orientation_name(a.orientation));
    if (a.orientation == Orientation::Fixed) kv("dipole", format_cvec(a.dipole));
    else kv("d_mag", format_double(a.d_mag));
    if (a.orientation == Orientation::Molecule) {
      kv("samples", std::to_string(a.samples));
      kv("seed", std::to_string(a.seed));
    }
    kv("position", format_vec(a.position));
  }
  const auto& s = c.spectrum;
  o << "\n[spectrum]\n";
  kv("type", kind_name(s.kind));
  auto trip = [](const auto& a) {
    return format_list(a, [](const auto& x) { return format_complex(cplx(x)); });
  };
  switch (s.kind) {
    case SpectrumKind::FreeSpace: break;
    case SpectrumKind::Cavity:
      kv("length", format_double(s.length));
      kv("area", format_double(s.area));
      if (s.d_perp2) kv("d_perp2", format_double(*s.d_perp2));
      kv("regulator", format_double(s.regulator));
      kv("method", s.abel ? "abel" : "kummer");
      break;
    case SpectrumKind::Lorentzian:
      kv("w11", format_double(s.w11));
      kv("w22", format_double(s.w22));
      kv("w12", format_complex(s.w12));
      kv("omega0", format_double(s.omega0));
      kv("width", format_double(s.width));
      break;
    case SpectrumKind::Tabulated: kv("file", quoted(s.file)); break;
    case SpectrumKind::Table:
      kv("gamma11", trip(s.gamma11));
      kv("gamma22", trip(s.gamma22));
      kv("gamma12", trip(s.gamma12));
      kv("delta12", trip(s.delta12));
      break;
  }
  if (s.tau_c) kv("tau_c", format_double(*s.tau_c));
  if (s.kind != SpectrumKind::FreeSpace && s.kind != SpectrumKind::Table)
    kv("free_space_sidecar", s.free_space_sidecar ? "true" : "false");

  if (!c.sweep.parameter.empty()) {
    const auto& w = c.sweep;
    o << "\n[sweep]\n";
    kv("parameter", w.parameter);
    kv("start", format_double(w.start));
    kv("stop", format_double(w.stop));
    kv("count", std::to_string(w.count));
    kv("spacing", w.log ? "log" : "linear");
    if (!w.label.empty()) kv("label", w.label);
  }

  const auto& n = c.numerics;
  o << "\n[numerics]\n";
  kv("pv_tolerance", format_double(n.pv_tolerance));
  kv("cavity_tolerance", format_double(n.cavity_tolerance));
  kv("cavity_cutoff", std::to_string(n.cavity_cutoff));
  kv("dt", format_double(n.dt));
  kv("t_final", format_double(n.t_final));
  kv("emit_every", std::to_string(n.emit_every));
  if (n.coarse_time_T) kv("coarse_time_T", format_double(*n.coarse_time_T));
  kv("markov_margin", format_double(n.markov_margin));
  kv("state", state_name(n.state));

  o << "\n[output]\n";
  if (!c.output.path.empty()) kv("path", quoted(c.output.path));
  kv("format", c.output.json ? "json" : "csv");
  kv("energy_unit", format_double(c.output.energy_unit));
  return o.str();
}

// ---------------------------------------------------------------- sweeps

std::vector<double> sweep_values(const SweepConfig& s) {
  if (s.parameter.empty()) return {std::nan("")};
  std::vector<double> v(s.count);
  for (int i = 0; i < s.count; ++i) {
    const double f = s.count == 1 ? 0.0 : static_cast<double>(i) / (s.count - 1);
    v[i] = s.log ? s.start * std::pow(s.stop / s.start, f) : s.start + (s.stop - s.start) * f;
  }
  // Hit the end points exactly.
  v.front() = s.start;
  if (s.count > 1) v.back() = s.stop;
  return v;
}

std::string sweep_label(const SweepConfig& s) {
  if (!s.label.empty()) return s.label;
  const auto& p = s.parameter;
  // atom2.position.z -> z2
  if (p.rfind("atom", 0) == 0 && p.size() > 6 && p.find(".position.") == 5)
    return p.substr(p.size() - 1) + p.substr(4, 1);
  const auto dot = p.rfind('.');
  return dot == std::string::npos ? p : p.substr(dot + 1);
}

void apply_parameter(ConfigDoc& doc, const RunConfig& base, const std::string& path, double value) {
  auto bad = [&](const std::string& why) {
    const auto* e = doc.find("sweep.parameter");
    throw ConfigError("sweep.parameter", e ? e->line : 0,
                      doc.origin + ": sweep.parameter: '" + path + "' " + why);
  };
  if (path == "r12") {
    const Vec3 p1 = base.atoms[0].position, p2 = base.atoms[1].position;
    Vec3 u = p2 - p1;
    u = u.norm() > 0 ? Vec3(u.normalized()) : Vec3(0, 0, 1);
    doc.set("atom2.position", format_vec(p1 + value * u));
    return;
  }
  static const std::set<std::string> scalars = {
      "laser.omega_L",     "laser.rabi_abs",    "laser.rabi_phase",     "atom1.omega_e",
      "atom2.omega_e",     "atom1.d_mag",       "atom2.d_mag",          "spectrum.w11",
      "spectrum.w22",      "spectrum.w12",      "spectrum.omega0",      "spectrum.width",
      "spectrum.length",   "spectrum.area",     "spectrum.d_perp2",     "spectrum.regulator",
      "spectrum.tau_c",    "numerics.t_final",  "numerics.dt",          "numerics.coarse_time_T",
      "numerics.pv_tolerance"};
  if (scalars.count(path)) {
    doc.set(path, format_double(value));
    // The atoms share omega_e, so sweeping one moves both.
    if (path == "atom1.omega_e" || path == "atom2.omega_e") {
      doc.set("atom1.omega_e", format_double(value));
      doc.set("atom2.omega_e", format_double(value));
    }
    return;
  }
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) bad("is not a sweepable parameter");
  const std::string vec_key = path.substr(0, dot), comp = path.substr(dot + 1);
  if (comp.size() != 1 || comp.find_first_of("xyz") != 0) bad("is not a sweepable parameter");
  const int k = comp[0] - 'x';
  Vec3 v;
  if (vec_key == "laser.k_direction") v = base.laser.k_direction;
  else if (vec_key == "atom1.position") v = base.atoms[0].position;
  else if (vec_key == "atom2.position") v = base.atoms[1].position;
  else bad("is not a sweepable vector component");
  v[k] = value;
  doc.set(vec_key, format_vec(v));
}

}  // namespace liddi::app
