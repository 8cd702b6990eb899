#include "liddi_app/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "liddi/errors.hpp"
#include "liddi/liouvillian.hpp"
#include "liddi/observables.hpp"
#include "liddi/orientation.hpp"
#include "liddi/version.hpp"
#include "liddi_app/validate.hpp"

namespace liddi::app {

namespace fs = std::filesystem;

namespace {

OrientationModel orientation(const AtomConfig& a) {
  switch (a.orientation) {
    case Orientation::Fixed: return Fixed{a.dipole};
    case Orientation::Isotropic: return IsotropicAtom{a.d_mag};
    case Orientation::Molecule: return RandomMolecule{a.d_mag, a.samples, a.seed};
  }
  return Fixed{a.dipole};
}

std::string resolve(const RunConfig& cfg, const std::string& file) {
  fs::path p(file);
  if (p.is_relative() && !cfg.base_dir.empty()) p = fs::path(cfg.base_dir) / p;
  return p.string();
}

}  // namespace

std::optional<Tabulated> load_tabulated(const RunConfig& cfg) {
  if (cfg.spectrum.kind != SpectrumKind::Tabulated) return std::nullopt;
  try {
    return Tabulated::load_csv(resolve(cfg, cfg.spectrum.file));
  } catch (const Error& e) {
    throw ConfigError("spectrum.file", 0, cfg.origin + ": spectrum.file: " + e.what());
  }
}

System build_system(const RunConfig& cfg, const std::optional<Tabulated>& tab) {
  const auto& L = cfg.laser;
  const LaserDrive laser(L.omega_L, L.k_direction, L.polarization, std::polar(L.rabi_abs, L.rabi_phase));
  const CVec3 d1 = effective_dipole(orientation(cfg.atoms[0]), laser.e_L);
  const CVec3 d2 = effective_dipole(orientation(cfg.atoms[1]), laser.e_L);
  const AtomParams a1(cfg.atoms[0].omega_e, d1, cfg.atoms[0].position);
  const AtomParams a2(cfg.atoms[1].omega_e, d2, cfg.atoms[1].position);

  System s;
  s.frame = dressed_frame(laser, a1);
  s.sites = {a1.position, a2.position};
  s.r12 = a1.position - a2.position;

  const auto& S = cfg.spectrum;
  CouplingOptions co;
  co.pv.rel_tol = cfg.numerics.pv_tolerance;
  co.cavity.tolerance = cfg.numerics.cavity_tolerance;

  if (S.kind == SpectrumKind::Table) {
    for (int i = 0; i < 3; ++i) {
      s.table.gamma[i] << S.gamma11[i], S.gamma12[i], std::conj(S.gamma12[i]), S.gamma22[i];
      s.table.delta[i] << 0.0, S.delta12[i], std::conj(S.delta12[i]), 0.0;
    }
    s.table.refresh(s.frame);
    s.tau_c = S.tau_c.value_or(0.0);
    return s;
  }

  SpectrumModel model = FreeSpace{d1};
  switch (S.kind) {
    case SpectrumKind::FreeSpace: break;
    case SpectrumKind::Cavity: {
      IdealCavity c;
      c.length = S.length;
      c.area = S.area;
      c.d_perp2 = S.d_perp2.value_or(d1.head<2>().squaredNorm());
      c.mode_cutoff = cfg.numerics.cavity_cutoff;
      c.regulator = S.regulator;
      c.method = S.abel ? CavitySummation::AbelRichardson : CavitySummation::Kummer;
      model = c;
      break;
    }
    case SpectrumKind::Lorentzian: {
      Lorentzian l;
      l.w11 = S.w11;
      l.w22 = S.w22;
      l.w12 = S.w12;
      l.omega0 = S.omega0;
      l.width = S.width;
      model = l;
      break;
    }
    case SpectrumKind::Tabulated: {
      if (!tab) throw InvalidArgument("tabulated spectrum was not loaded");
      model = *tab;
      break;
    }
    case SpectrumKind::Table: break;
  }
  ReservoirSpectrum spec(model);
  spec.tau_c = S.tau_c;
  if (S.free_space_sidecar) spec.sidecar = FreeSpace{d1};
  spec.validate();
  s.table = coupling_table(spec, s.frame, s.sites, co);
  s.tau_c = spec.correlation_time(s.frame);
  s.spectrum = std::move(spec);
  return s;
}

double default_coarse_time(const System& s) {
  double rate = 0;
  for (int i = 0; i < 3; ++i)
    rate = std::max({rate, s.table.gamma[i].cwiseAbs().maxCoeff(), s.table.delta[i].cwiseAbs().maxCoeff()});
  const double lower = std::max(1.0 / s.frame.omega_bar, s.tau_c);
  if (!(rate > 0)) return 100 * lower;
  return std::sqrt(lower / rate);
}

std::vector<std::string> task_columns(Task t) {
  switch (t) {
    case Task::Potential: return {"u_total", "u_z", "u_plus", "u_minus"};
    case Task::Steady:
      return {"rho11", "rho22", "rho33", "rho44", "rho23_re", "rho23_im", "u_total", "trace_error", "min_eigenvalue"};
    case Task::Scatter: return {"r_total", "r_z", "r_plus", "r_minus"};
    case Task::Rddi: return {"delta_plus", "delta_z", "delta_minus"};
    case Task::Evolve: {
      std::vector<std::string> c{"t"};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const std::string ij = std::to_string(i) + std::to_string(j);
          c.push_back("rho_re_" + ij);
          c.push_back("rho_im_" + ij);
        }
      return c;
    }
    case Task::Validate: return {"check", "passed", "residual", "threshold"};
  }
  return {};
}

namespace {

Trajectory run_trajectory(const RunConfig& cfg, const System& s, const GeneratorMatrix& g) {
  const double dt = cfg.numerics.dt > 0 ? cfg.numerics.dt : 0.5 * EvolveOptions{}.step_factor / g.norm();
  EvolveOptions eo;
  eo.emit_every = cfg.numerics.emit_every;
  return evolve(g, ground_pair_state(s.frame, s.frame), cfg.numerics.t_final, dt, eo);
}

TwoAtomState chosen_state(const RunConfig& cfg, const System& s, StateSource* src) {
  switch (cfg.numerics.state) {
    case StateChoice::Transient:
      *src = StateSource::Transient;
      return ground_pair_state(s.frame, s.frame);
    case StateChoice::Steady:
      *src = StateSource::Steady;
      return steady_state(build_liouvillian(s.table, s.frame, s.r12));
    case StateChoice::Evolved: {
      *src = StateSource::User;
      const auto g = build_liouvillian(s.table, s.frame, s.r12);
      return run_trajectory(cfg, s, g).states.back();
    }
    case StateChoice::LargeDetuning: break;
  }
  throw InvalidArgument("the large-detuning estimate has no density matrix");
}

}  // namespace

PointResult evaluate_point(const RunConfig& cfg, const std::optional<Tabulated>& tab) {
  PointResult out;
  try {
    const System s = build_system(cfg, tab);
    const double T = cfg.numerics.coarse_time_T.value_or(default_coarse_time(s));
    out.markov = markov_validity(s.tau_c, s.frame, s.table, T, cfg.numerics.markov_margin);
    const double unit = cfg.output.energy_unit;

    switch (cfg.task) {
      case Task::Potential: {
        PotentialBreakdown p;
        if (cfg.numerics.state == StateChoice::LargeDetuning) {
          p = large_detuning_potential(s.table, s.frame, s.r12);
        } else if (cfg.numerics.state == StateChoice::Transient) {
          p = transient_potential_closed(s.table, s.frame, s.r12);
        } else {
          StateSource src;
          const auto rho = chosen_state(cfg, s, &src);
          p = liddi_potential(rho, s.table, s.frame, s.r12, src);
        }
        out.warning = p.warning;
        out.rows.push_back({p.total / unit, p.u_z / unit, p.u_plus / unit, p.u_minus / unit});
        break;
      }
      case Task::Steady: {
        const auto rho = steady_state(build_liouvillian(s.table, s.frame, s.r12));
        const auto h = check_state(rho);
        const auto p = liddi_potential(rho, s.table, s.frame, s.r12, StateSource::Steady);
        const auto& m = rho.rho;
        out.rows.push_back({m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(1, 2).real(),
                            m(1, 2).imag(), p.total / unit, h.trace_error, h.min_eigenvalue});
        break;
      }
      case Task::Scatter: {
        StateSource src;
        const auto rho = chosen_state(cfg, s, &src);
        const auto r = scattering_rate(rho, s.table, s.frame);
        out.rows.push_back({r.total / unit, r.r_z / unit, r.r_plus / unit, r.r_minus / unit});
        break;
      }
      case Task::Rddi:
        out.rows.push_back({s.table.d(Channel::Plus)(0, 1).real() / unit, s.table.d(Channel::Z)(0, 1).real() / unit,
                            s.table.d(Channel::Minus)(0, 1).real() / unit});
        break;
      case Task::Evolve: {
        const auto g = build_liouvillian(s.table, s.frame, s.r12);
        const auto tr = run_trajectory(cfg, s, g);
        for (std::size_t k = 0; k < tr.t.size(); ++k) {
          std::vector<double> row{tr.t[k]};
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
              row.push_back(tr.states[k].rho(i, j).real());
              row.push_back(tr.states[k].rho(i, j).imag());
            }
          out.rows.push_back(std::move(row));
        }
        break;
      }
      case Task::Validate: throw InvalidArgument("validate is not a per-point task");
    }
  } catch (const Error& e) {
    out.rows.clear();
    out.error = std::string(e.kind()) + ": " + e.what();
  } catch (const ConfigError& e) {
    out.rows.clear();
    out.error = std::string("ConfigError: ") + e.what();
  }
  return out;
}

int thread_budget(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LIDDI_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

namespace {

// RFC 4180 field: quoted only when it contains a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json markov_json(const std::optional<MarkovReport>& m) {
  if (!m) return nullptr;
  return {{"T", json_number(m->T)},
          {"tau_c", json_number(m->tau_c)},
          {"max_rate", json_number(m->max_rate)},
          {"secular_ratio", json_number(m->secular_ratio)},
          {"markov_ratio", json_number(m->markov_ratio)},
          {"resolution_ratio", json_number(m->resolution_ratio)},
          {"ok_secular", m->ok_secular},
          {"ok_markov", m->ok_markov},
          {"ok_resolution", m->ok_resolution},
          {"margin", m->margin}};
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> csv_rows;
  nlohmann::json json_rows = nlohmann::json::array();
};

Table tabulate(const RunConfig& cfg, const std::vector<PointResult>& pts) {
  Table t;
  const bool swept = !cfg.sweep.parameter.empty();
  const bool any_error = std::any_of(pts.begin(), pts.end(), [](const auto& p) { return !p.error.empty(); });
  const auto cols = task_columns(cfg.task);
  if (swept) t.columns.push_back(sweep_label(cfg.sweep));
  t.columns.insert(t.columns.end(), cols.begin(), cols.end());
  if (any_error) t.columns.push_back("error");

  for (const auto& p : pts) {
    auto emit = [&](const std::vector<double>* vals, const std::string& err) {
      std::vector<std::string> row;
      nlohmann::json obj = nlohmann::json::object();
      if (swept) {
        row.push_back(csv_number(p.value));
        obj[t.columns.front()] = json_number(p.value);
      }
      for (std::size_t i = 0; i < cols.size(); ++i) {
        row.push_back(vals ? csv_number((*vals)[i]) : "");
        obj[cols[i]] = vals ? json_number((*vals)[i]) : nlohmann::json(nullptr);
      }
      if (any_error) {
        row.push_back(csv_field(err));
        obj["error"] = err.empty() ? nlohmann::json(nullptr) : nlohmann::json(err);
      }
      t.csv_rows.push_back(std::move(row));
      t.json_rows.push_back(std::move(obj));
    };
    if (!p.error.empty()) emit(nullptr, p.error);
    for (const auto& r : p.rows) emit(&r, "");
  }
  return t;
}

void write_csv(std::ostream& o, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "," : "") << csv_field(t.columns[i]);
  o << "\r\n";
  for (const auto& r : t.csv_rows) {
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
    o << "\r\n";
  }
}

nlohmann::json meta_json(const RunConfig& cfg, const std::vector<PointResult>& pts) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    points.push_back({{"index", i},
                      {"value", json_number(p.value)},
                      {"markov", markov_json(p.markov)},
                      {"warning", p.warning},
                      {"error", p.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(p.error)}});
  }
  return {{"library_version", kVersion},
          {"task", name(cfg.task)},
          {"config", serialize(cfg)},
          {"points", points}};
}

std::string output_path(const RunConfig& cfg, const RunOptions& opt) {
  if (opt.out) return *opt.out;
  if (!cfg.output.path.empty()) return cfg.output.path;
  fs::path p(cfg.origin);
  p.replace_extension(cfg.output.json ? ".json" : ".csv");
  return p.string();
}

int run_validate(const RunConfig& cfg, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  SuiteOptions so;
  so.threads = thread_budget(opt.threads);
  so.config = cfg;
  const auto rs = validate_suite(so);
  print_report(rs, out);
  const bool ok = std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.passed; });
  const int failed = static_cast<int>(std::count_if(rs.begin(), rs.end(), [](const auto& r) { return !r.passed; }));
  out << (ok ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";

  const std::string path = opt.out ? *opt.out : cfg.output.path;
  if (!path.empty()) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << path << "'\n";
      return kExitInput;
    }
    if (cfg.output.json) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : rs)
        rows.push_back({{"check", r.id},
                        {"title", r.title},
                        {"passed", r.passed},
                        {"residual", json_number(r.residual)},
                        {"threshold", json_number(r.threshold)},
                        {"detail", r.detail}});
      f << nlohmann::json{{"rows", rows}, {"meta", {{"library_version", kVersion}, {"task", "validate"}}}}.dump(2)
        << "\n";
    } else {
      f << "check,title,passed,residual,threshold,detail\r\n";
      for (const auto& r : rs)
        f << csv_field(r.id) << "," << csv_field(r.title) << "," << (r.passed ? "true" : "false") << ","
          << csv_number(r.residual) << "," << csv_number(r.threshold) << "," << csv_field(r.detail) << "\r\n";
    }
  }
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int run(const ConfigDoc& doc, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::optional<Tabulated> tab;
  std::vector<RunConfig> points;
  std::vector<double> values;
  try {
    ConfigDoc d = doc;
    if (opt.task) d.set("task", name(*opt.task));
    cfg = build_config(d);
    if (cfg.task == Task::Validate) return run_validate(cfg, opt, out, err);
    tab = load_tabulated(cfg);
    values = sweep_values(cfg.sweep);
    for (double v : values) {
      if (cfg.sweep.parameter.empty()) {
        points.push_back(cfg);
        continue;
      }
      ConfigDoc pd = d;
      apply_parameter(pd, cfg, cfg.sweep.parameter, v);
      points.push_back(build_config(pd));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitInput;
  }

  std::vector<PointResult> results(points.size());
  const int nt = std::min<int>(thread_budget(opt.threads), static_cast<int>(points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      results[i] = evaluate_point(points[i], tab);
      results[i].value = values[i];
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const Table t = tabulate(cfg, results);
  const std::string path = output_path(cfg, opt);
  const auto meta = meta_json(cfg, results);
  auto write = [&](std::ostream& o) {
    if (cfg.output.json) {
      nlohmann::json j{{"rows", t.json_rows}, {"meta", meta}};
      o << j.dump(2) << "\n";
    } else {
      write_csv(o, t);
    }
  };
  if (path == "-") {
    write(out);
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << path << "'\n";
      return kExitInput;
    }
    write(f);
    std::ofstream m(path + ".meta.json", std::ios::binary);
    if (!m) {
      err << "error: cannot write '" << path << ".meta.json'\n";
      return kExitInput;
    }
    m << meta.dump(2) << "\n";
  }

  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& p) { return !p.error.empty(); });
  const auto warned = std::count_if(results.begin(), results.end(), [](const auto& p) {
    return p.warning || (p.markov && !p.markov->ok());
  });
  if (failed) err << failed << " of " << results.size() << " point(s) failed; see the error column\n";
  if (warned) err << warned << " point(s) outside the stated validity conditions; see the metadata\n";
  return kExitOk;
}

}  // namespace liddi::app
