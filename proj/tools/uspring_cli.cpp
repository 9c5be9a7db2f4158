// Command-line front end; everything goes through the C API of libuspring.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "uspring.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code(usp_status s) {
  switch (s) {
    case USP_OK: return 0;
    case USP_ERR_RESONANCE: return 3;
    case USP_ERR_INTEGRATION: return 4;
    case USP_ERR_CONTINUATION:
    case USP_ERR_NO_CONVERGENCE: return 5;
    default: return 2;  // validation / domain / unsupported / io
  }
}

[[noreturn]] void fail(usp_status s, const std::string& where) {
  std::cerr << "error (" << where << "): " << usp_last_error() << "\n";
  std::exit(exit_code(s));
}

void check(usp_status s, const std::string& where) {
  if (s != USP_OK) fail(s, where);
}

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::string preset;
  double tol = 1e-10;
  double gap = 0.0;
  bool quick = false;
  json cfg;  // parsed config file, or empty object

  void load_config() {
    cfg = json::object();
    if (config_path.empty()) return;
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read config " << config_path << "\n";
      std::exit(2);
    }
    try {
      is >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "error: bad config JSON: " << e.what() << "\n";
      std::exit(2);
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if (cfg.contains(key)) return cfg.at(key).get<T>();
    return fallback;
  }

  fs::path out(const std::string& name) const {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
  }
};

using SystemPtr = std::unique_ptr<usp_system, decltype(&usp_system_free)>;

SystemPtr make_system(const Options& opt, double eps) {
  usp_system* raw = nullptr;
  if (!opt.preset.empty()) {
    check(usp_system_preset(opt.preset.c_str(), eps, opt.gap, &raw), "preset");
  } else if (opt.cfg.contains("system")) {
    const json& js = opt.cfg.at("system");
    const std::vector<double> lambdas = js.at("lambdas").get<std::vector<double>>();
    const int n = static_cast<int>(lambdas.size());
    std::vector<double> a;
    const json& ja = js.at("A");
    if (ja.is_array() && !ja.empty() && ja.front().is_array()) {
      for (const auto& row : ja)
        for (const auto& x : row) a.push_back(x.get<double>());
    } else {
      a = ja.get<std::vector<double>>();
    }
    std::vector<double> b = js.contains("B") ? js.at("B").get<std::vector<double>>()
                                             : std::vector<double>(n, 0.0);
    check(usp_system_create(n, lambdas.data(), a.data(), b.data(), eps, &raw),
          "system");
  } else {
    check(usp_system_preset("1dof", eps, opt.gap, &raw), "preset");
  }
  return SystemPtr(raw, &usp_system_free);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_expand1dof(const Options& opt, const std::string& case_flag) {
  const double omega0 = opt.get("omega0", 1.0);
  const double a = opt.get("a", 1.0);
  const double b = opt.cfg.contains("b") ? opt.cfg.at("b").get<double>() : opt.gap;
  const double a0 = opt.get("a0", 1.0);
  const double a1 = opt.get("a1", 0.0);
  const int n_max = opt.get("n_max", 400);
  const double eps = opt.get("eps", 0.1);

  std::string mode = case_flag.empty() ? opt.get<std::string>("case", "auto")
                                       : case_flag;
  if (mode == "auto") {
    if (b != 0.0 && std::abs(a0) == std::abs(b))
      mode = "critical";
    else if (b == 0.0 && a == 1.0)
      mode = "homogeneous";
    else
      mode = "offset";
  }

  usp_expansion1* e = nullptr;
  usp_status st;
  if (mode == "homogeneous")
    st = usp_expand1_homogeneous(omega0, a0, a1, n_max, &e);
  else if (mode == "critical")
    st = usp_expand1_critical(omega0, a, b, a0, a1, &e);
  else
    st = usp_expand1_offset(omega0, a, b, a0, a1, n_max, &e);
  check(st, "expand1dof");

  check(usp_expansion1_write_json(e, opt.out("expansion1.json").string().c_str()),
        "write json");
  check(usp_expansion1_write_reconstruction_csv(
            e, eps, 1001, opt.out("reconstruction.csv").string().c_str()),
        "write csv");

  usp_expansion1_info info;
  usp_expansion1_get(e, &info);
  const char* names[] = {"homogeneous", "offset", "critical", "no_contact"};
  std::cout << "case " << names[info.case_tag] << ": omega = " << info.omega0
            << " + " << info.omega1 << " eps + " << info.omega2 << " eps^2\n";
  usp_expansion1_free(e);
  return 0;
}

int cmd_expandndof(const Options& opt, int mode) {
  const double eps = opt.get("eps", 0.05);
  const double a0 = opt.get("a0", 1.0);
  const double a1 = opt.get("a1", 0.0);
  const int n_max = opt.get("n_max", 400);
  SystemPtr sys = make_system(opt, eps);

  usp_expansion_n* e = nullptr;
  check(usp_expand_mode(sys.get(), mode, a0, a1, n_max, &e), "expandndof");
  check(usp_expansion_n_write_json(e, opt.out("expansion_n.json").string().c_str()),
        "write json");

  usp_expansion_n_info info;
  usp_expansion_n_get(e, &info);
  std::cout << "mode " << info.mode << ": omega = " << info.omega0 << " + "
            << info.omega1 << " eps + " << info.omega2 << " eps^2\n";
  usp_expansion_n_free(e);

  if (opt.cfg.contains("amplitudes")) {
    const std::vector<double> amp =
        opt.cfg.at("amplitudes").get<std::vector<double>>();
    check(usp_first_order_write_csv(sys.get(), amp.data(),
                                    opt.get("t_window", 0.0),
                                    opt.out("first_order.csv").string().c_str()),
          "first order table");
  }
  return 0;
}

int cmd_simulate(const Options& opt, const std::string& u0_flag,
                 const std::string& v0_flag, int spectrum_component) {
  const double eps = opt.get("eps", 0.1);
  const double t_end = opt.get("t_end", 100.0);
  SystemPtr sys = make_system(opt, eps);
  int n = 0;
  usp_system_size(sys.get(), &n);

  std::vector<double> u0(n, 0.0), v0(n, 0.0);
  u0[0] = 1.0;
  if (!u0_flag.empty()) u0 = parse_list(u0_flag);
  else if (opt.cfg.contains("u0")) u0 = opt.cfg.at("u0").get<std::vector<double>>();
  if (!v0_flag.empty()) v0 = parse_list(v0_flag);
  else if (opt.cfg.contains("v0")) v0 = opt.cfg.at("v0").get<std::vector<double>>();
  if (static_cast<int>(u0.size()) != n || static_cast<int>(v0.size()) != n) {
    std::cerr << "error: u0/v0 must have " << n << " entries\n";
    return 2;
  }

  usp_series* ts = nullptr;
  check(usp_simulate(sys.get(), u0.data(), v0.data(), t_end, opt.tol, &ts),
        "simulate");
  check(usp_series_write_csv(ts, opt.out("series.csv").string().c_str()), "write csv");
  check(usp_series_write_sidecar_json(ts, opt.out("series.json").string().c_str()),
        "write sidecar");

  if (spectrum_component >= 0) {
    check(usp_spectrum_write_csv(sys.get(), ts, spectrum_component, 1,
                                 opt.get("n_fft", 1 << 14),
                                 opt.out("spectrum.csv").string().c_str()),
          "spectrum");
  }
  int samples = 0, events = 0;
  usp_series_size(ts, &samples, nullptr, &events);
  std::cout << "simulated to t = " << t_end << ": " << samples << " samples, "
            << events << " switching events\n";
  usp_series_free(ts);
  return 0;
}

int cmd_spectrum(const Options& opt, const std::string& input, int component,
                 bool rect, int n_fft) {
  std::ifstream is(input);
  if (!is) {
    std::cerr << "error: cannot read " << input << "\n";
    return 2;
  }
  std::string line;
  std::getline(is, line);  // header
  std::vector<double> t, u;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string item;
    std::vector<double> row;
    while (std::getline(ss, item, ',')) row.push_back(std::stod(item));
    if (static_cast<int>(row.size()) < component + 2) {
      std::cerr << "error: column " << component + 1 << " missing in " << input
                << "\n";
      return 2;
    }
    t.push_back(row[0]);
    u.push_back(row[static_cast<size_t>(component) + 1]);
  }
  if (t.size() < 8) {
    std::cerr << "error: too few samples in " << input << "\n";
    return 2;
  }
  // uniform resampling by linear interpolation
  std::vector<double> s(n_fft);
  const double t0 = t.front(), t1 = t.back();
  size_t j = 0;
  for (int i = 0; i < n_fft; ++i) {
    const double x = t0 + (t1 - t0) * i / n_fft;
    while (j + 2 < t.size() && t[j + 1] <= x) ++j;
    const double w = (x - t[j]) / (t[j + 1] - t[j]);
    s[i] = u[j] * (1.0 - w) + u[j + 1] * w;
  }
  std::vector<double> freq(n_fft / 2 + 1), amp(n_fft / 2 + 1);
  check(usp_spectrum_of_samples(s.data(), n_fft, (t1 - t0) / n_fft, rect ? 0 : 1,
                                freq.data(), amp.data()),
        "spectrum");
  std::ofstream os(opt.out("spectrum.csv"));
  os << "frequency,amplitude\n";
  char buf[64];
  for (size_t i = 0; i < freq.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", freq[i], amp[i]);
    os << buf;
  }
  std::cout << "spectrum written (" << freq.size() << " bins)\n";
  return 0;
}

int cmd_nnm(const Options& opt, int mode, bool orbits) {
  const double c = opt.get("c", 0.5);
  const double eps_start = opt.get("eps_start", 0.01);
  const double eps_end = opt.get("eps_end", 0.1);
  const double delta0 = opt.get("delta0", 0.01);
  const double tol = opt.cfg.contains("tol") ? opt.cfg.at("tol").get<double>()
                                             : std::min(opt.tol, 1e-9);
  SystemPtr sys = make_system(opt, eps_start);

  usp_branch* branch = nullptr;
  const usp_status st = usp_continue_nnm(sys.get(), mode, c, eps_start, eps_end,
                                         delta0, tol, &branch);
  if (st != USP_OK && branch == nullptr) fail(st, "nnm");

  check(usp_branch_write_csv(branch, opt.out("branch.csv").string().c_str()),
        "write csv");
  check(usp_branch_write_json(branch, opt.out("branch.json").string().c_str()),
        "write json");

  int points = 0, n = 0, completed = 0;
  usp_branch_size(branch, &points, &n, &completed);
  if (orbits) {
    std::vector<double> x0(n), v0(n, 0.0);
    for (int i = 0; i < points; ++i) {
      usp_nnm_point info;
      usp_branch_point(branch, i, x0.data(), &info);
      usp_system_set_eps(sys.get(), info.eps);
      usp_series* ts = nullptr;
      check(usp_simulate(sys.get(), x0.data(), v0.data(), info.T, tol, &ts),
            "orbit");
      char name[64];
      std::snprintf(name, sizeof name, "orbit_%03d.csv", i);
      check(usp_series_write_csv(ts, opt.out(name).string().c_str()), "orbit csv");
      usp_series_free(ts);
    }
  }
  std::cout << "branch: " << points << " points, "
            << (completed ? "completed" : "partial") << "\n";
  usp_branch_free(branch);
  if (st != USP_OK) {
    std::cerr << "warning: " << usp_last_error() << "\n";
    return 5;
  }
  return 0;
}

int cmd_sweep(const Options& opt, int threads) {
  const double eps_start = opt.get("eps_start", 0.01);
  const double eps_stop = opt.get("eps_stop", 0.2);
  const int count = opt.get("count", 20);
  const double a0 = opt.get("a0", 1.0);
  const int n_max = opt.get("n_max", 400);
  const bool measure = opt.get("measure", false);
  const double gap = opt.gap;

  // Expansion coefficients once (eps-independent).
  SystemPtr sys0 = make_system(opt, 0.0);
  int n = 0;
  usp_system_size(sys0.get(), &n);
  usp_expansion_n* e = nullptr;
  check(usp_expand_mode(sys0.get(), 0, a0, 0.0, n_max, &e), "sweep expansion");
  usp_expansion_n_info info;
  usp_expansion_n_get(e, &info);
  usp_expansion_n_free(e);

  const bool has_exact = n == 1 && gap == 0.0;

  struct Row {
    double eps, expansion, exact = 0.0, measured = 0.0;
  };
  std::vector<Row> rows(count);

  auto work = [&](int i) {
    Row r;
    r.eps = eps_start + (eps_stop - eps_start) * i / std::max(1, count - 1);
    r.expansion = info.omega0 + r.eps * info.omega1 + r.eps * r.eps * info.omega2;
    if (has_exact) usp_exact_frequency(info.omega0, r.eps, &r.exact);
    if (measure) {
      SystemPtr sys = make_system(opt, r.eps);
      std::vector<double> u0(n, 0.0), v0(n, 0.0);
      u0[0] = a0;
      usp_series* ts = nullptr;
      check(usp_simulate(sys.get(), u0.data(), v0.data(),
                         40.0 * 2.0 * M_PI / info.omega0, opt.tol, &ts),
            "sweep simulate");
      double p = 0.0;
      check(usp_measure_period(sys.get(), ts, 0, &p, nullptr), "sweep period");
      usp_series_free(ts);
      r.measured = 2.0 * M_PI / p;
    }
    rows[i] = r;
  };

  if (threads > 1) {
    std::vector<std::future<void>> futs;
    for (int c = 0; c < threads; ++c)
      futs.push_back(std::async(std::launch::async, [&, c] {
        for (int i = c; i < count; i += threads) work(i);
      }));
    for (auto& f : futs) f.get();
  } else {
    for (int i = 0; i < count; ++i) work(i);
  }

  std::ofstream os(opt.out("sweep.csv"));
  os << "eps,omega_expansion";
  if (has_exact) os << ",omega_exact";
  if (measure) os << ",omega_measured";
  os << "\n";
  char buf[160];
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.eps, r.expansion);
    os << buf;
    if (has_exact) {
      std::snprintf(buf, sizeof buf, ",%.17g", r.exact);
      os << buf;
    }
    if (measure) {
      std::snprintf(buf, sizeof buf, ",%.17g", r.measured);
      os << buf;
    }
    os << "\n";
  }
  std::cout << "sweep written: " << count << " grid points\n";
  return 0;
}

int cmd_validate(const Options& opt) {
  usp_report* report = nullptr;
  check(usp_validate_run(opt.quick ? 1 : 0, &report), "validate");
  check(usp_report_write_json(report, opt.out("validate.json").string().c_str()),
        "write report");
  int n = 0;
  usp_report_size(report, &n);
  bool all = true;
  for (int i = 0; i < n; ++i) {
    usp_criterion c;
    usp_report_entry(report, i, &c);
    if (c.skipped) {
      std::printf("criterion %2d: SKIP\n", c.index);
      continue;
    }
    if (!c.passed) all = false;
    std::printf("criterion %2d: %s  %s [%s; expected %s] (%.1fs)\n", c.index,
                c.passed ? "PASS" : "FAIL", c.name, c.measured, c.expected,
                c.seconds);
  }
  usp_report_free(report);
  return all ? 0 : 6;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "uspring: strained-coordinate expansions and nonlinear normal modes for "
      "oscillators with a weak unilateral spring"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--tol", opt.tol, "integrator tolerance");
  app.add_option("--preset", opt.preset,
                 "system preset (1dof, 1dof_gap, chain2/3/5/20, modal3, coupled3)");
  app.add_option("--gap", opt.gap, "contact gap for presets");
  app.add_flag("--quick", opt.quick, "reduced validation suite");

  auto* c_exp1 = app.add_subcommand("expand1dof", "one-dof strained expansion");
  std::string case_flag;
  c_exp1->add_option("--case", case_flag, "auto|homogeneous|offset|critical");

  auto* c_expn = app.add_subcommand("expandndof", "n-dof expansion near one mode");
  int mode = 0;
  c_expn->add_option("--mode", mode, "excited mode (0-based)");

  auto* c_sim = app.add_subcommand("simulate", "time integration");
  std::string u0_flag, v0_flag;
  int spectrum_component = -1;
  c_sim->add_option("--u0", u0_flag, "initial positions, comma separated");
  c_sim->add_option("--v0", v0_flag, "initial velocities, comma separated");
  c_sim->add_option("--spectrum-component", spectrum_component,
                    "also write spectrum of this component");
  double eps_flag = -1.0, t_end_flag = -1.0;
  c_sim->add_option("--eps", eps_flag, "coupling eps");
  c_sim->add_option("--t-end", t_end_flag, "final time");

  auto* c_spec = app.add_subcommand("spectrum", "FFT of a series CSV");
  std::string spec_in;
  int spec_component = 0, spec_nfft = 1 << 14;
  bool spec_rect = false;
  c_spec->add_option("--in", spec_in, "series.csv from simulate")->required();
  c_spec->add_option("--component", spec_component, "position component (0-based)");
  c_spec->add_option("--nfft", spec_nfft, "FFT size (power of two)");
  c_spec->add_flag("--rect", spec_rect, "rectangular window instead of Hann");

  auto* c_nnm = app.add_subcommand("nnm", "shooting + continuation of one mode");
  int nnm_mode = 0;
  bool orbits = false;
  c_nnm->add_option("--mode", nnm_mode, "starting linear mode (0-based)");
  c_nnm->add_flag("--orbits", orbits, "write per-point orbit CSVs");
  double c_flag = -1.0, eps_start_flag = -1.0, eps_end_flag = -1.0;
  c_nnm->add_option("--c", c_flag, "energy slope: E = c eps");
  c_nnm->add_option("--eps-start", eps_start_flag, "first eps");
  c_nnm->add_option("--eps-end", eps_end_flag, "last eps");

  auto* c_sweep = app.add_subcommand("sweep", "frequency sweep over eps");
  int threads = 1;
  c_sweep->add_option("--threads", threads, "parallel grid evaluation");
  bool measure_flag = false;
  c_sweep->add_flag("--measure", measure_flag, "also measure periods by simulation");

  auto* c_val = app.add_subcommand("validate", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);
  opt.load_config();

  // flag overrides into the config view
  if (eps_flag >= 0.0) opt.cfg["eps"] = eps_flag;
  if (t_end_flag > 0.0) opt.cfg["t_end"] = t_end_flag;
  if (c_flag > 0.0) opt.cfg["c"] = c_flag;
  if (eps_start_flag > 0.0) opt.cfg["eps_start"] = eps_start_flag;
  if (eps_end_flag > 0.0) opt.cfg["eps_end"] = eps_end_flag;
  if (measure_flag) opt.cfg["measure"] = true;

  if (c_exp1->parsed()) return cmd_expand1dof(opt, case_flag);
  if (c_expn->parsed()) return cmd_expandndof(opt, mode);
  if (c_sim->parsed())
    return cmd_simulate(opt, u0_flag, v0_flag, spectrum_component);
  if (c_spec->parsed())
    return cmd_spectrum(opt, spec_in, spec_component, spec_rect, spec_nfft);
  if (c_nnm->parsed()) return cmd_nnm(opt, nnm_mode, orbits);
  if (c_sweep->parsed()) return cmd_sweep(opt, threads);
  if (c_val->parsed()) return cmd_validate(opt);
  return 0;
}
