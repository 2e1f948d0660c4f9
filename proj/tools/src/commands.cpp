#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "pool.hpp"
#include "report.hpp"
#include "thopf/diagnostics.hpp"
#include "thopf/normal_form.hpp"
#include "thopf/pde_sim.hpp"
#include "thopf/spectrum.hpp"
#include "thopf/unfolding.hpp"

namespace thopf::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string out_path(const CommandOptions& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / name).string();
}

json header(const char* kind, const ModelParams& p) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"params", to_json(p)}};
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << text;
}

/// UTC timestamp, or SOURCE_DATE_EPOCH when set (reproducible builds).
std::string generated_stamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_field_csv(const std::string& path, const SimResult& res, bool u_field) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "x");
  for (double x : res.x) fmt::format_to(std::back_inserter(buf), ",{}", num(x));
  buf.push_back('\n');
  for (std::size_t k = 0; k < res.t.size(); ++k) {
    const double* row = u_field ? res.u_row(k) : res.v_row(k);
    fmt::format_to(std::back_inserter(buf), "{}", num(res.t[k]));
    for (std::size_t i = 0; i < res.nx(); ++i) {
      fmt::format_to(std::back_inserter(buf), ",{}", num(row[i]));
    }
    buf.push_back('\n');
  }
  write_text(path, fmt::to_string(buf));
}

std::optional<double> period_scale(const ModelParams& p) {
  try {
    const TuringHopfPoint th = locate_turing_hopf(p);
    return 2.0 * std::numbers::pi / th.omega_star;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<double> grid_axis(std::array<double, 2> range, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = n == 1 ? range[0] : range[0] + (range[1] - range[0]) * i / (n - 1);
  }
  return out;
}

const char* stability_label(const LinearStability& st) {
  if (st.turing_unstable && st.hopf_unstable) return "turing+hopf";
  if (st.turing_unstable) return "turing";
  if (st.hopf_unstable) return "hopf";
  return "stable";
}

std::pair<NormalFormResult, PlanarUnfolding> normal_form_of(const CommandOptions& opts) {
  const TuringHopfPoint th = locate_turing_hopf(opts.config.model, opts.config.k_max);
  spdlog::info("Turing-Hopf point r* = {:.6f}, tau* = {:.6f}, n_T = {}", th.r_star,
               th.tau_star, th.n_T);
  NormalFormResult nf = compute_normal_form(th);
  PlanarUnfolding pu = planar_reduce(nf, opts.config.mixed_rel);
  return {std::move(nf), std::move(pu)};
}

} // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::invalid_argument: return exit_config;
  case ErrorKind::condition_violated:
  case ErrorKind::no_positive_turing:
  case ErrorKind::complex_aux: return exit_condition;
  case ErrorKind::no_root:
  case ErrorKind::no_convergence:
  case ErrorKind::degenerate_case:
  case ErrorKind::degenerate_cubic:
  case ErrorKind::resonant_matrix:
  case ErrorKind::singular_mixed_system: return exit_degenerate;
  case ErrorKind::window_too_short:
  case ErrorKind::blowup:
  case ErrorKind::positivity_violation: return exit_runtime;
  }
  return exit_runtime;
}

int cmd_analyze(const CommandOptions& opts) {
  const ModelParams& p = opts.config.model;
  json doc = header("spectral_report", p);
  doc["turing"] = nullptr;
  doc["a6"] = nullptr;
  doc["bt"] = nullptr;
  doc["hopf"] = nullptr;
  doc["turing_hopf"] = nullptr;
  int code = exit_ok;

  std::optional<TuringReport> tr;
  try {
    tr = turing_branch(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_positive_turing) throw;
    spdlog::warn("{}", e.what());
    doc["findings"] = json::array({e.what()});
    code = exit_condition;
  }
  if (tr) {
    doc["turing"] = to_json(*tr);
    if (tr->a6) {
      doc["a6"] = to_json(*tr->a6);
    } else {
      doc["a6"] = {{"holds", false}, {"error", "auxiliary quantities a+-/x+- are complex"}};
    }
    if (tr->a6_holds()) {
      doc["bt"] = to_json(bt_point(p, tr->r_star, tr->n_T));
      const HopfReport hr = s0_and_star(p, tr->r_star, tr->n_T, opts.config.k_max);
      doc["hopf"] = to_json(hr);
      doc["turing_hopf"] = {{"r_star", tr->r_star},
                            {"tau_star", hr.tau_star},
                            {"omega_star", hr.omega_star},
                            {"n_T", tr->n_T},
                            {"n_H", hr.n_H}};
    } else {
      spdlog::warn("Turing-Hopf existence condition does not hold");
      doc["findings"] = json::array({"Turing-Hopf existence condition does not hold"});
      code = exit_condition;
    }
  }

  if (opts.format == "csv") {
    std::string text = "n,r_T,r_H\n";
    if (tr) {
      for (std::size_t n = 0; n < tr->r_T.size(); ++n) {
        text += fmt::format("{},{},{}\n", n, num(tr->r_T[n]), num(tr->r_H[n]));
      }
    }
    write_text(out_path(opts, "spectral_report.csv"), text);
  } else {
    write_json(out_path(opts, "spectral_report.json"), doc);
  }
  return code;
}

int cmd_normalform(const CommandOptions& opts) {
  const auto [nf, pu] = normal_form_of(opts);
  json doc = header("normal_form", opts.config.model);
  doc["normal_form"] = to_json(nf);
  doc["planar"] = to_json(pu);
  if (opts.format == "csv") {
    const auto& c = nf.coeffs;
    std::string text = "name,re,im\n";
    const auto row = [&](const char* name, cplx z) {
      text += fmt::format("{},{},{}\n", name, num(z.real()), num(z.imag()));
    };
    row("f_a1z1", c.f_a1z1);
    row("f_a2z1", c.f_a2z1);
    row("f_a1z2", c.f_a1z2);
    row("f_a2z2", c.f_a2z2);
    row("g210", c.g210);
    row("g102", c.g102);
    row("g111", c.g111);
    row("g003", c.g003);
    row("b0", pu.b0);
    row("c0", pu.c0);
    row("d0", pu.d0);
    row("d0_minus_b0c0", pu.det());
    write_text(out_path(opts, "normal_form.csv"), text);
  } else {
    write_json(out_path(opts, "normal_form.json"), doc);
  }
  return exit_ok;
}

int cmd_classify(const CommandOptions& opts) {
  const std::optional<double> a1 = opts.alpha1 ? opts.alpha1 : opts.config.alpha1;
  const std::optional<double> a2 = opts.alpha2 ? opts.alpha2 : opts.config.alpha2;
  if (!a1 || !a2) {
    throw Error(ErrorKind::invalid_argument, "classify needs --alpha1 and --alpha2");
  }
  const auto [nf, pu] = normal_form_of(opts);
  const bool tracked = opts.config.tracked_eps;
  const EpsilonPair eps =
      tracked ? tracked_epsilons(nf.point, *a1, *a2) : linear_epsilons(pu, *a1, *a2);
  const RegionClass rc = classify(pu, eps);

  json doc = header("region", opts.config.model);
  doc["alpha1"] = *a1;
  doc["alpha2"] = *a2;
  doc["r"] = nf.point.r_star + *a1;
  doc["tau"] = nf.point.tau_star + *a2;
  doc["eps_mode"] = tracked ? "tracked" : "linear";
  doc["planar"] = to_json(pu);
  doc["classification"] = to_json(rc);
  if (opts.format == "csv") {
    std::string text = "kind,rho,v,eig1_re,eig1_im,eig2_re,eig2_im,stable\n";
    for (const auto& e : rc.equilibria) {
      text += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(e.kind), num(e.rho),
                          num(e.v), num(e.eigs[0].real()), num(e.eigs[0].imag()),
                          num(e.eigs[1].real()), num(e.eigs[1].imag()),
                          e.stable() ? 1 : 0);
    }
    write_text(out_path(opts, "region.csv"), text);
  } else {
    write_json(out_path(opts, "region.json"), doc);
  }
  return exit_ok;
}

int cmd_simulate(const CommandOptions& opts) {
  const RunConfig& cfg = opts.config;
  const auto start = std::chrono::steady_clock::now();
  const SimResult res = simulate(cfg.model, cfg.init, cfg.sim);
  spdlog::info("simulation {} after {:.1f} s ({} steps, dt = {:.3e})", to_string(res.status),
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
               res.plan.steps, res.plan.dt);

  write_field_csv(out_path(opts, "field_u.csv"), res, true);
  write_field_csv(out_path(opts, "field_v.csv"), res, false);

  json doc = header("simulation", cfg.model);
  doc["generated"] = generated_stamp();
  doc["config"] = to_json(cfg.sim, cfg.init);
  doc["plan"] = {{"dt", res.plan.dt},
                 {"delay_steps", res.plan.delay_steps},
                 {"steps", res.plan.steps},
                 {"stride", res.plan.stride}};
  doc["u0"] = res.u0;
  doc["status"] = to_string(res.status);
  doc["failure_time"] = res.status == SimStatus::completed ? json(nullptr) : json(res.failure_time);
  doc["message"] = res.message;
  doc["files"] = {{"u", "field_u.csv"}, {"v", "field_v.csv"}};
  doc["diagnostics"] = nullptr;
  if (res.status == SimStatus::completed) {
    DiagnosticsOptions d;
    d.period_scale = period_scale(cfg.model);
    try {
      doc["diagnostics"] = to_json(diagnostics(res, d));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::window_too_short) throw;
      spdlog::warn("diagnostics skipped: {}", e.what());
      doc["diagnostics_error"] = e.what();
    }
  }
  write_json(out_path(opts, "simulation.json"), doc);
  if (res.status != SimStatus::completed) {
    spdlog::error("{}", res.message);
    return exit_runtime;
  }
  return exit_ok;
}

int cmd_sweep(const CommandOptions& opts) {
  const RunConfig& cfg = opts.config;
  if (!cfg.sweep) throw Error(ErrorKind::invalid_argument, "config has no sweep section");
  const SweepConfig& sw = *cfg.sweep;
  const ModelParams& p = cfg.model;
  const std::vector<double> rs = grid_axis(sw.r_range, sw.grid[0]);
  const std::vector<double> taus = grid_axis(sw.tau_range, sw.grid[1]);

  struct Point {
    double r = 0.0, tau = 0.0;
    std::string linear;
    std::string sim_label;
    int dominant_mode = -1;
    std::string status;
  };
  std::vector<Point> points(rs.size() * taus.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < taus.size(); ++j) {
      points[i * taus.size() + j].r = rs[i];
      points[i * taus.size() + j].tau = taus[j];
    }
  }
  const std::optional<double> period = sw.simulate ? period_scale(p) : std::nullopt;
  parallel_for(points.size(), opts.jobs, [&](std::size_t k) {
    Point& pt = points[k];
    pt.linear = stability_label(linear_stability(p, pt.r, pt.tau));
    if (!sw.simulate) return;
    const SimResult res = simulate(p.with_r_tau(pt.r, pt.tau), cfg.init, cfg.sim);
    pt.status = to_string(res.status);
    if (res.status != SimStatus::completed) return;
    DiagnosticsOptions d;
    d.period_scale = period;
    try {
      const PatternDiagnostics diag = diagnostics(res, d);
      pt.sim_label = to_string(diag.label);
      pt.dominant_mode = diag.dominant_mode;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::window_too_short) throw;
      pt.status = "window-too-short";
    }
  });

  int code = exit_ok;
  std::string text = sw.simulate ? "r,tau,linear,status,sim_label,dominant_mode\n" : "r,tau,linear\n";
  for (const auto& pt : points) {
    if (sw.simulate) {
      text += fmt::format("{},{},{},{},{},{}\n", num(pt.r), num(pt.tau), pt.linear, pt.status,
                          pt.sim_label, pt.dominant_mode);
      if (pt.status == "blowup" || pt.status == "positivity-violation") {
        spdlog::error("{} at (r, tau) = ({}, {})", pt.status, pt.r, pt.tau);
        code = exit_runtime;
      }
    } else {
      text += fmt::format("{},{},{}\n", num(pt.r), num(pt.tau), pt.linear);
    }
  }
  write_text(out_path(opts, "sweep_grid.csv"), text);

  json curves = header("sweep_curves", p);
  curves["r_range"] = sw.r_range;
  curves["tau_range"] = sw.tau_range;
  curves["turing_lines"] = json::array();
  curves["hopf_curves"] = json::array();
  curves["bt_point"] = nullptr;
  curves["th_point"] = nullptr;

  std::vector<int> hopf_modes{0};
  try {
    const TuringReport tr = turing_branch(p);
    for (std::size_t n = 1; n < tr.r_T.size(); ++n) {
      if (tr.r_T[n] > 0.0) {
        curves["turing_lines"].push_back({{"n", n}, {"r", tr.r_T[n]}, {"critical", static_cast<int>(n) == tr.n_T}});
      }
    }
    if (tr.a6_holds()) {
      const HopfReport hr = s0_and_star(p, tr.r_star, tr.n_T, cfg.k_max);
      hopf_modes = hr.S0;
      curves["bt_point"] = {{"r", tr.r_star}, {"tau", bt_point(p, tr.r_star, tr.n_T).tau0}};
      curves["th_point"] = {{"r", tr.r_star}, {"tau", hr.tau_star}, {"n_T", tr.n_T}, {"n_H", hr.n_H}};
    } else if (code == exit_ok) {
      code = exit_condition;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_positive_turing) throw;
    if (code == exit_ok) code = exit_condition;
  }
  const std::vector<double> r_samples = grid_axis(sw.r_range, sw.curve_samples);
  for (int n : hopf_modes) {
    json pts = json::array();
    for (double r : r_samples) {
      try {
        const HopfBranch br = hopf_branch(p, r, n, 0);
        pts.push_back({r, br.principal().taus.front()});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::no_root) throw;
      }
    }
    curves["hopf_curves"].push_back({{"n", n}, {"points", pts}});
  }
  write_json(out_path(opts, "sweep_curves.json"), curves);
  return code;
}

} // namespace thopf::cli
