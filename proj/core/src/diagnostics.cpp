#include "thopf/diagnostics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <numbers>
#include <string>

#include "thopf/error.hpp"

namespace thopf {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Dominant angular frequency of a uniformly sampled real signal.
double peak_frequency(std::vector<double> signal, double spacing) {
  const std::size_t n = signal.size();
  double mean = 0.0;
  for (double s : signal) mean += s;
  mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
    signal[i] = (signal[i] - mean) * hann;
  }

  const std::size_t bins = n / 2 + 1;
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), signal.data(), out,
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> mag(bins);
  for (std::size_t k = 0; k < bins; ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);

  std::size_t best = 1;
  for (std::size_t k = 2; k < bins; ++k) {
    if (mag[k] > mag[best]) best = k;
  }
  double shift = 0.0;
  if (best + 1 < bins) {
    const double a = mag[best - 1], b = mag[best], c = mag[best + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) shift = 0.5 * (a - c) / denom;
  }
  return 2.0 * std::numbers::pi * (best + shift) / (n * spacing);
}

double variance(const std::vector<double>& s) {
  double m = 0.0;
  for (double x : s) m += x;
  m /= static_cast<double>(s.size());
  double v = 0.0;
  for (double x : s) v += (x - m) * (x - m);
  return v / static_cast<double>(s.size());
}

} // namespace

const char* to_string(PatternLabel l) noexcept {
  switch (l) {
  case PatternLabel::constant_ss: return "constant-SS";
  case PatternLabel::nonconstant_ss: return "nonconstant-SS";
  case PatternLabel::homogeneous_periodic: return "homogeneous-periodic";
  case PatternLabel::inhomogeneous_periodic: return "inhomogeneous-periodic";
  }
  return "?";
}

PatternDiagnostics diagnostics(const SimResult& res,
                               const DiagnosticsOptions& opts) {
  if (res.t.empty()) {
    throw Error(ErrorKind::window_too_short, "simulation stored no samples");
  }
  const double t_last = res.t.back();
  const double t_first = t_last * (1.0 - opts.window_fraction);
  std::size_t k0 = 0;
  while (k0 < res.t.size() && res.t[k0] < t_first - 1e-12) ++k0;
  std::size_t k1 = res.t.size();
  // the closing sample may be off the stride grid
  if (k1 - k0 >= 3) {
    const double d_prev = res.t[k1 - 2] - res.t[k1 - 3];
    const double d_last = res.t[k1 - 1] - res.t[k1 - 2];
    if (std::abs(d_last - d_prev) > 1e-9 * d_prev) --k1;
  }
  const std::size_t count = k1 > k0 ? k1 - k0 : 0;
  const double duration = count > 0 ? res.t[k1 - 1] - res.t[k0] : 0.0;
  const double tau = res.params.tau;
  if (count < 8) {
    throw Error(ErrorKind::window_too_short,
                "diagnostic window holds " + std::to_string(count) + " samples");
  }
  if (tau > 0.0 && duration < 10.0 * tau) {
    throw Error(ErrorKind::window_too_short,
                "diagnostic window spans fewer than 10 delay intervals");
  }
  if (opts.period_scale && duration < 5.0 * *opts.period_scale) {
    throw Error(ErrorKind::window_too_short,
                "diagnostic window spans fewer than 5 periods");
  }

  const std::size_t nx = res.nx();
  const int n_max = std::max(1, opts.n_max);
  const double l = res.params.l;
  std::vector<std::vector<double>> basis(n_max + 1, std::vector<double>(nx));
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < nx; ++i) basis[n][i] = std::cos(n * res.x[i] / l);
  }

  PatternDiagnostics d;
  d.window_start = res.t[k0];
  d.window_end = res.t[k1 - 1];
  d.mode_amps.assign(n_max + 1, 0.0);
  d.mode_means.assign(n_max + 1, 0.0);
  std::vector<std::vector<double>> series(n_max + 1, std::vector<double>(count));
  std::vector<double> lo(nx, INFINITY), hi(nx, -INFINITY);
  double u_lo = INFINITY, u_hi = -INFINITY, total = 0.0;

  for (std::size_t k = k0; k < k1; ++k) {
    const double* u = res.u_row(k);
    const double* v = res.v_row(k);
    double mean = 0.0;
    for (std::size_t i = 0; i < nx; ++i) mean += u[i];
    mean /= static_cast<double>(nx);
    series[0][k - k0] = mean;
    total += mean;
    for (std::size_t i = 0; i < nx; ++i) {
      lo[i] = std::min(lo[i], u[i]);
      hi[i] = std::max(hi[i], u[i]);
      u_lo = std::min(u_lo, u[i]);
      u_hi = std::max(u_hi, u[i]);
      d.u_max = std::max(d.u_max, u[i]);
      d.v_max = std::max(d.v_max, v[i]);
    }
    // midpoint rule on the cell-centred grid: 2/(l pi) * h = 2/nx
    for (int n = 1; n <= n_max; ++n) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nx; ++i) acc += (u[i] - mean) * basis[n][i];
      series[n][k - k0] = 2.0 * acc / static_cast<double>(nx);
    }
  }
  d.field_mean = total / static_cast<double>(count);
  d.field_range = u_hi - u_lo;
  for (std::size_t i = 0; i < nx; ++i) d.steadiness = std::max(d.steadiness, hi[i] - lo[i]);

  for (int n = 1; n <= n_max; ++n) {
    double peak = 0.0, sum = 0.0;
    for (double a : series[n]) {
      peak = std::max(peak, std::abs(a));
      sum += a;
    }
    d.mode_amps[n] = peak;
    d.mode_means[n] = sum / static_cast<double>(count);
  }
  d.mode_means[0] = d.field_mean;
  d.dominant_mode = 1;
  for (int n = 2; n <= n_max; ++n) {
    if (d.mode_amps[n] > d.mode_amps[d.dominant_mode]) d.dominant_mode = n;
  }

  const bool spatial = std::any_of(d.mode_amps.begin() + 1, d.mode_amps.end(),
                                   [&](double a) { return a > opts.mode_threshold; });
  const bool steady =
      d.steadiness < opts.steady_rel * std::max(d.field_range, std::abs(d.field_mean));
  if (!steady) {
    const std::vector<double>& mode_series = series[d.dominant_mode];
    const std::vector<double>& signal =
        variance(series[0]) >= variance(mode_series) ? series[0] : mode_series;
    const double spacing = duration / static_cast<double>(count - 1);
    d.temporal_freq = peak_frequency(signal, spacing);
  }
  if (steady) {
    d.label = spatial ? PatternLabel::nonconstant_ss : PatternLabel::constant_ss;
  } else {
    d.label = spatial ? PatternLabel::inhomogeneous_periodic
                      : PatternLabel::homogeneous_periodic;
  }
  return d;
}

bool label_matches(PatternLabel label, const std::vector<Pattern>& predicted) {
  Pattern want = Pattern::constant_steady_state;
  switch (label) {
  case PatternLabel::constant_ss: want = Pattern::constant_steady_state; break;
  case PatternLabel::nonconstant_ss:
    want = Pattern::two_nonconstant_steady_states;
    break;
  case PatternLabel::homogeneous_periodic:
    want = Pattern::homogeneous_periodic;
    break;
  case PatternLabel::inhomogeneous_periodic:
    want = Pattern::two_inhomogeneous_periodic;
    break;
  }
  return std::find(predicted.begin(), predicted.end(), want) != predicted.end();
}

bool VerifyReport::all_match() const {
  if (on_boundary || cases.empty()) return false;
  return std::all_of(cases.begin(), cases.end(),
                     [](const VerifyCase& c) { return c.match; });
}

VerifyReport verify_region(const NormalFormResult& nf, const PlanarUnfolding& pu,
                           double alpha1, double alpha2,
                           const std::vector<double>& init_signs,
                           const VerifyOptions& opts) {
  if (std::hypot(alpha1, alpha2) > opts.alpha_budget) {
    throw Error(ErrorKind::invalid_argument,
                "alpha outside the unfolding budget " +
                    std::to_string(opts.alpha_budget));
  }
  const TuringHopfPoint& th = nf.point;
  VerifyReport rep;
  rep.alpha1 = alpha1;
  rep.alpha2 = alpha2;
  const EpsilonPair eps = opts.tracked_eps
                              ? tracked_epsilons(th, alpha1, alpha2)
                              : linear_epsilons(pu, alpha1, alpha2);
  rep.prediction = classify(pu, eps);
  rep.on_boundary = rep.prediction.on_boundary();
  if (rep.on_boundary) return rep;

  const ModelParams p = th.params.with_r_tau(th.r_star + alpha1, th.tau_star + alpha2);
  DiagnosticsOptions diag = opts.diag;
  if (!diag.period_scale) diag.period_scale = 2.0 * std::numbers::pi / th.omega_star;

  std::vector<std::future<VerifyCase>> jobs;
  for (double sign : init_signs) {
    jobs.push_back(std::async(std::launch::async, [&, sign] {
      InitialCondition init = opts.init;
      init.sign = sign;
      VerifyCase c;
      c.sign = sign;
      const SimResult res = simulate(p, init, opts.sim);
      c.status = res.status;
      c.failure_time = res.failure_time;
      if (res.status == SimStatus::completed) {
        c.diag = diagnostics(res, diag);
        c.match = label_matches(c.diag.label, rep.prediction.predicted);
      }
      return c;
    }));
  }
  for (auto& j : jobs) rep.cases.push_back(j.get());

  bool pos = false, neg = false, turing = !rep.cases.empty();
  for (const auto& c : rep.cases) {
    const bool has = c.status == SimStatus::completed &&
                     (c.diag.label == PatternLabel::nonconstant_ss ||
                      c.diag.label == PatternLabel::inhomogeneous_periodic) &&
                     th.n_T < static_cast<int>(c.diag.mode_means.size());
    turing &= has;
    if (has) {
      pos |= c.diag.mode_means[th.n_T] > 0.0;
      neg |= c.diag.mode_means[th.n_T] < 0.0;
    }
  }
  rep.both_signs_reached = turing && pos && neg;
  return rep;
}

} // namespace thopf
