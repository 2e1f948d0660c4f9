#include "thopf/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thopf/error.hpp"

namespace thopf {

namespace {

constexpr double kPositivityFloor = 1e-12;
constexpr double kBlowup = 1e6;
constexpr double kSampleSpacing = 0.5;

struct Rhs {
  int nx;
  double c1, c2; // d / h^2
  double a, b, r;
  bool kinetics;

  double reaction_u(double u, double v) const {
    return u * (1.0 - u) - a * u * v / (u + b);
  }

  // q is v(t-tau)/u(t-tau) per cell; nullptr means no delay (use v/u).
  void operator()(const double* __restrict u, const double* __restrict v,
                  const double* __restrict q, double* __restrict du,
                  double* __restrict dv) const {
    const int n = nx;
    if (n == 1) {
      du[0] = 0.0;
      dv[0] = 0.0;
    } else {
      du[0] = c1 * ((u[0] + u[1]) - 2.0 * u[0]);
      dv[0] = c2 * ((v[0] + v[1]) - 2.0 * v[0]);
      du[n - 1] = c1 * ((u[n - 2] + u[n - 1]) - 2.0 * u[n - 1]);
      dv[n - 1] = c2 * ((v[n - 2] + v[n - 1]) - 2.0 * v[n - 1]);
    }
    if (!kinetics) {
      for (int i = 1; i < n - 1; ++i) {
        du[i] = c1 * ((u[i - 1] + u[i + 1]) - 2.0 * u[i]);
        dv[i] = c2 * ((v[i - 1] + v[i + 1]) - 2.0 * v[i]);
      }
      return;
    }
    if (n > 1) {
      du[0] += reaction_u(u[0], v[0]);
      du[n - 1] += reaction_u(u[n - 1], v[n - 1]);
      const double q0 = q ? q[0] : v[0] / u[0];
      const double qn = q ? q[n - 1] : v[n - 1] / u[n - 1];
      dv[0] += r * v[0] * (1.0 - q0);
      dv[n - 1] += r * v[n - 1] * (1.0 - qn);
    } else {
      du[0] = reaction_u(u[0], v[0]);
      dv[0] = r * v[0] * (1.0 - (q ? q[0] : v[0] / u[0]));
    }
    if (q != nullptr) {
      for (int i = 1; i < n - 1; ++i) {
        du[i] = c1 * ((u[i - 1] + u[i + 1]) - 2.0 * u[i]) + reaction_u(u[i], v[i]);
        dv[i] = c2 * ((v[i - 1] + v[i + 1]) - 2.0 * v[i]) + r * v[i] * (1.0 - q[i]);
      }
    } else {
      for (int i = 1; i < n - 1; ++i) {
        du[i] = c1 * ((u[i - 1] + u[i + 1]) - 2.0 * u[i]) + reaction_u(u[i], v[i]);
        dv[i] = c2 * ((v[i - 1] + v[i + 1]) - 2.0 * v[i]) +
                r * v[i] * (1.0 - v[i] / u[i]);
      }
    }
  }
};

} // namespace

const char* to_string(SimStatus s) noexcept {
  switch (s) {
  case SimStatus::completed: return "completed";
  case SimStatus::blowup: return "blowup";
  case SimStatus::positivity_violation: return "positivity-violation";
  }
  return "?";
}

void SimResult::throw_if_failed() const {
  if (status == SimStatus::blowup) throw Error(ErrorKind::blowup, message);
  if (status == SimStatus::positivity_violation) {
    throw Error(ErrorKind::positivity_violation, message);
  }
}

double max_stable_dt(const ModelParams& p, int nx) {
  const double h = p.l * std::numbers::pi / nx;
  return 0.25 * h * h / std::max(p.d1, p.d2);
}

StepPlan plan_steps(const ModelParams& p, const SimConfig& cfg) {
  if (cfg.nx < 1) throw Error(ErrorKind::invalid_argument, "nx must be >= 1");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw Error(ErrorKind::invalid_argument, "t_end must be positive");
  }
  if (cfg.dt < 0.0 || cfg.stride < 0) {
    throw Error(ErrorKind::invalid_argument, "dt and stride must be >= 0");
  }
  const double bound = max_stable_dt(p, cfg.nx);
  if (cfg.dt > bound) {
    throw Error(ErrorKind::invalid_argument,
                "dt = " + std::to_string(cfg.dt) +
                    " exceeds the diffusion bound 0.25 h^2 / max(d1, d2) = " +
                    std::to_string(bound));
  }
  const double target = cfg.dt > 0.0 ? cfg.dt : bound;

  StepPlan plan;
  if (p.tau > 0.0) {
    plan.delay_steps = static_cast<long>(std::ceil(p.tau / target));
    // guard against ceil landing one short through roundoff
    while (p.tau / plan.delay_steps > target) ++plan.delay_steps;
    plan.dt = p.tau / plan.delay_steps;
  } else {
    plan.dt = target;
  }
  plan.steps = static_cast<long>(std::ceil(cfg.t_end / plan.dt - 1e-9));
  plan.stride = cfg.stride > 0
                    ? cfg.stride
                    : std::max(1L, std::lround(kSampleSpacing / plan.dt));
  return plan;
}

std::vector<double> cell_centres(const ModelParams& p, int nx) {
  const double h = p.l * std::numbers::pi / nx;
  std::vector<double> x(nx);
  for (int i = 0; i < nx; ++i) x[i] = (i + 0.5) * h;
  return x;
}

SimResult simulate(const ModelParams& p, const InitialCondition& init,
                   const SimConfig& cfg) {
  p.validate();
  SimResult res;
  res.params = p;
  res.config = cfg;
  res.init = init;
  res.plan = plan_steps(p, cfg);
  res.u0 = equilibrium(p).u0;
  res.x = cell_centres(p, cfg.nx);

  const int nx = cfg.nx;
  const StepPlan& plan = res.plan;
  const double dt = plan.dt;

  std::vector<double> u(nx), v(nx);
  if (init.kind == InitialCondition::Kind::offset_sine) {
    for (int i = 0; i < nx; ++i) {
      const double s =
          init.sign * init.amplitude * std::sin(init.wavenumber * res.x[i]);
      u[i] = res.u0 + s;
      v[i] = res.u0 + s;
    }
  } else {
    if (static_cast<int>(init.u.size()) != nx ||
        static_cast<int>(init.v.size()) != nx) {
      throw Error(ErrorKind::invalid_argument,
                  "custom initial data must have nx samples per species");
    }
    u = init.u;
    v = init.v;
  }
  for (int i = 0; i < nx; ++i) {
    if (!(u[i] > 0.0) || !(v[i] > 0.0)) {
      throw Error(ErrorKind::invalid_argument,
                  "initial data must be strictly positive");
    }
  }

  const double h = p.l * std::numbers::pi / nx;
  const Rhs f{nx, p.d1 / (h * h), p.d2 / (h * h), p.a, p.b, p.r, cfg.kinetics};

  // Delayed ratio q = v/u by step index. The history on [-tau, 0] is the
  // initial state, so every slot starts there.
  const long m = plan.delay_steps;
  const long cap = m + 3;
  std::vector<double> ring;
  if (m > 0) {
    ring.resize(static_cast<std::size_t>(cap) * nx);
    for (long k = 0; k < cap; ++k) {
      for (int i = 0; i < nx; ++i) ring[k * nx + i] = v[i] / u[i];
    }
  }
  const auto q_at = [&](long k) {
    const long slot = ((k % cap) + cap) % cap;
    return ring.data() + slot * nx;
  };

  const std::size_t n_samples = static_cast<std::size_t>(plan.steps / plan.stride) + 2;
  res.t.reserve(n_samples);
  res.u.reserve(n_samples * nx);
  res.v.reserve(n_samples * nx);
  const auto record = [&](double t) {
    res.t.push_back(t);
    res.u.insert(res.u.end(), u.begin(), u.end());
    res.v.insert(res.v.end(), v.begin(), v.end());
  };
  record(0.0);

  std::vector<double> q_mid(nx);
  std::vector<double> k1u(nx), k1v(nx), k2u(nx), k2v(nx), k3u(nx), k3v(nx),
      k4u(nx), k4v(nx), su(nx), sv(nx);
  const double half = 0.5 * dt;
  const double sixth = dt / 6.0;

  for (long step = 0; step < plan.steps; ++step) {
    const double* q0 = nullptr;
    const double* q1 = nullptr;
    const double* qh = nullptr;
    if (m > 0) {
      double* now = q_at(step);
      for (int i = 0; i < nx; ++i) now[i] = v[i] / u[i];
      const long j = step - m;
      q0 = q_at(j);
      q1 = q_at(j + 1);
      const double* qm1 = q_at(j - 1);
      if (m >= 2) {
        // cubic through j-1 .. j+2 at j + 1/2
        const double* q2 = q_at(j + 2);
        for (int i = 0; i < nx; ++i) {
          q_mid[i] = (9.0 * (q0[i] + q1[i]) - qm1[i] - q2[i]) / 16.0;
        }
      } else {
        for (int i = 0; i < nx; ++i) {
          q_mid[i] = (6.0 * q0[i] + 3.0 * q1[i] - qm1[i]) / 8.0;
        }
      }
      qh = q_mid.data();
    }

    f(u.data(), v.data(), q0, k1u.data(), k1v.data());
    for (int i = 0; i < nx; ++i) {
      su[i] = u[i] + half * k1u[i];
      sv[i] = v[i] + half * k1v[i];
    }
    f(su.data(), sv.data(), qh, k2u.data(), k2v.data());
    for (int i = 0; i < nx; ++i) {
      su[i] = u[i] + half * k2u[i];
      sv[i] = v[i] + half * k2v[i];
    }
    f(su.data(), sv.data(), qh, k3u.data(), k3v.data());
    for (int i = 0; i < nx; ++i) {
      su[i] = u[i] + dt * k3u[i];
      sv[i] = v[i] + dt * k3v[i];
    }
    f(su.data(), sv.data(), q1, k4u.data(), k4v.data());

    // NaN fails every comparison, so it lands in `bad` as well
    const double floor = cfg.kinetics ? kPositivityFloor : -kBlowup;
    int bad = 0;
    for (int i = 0; i < nx; ++i) {
      u[i] += sixth * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
      v[i] += sixth * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
      bad |= static_cast<int>(!(u[i] > floor)) |
             static_cast<int>(!(std::abs(u[i]) <= kBlowup)) |
             static_cast<int>(!(std::abs(v[i]) <= kBlowup));
    }

    const double t = (step + 1) * dt;
    if (bad) {
      res.status = SimStatus::positivity_violation;
      for (int i = 0; i < nx; ++i) {
        if (!(std::abs(u[i]) <= kBlowup) || !(std::abs(v[i]) <= kBlowup)) {
          res.status = SimStatus::blowup;
        }
      }
    }
    if (res.status != SimStatus::completed) {
      res.failure_time = t;
      res.message = std::string(to_string(res.status)) + " at t = " +
                    std::to_string(t) + " (r = " + std::to_string(p.r) +
                    ", tau = " + std::to_string(p.tau) + ")";
      return res;
    }
    if ((step + 1) % plan.stride == 0 || step + 1 == plan.steps) record(t);
  }
  return res;
}

} // namespace thopf
