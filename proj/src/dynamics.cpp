#include "synckit/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace synckit {

namespace {

bool finite_in_bound(double v, double bound) {
  return std::isfinite(v) && std::fabs(v) <= bound;
}

bool state_ok(const NodeState& s, double bound) {
  return finite_in_bound(s.x, bound) && finite_in_bound(s.y, bound) &&
         finite_in_bound(s.z, bound) && finite_in_bound(s.w, bound);
}

bool state_ok(const CoupledState& s, double bound) {
  return state_ok(s.A, bound) && state_ok(s.B, bound);
}

NodeState axpy(const NodeState& s, double h, const NodeState& d) {
  return {s.x + h * d.x, s.y + h * d.y, s.z + h * d.z, s.w + h * d.w};
}

CoupledState axpy(const CoupledState& s, double h, const CoupledState& d) {
  return {axpy(s.A, h, d.A), axpy(s.B, h, d.B)};
}

NodeState rk4_combine(const NodeState& s, double h, const NodeState& k1,
                      const NodeState& k2, const NodeState& k3,
                      const NodeState& k4) {
  const double c = h / 6.0;
  return {s.x + c * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + c * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.z + c * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
          s.w + c * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

// One RK4 step of the coupled pair with the coupling corrections cx (into
// x_A') and cz (into z_B') frozen for the whole step.
CoupledState coupled_rk4_step(const CoupledState& s, const ControlParams& p,
                              double h, double cx, double cz) {
  auto f = [&](const CoupledState& u) {
    CoupledState d{node_field(u.A, p), node_field(u.B, p)};
    d.A.x += cx;
    d.B.z += cz;
    return d;
  };
  const CoupledState k1 = f(s);
  const CoupledState k2 = f(axpy(s, 0.5 * h, k1));
  const CoupledState k3 = f(axpy(s, 0.5 * h, k2));
  const CoupledState k4 = f(axpy(s, h, k3));
  return {rk4_combine(s.A, h, k1.A, k2.A, k3.A, k4.A),
          rk4_combine(s.B, h, k1.B, k2.B, k3.B, k4.B)};
}

NodeState node_rk4_step(const NodeState& s, const ControlParams& p, double h,
                        double cx) {
  auto f = [&](const NodeState& u) {
    NodeState d = node_field(u, p);
    d.x += cx;
    return d;
  };
  const NodeState k1 = f(s);
  const NodeState k2 = f(axpy(s, 0.5 * h, k1));
  const NodeState k3 = f(axpy(s, 0.5 * h, k2));
  const NodeState k4 = f(axpy(s, h, k3));
  return rk4_combine(s, h, k1, k2, k3, k4);
}

double pick(const CoupledState& s, Channel c) {
  switch (c) {
    case Channel::xA: return s.A.x;
    case Channel::yA: return s.A.y;
    case Channel::zA: return s.A.z;
    case Channel::wA: return s.A.w;
    case Channel::xB: return s.B.x;
    case Channel::yB: return s.B.y;
    case Channel::zB: return s.B.z;
    case Channel::wB: return s.B.w;
  }
  return 0.0;
}

}  // namespace

void validate(const ControlParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.mu)) {
    throw std::invalid_argument("control parameters must be finite");
  }
}

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.step_h > 0.0) || !std::isfinite(cfg.step_h)) {
    throw std::invalid_argument("step_h must be positive and finite");
  }
  if (cfg.n_steps < 1) {
    throw std::invalid_argument("n_steps must be at least 1");
  }
  if (!(cfg.divergence_bound > 0.0)) {
    throw std::invalid_argument("divergence_bound must be positive");
  }
}

CouplingParams CouplingParams::checked(double eps_x, double eps_z) {
  for (double e : {eps_x, eps_z}) {
    if (!std::isfinite(e) || e < kNominalMin || e > kNominalMax) {
      throw std::invalid_argument(
          "coupling strength outside the nominal range [0.1, 1.1]");
    }
  }
  return CouplingParams{eps_x, eps_z};
}

NodeState node_field(const NodeState& s, const ControlParams& p) {
  const double common = p.a * (s.x * s.x + s.z * s.z);
  return {s.y,
          p.mu * s.x + s.x * (common + p.b * s.z * s.z),
          s.w,
          p.mu * s.z + s.z * (common + p.b * s.x * s.x)};
}

CoupledState coupled_derivative(const CoupledState& s, const ControlParams& p,
                                const CouplingParams& c, double x_B_in,
                                double z_A_in, double divergence_bound) {
  if (!state_ok(s, divergence_bound) ||
      !finite_in_bound(x_B_in, divergence_bound) ||
      !finite_in_bound(z_A_in, divergence_bound)) {
    throw std::domain_error("divergence guard: state or input out of bounds");
  }
  CoupledState d{node_field(s.A, p), node_field(s.B, p)};
  d.A.x += c.eps_x * (x_B_in - s.A.x);
  d.B.z += c.eps_z * (z_A_in - s.B.z);
  return d;
}

NodeState eve_derivative(const NodeState& e, double x_B_in,
                         const ControlParams& p, double eps_Ex,
                         double divergence_bound) {
  if (!state_ok(e, divergence_bound) ||
      !finite_in_bound(x_B_in, divergence_bound)) {
    throw std::domain_error("divergence guard: state or input out of bounds");
  }
  NodeState d = node_field(e, p);
  d.x += eps_Ex * (x_B_in - e.x);
  return d;
}

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::xA: return "x_A";
    case Channel::yA: return "y_A";
    case Channel::zA: return "z_A";
    case Channel::wA: return "w_A";
    case Channel::xB: return "x_B";
    case Channel::yB: return "y_B";
    case Channel::zB: return "z_B";
    case Channel::wB: return "w_B";
  }
  return "";
}

std::optional<Channel> channel_from_name(std::string_view name) {
  for (Channel c : kAllChannels) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

const std::vector<double>& Orbit::channel(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return cols[i];
  }
  throw std::out_of_range("orbit has no channel named '" + std::string(name) +
                          "'");
}

bool Orbit::has_channel(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

DelayLine::DelayLine(std::size_t delay_steps, double prime)
    : delay_(delay_steps), buffer_(delay_steps, prime) {}

double DelayLine::shift(double incoming) {
  if (delay_ == 0) return incoming;
  const double out = buffer_.front();
  buffer_.pop_front();
  buffer_.push_back(incoming);
  return out;
}

IntegrationResult integrate(const CoupledState& init, const ControlParams& p,
                            const CouplingParams& c,
                            const IntegratorConfig& cfg,
                            std::span<const Channel> channels,
                            const ChannelDelays& delays) {
  validate(p);
  validate(cfg);

  IntegrationResult res;
  res.orbit.step_h = cfg.step_h;
  res.orbit.names.reserve(channels.size());
  res.orbit.cols.resize(channels.size());
  for (std::size_t i = 0; i < channels.size(); ++i) {
    res.orbit.names.emplace_back(channel_name(channels[i]));
    res.orbit.cols[i].reserve(cfg.n_steps + 1);
  }

  CoupledState s = init;
  res.final_state = s;
  if (!state_ok(s, cfg.divergence_bound)) {
    res.diverged_step = 0;
    return res;
  }

  auto record = [&](const CoupledState& u) {
    for (std::size_t i = 0; i < channels.size(); ++i) {
      res.orbit.cols[i].push_back(pick(u, channels[i]));
    }
  };
  record(s);

  DelayLine line_x(delays.x_B_steps, init.B.x);
  DelayLine line_z(delays.z_A_steps, init.A.z);

  const double h = cfg.step_h;
  for (std::size_t n = 0; n < cfg.n_steps; ++n) {
    const double x_in = line_x.shift(s.B.x);
    const double z_in = line_z.shift(s.A.z);
    const double cx = c.eps_x * (x_in - s.A.x);
    const double cz = c.eps_z * (z_in - s.B.z);
    s = coupled_rk4_step(s, p, h, cx, cz);
    if (!state_ok(s, cfg.divergence_bound)) {
      res.diverged_step = n + 1;
      return res;
    }
    record(s);
    res.final_state = s;
  }
  return res;
}

EveIntegrationResult integrate_eve(const NodeState& init_e,
                                   std::span<const double> recorded_x_B,
                                   const ControlParams& p, double eps_Ex,
                                   const IntegratorConfig& cfg) {
  validate(p);
  validate(cfg);
  if (recorded_x_B.size() < cfg.n_steps) {
    throw std::invalid_argument("recorded x_B shorter than n_steps");
  }

  EveIntegrationResult res;
  for (auto* col : {&res.x_E, &res.y_E, &res.z_E, &res.w_E}) {
    col->reserve(cfg.n_steps + 1);
  }

  NodeState e = init_e;
  res.final_state = e;
  if (!state_ok(e, cfg.divergence_bound)) {
    res.diverged_step = 0;
    return res;
  }
  auto record = [&](const NodeState& u) {
    res.x_E.push_back(u.x);
    res.y_E.push_back(u.y);
    res.z_E.push_back(u.z);
    res.w_E.push_back(u.w);
  };
  record(e);

  const double h = cfg.step_h;
  for (std::size_t n = 0; n < cfg.n_steps; ++n) {
    const double cx = eps_Ex * (recorded_x_B[n] - e.x);
    e = node_rk4_step(e, p, h, cx);
    if (!state_ok(e, cfg.divergence_bound)) {
      res.diverged_step = n + 1;
      return res;
    }
    record(e);
    res.final_state = e;
  }
  return res;
}

bool eve_z_trajectory(const NodeState& init_e,
                      std::span<const double> recorded_x_B,
                      const ControlParams& p, double eps_Ex,
                      const IntegratorConfig& cfg,
                      std::vector<double>& z_out) {
  if (recorded_x_B.size() < cfg.n_steps) {
    throw std::invalid_argument("recorded x_B shorter than n_steps");
  }
  z_out.clear();
  z_out.reserve(cfg.n_steps + 1);

  NodeState e = init_e;
  if (!state_ok(e, cfg.divergence_bound)) return false;
  z_out.push_back(e.z);

  const double h = cfg.step_h;
  for (std::size_t n = 0; n < cfg.n_steps; ++n) {
    const double cx = eps_Ex * (recorded_x_B[n] - e.x);
    e = node_rk4_step(e, p, h, cx);
    if (!state_ok(e, cfg.divergence_bound)) return false;
    z_out.push_back(e.z);
  }
  return true;
}

NodeState random_initial_node(SplitMix64& rng) {
  NodeState s;
  s.x = uniform(rng, -0.5, 0.5);
  s.y = uniform(rng, -0.5, 0.5);
  s.z = uniform(rng, -0.5, 0.5);
  s.w = uniform(rng, -0.5, 0.5);
  return s;
}

ControlParams random_control_params(SplitMix64& rng,
                                    const ParameterRanges& r) {
  ControlParams p;
  p.a = uniform(rng, r.a_min, r.a_max);
  p.b = uniform(rng, r.b_min, r.b_max);
  p.mu = uniform(rng, r.mu_min, r.mu_max);
  return p;
}

CouplingParams random_coupling(SplitMix64& rng, const ParameterRanges& r) {
  const double ex = uniform(rng, r.eps_min, r.eps_max);
  const double ez = uniform(rng, r.eps_min, r.eps_max);
  return CouplingParams::unchecked(ex, ez);
}

}  // namespace synckit
