#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "synckit/rng.hpp"

namespace synckit {

// ---------------------------------------------------------------------------
// Parameters and state
// ---------------------------------------------------------------------------

// Control parameters shared by transmitter and receiver.
struct ControlParams {
  double a = 0.0;
  double b = 0.0;
  double mu = 0.0;
};

// Throws std::invalid_argument if any field is NaN/inf.
void validate(const ControlParams& p);

// Coupling strengths. The nominal range is [0.1, 1.1]; `checked` enforces it,
// `unchecked` exists for attack sweeps that probe outside the nominal box.
struct CouplingParams {
  double eps_x = 0.0;
  double eps_z = 0.0;

  static constexpr double kNominalMin = 0.1;
  static constexpr double kNominalMax = 1.1;

  static CouplingParams checked(double eps_x, double eps_z);
  static CouplingParams unchecked(double eps_x, double eps_z) {
    return CouplingParams{eps_x, eps_z};
  }
};

// One party's state (x, y, z, w).
struct NodeState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;
};

// Transmitter (A) and receiver (B) states of the coupled system.
struct CoupledState {
  NodeState A;
  NodeState B;
};

enum class Method { RK4 };

struct IntegratorConfig {
  double step_h = 0.01;
  std::size_t n_steps = 0;
  Method method = Method::RK4;
  double divergence_bound = 1e6;  // |component| above this flags divergence
};

void validate(const IntegratorConfig& cfg);

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------
//
// Transmitter A:                        Receiver B:
//   x' = y + eps_x (x_in - x)             x' = y
//   y' = mu x + x (a(x^2+z^2) + b z^2)    y' = mu x + x (a(x^2+z^2) + b z^2)
//   z' = w                                z' = w + eps_z (z_in - z)
//   w' = mu z + z (a(x^2+z^2) + b x^2)    w' = mu z + z (a(x^2+z^2) + b x^2)
//
// x_in is the (possibly delayed) copy of x_B received by A, z_in the copy of
// z_A received by B. On the synchronization manifold (A == B, matched inputs)
// both coupling terms are exactly zero.

// Uncoupled node field (shared by A, B and the eavesdropper replica).
NodeState node_field(const NodeState& s, const ControlParams& p);

// Full coupled derivative with explicit received signals. Throws
// std::domain_error if any input violates the divergence guard.
CoupledState coupled_derivative(const CoupledState& s, const ControlParams& p,
                                const CouplingParams& c, double x_B_in,
                                double z_A_in,
                                double divergence_bound = 1e6);

// Eavesdropper replica of the transmitter, driven by a received x_B value.
NodeState eve_derivative(const NodeState& e, double x_B_in,
                         const ControlParams& p, double eps_Ex,
                         double divergence_bound = 1e6);

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

enum class Channel : unsigned { xA, yA, zA, wA, xB, yB, zB, wB };

std::string_view channel_name(Channel c);
std::optional<Channel> channel_from_name(std::string_view name);

inline constexpr Channel kAllChannels[] = {Channel::xA, Channel::yA,
                                           Channel::zA, Channel::wA,
                                           Channel::xB, Channel::yB,
                                           Channel::zB, Channel::wB};

// Fixed-step time series of selected channels. Sample i is the state at
// t = i * step_h; a run of n steps stores n+1 samples per channel.
struct Orbit {
  double step_h = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;

  std::size_t length() const { return cols.empty() ? 0 : cols[0].size(); }
  const std::vector<double>& channel(std::string_view name) const;
  bool has_channel(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Transmission delay
// ---------------------------------------------------------------------------

// FIFO of pending channel samples. Delay 0 degenerates to pass-through.
// The buffer is primed with `prime` copies of the sender's initial value, so
// for the first delay_steps steps the receiver sees that initial value.
class DelayLine {
 public:
  DelayLine() = default;
  DelayLine(std::size_t delay_steps, double prime);

  // Enqueues the newly transmitted sample, returns the delayed one.
  double shift(double incoming);

  std::size_t delay_steps() const { return delay_; }

 private:
  std::size_t delay_ = 0;
  std::deque<double> buffer_;
};

struct ChannelDelays {
  std::size_t x_B_steps = 0;  // delay on the x_B -> A line
  std::size_t z_A_steps = 0;  // delay on the z_A -> B line
};

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

struct IntegrationResult {
  Orbit orbit;  // partial up to the divergence step when diverged
  CoupledState final_state{};
  std::optional<std::size_t> diverged_step;

  bool diverged() const { return diverged_step.has_value(); }
};

// Classical fixed-step RK4 on the coupled system.
//
// The exchanged signals are sampled once per step: at step n each party
// receives the peer sample from step n - delay (its peer's initial value
// while n < delay) and the resulting coupling correction
//   c_x = eps_x (x_B_in - x_A[n]),   c_z = eps_z (z_A_in - z_B[n])
// is held constant across the four RK4 substeps. Freezing the whole
// correction (not just the received sample) keeps the two parties'
// arithmetic identical on the synchronization manifold, so an exactly
// synchronized pair stays bit-for-bit equal, and makes a replay from the
// recorded per-step samples reproduce the live trajectory exactly.
IntegrationResult integrate(const CoupledState& init, const ControlParams& p,
                            const CouplingParams& c,
                            const IntegratorConfig& cfg,
                            std::span<const Channel> channels = kAllChannels,
                            const ChannelDelays& delays = {});

struct EveIntegrationResult {
  std::vector<double> x_E, y_E, z_E, w_E;  // n_steps + 1 samples each
  NodeState final_state{};
  std::optional<std::size_t> diverged_step;

  bool diverged() const { return diverged_step.has_value(); }
};

// Integrates the eavesdropper replica, driving the coupling with recorded
// per-step x_B samples (same frozen-correction rule as the live system, so
// exact initial conditions reproduce the transmitter bit-for-bit).
// recorded_x_B must hold at least cfg.n_steps samples spaced cfg.step_h.
EveIntegrationResult integrate_eve(const NodeState& init_e,
                                   std::span<const double> recorded_x_B,
                                   const ControlParams& p, double eps_Ex,
                                   const IntegratorConfig& cfg);

// Fast path for attack objectives: only the z_E series (n_steps + 1 samples)
// is written, into a caller-owned buffer. Returns false on divergence.
bool eve_z_trajectory(const NodeState& init_e,
                      std::span<const double> recorded_x_B,
                      const ControlParams& p, double eps_Ex,
                      const IntegratorConfig& cfg, std::vector<double>& z_out);

// ---------------------------------------------------------------------------
// Random initial conditions
// ---------------------------------------------------------------------------

// Each component uniform in [-0.5, 0.5].
NodeState random_initial_node(SplitMix64& rng);

// Sampling ranges for randomized studies. The control-parameter boxes cover
// every configuration exercised in the bundled presets.
struct ParameterRanges {
  double a_min = -1.1, a_max = -0.4;
  double b_min = 0.1, b_max = 1.2;
  double mu_min = 0.5, mu_max = 1.3;
  double eps_min = CouplingParams::kNominalMin;
  double eps_max = CouplingParams::kNominalMax;
  double ic_min = -0.5, ic_max = 0.5;
};

ControlParams random_control_params(SplitMix64& rng,
                                    const ParameterRanges& r = {});
CouplingParams random_coupling(SplitMix64& rng, const ParameterRanges& r = {});

}  // namespace synckit
