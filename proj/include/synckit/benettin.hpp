#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace synckit {

struct LyapunovOptions {
  std::size_t renorm_interval = 10;   // steps between Gram-Schmidt passes
  double transient_fraction = 0.10;   // leading fraction discarded
  double convergence_band = 0.05;     // allowed drift of any running exponent
                                      // over the final 10% of accumulation
};

struct LyapunovSpectrum {
  std::vector<double> exponents;  // sorted descending, units 1/time
  std::size_t n_renorm_steps = 0;
  std::size_t transient_discard = 0;
  bool converged = true;
  std::optional<std::size_t> diverged_step;

  bool diverged() const { return diverged_step.has_value(); }
};

// Exactly two exponents above +tol.
inline bool is_hyperchaotic(const LyapunovSpectrum& s, double tol) {
  std::size_t n = 0;
  for (double e : s.exponents) n += (e > tol) ? 1 : 0;
  return n == 2;
}

// Benettin tangent-space method over a generic N-dimensional flow.
//
// Field:    state -> derivative                      (std::array<double, N>)
// JacApply: (state, tangent) -> d(tangent)/dt        (analytic Jacobian)
//
// State and tangent frame advance together under RK4; the frame is
// re-orthonormalized (modified Gram-Schmidt) every renorm_interval steps and
// the log norms accumulate into the exponent estimates.
template <std::size_t N, class Field, class JacApply>
LyapunovSpectrum benettin_spectrum(Field&& field, JacApply&& jac_apply,
                                   std::array<double, N> state, double step_h,
                                   std::size_t n_steps,
                                   const LyapunovOptions& opt = {},
                                   double divergence_bound = 1e6) {
  using Vec = std::array<double, N>;
  using Frame = std::array<Vec, N>;

  auto axpy = [](const Vec& s, double h, const Vec& d) {
    Vec r;
    for (std::size_t i = 0; i < N; ++i) r[i] = s[i] + h * d[i];
    return r;
  };
  auto frame_axpy = [&](const Frame& v, double h, const Frame& d) {
    Frame r;
    for (std::size_t k = 0; k < N; ++k) r[k] = axpy(v[k], h, d[k]);
    return r;
  };

  LyapunovSpectrum out;
  out.exponents.assign(N, 0.0);

  Frame frame{};  // identity
  for (std::size_t k = 0; k < N; ++k) frame[k][k] = 1.0;

  std::array<double, N> log_sums{};
  const std::size_t discard = static_cast<std::size_t>(
      static_cast<double>(n_steps) * opt.transient_fraction);
  out.transient_discard = discard;

  double accum_time = 0.0;
  // running estimates sampled over the final 10% of accumulation
  std::vector<std::array<double, N>> tail_estimates;
  const double tail_from = 0.9 * static_cast<double>(n_steps - discard);

  const double h = step_h;
  for (std::size_t n = 0; n < n_steps; ++n) {
    // joint RK4 on (state, frame)
    const Vec k1 = field(state);
    Frame f1;
    for (std::size_t k = 0; k < N; ++k) f1[k] = jac_apply(state, frame[k]);

    const Vec s2 = axpy(state, 0.5 * h, k1);
    const Frame v2 = frame_axpy(frame, 0.5 * h, f1);
    const Vec k2 = field(s2);
    Frame f2;
    for (std::size_t k = 0; k < N; ++k) f2[k] = jac_apply(s2, v2[k]);

    const Vec s3 = axpy(state, 0.5 * h, k2);
    const Frame v3 = frame_axpy(frame, 0.5 * h, f2);
    const Vec k3 = field(s3);
    Frame f3;
    for (std::size_t k = 0; k < N; ++k) f3[k] = jac_apply(s3, v3[k]);

    const Vec s4 = axpy(state, h, k3);
    const Frame v4 = frame_axpy(frame, h, f3);
    const Vec k4 = field(s4);
    Frame f4;
    for (std::size_t k = 0; k < N; ++k) f4[k] = jac_apply(s4, v4[k]);

    for (std::size_t i = 0; i < N; ++i) {
      state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t i = 0; i < N; ++i) {
        frame[k][i] +=
            h / 6.0 * (f1[k][i] + 2.0 * f2[k][i] + 2.0 * f3[k][i] + f4[k][i]);
      }
    }

    for (double v : state) {
      if (!std::isfinite(v) || std::fabs(v) > divergence_bound) {
        out.diverged_step = n + 1;
        out.converged = false;
        std::sort(out.exponents.rbegin(), out.exponents.rend());
        return out;
      }
    }

    const bool renorm_due =
        ((n + 1) % opt.renorm_interval == 0) || (n + 1 == n_steps);
    if (!renorm_due) continue;

    // modified Gram-Schmidt; log norms accumulate after the transient
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < N; ++i) dot += frame[j][i] * frame[k][i];
        for (std::size_t i = 0; i < N; ++i) frame[k][i] -= dot * frame[j][i];
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < N; ++i) norm2 += frame[k][i] * frame[k][i];
      const double norm = std::sqrt(norm2);
      if (!(norm > 0.0) || !std::isfinite(norm)) {
        out.diverged_step = n + 1;
        out.converged = false;
        std::sort(out.exponents.rbegin(), out.exponents.rend());
        return out;
      }
      const double inv = 1.0 / norm;
      for (std::size_t i = 0; i < N; ++i) frame[k][i] *= inv;
      if (n + 1 > discard) log_sums[k] += std::log(norm);
    }
    ++out.n_renorm_steps;

    if (n + 1 > discard) {
      accum_time = static_cast<double>(n + 1 - discard) * h;
      if (static_cast<double>(n + 1 - discard) >= tail_from) {
        std::array<double, N> est;
        for (std::size_t k = 0; k < N; ++k) est[k] = log_sums[k] / accum_time;
        tail_estimates.push_back(est);
      }
    }
  }

  if (accum_time <= 0.0) {
    out.converged = false;
    return out;
  }
  for (std::size_t k = 0; k < N; ++k) {
    out.exponents[k] = log_sums[k] / accum_time;
  }

  // convergence: running averages must stay within the band over the tail
  for (std::size_t k = 0; k < N && out.converged; ++k) {
    double lo = out.exponents[k], hi = out.exponents[k];
    for (const auto& est : tail_estimates) {
      lo = std::min(lo, est[k]);
      hi = std::max(hi, est[k]);
    }
    if (hi - lo > opt.convergence_band) out.converged = false;
  }

  std::sort(out.exponents.rbegin(), out.exponents.rend());
  return out;
}

}  // namespace synckit
