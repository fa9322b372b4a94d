#ifndef SSFMLAB_GRID_HPP
#define SSFMLAB_GRID_HPP

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ssfmlab {

// Uniform space/time discretization. Derived quantities are computed from
// (delta_t, num_samples, delta_z, num_steps) only, so the time-bandwidth
// product total_time() * sim_bandwidth() == num_samples holds by
// construction.
struct SimulationGrid {
  double delta_z = 0.0;  // m
  double delta_t = 0.0;  // s
  int num_steps = 0;     // K
  int num_samples = 0;   // L, even

  double total_time() const { return num_samples * delta_t; }        // T, s
  double sim_bandwidth() const { return 1.0 / delta_t; }             // B, Hz
  double total_length() const { return num_steps * delta_z; }        // z*, m
  double bin_spacing_hz() const { return 1.0 / (num_samples * delta_t); }

  static SimulationGrid create(double delta_z, double delta_t, int num_steps,
                               int num_samples) {
    if (!(delta_z > 0.0) || !std::isfinite(delta_z))
      throw std::invalid_argument("grid: delta_z must be a positive finite real");
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
      throw std::invalid_argument("grid: delta_t must be a positive finite real");
    if (num_steps < 1) throw std::invalid_argument("grid: num_steps must be >= 1");
    if (num_samples < 2 || num_samples % 2 != 0)
      throw std::invalid_argument("grid: num_samples must be even and >= 2");
    return SimulationGrid{delta_z, delta_t, num_steps, num_samples};
  }

  friend bool operator==(const SimulationGrid&, const SimulationGrid&) = default;
};

// Physical channel constants. Energy bookkeeping uses the discrete-sum
// convention (field energy = sum |a|^2, no delta_t factor), matching the
// per-step noise variance below.
struct ChannelParams {
  double beta2 = 0.0;  // s^2/m
  double beta3 = 0.0;  // s^3/m
  double gamma = 0.0;  // 1/(W m)
  double n_ase = 0.0;  // J
  double b_n = 1.0;    // Hz
  std::optional<Eigen::VectorXd> loss_profile;   // per-bin amplitude gain, (0,1]
  std::optional<Eigen::VectorXd> noise_profile;  // per-bin variance multiplier, >= 0

  // Total variance of one complex noise sample added by one space step.
  double noise_variance_per_step(const SimulationGrid& grid) const {
    return n_ase * b_n / grid.total_length() * grid.delta_z * grid.delta_t;
  }

  // Expected total noise energy accumulated over the full link, sum convention.
  double total_noise_energy(const SimulationGrid& grid) const {
    return n_ase * b_n * grid.total_time();
  }

  void validate(const SimulationGrid& grid) const {
    if (!std::isfinite(beta2) || !std::isfinite(beta3) || !std::isfinite(gamma))
      throw std::invalid_argument("channel: beta2, beta3, gamma must be finite");
    if (!(n_ase >= 0.0) || !std::isfinite(n_ase))
      throw std::invalid_argument("channel: n_ase must be >= 0");
    if (!(b_n > 0.0) || !std::isfinite(b_n))
      throw std::invalid_argument("channel: b_n must be > 0");
    if (loss_profile) {
      if (loss_profile->size() != grid.num_samples)
        throw std::invalid_argument("channel: loss_profile length must equal num_samples");
      for (Eigen::Index i = 0; i < loss_profile->size(); ++i) {
        const double g = (*loss_profile)[i];
        if (!(g > 0.0 && g <= 1.0))
          throw std::invalid_argument("channel: loss_profile entries must lie in (0, 1]");
      }
    }
    if (noise_profile) {
      if (noise_profile->size() != grid.num_samples)
        throw std::invalid_argument("channel: noise_profile length must equal num_samples");
      for (Eigen::Index i = 0; i < noise_profile->size(); ++i) {
        if (!((*noise_profile)[i] >= 0.0))
          throw std::invalid_argument("channel: noise_profile entries must be >= 0");
      }
    }
  }
};

}  // namespace ssfmlab

#endif
