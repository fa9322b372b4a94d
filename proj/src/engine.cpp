#include "ssfmlab/engine.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ssfmlab/dft.hpp"
#include "ssfmlab/parallel.hpp"
#include "ssfmlab/rng.hpp"

namespace ssfmlab {

namespace {

using std::numbers::pi;

void apply_nonlinear_inplace(Eigen::VectorXcd& a, const NonlinearPhaseSpec& spec,
                             double gamma, double delta_z) {
  const Eigen::Index l = a.size();
  if (spec.mode == NonlinearPhaseSpec::Mode::kKerr) {
    const double c = gamma * delta_z;
    for (Eigen::Index i = 0; i < l; ++i)
      a[i] *= std::polar(spec.amplitude_gain, c * std::norm(a[i]));
  } else {
    if (!spec.phase_of_amplitude)
      throw std::invalid_argument("custom nonlinear mode requires phase_of_amplitude");
    for (Eigen::Index i = 0; i < l; ++i) {
      const double phase = spec.phase_of_amplitude(std::abs(a[i]));
      if (!std::isfinite(phase))
        throw std::invalid_argument("custom nonlinear phase is not finite");
      a[i] *= std::polar(spec.amplitude_gain, phase);
    }
  }
}

void apply_inverse_nonlinear_inplace(Eigen::VectorXcd& a, const NonlinearPhaseSpec& spec,
                                     double gamma, double delta_z) {
  // |a| is unchanged by the forward step, so the forward phase can be
  // recomputed from the rotated samples.
  const Eigen::Index l = a.size();
  if (spec.mode == NonlinearPhaseSpec::Mode::kKerr) {
    const double c = gamma * delta_z;
    for (Eigen::Index i = 0; i < l; ++i)
      a[i] *= std::polar(1.0, -c * std::norm(a[i]));
  } else {
    if (!spec.phase_of_amplitude)
      throw std::invalid_argument("custom nonlinear mode requires phase_of_amplitude");
    for (Eigen::Index i = 0; i < l; ++i)
      a[i] *= std::polar(1.0, -spec.phase_of_amplitude(std::abs(a[i])));
  }
}

struct StepWorkspace {
  Eigen::VectorXcd spectrum;
  Eigen::VectorXcd scratch;
};

void apply_allpass_inplace(Eigen::VectorXcd& a, const Eigen::VectorXd& phases,
                           double gain, StepWorkspace& ws, bool conjugate = false) {
  dft_into(a, ws.spectrum);
  const Eigen::Index l = a.size();
  const double sign = conjugate ? -1.0 : 1.0;
  const double g = conjugate ? 1.0 / gain : gain;
  for (Eigen::Index i = 0; i < l; ++i) ws.spectrum[i] *= std::polar(g, sign * phases[i]);
  idft_into(ws.spectrum, a);
}

void apply_loss_inplace(Eigen::VectorXcd& a, const Eigen::VectorXd& profile,
                        StepWorkspace& ws) {
  dft_into(a, ws.spectrum);
  for (Eigen::Index i = 0; i < profile.size(); ++i) ws.spectrum[i] *= profile[i];
  idft_into(ws.spectrum, a);
}

void add_noise_inplace(Eigen::VectorXcd& a, const ChannelParams& params,
                       const SimulationGrid& grid, std::mt19937_64& stream,
                       StepWorkspace& ws) {
  const double variance = params.noise_variance_per_step(grid);
  if (variance <= 0.0) return;
  const Eigen::Index l = a.size();
  if (!params.noise_profile) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
    for (Eigen::Index i = 0; i < l; ++i) {
      const double re = normal(stream);
      const double im = normal(stream);
      a[i] += std::complex<double>(re, im);
    }
    return;
  }
  // Shaped noise: white proper Gaussian bins scaled by sqrt(profile), then
  // brought to the time domain. The mean added energy is
  // L * variance * mean(profile).
  const Eigen::VectorXd& profile = *params.noise_profile;
  ws.scratch.resize(l);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  for (Eigen::Index i = 0; i < l; ++i) {
    const double re = normal(stream);
    const double im = normal(stream);
    ws.scratch[i] = std::sqrt(profile[i]) * std::complex<double>(re, im);
  }
  idft_into(ws.scratch, ws.spectrum);
  a += ws.spectrum;
}

// Core of one space step, shared by the public API and the ensemble driver.
void step_inplace(Eigen::VectorXcd& a, const ChannelParams& params,
                  const SimulationGrid& grid, const EngineSpecs& specs,
                  const Eigen::VectorXd& full_phases, const Eigen::VectorXd& half_phases,
                  std::mt19937_64& noise_stream, StepWorkspace& ws) {
  if (specs.order == StepOrder::kNonlinearFirst) {
    apply_nonlinear_inplace(a, specs.nonlinear, params.gamma, grid.delta_z);
    apply_allpass_inplace(a, full_phases, specs.allpass.gain, ws);
  } else {
    apply_allpass_inplace(a, half_phases, specs.allpass.gain, ws);
    apply_nonlinear_inplace(a, specs.nonlinear, params.gamma, grid.delta_z);
    apply_allpass_inplace(a, half_phases, specs.allpass.gain, ws);
  }
  if (params.loss_profile) apply_loss_inplace(a, *params.loss_profile, ws);
  add_noise_inplace(a, params, grid, noise_stream, ws);
}

}  // namespace

Eigen::VectorXd allpass_phases(const AllPassSpec& spec, const SimulationGrid& grid,
                               double delta_z) {
  const int l = grid.num_samples;
  Eigen::VectorXd phases(l);
  switch (spec.mode) {
    case AllPassSpec::Mode::kPaperDispersion: {
      const double denom = grid.num_samples * grid.delta_t;
      for (int i = 0; i < l; ++i) {
        const double m = (i < l / 2) ? static_cast<double>(i) : static_cast<double>(l - i);
        phases[i] = -0.5 * spec.beta2 * (m / denom) * (m / denom) * delta_z;
      }
      break;
    }
    case AllPassSpec::Mode::kPhysicalDispersion: {
      const double df = 1.0 / (grid.num_samples * grid.delta_t);
      for (int i = 0; i < l; ++i) {
        const double f = (i < l / 2) ? i * df : (i - l) * df;
        const double w = 2.0 * pi * f;
        phases[i] = (-0.5 * spec.beta2 * w * w - spec.beta3 / 6.0 * w * w * w) * delta_z;
      }
      break;
    }
    case AllPassSpec::Mode::kCustomPhases: {
      if (spec.custom_phases.size() != l)
        throw std::invalid_argument("custom phase vector length must equal num_samples");
      phases = spec.custom_phases * (delta_z / grid.delta_z);
      break;
    }
  }
  return phases;
}

FieldState nonlinear_step(const FieldState& f, const NonlinearPhaseSpec& spec,
                          double gamma, double delta_z) {
  FieldState out = f;
  apply_nonlinear_inplace(out.samples, spec, gamma, delta_z);
  return out;
}

FieldState linear_step(const FieldState& f, const AllPassSpec& spec,
                       const SimulationGrid& grid, double delta_z) {
  check_field(f, grid);
  FieldState out = f;
  StepWorkspace ws;
  apply_allpass_inplace(out.samples, allpass_phases(spec, grid, delta_z), spec.gain, ws);
  return out;
}

FieldState noise_step(const FieldState& f, const ChannelParams& params,
                      const SimulationGrid& grid, std::mt19937_64& stream) {
  check_field(f, grid);
  FieldState out = f;
  StepWorkspace ws;
  add_noise_inplace(out.samples, params, grid, stream, ws);
  return out;
}

FieldState apply_loss(const FieldState& f, const Eigen::VectorXd& loss_profile,
                      const SimulationGrid& grid) {
  check_field(f, grid);
  if (loss_profile.size() != grid.num_samples)
    throw std::invalid_argument("loss profile length must equal num_samples");
  FieldState out = f;
  StepWorkspace ws;
  apply_loss_inplace(out.samples, loss_profile, ws);
  return out;
}

FieldState propagate_step(const FieldState& f, const ChannelParams& params,
                          const SimulationGrid& grid, const EngineSpecs& specs,
                          std::uint64_t master_seed, std::uint64_t realization) {
  check_field(f, grid);
  if (f.position_index >= grid.num_steps)
    throw std::out_of_range("propagate_step: already at the end of the link");
  params.validate(grid);
  FieldState out = f;
  StepWorkspace ws;
  const Eigen::VectorXd full = allpass_phases(specs.allpass, grid, grid.delta_z);
  const Eigen::VectorXd half = allpass_phases(specs.allpass, grid, 0.5 * grid.delta_z);
  auto stream = make_stream(master_seed, realization,
                            static_cast<std::uint64_t>(f.position_index),
                            StreamPurpose::kNoise);
  step_inplace(out.samples, params, grid, specs, full, half, stream, ws);
  out.position_index = f.position_index + 1;
  return out;
}

PropagationRecord propagate(const FieldState& input, const ChannelParams& params,
                            const SimulationGrid& grid, const EngineSpecs& specs,
                            std::uint64_t master_seed, std::uint64_t realization,
                            bool retain_trajectory) {
  check_field(input, grid);
  if (input.position_index != 0)
    throw std::invalid_argument("propagate expects the input at position index 0");
  params.validate(grid);

  PropagationRecord record;
  record.input = input;
  record.master_seed = master_seed;
  record.realization = realization;
  if (retain_trajectory) {
    record.trajectory.reserve(grid.num_steps + 1);
    record.trajectory.push_back(input);
  }

  StepWorkspace ws;
  const Eigen::VectorXd full = allpass_phases(specs.allpass, grid, grid.delta_z);
  const Eigen::VectorXd half = allpass_phases(specs.allpass, grid, 0.5 * grid.delta_z);
  Eigen::VectorXcd a = input.samples;
  for (int k = 0; k < grid.num_steps; ++k) {
    auto stream = make_stream(master_seed, realization, static_cast<std::uint64_t>(k),
                              StreamPurpose::kNoise);
    step_inplace(a, params, grid, specs, full, half, stream, ws);
    if (retain_trajectory) record.trajectory.push_back(FieldState{k + 1, a});
  }
  record.output = FieldState{grid.num_steps, std::move(a)};
  return record;
}

FieldState inverse_propagate_deterministic(const FieldState& output,
                                           const ChannelParams& params,
                                           const SimulationGrid& grid,
                                           const EngineSpecs& specs) {
  check_field(output, grid);
  if (params.loss_profile)
    throw std::invalid_argument(
        "inverse propagation is unsupported with a loss profile configured");
  if (output.position_index != grid.num_steps)
    throw std::invalid_argument("inverse propagation expects the field at position K");

  StepWorkspace ws;
  const Eigen::VectorXd full = allpass_phases(specs.allpass, grid, grid.delta_z);
  const Eigen::VectorXd half = allpass_phases(specs.allpass, grid, 0.5 * grid.delta_z);
  Eigen::VectorXcd a = output.samples;
  for (int k = grid.num_steps - 1; k >= 0; --k) {
    if (specs.order == StepOrder::kNonlinearFirst) {
      apply_allpass_inplace(a, full, specs.allpass.gain, ws, /*conjugate=*/true);
      apply_inverse_nonlinear_inplace(a, specs.nonlinear, params.gamma, grid.delta_z);
    } else {
      apply_allpass_inplace(a, half, specs.allpass.gain, ws, /*conjugate=*/true);
      apply_inverse_nonlinear_inplace(a, specs.nonlinear, params.gamma, grid.delta_z);
      apply_allpass_inplace(a, half, specs.allpass.gain, ws, /*conjugate=*/true);
    }
  }
  return FieldState{0, std::move(a)};
}

EnsembleRunResult propagate_ensemble(const InputSpec& input, const ChannelParams& params,
                                     const SimulationGrid& grid, const EngineSpecs& specs,
                                     int realizations, std::uint64_t master_seed,
                                     const EnsembleRunOptions& options) {
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  params.validate(grid);

  const int m = realizations;
  const int l = grid.num_samples;
  const int positions = grid.num_steps + 1;
  constexpr std::int64_t kBlock = 256;

  EnsembleRunResult result;
  result.input_energies.resize(m);
  result.output_energies.resize(m);
  if (options.retain_inputs) result.inputs.realizations.resize(m);
  if (options.retain_outputs) result.outputs.realizations.resize(m);

  const std::int64_t blocks = block_count(m, kBlock);
  std::vector<Eigen::MatrixXd> spectra_partials;
  if (options.accumulate_spectra)
    spectra_partials.assign(blocks, Eigen::MatrixXd::Zero(positions, l));

  const Eigen::VectorXd full = allpass_phases(specs.allpass, grid, grid.delta_z);
  const Eigen::VectorXd half = allpass_phases(specs.allpass, grid, 0.5 * grid.delta_z);

  parallel_blocks(
      m, kBlock,
      [&](std::int64_t block, std::int64_t begin, std::int64_t end) {
        StepWorkspace ws;
        Eigen::VectorXcd psd_scratch;
        for (std::int64_t r = begin; r < end; ++r) {
          FieldState in = generate_input(input, grid, master_seed,
                                         static_cast<std::uint64_t>(r));
          Eigen::VectorXcd a = in.samples;
          result.input_energies[r] = a.squaredNorm();
          if (options.accumulate_spectra) {
            dft_into(a, psd_scratch);
            spectra_partials[block].row(0) += psd_scratch.cwiseAbs2().transpose();
          }
          for (int k = 0; k < grid.num_steps; ++k) {
            auto stream = make_stream(master_seed, static_cast<std::uint64_t>(r),
                                      static_cast<std::uint64_t>(k), StreamPurpose::kNoise);
            step_inplace(a, params, grid, specs, full, half, stream, ws);
            if (options.accumulate_spectra) {
              dft_into(a, psd_scratch);
              spectra_partials[block].row(k + 1) += psd_scratch.cwiseAbs2().transpose();
            }
          }
          result.output_energies[r] = a.squaredNorm();
          if (options.retain_inputs)
            result.inputs.realizations[r] = std::move(in);
          if (options.retain_outputs)
            result.outputs.realizations[r] = FieldState{grid.num_steps, std::move(a)};
        }
      },
      options.num_threads);

  if (options.accumulate_spectra) {
    result.mean_periodogram = Eigen::MatrixXd::Zero(positions, l);
    for (const auto& partial : spectra_partials) result.mean_periodogram += partial;
    result.mean_periodogram /= static_cast<double>(m);
  }
  return result;
}

}  // namespace ssfmlab
