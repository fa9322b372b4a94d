#ifndef SSFMLAB_ENGINE_HPP
#define SSFMLAB_ENGINE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ssfmlab/field.hpp"
#include "ssfmlab/grid.hpp"
#include "ssfmlab/input.hpp"

namespace ssfmlab {

// Phase rotation applied sample-wise in the time domain. Kerr mode rotates by
// gamma*|a|^2*dz; custom mode by an arbitrary function of the amplitude.
// Either way the sample magnitudes are untouched (amplitude_gain != 1 is a
// deliberate-fault hook for negative-control tests and must stay at 1 in any
// physical run).
struct NonlinearPhaseSpec {
  enum class Mode { kKerr, kCustom };
  Mode mode = Mode::kKerr;
  std::function<double(double)> phase_of_amplitude;  // custom: |a| -> radians
  double amplitude_gain = 1.0;
};

// Frequency-domain diagonal filter. All modes produce unit-modulus entries
// (gain != 1 is the matching negative-control hook).
//
// paper-dispersion: phase -(beta2/2) * l^2/(L dt)^2 * dz mirrored around L/2;
//   beta3 is ignored in this mode.
// physical-dispersion: phase -(beta2/2) w^2 dz - (beta3/6) w^3 dz with
//   w = 2 pi f and f the signed bin frequency. The two conventions differ by
//   the (2 pi)^2 factor; both are all-pass, so downstream accounting holds
//   for either.
// custom-phases: a caller-supplied length-L phase vector, interpreted as the
//   phase of one full dz step (scaled linearly for fractional steps).
struct AllPassSpec {
  enum class Mode { kPaperDispersion, kPhysicalDispersion, kCustomPhases };
  Mode mode = Mode::kPaperDispersion;
  double beta2 = 0.0;  // s^2/m
  double beta3 = 0.0;  // s^3/m
  Eigen::VectorXd custom_phases;  // radians, length L
  double gain = 1.0;
};

enum class StepOrder {
  kNonlinearFirst,  // nonlinear, linear, (loss), noise
  kStrang           // half linear, nonlinear, half linear, (loss), noise
};

struct EngineSpecs {
  NonlinearPhaseSpec nonlinear;
  AllPassSpec allpass;
  StepOrder order = StepOrder::kNonlinearFirst;
};

struct PropagationRecord {
  FieldState input;   // k = 0
  FieldState output;  // k = K
  std::vector<FieldState> trajectory;  // empty, or K+1 states
  std::uint64_t master_seed = 0;
  std::uint64_t realization = 0;
};

// Per-bin phases of the diagonal filter for a step of length delta_z.
Eigen::VectorXd allpass_phases(const AllPassSpec& spec, const SimulationGrid& grid,
                               double delta_z);

FieldState nonlinear_step(const FieldState& f, const NonlinearPhaseSpec& spec,
                          double gamma, double delta_z);
FieldState linear_step(const FieldState& f, const AllPassSpec& spec,
                       const SimulationGrid& grid, double delta_z);
FieldState noise_step(const FieldState& f, const ChannelParams& params,
                      const SimulationGrid& grid, std::mt19937_64& stream);
FieldState apply_loss(const FieldState& f, const Eigen::VectorXd& loss_profile,
                      const SimulationGrid& grid);

// One space step: nonlinear, linear, optional frequency-dependent loss, noise
// (per the configured ordering). Increments the position index.
FieldState propagate_step(const FieldState& f, const ChannelParams& params,
                          const SimulationGrid& grid, const EngineSpecs& specs,
                          std::uint64_t master_seed, std::uint64_t realization);

// K steps from k = 0 to k = K.
PropagationRecord propagate(const FieldState& input, const ChannelParams& params,
                            const SimulationGrid& grid, const EngineSpecs& specs,
                            std::uint64_t master_seed, std::uint64_t realization,
                            bool retain_trajectory = false);

// Exact inverse of the deterministic (noise-free, loss-free) cascade. Valid
// because the nonlinear step preserves sample magnitudes, so the inverse
// phase can be read off the output.
FieldState inverse_propagate_deterministic(const FieldState& output,
                                           const ChannelParams& params,
                                           const SimulationGrid& grid,
                                           const EngineSpecs& specs);

struct EnsembleRunOptions {
  bool retain_inputs = false;
  bool retain_outputs = true;
  bool accumulate_spectra = false;  // mean periodogram at every position
  int num_threads = 0;              // 0 = hardware concurrency
};

struct EnsembleRunResult {
  Ensemble inputs;   // populated when retain_inputs
  Ensemble outputs;  // populated when retain_outputs
  std::vector<double> input_energies;   // per realization
  std::vector<double> output_energies;  // per realization
  // (K+1) x L, row k = ensemble-average |dft(a(z_k))|^2 per bin; empty unless
  // accumulate_spectra.
  Eigen::MatrixXd mean_periodogram;
};

// Monte-Carlo driver: M independent realizations through the full cascade.
// Reductions are block-ordered, so results are bit-identical for any thread
// count.
EnsembleRunResult propagate_ensemble(const InputSpec& input, const ChannelParams& params,
                                     const SimulationGrid& grid, const EngineSpecs& specs,
                                     int realizations, std::uint64_t master_seed,
                                     const EnsembleRunOptions& options = {});

}  // namespace ssfmlab

#endif
