#ifndef SSFMLAB_INPUT_HPP
#define SSFMLAB_INPUT_HPP

#include <cstdint>
#include <string>

#include "ssfmlab/field.hpp"
#include "ssfmlab/grid.hpp"

namespace ssfmlab {

enum class InputKind {
  kIidGaussian,    // each sample proper complex Gaussian, variance E0/L
  kSingleTone,     // constant field, deterministic energy exactly E0
  kSincPulseTrain  // band-limited random symbols, rescaled to exactly E0
};

InputKind parse_input_kind(const std::string& name);
std::string input_kind_name(InputKind kind);

struct InputSpec {
  InputKind kind = InputKind::kIidGaussian;
  double energy = 1.0;          // target E0, sum-convention
  double band_fraction = 0.125; // sinc-pulse-train: fraction of bins occupied
};

// All three kinds are interchangeable for bound evaluation; only E0 enters
// the bound. iid-gaussian hits E0 in expectation, the other two exactly.
FieldState generate_input(const InputSpec& spec, const SimulationGrid& grid,
                          std::uint64_t master_seed, std::uint64_t realization);

}  // namespace ssfmlab

#endif
