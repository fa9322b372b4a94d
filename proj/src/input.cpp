#include "ssfmlab/input.hpp"

#include <cmath>
#include <stdexcept>

#include "ssfmlab/dft.hpp"
#include "ssfmlab/rng.hpp"

namespace ssfmlab {

InputKind parse_input_kind(const std::string& name) {
  if (name == "iid-gaussian") return InputKind::kIidGaussian;
  if (name == "single-tone") return InputKind::kSingleTone;
  if (name == "sinc-pulse-train") return InputKind::kSincPulseTrain;
  throw std::invalid_argument("unknown input kind: " + name);
}

std::string input_kind_name(InputKind kind) {
  switch (kind) {
    case InputKind::kIidGaussian: return "iid-gaussian";
    case InputKind::kSingleTone: return "single-tone";
    case InputKind::kSincPulseTrain: return "sinc-pulse-train";
  }
  throw std::logic_error("unreachable input kind");
}

FieldState generate_input(const InputSpec& spec, const SimulationGrid& grid,
                          std::uint64_t master_seed, std::uint64_t realization) {
  if (!(spec.energy >= 0.0) || !std::isfinite(spec.energy))
    throw std::invalid_argument("input energy must be >= 0 and finite");
  const int l = grid.num_samples;
  FieldState f;
  f.position_index = 0;

  if (spec.energy == 0.0) {
    f.samples = Eigen::VectorXcd::Zero(l);
    return f;
  }

  switch (spec.kind) {
    case InputKind::kIidGaussian: {
      auto rng = make_stream(master_seed, realization, 0, StreamPurpose::kInput);
      f.samples = proper_gaussian_vector(rng, l, spec.energy / l);
      break;
    }
    case InputKind::kSingleTone: {
      f.samples = Eigen::VectorXcd::Constant(l, std::sqrt(spec.energy / l));
      break;
    }
    case InputKind::kSincPulseTrain: {
      if (!(spec.band_fraction > 0.0 && spec.band_fraction <= 1.0))
        throw std::invalid_argument("band_fraction must lie in (0, 1]");
      const int bins = std::max<int>(1, static_cast<int>(std::lround(spec.band_fraction * l)));
      auto rng = make_stream(master_seed, realization, 0, StreamPurpose::kInput);
      Eigen::VectorXcd spectrum = Eigen::VectorXcd::Zero(l);
      spectrum.head(bins) = proper_gaussian_vector(rng, bins, 1.0);
      Eigen::VectorXcd samples = idft(spectrum);
      const double got = samples.squaredNorm();
      if (got > 0.0) samples *= std::sqrt(spec.energy / got);
      f.samples = std::move(samples);
      break;
    }
  }
  return f;
}

}  // namespace ssfmlab
