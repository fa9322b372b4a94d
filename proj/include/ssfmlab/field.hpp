#ifndef SSFMLAB_FIELD_HPP
#define SSFMLAB_FIELD_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "ssfmlab/grid.hpp"

namespace ssfmlab {

// One realization of the sampled complex field at position index k.
// Samples are in sqrt(W): |samples[l]|^2 is instantaneous power.
struct FieldState {
  int position_index = 0;
  Eigen::VectorXcd samples;
};

// Field energy in the discrete-sum convention, sum_l |a_l|^2.
inline double energy(const FieldState& f) { return f.samples.squaredNorm(); }

inline void check_field(const FieldState& f, const SimulationGrid& grid) {
  if (f.samples.size() != grid.num_samples)
    throw std::invalid_argument("field length does not match grid num_samples");
  if (f.position_index < 0 || f.position_index > grid.num_steps)
    throw std::out_of_range("field position index outside [0, num_steps]");
}

// A set of i.i.d. realizations at a common position; the unit of all
// statistical estimation.
struct Ensemble {
  std::vector<FieldState> realizations;

  int size() const { return static_cast<int>(realizations.size()); }
  Eigen::Index length() const {
    return realizations.empty() ? 0 : realizations.front().samples.size();
  }
  int position_index() const {
    return realizations.empty() ? 0 : realizations.front().position_index;
  }

  void validate() const {
    if (realizations.empty()) throw std::invalid_argument("ensemble is empty");
    const Eigen::Index l = realizations.front().samples.size();
    const int k = realizations.front().position_index;
    for (const auto& r : realizations) {
      if (r.samples.size() != l)
        throw std::invalid_argument("ensemble realizations differ in length");
      if (r.position_index != k)
        throw std::invalid_argument("ensemble realizations differ in position");
    }
  }
};

}  // namespace ssfmlab

#endif
