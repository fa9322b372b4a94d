#include "ssfmlab/trajectory_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ssfmlab {

namespace {

static_assert(sizeof(double) == 8);

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  if constexpr (std::is_same_v<T, double>) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, 8);
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  } else {
    auto v = static_cast<std::uint64_t>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i)
      bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  in.read(reinterpret_cast<char*>(bytes), sizeof(T));
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    double d;
    std::memcpy(&d, &v, 8);
    return d;
  } else {
    return static_cast<T>(v);
  }
}

void put_block(std::ostream& out, const Eigen::VectorXcd& samples) {
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    put_le<double>(out, samples[i].real());
    put_le<double>(out, samples[i].imag());
  }
}

Eigen::VectorXcd get_block(std::istream& in, Eigen::Index l) {
  Eigen::VectorXcd samples(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    samples[i] = {re, im};
  }
  return samples;
}

}  // namespace

void write_record(std::ostream& out, const PropagationRecord& record) {
  const bool full = !record.trajectory.empty();
  const auto l = static_cast<std::uint32_t>(record.input.samples.size());
  const auto k = static_cast<std::uint32_t>(record.output.position_index);
  out.write(kTrajectoryMagic, 8);
  put_le<std::uint32_t>(out, l);
  put_le<std::uint32_t>(out, k);
  put_le<std::uint32_t>(out, full ? kTrajectoryFlagFull : 0u);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(record.realization));
  put_le<std::uint64_t>(out, record.master_seed);
  if (full) {
    if (record.trajectory.size() != static_cast<std::size_t>(k) + 1)
      throw std::invalid_argument("trajectory length must be K+1");
    for (const auto& f : record.trajectory) put_block(out, f.samples);
  } else {
    put_block(out, record.input.samples);
    put_block(out, record.output.samples);
  }
  if (!out) throw std::runtime_error("trajectory write failed");
}

PropagationRecord read_record(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kTrajectoryMagic, 8) != 0)
    throw std::runtime_error("not a field dump: bad magic");
  const auto l = get_le<std::uint32_t>(in);
  const auto k = get_le<std::uint32_t>(in);
  const auto flags = get_le<std::uint32_t>(in);
  const auto realization = get_le<std::uint32_t>(in);
  const auto seed = get_le<std::uint64_t>(in);

  PropagationRecord record;
  record.master_seed = seed;
  record.realization = realization;
  if (flags & kTrajectoryFlagFull) {
    record.trajectory.reserve(k + 1);
    for (std::uint32_t pos = 0; pos <= k; ++pos)
      record.trajectory.push_back(FieldState{static_cast<int>(pos), get_block(in, l)});
    record.input = record.trajectory.front();
    record.output = record.trajectory.back();
  } else {
    record.input = FieldState{0, get_block(in, l)};
    record.output = FieldState{static_cast<int>(k), get_block(in, l)};
  }
  if (!in) throw std::runtime_error("trajectory read failed: truncated file");
  return record;
}

void write_record_file(const std::string& path, const PropagationRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_record(out, record);
}

PropagationRecord read_record_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_record(in);
}

}  // namespace ssfmlab
