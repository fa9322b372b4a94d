#ifndef SSFMLAB_TRAJECTORY_IO_HPP
#define SSFMLAB_TRAJECTORY_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ssfmlab/engine.hpp"

namespace ssfmlab {

// Binary field dump (all integers and floats little-endian):
//
//   offset size field
//   0      8    magic "SSFMTRJ1"
//   8      4    u32 L, samples per position
//   12     4    u32 K, number of space steps
//   16     4    u32 flags, bit 0: full trajectory present
//   20     4    u32 realization index
//   24     8    u64 master seed
//
// followed by position blocks of L * 16 bytes each, every sample stored as
// (re f64, im f64). With flag bit 0 set the file holds K+1 blocks for
// positions 0..K; otherwise exactly two blocks, input (k = 0) then output
// (k = K).
inline constexpr char kTrajectoryMagic[8] = {'S', 'S', 'F', 'M', 'T', 'R', 'J', '1'};
inline constexpr std::uint32_t kTrajectoryFlagFull = 1u;

void write_record(std::ostream& out, const PropagationRecord& record);
void write_record_file(const std::string& path, const PropagationRecord& record);

PropagationRecord read_record(std::istream& in);
PropagationRecord read_record_file(const std::string& path);

}  // namespace ssfmlab

#endif
