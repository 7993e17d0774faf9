#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "jatam/enumerate.hpp"

namespace jatam {

// Binary enumeration checkpoint, all integers little-endian:
//
//   char[8]  magic "JATAMCKP"
//   u32      format version (1)
//   u32      tile count, u32 label count
//   u32      fixed bit count n, then n x (u32 position, u8 value)
//   i32      grid dimension, u8 contact rule, i32 k, u8 rotation-invariant flag
//   u64      seed, u64 batch size, u64 sample stride
//   u64      next batch
//   u64 x 4  class totals (deterministic, trivial, steric, unbound)
//   u64      hash collisions
//   u64      shape count m, then m x
//              u32 hash, u64 det count, u64 steric count,
//              u64 first det index, u64 first steric index,
//              u16 width, u16 height, width*height occupancy bytes
//   u32      one-at-a-time hash of every preceding byte
//
// The worker count is not stored; it does not affect results.
inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string serialize_checkpoint(const EnumerationState& state);
EnumerationState deserialize_checkpoint(const std::string& bytes);

// Writes through a temporary file and renames it into place.
void save_checkpoint(const std::string& path, const EnumerationState& state);
EnumerationState load_checkpoint(const std::string& path);

}  // namespace jatam
