#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gme/numkit/tape.hpp"

namespace gme::numkit {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Parameter snapshot plus a free-form metadata document (JSON by convention).
///
/// On disk: magic "GMECKPT\0", u32 version, u64 metadata length, metadata bytes, u32 tensor
/// count, then per tensor: u32 name length, name, u32 rank, u64 dims, raw little-endian f64
/// values.
struct Checkpoint {
  struct Entry {
    std::string name;
    Tensor tensor;
  };
  std::string metadata;
  std::vector<Entry> entries;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Checkpoint snapshot(const ParameterStore& store, std::string metadata);
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// Copies values into an existing store. Names and shapes must match exactly.
void restore(ParameterStore& store, const Checkpoint& checkpoint);

}  // namespace gme::numkit
