#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "wocd/model.hpp"

namespace wocd {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  ModelParams params;
  std::uint64_t seed = 0;
};

/// JSON document: format tag, version, shape, seed and every tensor.
std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint deserialize_checkpoint(const std::string& text);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace wocd
