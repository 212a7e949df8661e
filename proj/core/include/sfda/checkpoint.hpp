/* Copyright 2026 The ssvep-sfda Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SFDA_CHECKPOINT_HPP_
#define SFDA_CHECKPOINT_HPP_

#include <filesystem>
#include <string>

#include "sfda/network.hpp"

namespace sfda {

/// Container layout:
///   bytes [0, 8)    magic "SFDADNN1"
///   bytes [8, 16)   header length H, little-endian uint64
///   bytes [16, 16+H) JSON header: version, architecture, tensor table
///                    (name, shape, byte offset, element count), payload size
///   remainder       little-endian float32 payload in tensor-table order
inline constexpr char kCheckpointMagic[9] = "SFDADNN1";
inline constexpr int kCheckpointVersion = 1;

std::string serialize_checkpoint(const NetworkParams& params);
NetworkParams deserialize_checkpoint(const std::string& bytes, const std::string& source = "<memory>");

void checkpoint_save(const NetworkParams& params, const std::filesystem::path& path);
NetworkParams checkpoint_load(const std::filesystem::path& path);

}  // namespace sfda

#endif  // SFDA_CHECKPOINT_HPP_
