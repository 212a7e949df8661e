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

#include "sfda/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfda/errors.hpp"
#include "sfda/serialization.hpp"

namespace sfda {

using nlohmann::json;

namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

void put_f32(std::string& out, float f) {
  std::uint32_t w;
  std::memcpy(&w, &f, sizeof w);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((w >> (8 * i)) & 0xFF));
}

float get_f32(const std::string& in, std::size_t pos) {
  std::uint32_t w = 0;
  for (int i = 0; i < 4; ++i) w |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  float f;
  std::memcpy(&f, &w, sizeof f);
  return f;
}

}  // namespace

std::string serialize_checkpoint(const NetworkParams& params) {
  params.validate();
  json header;
  header["version"] = kCheckpointVersion;
  header["arch"] = params.arch();
  json tensors = json::array();
  for (const TensorInfo& t : tensor_layout(params.arch())) {
    tensors.push_back({{"name", t.name}, {"shape", t.shape}, {"offset", t.offset * 4}, {"count", t.count}});
  }
  header["tensors"] = std::move(tensors);
  header["payload_bytes"] = params.values().size() * 4;
  const std::string text = header.dump();

  std::string out(kCheckpointMagic, 8);
  put_u64(out, text.size());
  out += text;
  out.reserve(out.size() + params.values().size() * 4);
  for (const float v : params.values()) put_f32(out, v);
  return out;
}

NetworkParams deserialize_checkpoint(const std::string& bytes, const std::string& source) {
  if (bytes.size() < 16 || bytes.compare(0, 8, kCheckpointMagic) != 0) {
    throw FormatError(source + ": not a checkpoint (bad magic)");
  }
  const std::uint64_t header_len = get_u64(bytes, 8);
  if (header_len > bytes.size() - 16) throw FormatError(source + ": header length exceeds file size");
  json header;
  try {
    header = json::parse(bytes.substr(16, header_len));
  } catch (const json::exception& e) {
    throw FormatError(source + ": corrupt checkpoint header: " + e.what());
  }
  if (!header.is_object() || !header.contains("version")) throw FormatError(source + ": header lacks version");
  if (header.at("version") != kCheckpointVersion) {
    throw VersionError(source + ": unsupported checkpoint version " + header.at("version").dump());
  }

  Architecture arch;
  try {
    arch = header.at("arch").get<Architecture>();
    arch.validate();
  } catch (const json::exception& e) {
    throw FormatError(source + ": bad architecture in header: " + e.what());
  } catch (const ArgumentError& e) {
    throw FormatError(source + ": bad architecture in header: " + e.what());
  }

  const auto layout = tensor_layout(arch);
  const std::size_t count = parameter_count(arch);
  try {
    const json& tensors = header.at("tensors");
    if (!tensors.is_array() || tensors.size() != layout.size()) {
      throw FormatError(source + ": tensor table does not match architecture");
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const json& t = tensors[i];
      if (t.at("name").get<std::string>() != layout[i].name ||
          t.at("shape").get<std::vector<int>>() != layout[i].shape ||
          t.at("offset").get<std::size_t>() != layout[i].offset * 4 ||
          t.at("count").get<std::size_t>() != layout[i].count) {
        throw FormatError(source + ": tensor '" + layout[i].name + "' disagrees with architecture");
      }
    }
    if (header.at("payload_bytes").get<std::size_t>() != count * 4) {
      throw FormatError(source + ": declared payload size disagrees with architecture");
    }
  } catch (const json::exception& e) {
    throw FormatError(source + ": corrupt tensor table: " + e.what());
  }

  const std::size_t payload_at = 16 + header_len;
  if (bytes.size() - payload_at != count * 4) {
    throw FormatError(source + ": payload has " + std::to_string(bytes.size() - payload_at) + " bytes, expected " +
                      std::to_string(count * 4));
  }
  NetworkParams params(arch);
  auto values = params.values();
  for (std::size_t i = 0; i < count; ++i) values[i] = get_f32(bytes, payload_at + 4 * i);
  try {
    params.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(source + ": " + e.what());
  }
  return params;
}

void checkpoint_save(const NetworkParams& params, const std::filesystem::path& path) {
  const std::string bytes = serialize_checkpoint(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

NetworkParams checkpoint_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str(), path.string());
}

}  // namespace sfda
