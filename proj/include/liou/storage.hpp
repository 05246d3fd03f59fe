#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "liou/sieve.hpp"

namespace liou {

// .liou segment file: header, bit-packed signs, CRC32 trailer.
//
//   magic        4 bytes  "LIOU"
//   version      u32 LE   (= 1)
//   start        u64 LE
//   len          u64 LE
//   prefix_base  i64 LE
//   payload      ceil(len/8) bytes, bit 1 -> lambda = +1, LSB-first per byte
//   crc32        u32 LE, polynomial 0xEDB88320, over header + payload
inline constexpr std::array<char, 4> kSegmentMagic{'L', 'I', 'O', 'U'};
inline constexpr std::uint32_t kSegmentVersion = 1;
inline constexpr std::size_t kSegmentHeaderSize = 32;

std::uint32_t crc32_ieee(const void* data, std::size_t len, std::uint32_t seed = 0);

// Serializes to a temp file in the same directory, then renames into place.
void write_segment(const LambdaSegment& segment, const std::filesystem::path& path);

// Inverse of write_segment; verifies magic, version, size, and CRC before
// returning, each failure with its own error kind.
LambdaSegment read_segment(const std::filesystem::path& path);

// Cache naming convention: lambda_<start>_<len>.liou
std::filesystem::path segment_cache_path(const std::filesystem::path& dir,
                                         std::uint64_t start, std::uint64_t len);

}  // namespace liou
