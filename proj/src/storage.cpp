#include "liou/storage.hpp"

#include <unistd.h>
#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace liou {

namespace {

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

std::uint32_t crc32_ieee(const void* data, std::size_t len, std::uint32_t seed) {
    return static_cast<std::uint32_t>(
        ::crc32(seed, static_cast<const Bytef*>(data), static_cast<uInt>(len)));
}

std::filesystem::path segment_cache_path(const std::filesystem::path& dir,
                                         std::uint64_t start, std::uint64_t len) {
    return dir / ("lambda_" + std::to_string(start) + "_" + std::to_string(len) + ".liou");
}

void write_segment(const LambdaSegment& segment, const std::filesystem::path& path) {
    if (segment.len() == 0)
        throw DomainError("write_segment: refusing to write an empty segment");
    if (segment.start == 0)
        throw DomainError("write_segment: start must be >= 1");

    const std::uint64_t len = segment.len();
    std::vector<unsigned char> buf;
    buf.reserve(kSegmentHeaderSize + (len + 7) / 8 + 4);
    for (char c : kSegmentMagic) buf.push_back(static_cast<unsigned char>(c));
    put_u32(buf, kSegmentVersion);
    put_u64(buf, segment.start);
    put_u64(buf, len);
    put_u64(buf, static_cast<std::uint64_t>(segment.prefix_base));

    // Bit-packed payload, LSB-first, bit 1 for lambda = +1; pad bits stay 0.
    for (std::uint64_t byte = 0; byte < (len + 7) / 8; ++byte) {
        unsigned char b = 0;
        for (unsigned bit = 0; bit < 8; ++bit) {
            const std::uint64_t i = byte * 8 + bit;
            if (i < len && segment.signs[i] > 0) b |= static_cast<unsigned char>(1u << bit);
        }
        buf.push_back(b);
    }
    put_u32(buf, crc32_ieee(buf.data(), buf.size()));

    const std::filesystem::path tmp =
        path.parent_path() /
        (path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("write_segment: cannot open " + tmp.string());
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
        if (!out)
            throw IoError("write_segment: short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("write_segment: rename to " + path.string() + " failed: " + ec.message());
    }
}

LambdaSegment read_segment(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("read_segment: cannot open " + path.string());
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

    if (buf.size() < kSegmentHeaderSize + 4)
        throw TruncationError("read_segment: " + path.string() + " is truncated (" +
                              std::to_string(buf.size()) + " bytes)");
    if (std::memcmp(buf.data(), kSegmentMagic.data(), 4) != 0)
        throw FormatError("read_segment: " + path.string() + " has wrong magic");
    const std::uint32_t version = get_u32(buf.data() + 4);
    if (version != kSegmentVersion)
        throw FormatError("read_segment: " + path.string() + " has unsupported version " +
                          std::to_string(version));

    const std::uint64_t start = get_u64(buf.data() + 8);
    const std::uint64_t len = get_u64(buf.data() + 16);
    const std::int64_t prefix_base = static_cast<std::int64_t>(get_u64(buf.data() + 24));
    if (start == 0 || len == 0)
        throw FormatError("read_segment: " + path.string() + " declares an invalid range");

    const std::uint64_t payload = (len + 7) / 8;
    const std::uint64_t expected = kSegmentHeaderSize + payload + 4;
    if (buf.size() < expected)
        throw TruncationError("read_segment: " + path.string() + " is truncated (" +
                              std::to_string(buf.size()) + " of " +
                              std::to_string(expected) + " bytes)");
    if (buf.size() > expected)
        throw FormatError("read_segment: " + path.string() + " has trailing bytes");

    const std::uint32_t stored = get_u32(buf.data() + expected - 4);
    const std::uint32_t actual = crc32_ieee(buf.data(), expected - 4);
    if (stored != actual)
        throw CrcError("read_segment: CRC mismatch in " + path.string());

    LambdaSegment seg;
    seg.start = start;
    seg.prefix_base = prefix_base;
    seg.signs.resize(len);
    for (std::uint64_t i = 0; i < len; ++i) {
        const unsigned char b = buf[kSegmentHeaderSize + i / 8];
        seg.signs[i] = (b >> (i % 8)) & 1 ? std::int8_t{1} : std::int8_t{-1};
    }
    return seg;
}

}  // namespace liou
