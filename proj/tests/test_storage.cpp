#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "liou/storage.hpp"

using namespace liou;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("liou_storage_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::vector<unsigned char> read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& p, const std::vector<unsigned char>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

LambdaSegment sample_segment() {
    LambdaSegment seg;
    seg.start = 1;
    seg.prefix_base = 0;
    seg.signs = {1, -1, -1, 1};
    return seg;
}

}  // namespace

TEST_CASE("crc32 known answer") {
    // Standard CRC-32 check value for the ASCII digits "123456789".
    CHECK(crc32_ieee("123456789", 9) == 0xCBF43926u);
}

TEST_CASE("file layout is pinned byte for byte") {
    const fs::path path = temp_dir() / "layout.liou";
    write_segment(sample_segment(), path);
    const auto bytes = read_bytes(path);
    REQUIRE(bytes.size() == 32 + 1 + 4);

    // Magic + version.
    CHECK(bytes[0] == 'L');
    CHECK(bytes[1] == 'I');
    CHECK(bytes[2] == 'O');
    CHECK(bytes[3] == 'U');
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 0);
    CHECK(bytes[7] == 0);
    // start = 1, len = 4, prefix_base = 0, all little-endian.
    CHECK(bytes[8] == 1);
    for (int i = 9; i < 16; ++i) CHECK(bytes[i] == 0);
    CHECK(bytes[16] == 4);
    for (int i = 17; i < 32; ++i) CHECK(bytes[i] == 0);
    // Payload packed by hand: [+1,-1,-1,+1] -> bits 1001 LSB-first = 0x09.
    CHECK(bytes[32] == 0x09);
    // Trailer is the CRC of header + payload.
    const std::uint32_t crc = crc32_ieee(bytes.data(), 33);
    CHECK(bytes[33] == (crc & 0xFF));
    CHECK(bytes[34] == ((crc >> 8) & 0xFF));
    CHECK(bytes[35] == ((crc >> 16) & 0xFF));
    CHECK(bytes[36] == ((crc >> 24) & 0xFF));
}

TEST_CASE("roundtrip identity on seeded random segments") {
    std::mt19937_64 rng(0xC0FFEE);
    const fs::path path = temp_dir() / "roundtrip.liou";
    for (int iter = 0; iter < 1000; ++iter) {
        LambdaSegment seg;
        seg.start = 1 + rng() % 1'000'000;
        seg.prefix_base = static_cast<std::int64_t>(rng() % 20'001) - 10'000;
        const std::uint64_t len = 1 + rng() % 4096;
        seg.signs.resize(len);
        for (auto& s : seg.signs) s = (rng() & 1) ? 1 : -1;

        write_segment(seg, path);
        const LambdaSegment back = read_segment(path);
        REQUIRE(back.start == seg.start);
        REQUIRE(back.prefix_base == seg.prefix_base);
        REQUIRE(back.signs == seg.signs);
    }
}

TEST_CASE("write_segment rejects empty segments") {
    LambdaSegment empty;
    CHECK_THROWS_AS(write_segment(empty, temp_dir() / "empty.liou"), DomainError);
}

TEST_CASE("read_segment distinguishes error kinds") {
    const fs::path good = temp_dir() / "good.liou";
    write_segment(sample_segment(), good);
    const auto bytes = read_bytes(good);

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_segment(temp_dir() / "no_such.liou"), IoError);
    }
    SUBCASE("corrupted CRC byte") {
        auto bad = bytes;
        bad.back() ^= 0x01;
        const fs::path p = temp_dir() / "badcrc.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), CrcError);
    }
    SUBCASE("corrupted payload bit") {
        auto bad = bytes;
        bad[32] ^= 0x02;
        const fs::path p = temp_dir() / "badbit.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), CrcError);
    }
    SUBCASE("wrong magic") {
        auto bad = bytes;
        bad[0] = 'X';
        const fs::path p = temp_dir() / "badmagic.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), FormatError);
    }
    SUBCASE("wrong version") {
        auto bad = bytes;
        bad[4] = 9;
        const fs::path p = temp_dir() / "badver.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), FormatError);
    }
    SUBCASE("truncation") {
        auto bad = bytes;
        bad.resize(bad.size() - 3);
        const fs::path p = temp_dir() / "short.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), TruncationError);
    }
    SUBCASE("trailing bytes") {
        auto bad = bytes;
        bad.push_back(0);
        const fs::path p = temp_dir() / "long.liou";
        write_bytes(p, bad);
        CHECK_THROWS_AS(read_segment(p), FormatError);
    }
}

TEST_CASE("cache path naming") {
    CHECK(segment_cache_path("/tmp/cache", 4194305, 4194304).filename() ==
          "lambda_4194305_4194304.liou");
}

TEST_CASE("LambdaStore populates and reuses the cache") {
    const fs::path dir = temp_dir() / "cache";
    StoreConfig cfg;
    cfg.cache_dir = dir.string();
    cfg.chunk_len = 1 << 12;

    LambdaStore first(cfg);
    first.ensure(10'000);
    CHECK(fs::exists(segment_cache_path(dir, 1, 1 << 12)));
    CHECK(fs::exists(segment_cache_path(dir, (1 << 12) + 1, 1 << 12)));

    LambdaStore second(cfg);
    second.ensure(10'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n)
        REQUIRE(second.lambda(n) == first.lambda(n));
    CHECK(second.prefix(10'000) == first.prefix(10'000));

    // A corrupt cache file surfaces as a storage error, never a silent redo.
    const fs::path chunk = segment_cache_path(dir, 1, 1 << 12);
    auto bytes = read_bytes(chunk);
    bytes[40] ^= 0xFF;
    write_bytes(chunk, bytes);
    LambdaStore third(cfg);
    CHECK_THROWS_AS(third.ensure(100), CrcError);
}
