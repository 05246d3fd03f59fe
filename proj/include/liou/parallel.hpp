#pragma once

#include <cstdint>
#include <functional>

namespace liou {

// Number of fixed-size blocks covering [0, n).
inline std::size_t block_count(std::uint64_t n, std::uint64_t block_size) {
    return block_size == 0 ? 0 : static_cast<std::size_t>((n + block_size - 1) / block_size);
}

// Runs fn(block_index, begin, end) for every block of [0, n).
//
// Block boundaries depend only on n and block_size, never on the thread
// count, so callers that store one partial result per block and reduce in
// block order get bit-identical output for any `threads`.
void parallel_blocks(std::uint64_t n, std::uint64_t block_size, unsigned threads,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace liou
