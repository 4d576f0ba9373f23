#pragma once

#include <cstddef>
#include <functional>

namespace divlab {

/// Runs fn(first, last, block_index) over [0, n) split into fixed blocks.
///
/// Blocks are assigned to workers dynamically, but block boundaries depend
/// only on (n, block_size), so callers that write per-block slots and reduce
/// in block order get results independent of the thread count.
void parallel_blocks(std::size_t n, std::size_t block_size, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of blocks parallel_blocks will use.
std::size_t block_count(std::size_t n, std::size_t block_size);

/// Resolves a requested thread count (0 = hardware concurrency).
int resolve_threads(int requested);

}  // namespace divlab
