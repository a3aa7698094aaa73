#pragma once

#include <cstddef>
#include <functional>

namespace cubadv {

/// Runs body(0) ... body(batches - 1) on up to `threads` workers. Each index
/// runs exactly once; the caller owns per-batch output slots and reduces them
/// in index order, so the result never depends on `threads`.
void run_batches(std::size_t batches, unsigned threads,
                 const std::function<void(std::size_t)>& body);

/// Number of batches of size `batch_size` covering `samples` items.
constexpr std::size_t batch_count(std::size_t samples, std::size_t batch_size) {
  return (samples + batch_size - 1) / batch_size;
}

}  // namespace cubadv
