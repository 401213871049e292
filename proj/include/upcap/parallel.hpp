#pragma once

#include <cstdint>
#include <functional>

namespace upcap {

// Number of worker threads to use: `requested` if positive, otherwise the
// hardware concurrency (at least 1).
int resolve_workers(int requested);

// Invokes fn(chunk_index, begin, end) for every chunk of [0, total) split
// into fixed-size pieces. The chunk layout depends only on (total,
// chunk_size); the worker count affects scheduling, never the partition, so
// per-chunk RNG streams produce identical results at any parallelism.
// fn must be safe to call concurrently for distinct chunks.
void for_each_chunk(std::int64_t total, std::int64_t chunk_size, int workers,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

}  // namespace upcap
