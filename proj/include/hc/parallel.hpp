#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

namespace hc {

/// Parses an HC_THREADS value. Returns nullopt unless it is a positive integer.
std::optional<unsigned> parse_thread_count(std::string_view text);

/// Worker cap: HC_THREADS when set to a valid value, otherwise the hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for every i in [0, n) on up to thread_count() threads.
/// Results must be written to per-index slots so the outcome does not depend
/// on scheduling. If any calls throw, the exception from the smallest index
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hc
