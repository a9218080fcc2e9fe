#pragma once

// Grid-level parallelism. Every parallel kernel writes one result per index
// and reduces serially afterwards, so serial and parallel runs produce
// bitwise identical output.

#include <cstddef>
#include <exception>
#include <functional>
#include <span>

namespace kahler {

enum class Execution { serial, parallel };

/// Worker count for Execution::parallel; <= 0 restores the OpenMP default.
void set_thread_count(int n);
int thread_count();

/// Calls f(i) for i in [0, n). In parallel mode an exception thrown by any
/// call is rethrown after the loop; when several indices throw, the one with
/// the lowest index wins, so errors are as deterministic as results.
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& f);

/// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> xs);

} // namespace kahler
