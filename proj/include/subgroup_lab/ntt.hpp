#pragma once

#include <cstdint>
#include <vector>

namespace sglab {

// Exact cyclic convolution and correlation of nonnegative integer count
// vectors, used as the dense fast path behind the set correlations. The
// transform works in Z/qZ with q = 2^64 - 2^32 + 1; every entry of a count
// convolution is at most p^2 <= 10^14 < q, so the result is the true integer
// value, not an approximation.
namespace ntt {

// (a * b)(x) = sum_y a(y) b(x - y mod L), vectors of common length L.
std::vector<int64_t> cyclic_convolve(const std::vector<int64_t>& a,
                                     const std::vector<int64_t>& b);

// (a o b)(x) = sum_y a(y) b(y + x mod L).
std::vector<int64_t> cyclic_correlate(const std::vector<int64_t>& a,
                                      const std::vector<int64_t>& b);

// In-place radix-2 transform of size n (a power of two, n <= 2^32) over
// Z/qZ; exposed for tests.
void forward(std::vector<uint64_t>& data);
void inverse(std::vector<uint64_t>& data);

} // namespace ntt

} // namespace sglab
