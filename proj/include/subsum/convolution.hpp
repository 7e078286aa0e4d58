#pragma once

#include <cstdint>
#include <vector>

#include "subsum/core.hpp"

namespace subsum {

// Boolean convolution: out[s] = OR_{i+j=s} (a[i] AND b[j]).
// Result length is a.size() + b.size() - 1 (or empty if an input is empty).
std::vector<std::uint8_t> bool_convolve(const std::vector<std::uint8_t>& a,
                                        const std::vector<std::uint8_t>& b);

// Exact integer product of two polynomials with nonnegative coefficients.
// Throws OverflowError if a coefficient of the product could exceed 2^64-1.
std::vector<u64> poly_multiply_counts(const std::vector<u64>& f, const std::vector<u64>& g);

}  // namespace subsum
