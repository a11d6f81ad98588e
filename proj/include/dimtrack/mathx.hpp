#pragma once

namespace dimtrack {

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal quantile (inverse CDF). Throws std::invalid_argument
/// unless 0 < p < 1. Accurate to ~1e-15 (rational approximation plus one
/// Halley refinement against the erfc-based CDF).
double normal_quantile(double p);

}  // namespace dimtrack
