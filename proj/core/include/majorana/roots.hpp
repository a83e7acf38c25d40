#pragma once

#include <complex>
#include <vector>

namespace majorana {

// All roots of sum_k coeffs[k] z^k (coefficients in ascending degree, nonzero
// leading coefficient). Simultaneous Aberth-Ehrlich iteration followed by a
// Newton polish; throws numeric_failure with the worst backward error if the
// iteration does not converge.
std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace majorana
