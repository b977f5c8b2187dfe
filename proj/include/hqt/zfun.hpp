#ifndef HQT_ZFUN_HPP
#define HQT_ZFUN_HPP

#include <vector>

namespace hqt {

// Z(y) = 1/sqrt(1-4y^2) and its derivatives drive every normalization factor
// in the CV-state catalogue. The derivatives obey the exact three-term
// recurrence obtained from (1-4y^2) Z' = 4y Z:
//   (1-4y^2) Z^{(k+1)} = 4y(2k+1) Z^{(k)} + 4k^2 Z^{(k-1)}.

inline constexpr int kZMaxDerivative = 40;

double z_value(double y);

/// Z^{(0..kmax)} in one sweep. Throws std::domain_error for y outside
/// [0, 0.5) and std::invalid_argument for kmax > kZMaxDerivative.
std::vector<double> z_derivatives(double y, int kmax);

double z_derivative(double y, int k);

/// (y d/dy)^j (y Z^{(k)}(y)) for j <= 3, expanded into Stirling-weighted
/// combinations of Z^{(k)}..Z^{(k+j)}.
double euler_pow_y_z(double y, int k, int j);

}  // namespace hqt

#endif
