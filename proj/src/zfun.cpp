#include "hqt/zfun.hpp"

#include <cmath>
#include <stdexcept>

namespace hqt {

double z_value(double y) {
    if (!(y >= 0.0) || y >= 0.5)
        throw std::domain_error("z_value: y must lie in [0, 0.5)");
    return 1.0 / std::sqrt(1.0 - 4.0 * y * y);
}

std::vector<double> z_derivatives(double y, int kmax) {
    if (!(y >= 0.0) || y >= 0.5)
        throw std::domain_error("z_derivatives: y must lie in [0, 0.5)");
    if (kmax < 0 || kmax > kZMaxDerivative)
        throw std::invalid_argument("z_derivatives: order outside [0, 40]");
    std::vector<double> z(static_cast<std::size_t>(kmax) + 2, 0.0);
    const double w = 1.0 - 4.0 * y * y;
    z[0] = 1.0 / std::sqrt(w);
    z[1] = 4.0 * y * z[0] * z[0] * z[0];
    for (int k = 1; k <= kmax; ++k)
        z[static_cast<std::size_t>(k) + 1] =
            (4.0 * y * (2 * k + 1) * z[static_cast<std::size_t>(k)] +
             4.0 * double(k) * double(k) * z[static_cast<std::size_t>(k) - 1]) / w;
    z.resize(static_cast<std::size_t>(kmax) + 1);
    return z;
}

double z_derivative(double y, int k) {
    return z_derivatives(y, k)[static_cast<std::size_t>(k)];
}

double euler_pow_y_z(double y, int k, int j) {
    if (j < 0 || j > 3)
        throw std::invalid_argument("euler_pow_y_z: j must lie in [0, 3]");
    // (y d/dy)^j (y F) = sum_i S2(j+1, i+1) y^{i+1} F^{(i)}; rows of the
    // Stirling-number triangle for j = 0..3
    static constexpr double kStirling[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 3, 1, 0}, {1, 7, 6, 1}};
    const auto z = z_derivatives(y, k + j);
    double acc = 0.0;
    double yp = y;
    for (int i = 0; i <= j; ++i) {
        acc += kStirling[j][i] * yp * z[static_cast<std::size_t>(k + i)];
        yp *= y;
    }
    return acc;
}

}  // namespace hqt
