#include "hqt/qubit.hpp"

#include <cmath>
#include <stdexcept>

namespace hqt {

SingleRailQubit::SingleRailQubit(std::complex<double> a0_in, std::complex<double> a1_in)
    : a0(a0_in), a1(a1_in) {
    const double n2 = std::norm(a0) + std::norm(a1);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::invalid_argument("SingleRailQubit: amplitudes must have positive finite norm");
    if (std::abs(n2 - 1.0) > 1e-12) {
        const double inv = 1.0 / std::sqrt(n2);
        a0 *= inv;
        a1 *= inv;
    }
}

double SingleRailQubit::azimuthal_phase() const {
    return std::arg(a1) - std::arg(a0);
}

double fidelity_to_input(const SingleRailQubit& candidate, const SingleRailQubit& input) {
    return std::norm(std::conj(input.a0) * candidate.a0 + std::conj(input.a1) * candidate.a1);
}

}  // namespace hqt
