#include "hqt/analytic.hpp"

#include <cmath>
#include <string>

#include "hqt/roots.hpp"
#include "hqt/zfun.hpp"

namespace hqt {

namespace {

constexpr double kLog10E = 0.43429448190325182765;

void check_y_range(double y, const char* who) {
    if (!(y >= 0.0) || y >= 0.5)
        throw std::domain_error(std::string(who) + ": reduced squeezing parameter outside [0, 0.5)");
}

void check_nonneg(double v, const char* who) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(who) + ": negative or non-finite argument");
}

double factorial_d(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

SqueezeParams SqueezeParams::from_amplitude(double s) {
    check_nonneg(s, "SqueezeParams");
    SqueezeParams p;
    p.s = s;
    p.s_db = 20.0 * s * kLog10E;
    p.y_smsv = 0.5 * std::tanh(s);
    p.mean_photons = std::sinh(s) * std::sinh(s);
    return p;
}

SqueezeParams SqueezeParams::from_db(double s_db) {
    check_nonneg(s_db, "SqueezeParams");
    return from_amplitude(s_db / (20.0 * kLog10E));
}

SqueezeParams SqueezeParams::from_y(double y) {
    check_y_range(y, "SqueezeParams");
    return from_amplitude(std::atanh(2.0 * y));
}

ReducedParams ReducedParams::make(double y_smsv, double b0, double b) {
    check_y_range(y_smsv, "ReducedParams");
    check_nonneg(b0, "ReducedParams");
    check_nonneg(b, "ReducedParams");
    ReducedParams r;
    r.y1 = y_smsv / (1.0 + b0);
    r.y2 = r.y1 / (1.0 + b);
    r.y0 = r.y1;
    r.y = r.y2;
    return r;
}

bool cv_state_is_odd(const CvStateSpec& spec) {
    switch (spec.family) {
        case CvFamily::SubOnly: return spec.k1 % 2 == 1;
        case CvFamily::Add1:    return spec.k1 % 2 == 0;
        case CvFamily::Base1:   return spec.added == 0;
        case CvFamily::Case00:  return spec.k2 % 2 == 0;
        case CvFamily::Case01:  return spec.k2 % 2 == 1;
        case CvFamily::Case10:  return spec.k2 % 2 == 1;
        case CvFamily::Case11:  return spec.k2 % 2 == 0;
    }
    throw std::invalid_argument("cv_state_is_odd: bad family");
}

namespace {

// Series shape shared by the whole catalogue:
//   base(n) = y^n (2(n+m))! / ((n+m)! sqrt((2n+delta)!)),
// optionally the sqrt((2n+1)!)/n! shape of the photon-added k = 0 members
// (use_add0_shape), times an internal polynomial in n, times sqrt(y) for the
// odd members whose catalogue normalization folds it in.
struct SeriesShape {
    int m = 0;
    int delta = 0;
    bool use_add0_shape = false;
    bool half_power_of_y = false;
};

void validate_spec(const CvStateSpec& spec) {
    if (spec.k1 < 0 || spec.k2 < 0)
        throw std::invalid_argument("CvStateSpec: negative subtraction count");
    check_y_range(spec.y, "CvStateSpec");
    switch (spec.family) {
        case CvFamily::SubOnly:
            break;
        case CvFamily::Add1:
            check_nonneg(spec.b, "CvStateSpec(add1)");
            break;
        case CvFamily::Base1:
            if (spec.added != 0 && spec.added != 1)
                throw std::invalid_argument("CvStateSpec(base1): added must be 0 or 1");
            check_nonneg(spec.b0, "CvStateSpec(base1)");
            break;
        case CvFamily::Case00:
            break;
        case CvFamily::Case01:
            check_nonneg(spec.b, "CvStateSpec(case01)");
            break;
        case CvFamily::Case10:
            check_nonneg(spec.b0, "CvStateSpec(case10)");
            break;
        case CvFamily::Case11:
            check_nonneg(spec.b0, "CvStateSpec(case11)");
            check_nonneg(spec.b, "CvStateSpec(case11)");
            break;
    }
}

SeriesShape series_shape(const CvStateSpec& spec) {
    SeriesShape sh;
    switch (spec.family) {
        case CvFamily::SubOnly: {
            const int k = spec.k1;
            if (k % 2 == 0) { sh.m = k / 2; sh.delta = 0; }
            else { sh.m = (k + 1) / 2; sh.delta = 1; sh.half_power_of_y = true; }
            return sh;
        }
        case CvFamily::Add1: {
            const int k = spec.k1;
            if (k == 0) { sh.use_add0_shape = true; return sh; }
            if (k % 2 == 0) { sh.m = k / 2; sh.delta = 1; sh.half_power_of_y = true; }
            else { sh.m = (k - 1) / 2; sh.delta = 0; }
            return sh;
        }
        case CvFamily::Base1:
            if (spec.added == 0) { sh.m = 1; sh.delta = 1; }
            else { sh.m = 0; sh.delta = 0; }
            return sh;
        case CvFamily::Case00: {
            const int k = spec.k2 + 1;
            if (k % 2 == 0) { sh.m = k / 2; sh.delta = 0; }
            else { sh.m = (k + 1) / 2; sh.delta = 1; sh.half_power_of_y = true; }
            return sh;
        }
        case CvFamily::Case01:
            if (spec.k2 == 0) { sh.m = 0; sh.delta = 0; }
            else if (spec.k2 % 2 == 0) { sh.m = spec.k2 / 2; sh.delta = 0; }
            else { sh.m = (spec.k2 + 1) / 2; sh.delta = 1; sh.half_power_of_y = true; }
            return sh;
        case CvFamily::Case10:
            if (spec.k2 % 2 == 0) { sh.m = spec.k2 / 2; sh.delta = 0; }
            else { sh.m = (spec.k2 + 1) / 2; sh.delta = 1; sh.half_power_of_y = true; }
            return sh;
        case CvFamily::Case11:
            if (spec.k2 == 0) { sh.use_add0_shape = true; sh.half_power_of_y = true; return sh; }
            if (spec.k2 % 2 == 0) { sh.m = spec.k2 / 2; sh.delta = 1; sh.half_power_of_y = true; }
            else { sh.m = (spec.k2 - 1) / 2; sh.delta = 0; }
            return sh;
    }
    throw std::invalid_argument("series_shape: bad family");
}

double internal_factor(const CvStateSpec& spec, int n) {
    switch (spec.family) {
        case CvFamily::SubOnly:
        case CvFamily::Case00:
            return 1.0;
        case CvFamily::Add1: {
            const int k = spec.k1;
            if (k == 0) return 1.0;
            if (k % 2 == 0) return 1.0 - (2.0 * n + 1.0) * spec.b / k;
            return 1.0 - 2.0 * n * spec.b / k;
        }
        case CvFamily::Base1:
            return spec.added == 0 ? 1.0 : 1.0 - 2.0 * n * spec.b0;
        case CvFamily::Case01: {
            if (spec.k2 == 0) return 2.0 * n;
            if (spec.k2 % 2 == 0) return 1.0 - 2.0 * n * spec.b / spec.k2;
            return 1.0 - (2.0 * n + 1.0) * spec.b / spec.k2;
        }
        case CvFamily::Case10: {
            if (spec.k2 % 2 == 0) return 1.0 - (spec.k2 + 2.0 * n) * spec.b0;
            return 1.0 - (spec.k2 + 1.0 + 2.0 * n) * spec.b0;
        }
        case CvFamily::Case11: {
            if (spec.k2 == 0) return 1.0 + spec.b0 - (2.0 * n + 1.0) * spec.b0;
            const double a0 = 1.0 - (spec.k2 - 1.0) * spec.b0;
            const double mu = (spec.k2 % 2 == 0) ? 2.0 * n + 1.0 : 2.0 * n;
            return (a0 - spec.b0 * mu) * (1.0 - spec.b * mu / spec.k2);
        }
    }
    throw std::invalid_argument("internal_factor: bad family");
}

}  // namespace

double cv_bare_coefficient(const CvStateSpec& spec, int n) {
    validate_spec(spec);
    if (n < 0) throw std::invalid_argument("cv_bare_coefficient: negative index");
    const SeriesShape sh = series_shape(spec);
    double base;
    if (sh.use_add0_shape) {
        base = 1.0;  // sqrt(1!)/0!
        for (int i = 0; i < n; ++i)
            base *= spec.y * std::sqrt(double(2 * i + 2) * double(2 * i + 3)) / double(i + 1);
    } else {
        base = factorial_d(2 * sh.m) / factorial_d(sh.m);
        for (int i = 0; i < n; ++i) {
            base *= spec.y * double(2 * i + 2 * sh.m + 1) * double(2 * i + 2 * sh.m + 2) /
                    (double(i + sh.m + 1) *
                     std::sqrt(double(2 * i + sh.delta + 1) * double(2 * i + sh.delta + 2)));
        }
    }
    if (sh.half_power_of_y) base *= std::sqrt(spec.y);
    return base * internal_factor(spec, n);
}

double cv_norm_factor(const CvStateSpec& spec) {
    validate_spec(spec);
    const double y = spec.y;
    double g = 0.0;
    switch (spec.family) {
        case CvFamily::SubOnly:
            g = z_derivative(y, spec.k1);
            break;
        case CvFamily::Add1: {
            const int k = spec.k1;
            if (k == 0) {
                const double z = z_value(y);
                g = z * z * z;
            } else {
                const auto zd = z_derivatives(y, k + 1);
                const double bk = spec.b / k;
                g = zd[static_cast<std::size_t>(k) - 1] - 2.0 * bk * y * zd[static_cast<std::size_t>(k)] +
                    bk * bk * euler_pow_y_z(y, k, 1);
            }
            break;
        }
        case CvFamily::Base1:
            if (spec.added == 0) {
                // Z'(y)/y, with the y -> 0 limit 4 (the nonlocal-photon end)
                g = (y > 0.0) ? z_derivative(y, 1) / y
                              : 4.0;
            } else {
                g = g1_even_norm(y, spec.b0);
            }
            break;
        case CvFamily::Case00:
            g = z_derivative(y, spec.k2 + 1);
            break;
        case CvFamily::Case01: {
            const int k2 = spec.k2;
            if (k2 == 0) {
                g = euler_pow_y_z(y, 1, 1);
            } else {
                const auto zd = z_derivatives(y, k2 + 1);
                const double bk = spec.b / k2;
                g = zd[static_cast<std::size_t>(k2)] - 2.0 * bk * y * zd[static_cast<std::size_t>(k2) + 1] +
                    bk * bk * euler_pow_y_z(y, k2 + 1, 1);
            }
            break;
        }
        case CvFamily::Case10: {
            const int k2 = spec.k2;
            const double alpha = 1.0 - k2 * spec.b0;
            const auto zd = z_derivatives(y, k2 + 1);
            g = alpha * alpha * zd[static_cast<std::size_t>(k2)] -
                2.0 * alpha * spec.b0 * y * zd[static_cast<std::size_t>(k2) + 1] +
                spec.b0 * spec.b0 * euler_pow_y_z(y, k2 + 1, 1);
            break;
        }
        case CvFamily::Case11: {
            const int k2 = spec.k2;
            if (k2 == 0) {
                const double u = 1.0 + spec.b0;
                g = u * u * euler_pow_y_z(y, 0, 1) - 2.0 * u * spec.b0 * euler_pow_y_z(y, 0, 2) +
                    spec.b0 * spec.b0 * euler_pow_y_z(y, 0, 3);
            } else {
                // internal amplitude (a0 - B0 mu)(1 - B mu/k2) expanded in mu
                const double a0 = 1.0 - (k2 - 1.0) * spec.b0;
                const double a1 = -(a0 * spec.b / k2 + spec.b0);
                const double a2 = spec.b0 * spec.b / k2;
                const double A[5] = {a0 * a0, 2.0 * a0 * a1, a1 * a1 + 2.0 * a0 * a2,
                                     2.0 * a1 * a2, a2 * a2};
                g = A[0] * z_derivative(y, k2 - 1);
                for (int l = 1; l <= 4; ++l) g += A[l] * euler_pow_y_z(y, k2, l - 1);
            }
            break;
        }
    }
    if (!(g > 0.0) || !std::isfinite(g))
        throw std::domain_error("cv_norm_factor: non-positive normalization (invalid parameter region)");
    return g;
}

double cv_amplitude(const CvStateSpec& spec, int n_photon) {
    if (n_photon < 0) throw std::invalid_argument("cv_amplitude: negative photon number");
    const bool odd = cv_state_is_odd(spec);
    if ((n_photon % 2 == 1) != odd) return 0.0;
    const int n = (n_photon - (odd ? 1 : 0)) / 2;
    return cv_bare_coefficient(spec, n) / std::sqrt(cv_norm_factor(spec));
}

double herald_amplitude(int added, int k, double y1, double b) {
    check_y_range(y1, "herald_amplitude");
    check_nonneg(b, "herald_amplitude");
    if (k < 0) throw std::invalid_argument("herald_amplitude: negative k");
    if (added == 0) {
        const double mag = std::pow(y1 * b, 0.5 * k) / std::sqrt(factorial_d(k));
        return (k % 2 == 0) ? mag : -mag;
    }
    if (added != 1) throw std::invalid_argument("herald_amplitude: added must be 0 or 1");
    const double pref = 1.0 / std::sqrt(1.0 + b);
    if (k == 0) return pref * std::sqrt(b);
    const double mag = std::pow(y1 * b, 0.5 * (k - 1)) * k / std::sqrt(factorial_d(k));
    return (k % 2 == 0) ? -pref * mag : pref * mag;
}

double g1_even_norm(double y0, double b0) {
    check_y_range(y0, "g1_even_norm");
    check_nonneg(b0, "g1_even_norm");
    const auto zd = z_derivatives(y0, 2);
    return zd[0] - 2.0 * b0 * y0 * zd[1] + b0 * b0 * (y0 * zd[1] + y0 * y0 * zd[2]);
}

namespace {

// Z'(y0)/y0, continuous through the zero-squeezing limit (value 4).
double zprime_over_y(double y0) {
    return (y0 > 0.0) ? z_derivative(y0, 1) / y0 : 4.0;
}

}  // namespace

double distortion_factor(int k1, int k2, double y0, double b0, double b) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("distortion_factor: negative counts");
    if (k1 == 0 && k2 == 0)
        throw std::invalid_argument("distortion_factor: (0,0) is the failure outcome");
    check_y_range(y0, "distortion_factor");
    check_nonneg(b0, "distortion_factor");
    if (!(b > 0.0)) throw std::invalid_argument("distortion_factor: B must be positive");

    // sqrt(Z'/y0) keeps the formulas finite down to y0 = 0
    const double q = std::sqrt(zprime_over_y(y0) / g1_even_norm(y0, b0));
    const int s = k1 + k2;
    if (s % 2 == 1) {
        return -q * (1.0 - (s - 1.0) * b0) * (k2 - k1 * b) / (2.0 * s * std::sqrt(b));
    }
    const double denom = k2 - k1 * b;
    if (k2 > 0 && std::abs(1.0 - k1 * b / k2) < 1e-9)
        throw SingularDistortion("distortion_factor: pole at k2 = k1*B");
    return -q * y0 * std::sqrt(b) * (1.0 - s * b0) / denom;
}

double outcome_probability(int k1, int k2, const SingleRailQubit& qubit,
                           double y0, double b0, double b) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("outcome_probability: negative counts");
    check_y_range(y0, "outcome_probability");
    check_nonneg(b0, "outcome_probability");
    if (!(b > 0.0)) throw std::invalid_argument("outcome_probability: B must be positive");

    const double p0 = std::norm(qubit.a0);
    const double q1 = std::norm(qubit.a1);
    const int s = k1 + k2;
    const double g = g1_even_norm(y0, b0);

    if (s == 0) return p0 / (2.0 * g);

    // dividing Z' by one power of y0 keeps everything finite at y0 = 0,
    // where only the single-photon outcomes survive
    const double q2 = zprime_over_y(y0);
    if (s % 2 == 1) {
        const double bb = distortion_factor(k1, k2, y0, b0, b);
        const double n = p0 + q1 * bb * bb;
        const double pref = factorial_d(s + 1) / factorial_d((s + 1) / 2);
        return n * std::pow(y0, s - 1) * std::pow(1.0 + b, -s) * std::pow(b, k2) /
               (2.0 * q2 * factorial_d(k1) * factorial_d(k2)) * pref * pref;
    }
    // even case, pole-free split: the |a0|^2 part absorbs b^2 (k2-k1 B)^2
    // as y0^2 B (Z'/y0 / G)(1-sB0)^2
    const double pref = factorial_d(s) / factorial_d(s / 2);
    double base = std::pow(y0, s - 2) * std::pow(1.0 + b, -s) * pref * pref /
                  (2.0 * q2 * factorial_d(k1) * factorial_d(k2));
    base *= (k2 >= 1) ? std::pow(b, k2 - 1) : 1.0;
    const double c_a1 = (k2 == 0) ? double(k1) * k1 * b : (k2 - k1 * b) * (k2 - k1 * b);
    double c_a0 = y0 * y0 * b * (q2 / g) * (1.0 - s * b0) * (1.0 - s * b0);
    if (k2 == 0) c_a0 /= b;
    return base * (c_a1 * q1 + c_a0 * p0);
}

double outcome_probability_unit_norm(int k1, int k2, double y0, double b0, double b) {
    // N = 1 is realized by the basis qubit whose amplitude is not multiplied
    // by the distortion factor
    if ((k1 + k2) % 2 == 1)
        return outcome_probability(k1, k2, SingleRailQubit{1.0, 0.0}, y0, b0, b);
    return outcome_probability(k1, k2, SingleRailQubit{0.0, 1.0}, y0, b0, b);
}

double solve_unit_distortion_b(int k1, int k2, double y0, double b0) {
    check_y_range(y0, "solve_unit_distortion_b");
    check_nonneg(b0, "solve_unit_distortion_b");
    const double q2 = zprime_over_y(y0);  // Z'/y0, finite at y0 = 0
    const double g = g1_even_norm(y0, b0);
    const double w = 1.0 - 2.0 * b0;

    double sol = 0.0;
    if (k1 == 0 && k2 == 1) sol = q2 / (4.0 * g);
    else if (k1 == 1 && k2 == 0) sol = 4.0 * g / q2;
    else if (k1 == 2 && k2 == 0) sol = y0 * y0 * w * w * q2 / (4.0 * g);
    else if (k1 == 0 && k2 == 2) sol = 4.0 * g / (y0 * y0 * w * w * q2);
    else if (k1 == 1 && k2 == 1) {
        // |b11(B)| = 1 with b11 = -sqrt(y0 B) c / (1 - B); two reciprocal
        // roots exist; return the one above 1 by bracketed search.
        const double c2 = y0 * y0 * (q2 / g) * w * w;
        if (!(c2 > 0.0))
            throw InfeasibleSolve("solve_unit_distortion_b: (1,1) has no root");
        auto f = [&](double bb) {
            const double d = 1.0 - bb;
            return c2 * bb - d * d;  // zero exactly at |b11| = 1
        };
        double root = 0.0;
        if (!brent_log_bracket(f, 1.0 + 1e-12, 1e8, &root))
            throw InfeasibleSolve("solve_unit_distortion_b: no (1,1) root in bracket");
        return root;
    } else {
        throw std::invalid_argument("solve_unit_distortion_b: outcome not in {01,10,20,02,11}");
    }
    if (!(sol > 0.0) || !std::isfinite(sol))
        throw InfeasibleSolve("solve_unit_distortion_b: no admissible beam splitter");
    return sol;
}

double perfect_outcome_probability(int k1, int k2, double y0, double b_solved) {
    check_y_range(y0, "perfect_outcome_probability");
    if (!(b_solved > 0.0))
        throw std::invalid_argument("perfect_outcome_probability: B must be positive");
    const double core = std::pow(1.0 - 4.0 * y0 * y0, 1.5);
    const double b = b_solved;
    if (k1 == 0 && k2 == 1) return b * core / (2.0 * (1.0 + b));
    if (k1 == 1 && k2 == 0) return core / (2.0 * (1.0 + b));
    if ((k1 == 2 && k2 == 0) || (k1 == 0 && k2 == 2))
        return b * core / ((1.0 + b) * (1.0 + b));
    if (k1 == 1 && k2 == 1)
        return (1.0 - b) * (1.0 - b) * core / (2.0 * (1.0 + b) * (1.0 + b));
    throw std::invalid_argument("perfect_outcome_probability: outcome not in {01,10,20,02,11}");
}

double p11_balanced_failure(double a0_sq, double y0, double b0) {
    if (!(a0_sq >= 0.0) || a0_sq > 1.0 + 1e-12)
        throw std::invalid_argument("p11_balanced_failure: |a0|^2 outside [0, 1]");
    check_y_range(y0, "p11_balanced_failure");
    const double w = 1.0 - 2.0 * b0;
    return a0_sq * y0 * y0 * w * w / (2.0 * g1_even_norm(y0, b0));
}

double b01_parameter(double y0, double b0) {
    if (!(y0 > 0.0) || y0 >= 0.5)
        throw std::domain_error("b01_parameter: y0 must lie in (0, 0.5)");
    return z_derivative(y0, 1) / (4.0 * y0 * g1_even_norm(y0, b0));
}

}  // namespace hqt
