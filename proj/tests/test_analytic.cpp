#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hqt/analytic.hpp"
#include "hqt/fock.hpp"
#include "hqt/zfun.hpp"
#include "oracles.hpp"

using namespace hqt;

namespace {

std::vector<CvStateSpec> catalogue_samples(std::mt19937_64& rng, int per_family) {
    std::uniform_real_distribution<double> uy(0.005, 0.22), ub(0.05, 4.0);
    std::vector<CvStateSpec> specs;
    auto push = [&](CvFamily fam, int k1, int k2, int added) {
        for (int i = 0; i < per_family; ++i) {
            CvStateSpec s;
            s.family = fam;
            s.k1 = k1;
            s.k2 = k2;
            s.added = added;
            s.y = uy(rng);
            s.b0 = ub(rng);
            s.b = ub(rng);
            specs.push_back(s);
        }
    };
    for (int k = 0; k <= 5; ++k) push(CvFamily::SubOnly, k, 0, 0);
    for (int k = 0; k <= 5; ++k) push(CvFamily::Add1, k, 0, 0);
    push(CvFamily::Base1, 1, 0, 0);
    push(CvFamily::Base1, 1, 0, 1);
    for (int k2 = 0; k2 <= 4; ++k2) push(CvFamily::Case00, 1, k2, 0);
    for (int k2 = 0; k2 <= 4; ++k2) push(CvFamily::Case01, 1, k2, 0);
    for (int k2 = 0; k2 <= 4; ++k2) push(CvFamily::Case10, 1, k2, 1);
    for (int k2 = 0; k2 <= 4; ++k2) push(CvFamily::Case11, 1, k2, 1);
    return specs;
}

}  // namespace

TEST_CASE("cv families: norm factor equals the brute-force squared sum") {
    std::mt19937_64 rng(2024);
    for (const auto& spec : catalogue_samples(rng, 3)) {
        const double g = cv_norm_factor(spec);
        const long double brute = oracles::squared_series_sum(spec);
        CHECK(std::abs(static_cast<double>(brute) - g) < 1e-10 * g);
    }
}

TEST_CASE("cv families: amplitudes are normalized and parity-pure") {
    std::mt19937_64 rng(77);
    for (const auto& spec : catalogue_samples(rng, 1)) {
        const bool odd = cv_state_is_odd(spec);
        long double norm = 0.0L;
        for (int n = 0; n <= 400; ++n) {
            const double a = cv_amplitude(spec, n);
            if ((n % 2 == 1) != odd) CHECK(a == 0.0);
            norm += static_cast<long double>(a) * a;
        }
        CHECK(std::abs(static_cast<double>(norm) - 1.0) < 1e-10);
    }
}

TEST_CASE("channel even state: lowest amplitudes carry 1/sqrt(G) and (1-2B0)") {
    const double y0 = 0.11, b0 = 1.4;
    CvStateSpec even{CvFamily::Base1, 1, 0, 1, y0, b0, 0.0};
    const double g = g1_even_norm(y0, b0);
    CHECK(cv_amplitude(even, 0) == doctest::Approx(1.0 / std::sqrt(g)).epsilon(1e-13));
    CHECK(cv_amplitude(even, 2) ==
          doctest::Approx(y0 * std::sqrt(2.0) * (1.0 - 2.0 * b0) / std::sqrt(g)).epsilon(1e-13));
}

TEST_CASE("channel odd norm factor: G = Z'(y0)/y0 tends to 4") {
    CvStateSpec odd{CvFamily::Base1, 1, 0, 0, 1e-6, 0.7, 0.0};
    CHECK(cv_norm_factor(odd) == doctest::Approx(4.0).epsilon(1e-9));
    odd.y = 0.2;
    CHECK(cv_norm_factor(odd) == doctest::Approx(z_derivative(0.2, 1) / 0.2).epsilon(1e-13));
}

TEST_CASE("degenerate limit: zero squeezing reduces the channel pair to |1> and |0>") {
    CvStateSpec odd{CvFamily::Base1, 1, 0, 0, 0.0, 1.3, 0.0};
    CvStateSpec even{CvFamily::Base1, 1, 0, 1, 0.0, 1.3, 0.0};
    CHECK(cv_amplitude(odd, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cv_amplitude(odd, 3) == 0.0);
    CHECK(cv_amplitude(even, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cv_amplitude(even, 2) == 0.0);
}

TEST_CASE("g1_even_norm guards its domain") {
    CvStateSpec sub{CvFamily::SubOnly, 1, 0, 0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(cv_norm_factor(sub), std::domain_error);  // Z'(0) = 0
}

TEST_CASE("herald amplitudes: fixed points of S-series") {
    CHECK(herald_amplitude(0, 0, 0.1, 2.0) == 1.0);
    CHECK(herald_amplitude(1, 0, 0.1, 2.0) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    // k = 1, no photon added: -(y1 B)^{1/2}
    CHECK(herald_amplitude(0, 1, 0.1, 2.0) == doctest::Approx(-std::sqrt(0.2)).epsilon(1e-14));
}

TEST_CASE("herald amplitudes: |c_k|^2 times the norm factor gives Fock heralding probabilities") {
    const double y_smsv = 0.29, b = 1.4;
    const double y1 = y_smsv / (1.0 + b);
    const double cosh_s = 1.0 / std::sqrt(1.0 - 4.0 * y_smsv * y_smsv);
    const int cutoff = 34;

    for (int added = 0; added <= 1; ++added) {
        FockState probe(1, cutoff);
        probe.at({added}) = 1.0;
        FockState joint = tensor(smsv_state(y_smsv, cutoff), probe);
        joint = apply_beam_splitter(joint, BeamSplitterSpec::from_b_param(b, 0, 1));
        for (int k = 0; k <= 4; ++k) {
            const double pf = project_pnr(joint, 1, k).probability;
            const double c = herald_amplitude(added, k, y1, b);
            double weight;
            if (added == 0) {
                weight = z_derivative(y1, k);
            } else if (k == 0) {
                const double z = z_value(y1);
                weight = z * z * z;
            } else {
                weight = cv_norm_factor(CvStateSpec{CvFamily::Add1, k, 0, 0, y1, 0.0, b});
            }
            const double pa = c * c * weight / cosh_s;
            CHECK(std::abs(pf - pa) < 1e-10 * std::max(pa, 1e-12));
        }
    }
}

TEST_CASE("distortion factor: specializations and signed linear relations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uy(0.01, 0.24), ub(0.05, 5.0);
    for (int trial = 0; trial < 24; ++trial) {
        const double y0 = uy(rng), b0 = ub(rng), b = ub(rng);
        const double pref = std::sqrt(z_derivative(y0, 1) / g1_even_norm(y0, b0));
        const double b01 = distortion_factor(0, 1, y0, b0, b);
        const double b10 = distortion_factor(1, 0, y0, b0, b);
        const double b20 = distortion_factor(2, 0, y0, b0, b);
        const double b02 = distortion_factor(0, 2, y0, b0, b);
        const double b11 = distortion_factor(1, 1, y0, b0, b);

        // closed forms as printed (minus signs restored where removed)
        CHECK(b01 == doctest::Approx(-pref / (2.0 * std::sqrt(y0 * b))).epsilon(1e-12));
        CHECK(b10 == doctest::Approx(pref * std::sqrt(b / y0) / 2.0).epsilon(1e-12));
        CHECK(b20 ==
              doctest::Approx(pref * std::sqrt(y0 / b) * (1.0 - 2.0 * b0) / 2.0).epsilon(1e-12));
        CHECK(b02 ==
              doctest::Approx(-pref * std::sqrt(y0 * b) * (1.0 - 2.0 * b0) / 2.0).epsilon(1e-12));
        CHECK(b11 ==
              doctest::Approx(-pref * std::sqrt(y0 * b) * (1.0 - 2.0 * b0) / (1.0 - b))
                  .epsilon(1e-12));

        // |b10| = B |b01|; the two-photon pair obeys |b02| = B |b20|
        CHECK(std::abs(b10) == doctest::Approx(b * std::abs(b01)).epsilon(1e-12));
        CHECK(std::abs(b02) == doctest::Approx(b * std::abs(b20)).epsilon(1e-12));
    }
}

TEST_CASE("distortion factor: b01 tends to -1/sqrt(B) for vanishing squeezing") {
    // series limit: Z'(y0)/G -> 4 y0, checked here at y0 = 1e-4
    CHECK(std::abs(distortion_factor(0, 1, 1e-4, 1.3, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(distortion_factor(0, 1, 1e-4, 1.3, 1.0) < 0.0);
}

TEST_CASE("distortion factor: error paths and the zero-squeezing limit") {
    CHECK_THROWS_AS(distortion_factor(0, 0, 0.1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(distortion_factor(1, 1, 0.1, 1.0, 1.0), SingularDistortion);
    CHECK_THROWS_AS(distortion_factor(2, 2, 0.1, 1.0, 1.0), SingularDistortion);
    CHECK_THROWS_AS(distortion_factor(0, 1, 0.5, 1.0, 1.0), std::domain_error);
    // y0 = 0 is the nonlocal-photon limit: b01 -> -1/sqrt(B), b10 -> sqrt(B),
    // even factors vanish
    CHECK(distortion_factor(0, 1, 0.0, 1.0, 2.0) ==
          doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(distortion_factor(1, 0, 0.0, 1.0, 2.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(distortion_factor(2, 0, 0.0, 1.0, 2.0) == 0.0);
}

TEST_CASE("outcome probabilities: distribution sums to one") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uy(0.02, 0.4), ub0(0.05, 5.0), ub(0.2, 5.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double y_smsv = uy(rng), b0 = ub0(rng), b = ub(rng);
        const double y0 = y_smsv / (1.0 + b0);
        const SingleRailQubit q = oracles::random_qubit(rng);
        double total = 0.0;
        for (int k1 = 0; k1 <= 17; ++k1)
            for (int k2 = 0; k1 + k2 <= 17; ++k2) {
                if (k1 > 0 && k2 > 0 && std::abs(1.0 - k1 * b / k2) < 1e-9) continue;
                total += outcome_probability(k1, k2, q, y0, b0, b);
            }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("outcome probabilities: failure term is |a0|^2 / (2 G)") {
    const double y0 = 0.13, b0 = 1.7;
    const SingleRailQubit q{{0.0, 0.0}, {1.0, 0.0}};  // a0 = 0
    CHECK(outcome_probability(0, 0, q, y0, b0, 1.0) == 0.0);
    const SingleRailQubit q2{{0.6, 0.0}, {0.0, 0.8}};
    CHECK(outcome_probability(0, 0, q2, y0, b0, 1.0) ==
          doctest::Approx(0.36 / (2.0 * g1_even_norm(y0, b0))).epsilon(1e-13));
}

TEST_CASE("unit-distortion solves: round trip and reciprocity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uy(0.01, 0.24), ub(0.05, 5.0);
    for (int trial = 0; trial < 24; ++trial) {
        const double y0 = uy(rng), b0 = ub(rng);
        const double b01s = solve_unit_distortion_b(0, 1, y0, b0);
        const double b10s = solve_unit_distortion_b(1, 0, y0, b0);
        CHECK(b01s * b10s == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(distortion_factor(0, 1, y0, b0, b01s)) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(distortion_factor(1, 0, y0, b0, b10s)) ==
              doctest::Approx(1.0).epsilon(1e-10));

        if (std::abs(1.0 - 2.0 * b0) > 1e-3) {
            const double b20s = solve_unit_distortion_b(2, 0, y0, b0);
            const double b02s = solve_unit_distortion_b(0, 2, y0, b0);
            CHECK(b20s * b02s == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(distortion_factor(2, 0, y0, b0, b20s)) ==
                  doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::abs(distortion_factor(0, 2, y0, b0, b02s)) ==
                  doctest::Approx(1.0).epsilon(1e-10));

            const double b11s = solve_unit_distortion_b(1, 1, y0, b0);
            CHECK(b11s > 1.0);
            CHECK(std::abs(distortion_factor(1, 1, y0, b0, b11s)) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("unit-distortion solves: infeasible at B0 = 1/2") {
    CHECK_THROWS_AS(solve_unit_distortion_b(1, 1, 0.1, 0.5), InfeasibleSolve);
    CHECK_THROWS_AS(solve_unit_distortion_b(2, 0, 0.1, 0.5), InfeasibleSolve);
}

TEST_CASE("perfect outcome probabilities") {
    const double y0 = 0.08, b0 = 1.2;
    // P20 = P02 when both splitters sit at the same B (forces B = 1)
    const double core = std::pow(1.0 - 4.0 * y0 * y0, 1.5);
    CHECK(perfect_outcome_probability(2, 0, y0, 1.0) ==
          doctest::Approx(perfect_outcome_probability(0, 2, y0, 1.0)).epsilon(1e-14));
    CHECK(perfect_outcome_probability(2, 0, y0, 1.0) == doctest::Approx(core / 4.0).epsilon(1e-13));

    // vanishing squeezing at the balanced splitter: a quarter each
    CHECK(perfect_outcome_probability(0, 1, 1e-9, 1.0) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(perfect_outcome_probability(1, 0, 1e-9, 1.0) == doctest::Approx(0.25).epsilon(1e-9));

    // P11 approaches one half for extreme splitters at tiny squeezing
    CHECK(perfect_outcome_probability(1, 1, 1e-9, 1e9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(perfect_outcome_probability(1, 1, 1e-9, 1e-9) == doctest::Approx(0.5).epsilon(1e-6));

    // agreement with the qubit-independent distribution at the solved B
    const double b01s = solve_unit_distortion_b(0, 1, y0, b0);
    CHECK(perfect_outcome_probability(0, 1, y0, b01s) ==
          doctest::Approx(outcome_probability_unit_norm(0, 1, y0, b0, b01s)).epsilon(1e-12));
    CHECK(p11_balanced_failure(0.36, y0, b0) ==
          doctest::Approx(0.36 * y0 * y0 * (1.0 - 2.0 * b0) * (1.0 - 2.0 * b0) /
                          (2.0 * g1_even_norm(y0, b0)))
              .epsilon(1e-13));
}

TEST_CASE("squeeze parameter bookkeeping round trips") {
    const SqueezeParams p = SqueezeParams::from_amplitude(1.0);
    CHECK(p.s_db == doctest::Approx(8.685889638065035).epsilon(1e-15));
    const SqueezeParams q = SqueezeParams::from_db(p.s_db);
    CHECK(q.s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.y_smsv == doctest::Approx(std::tanh(1.0) / 2.0).epsilon(1e-14));
    CHECK(q.mean_photons == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));

    const ReducedParams r = ReducedParams::make(0.3, 2.0, 1.5);
    CHECK(r.y0 == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.y == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(r.y1 == r.y0);
    CHECK(r.y2 == r.y);
}
