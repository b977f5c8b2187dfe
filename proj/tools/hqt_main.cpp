// Command-line front end: channel inspection, single-outcome teleportation,
// unit-distortion surface sweeps, the B = 1 operating line, the two-photon
// distortion curve, recovery optimization, and dual-path verification.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqt/channel.hpp"
#include "hqt/recovery.hpp"
#include "hqt/sweep.hpp"
#include "hqt/teleport.hpp"
#include "hqt/zfun.hpp"

namespace {

constexpr int kExitNumeric = 2;

hqt::SingleRailQubit parse_qubit(const std::vector<double>& parts) {
    if (parts.size() == 2)
        return hqt::SingleRailQubit{parts[0], parts[1]};
    if (parts.size() == 4)
        return hqt::SingleRailQubit{{parts[0], parts[1]}, {parts[2], parts[3]}};
    throw CLI::ValidationError("--qubit needs a0,a1 (real) or a0re,a0im,a1re,a1im");
}

void write_or_print(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

int cmd_channel_info(double s_db, double b0, int cutoff) {
    const hqt::ChannelParams params = hqt::make_params(s_db, b0);
    std::printf("s_db            %.12g\n", params.squeeze.s_db);
    std::printf("s               %.12g\n", params.squeeze.s);
    std::printf("y_smsv          %.12g\n", params.squeeze.y_smsv);
    std::printf("mean_photons    %.12g\n", params.squeeze.mean_photons);
    std::printf("b0              %.12g\n", params.b0);
    std::printf("y0              %.12g\n", params.reduced.y0);
    std::printf("g1_even         %.12g\n", hqt::g1_even_norm(params.reduced.y0, params.b0));
    std::printf("b01_parameter   %.12g\n", hqt::b01_parameter(params.reduced.y0, params.b0));

    const hqt::HybridChannel analytic = hqt::build_channel_analytic(params, cutoff);
    const double r_anc = hqt::balanced_ancilla_weight(params);
    const auto prepared = hqt::prepare_channel_simulated(params, r_anc, cutoff);
    std::printf("r_ancilla       %.12g\n", r_anc);
    std::printf("herald_prob     %.12g\n", prepared.herald_probability);
    std::printf("overlap         %.12g\n",
                std::abs(hqt::overlap(analytic.state, prepared.channel.state)));
    std::printf("tail            %.3g\n", analytic.state.truncation_tail());
    return 0;
}

int cmd_teleport(double s_db, double b0, double b, const std::vector<double>& qubit_parts,
                 int k1, int k2, int cutoff) {
    const hqt::SingleRailQubit qubit = parse_qubit(qubit_parts);
    const hqt::ChannelParams params = hqt::make_params(s_db, b0);
    const hqt::HybridChannel channel = hqt::build_channel_analytic(params, cutoff);
    const hqt::TeleportResult res = hqt::teleport_outcome(channel, qubit, b, k1, k2);

    std::printf("outcome         (%d,%d) %s\n", res.k1, res.k2,
                res.parity == hqt::Parity::Odd ? "odd" : "even");
    std::printf("probability     %.12g\n", res.probability);
    std::printf("probability_eq  %.12g\n",
                hqt::outcome_probability(k1, k2, qubit, params.reduced.y0, b0, b));
    switch (res.classification) {
        case hqt::OutcomeClass::Failure00:
            std::printf("class           failure (00: Bob holds a single photon)\n");
            return 0;
        case hqt::OutcomeClass::Failure11Balanced:
            std::printf("class           failure (11 at B=1: destructive interference)\n");
            return 0;
        case hqt::OutcomeClass::PoleDegenerate:
            std::printf("class           failure (pole k2 = k1 B)\n");
            return 0;
        case hqt::OutcomeClass::Perfect:
            std::printf("class           perfect\n");
            break;
        case hqt::OutcomeClass::Distorted:
            std::printf("class           distorted\n");
            break;
    }
    std::printf("distortion_b    %.12g\n", res.distortion_b);
    std::printf("normalization_n %.12g\n", res.normalization_n);
    if (res.bob_defined) {
        std::printf("bob_state       (%.10g%+.10gi, %.10g%+.10gi)\n", res.bob_state.a0.real(),
                    res.bob_state.a0.imag(), res.bob_state.a1.real(), res.bob_state.a1.imag());
        const hqt::CorrectedOutput corr = hqt::classify_and_correct(res);
        std::string gates;
        for (hqt::Gate g : corr.gates)
            gates += (g == hqt::Gate::I ? "I" : g == hqt::Gate::X ? "X" : "Z");
        std::printf("correction      %s\n", gates.c_str());
        std::printf("fidelity        %.12g\n", hqt::fidelity_to_input(corr.state, qubit));
    }
    return 0;
}

int cmd_verify(int tuples, int cutoff, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(0.3, 8.0), ub0(0.1, 5.0), ub(0.25, 4.0);
    std::normal_distribution<double> gauss;
    double worst_p = 0.0, worst_state = 0.0;
    int checked = 0;
    for (int trial = 0; trial < tuples; ++trial) {
        const double s_db = us(rng), b0 = ub0(rng), b = ub(rng);
        const hqt::SingleRailQubit qubit{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
        const hqt::ChannelParams params = hqt::make_params(s_db, b0);
        const hqt::HybridChannel channel = hqt::build_channel_analytic(params, cutoff);
        for (int k1 = 0; k1 <= 4; ++k1) {
            for (int k2 = 0; k1 + k2 <= 4; ++k2) {
                if (k2 > 0 && std::abs(1.0 - k1 * b / k2) < 1e-6) continue;
                const auto res = hqt::teleport_outcome(channel, qubit, b, k1, k2);
                const double pa =
                    hqt::outcome_probability(k1, k2, qubit, params.reduced.y0, b0, b);
                worst_p = std::max(worst_p,
                                   std::abs(res.probability - pa) / std::max(pa, 1e-12));
                if (res.has_distortion && res.bob_defined) {
                    hqt::cxd e0, e1;
                    if (res.parity == hqt::Parity::Odd) {
                        e0 = qubit.a0; e1 = qubit.a1 * res.distortion_b;
                    } else {
                        e0 = qubit.a1; e1 = qubit.a0 * res.distortion_b;
                    }
                    const double nn = std::sqrt(std::norm(e0) + std::norm(e1));
                    e0 /= nn; e1 /= nn;
                    hqt::cxd ph = std::conj(e0) * res.bob_state.a0 + std::conj(e1) * res.bob_state.a1;
                    ph /= std::abs(ph);
                    worst_state = std::max(worst_state,
                                           std::max(std::abs(res.bob_state.a0 / ph - e0),
                                                    std::abs(res.bob_state.a1 / ph - e1)));
                }
                ++checked;
            }
        }
    }
    std::printf("checked         %d outcomes over %d tuples\n", checked, tuples);
    std::printf("worst_rel_prob  %.3g\n", worst_p);
    std::printf("worst_state_dev %.3g\n", worst_state);
    const bool ok = worst_p < 1e-8 && worst_state < 1e-10;
    std::printf("verdict         %s\n", ok ? "pass" : "FAIL");
    return ok ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid-channel single-rail qubit teleportation toolkit"};
    app.set_config("--config");
    app.require_subcommand(1);

    double s_db = 3.0, b0 = 1.0, b = 1.0;
    int cutoff = 40;
    int k1 = 1, k2 = 0;
    std::vector<double> qubit_parts{1.0, 0.0};
    std::string out_path;
    double s_min = 0.1, s_max = 10.0;
    double b0_min = 0.1, b0_max = 10.0;
    int s_steps = 101, b0_steps = 101, steps = 101;
    std::vector<std::string> outcome_tags{"01", "10", "20", "02", "11"};
    int tuples = 50;
    unsigned seed = 20240917u;

    auto* ci = app.add_subcommand("channel-info", "inspect channel parameters and preparation");
    ci->add_option("--s-db", s_db, "squeezing in dB")->required();
    ci->add_option("--b0", b0, "channel splitter parameter")->required();
    ci->add_option("--cutoff", cutoff, "Fock cutoff");

    auto* tp = app.add_subcommand("teleport", "run one PNR outcome");
    tp->add_option("--s-db", s_db)->required();
    tp->add_option("--b0", b0)->required();
    tp->add_option("--b", b, "protocol splitter parameter")->required();
    tp->add_option("--qubit", qubit_parts, "a0,a1 or a0re,a0im,a1re,a1im")->delimiter(',')->expected(2, 4);
    tp->add_option("--outcome", [&k1, &k2](const std::vector<std::string>& v) {
          if (v.size() != 1) return false;
          return std::sscanf(v[0].c_str(), "%d,%d", &k1, &k2) == 2;
      }, "k1,k2")->required();
    tp->add_option("--cutoff", cutoff);

    auto* sw = app.add_subcommand("sweep", "unit-distortion surfaces over the (S_dB, B0) box");
    sw->add_option("--s-min", s_min);
    sw->add_option("--s-max", s_max);
    sw->add_option("--s-steps", s_steps);
    sw->add_option("--b0-min", b0_min);
    sw->add_option("--b0-max", b0_max);
    sw->add_option("--b0-steps", b0_steps);
    sw->add_option("--outcomes", outcome_tags, "outcome tags, e.g. 01,10,20")->delimiter(',');
    sw->add_option("--cutoff", cutoff);
    sw->add_option("--out", out_path, "file prefix (writes <prefix>_<tag>.csv); stdout if empty");

    auto* ln = app.add_subcommand("line", "solve the B01 = 1 operating line");
    ln->add_option("--s-min", s_min);
    ln->add_option("--s-max", s_max);
    ln->add_option("--steps", steps);
    ln->add_option("--out", out_path);

    auto* f4 = app.add_subcommand("fig4", "two-photon distortion multipliers at B = 1 on the line");
    f4->add_option("--s-min", s_min);
    f4->add_option("--s-max", s_max);
    f4->add_option("--steps", steps);
    f4->add_option("--out", out_path);

    auto* ro = app.add_subcommand("recover-opt", "optimize the recovery-enhanced success probability");
    ro->add_option("--s-min", s_min);
    ro->add_option("--s-max", s_max)->default_val(20.0);
    ro->add_option("--steps", steps);

    auto* vf = app.add_subcommand("verify", "dual-path cross-checks (closed forms vs Fock simulation)");
    vf->add_option("--tuples", tuples);
    vf->add_option("--cutoff", cutoff);
    vf->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (ci->parsed()) return cmd_channel_info(s_db, b0, cutoff);
        if (tp->parsed()) return cmd_teleport(s_db, b0, b, qubit_parts, k1, k2, cutoff);
        if (sw->parsed()) {
            hqt::SweepConfig config;
            config.s_min = s_min; config.s_max = s_max; config.s_steps = s_steps;
            config.b0_min = b0_min; config.b0_max = b0_max; config.b0_steps = b0_steps;
            config.cutoff = cutoff;
            config.outcomes.clear();
            for (const auto& tag : outcome_tags) {
                if (tag.size() != 2 || !isdigit(tag[0]) || !isdigit(tag[1]))
                    throw CLI::ValidationError("bad outcome tag " + tag);
                config.outcomes.emplace_back(tag[0] - '0', tag[1] - '0');
            }
            const auto table = hqt::sweep_surface(config);
            if (out_path.empty()) {
                write_or_print("", hqt::sweep_csv_combined(table));
            } else {
                for (const auto& [tag, csv] : hqt::sweep_csv_files(table))
                    write_or_print(out_path + "_" + tag + ".csv", csv);
            }
            return 0;
        }
        if (ln->parsed()) {
            const auto linev = hqt::solve_b1_line(s_min, s_max, steps);
            write_or_print(out_path, hqt::line_csv(linev));
            for (const auto& pt : linev)
                if (!pt.feasible) return kExitNumeric;
            return 0;
        }
        if (f4->parsed()) {
            const auto curve = hqt::fig4_curve(s_min, s_max, steps);
            write_or_print(out_path, hqt::fig4_csv(curve));
            for (const auto& pt : curve)
                if (!pt.feasible) return kExitNumeric;
            return 0;
        }
        if (ro->parsed()) {
            const auto best = hqt::optimize_recovery(s_min, s_max, steps);
            std::printf("best_s_db  %.12g\n", best.s_db);
            std::printf("best_b0    %.12g\n", best.b0);
            std::printf("best_p_pt  %.12g\n", best.p_pt);
            return 0;
        }
        if (vf->parsed()) return cmd_verify(tuples, cutoff, seed);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const hqt::SingularDistortion& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const hqt::InfeasibleSolve& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
