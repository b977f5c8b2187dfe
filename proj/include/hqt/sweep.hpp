#ifndef HQT_SWEEP_HPP
#define HQT_SWEEP_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hqt {

/// Parameter-grid sweep over the (S_dB, B0) rectangle, one unit-distortion
/// surface per requested outcome. Default box (0,10] x (0,10], 101 x 101.
struct SweepConfig {
    double s_min = 0.1;
    double s_max = 10.0;
    int s_steps = 101;
    double b0_min = 0.1;
    double b0_max = 10.0;
    int b0_steps = 101;
    std::vector<std::pair<int, int>> outcomes = {{0, 1}, {1, 0}, {2, 0}, {0, 2}, {1, 1}};
    int cutoff = 40;
    std::string out_path;       // file prefix; empty -> combined CSV to stdout
    double unit_b_tolerance = 1e-9;

    void validate() const;      // throws std::invalid_argument
};

struct SweepCell {
    double s_db = 0.0;
    double b0 = 0.0;
    // per outcome, aligned with SweepConfig::outcomes
    std::vector<double> b_solved;
    std::vector<double> abs_b;
    std::vector<double> probability;
    std::vector<std::string> status;  // "ok", "infeasible", "pole"
};

struct SweepTable {
    SweepConfig config;
    std::vector<SweepCell> cells;  // row-major, S outer, B0 inner
};

/// Evaluates the grid (in parallel, deterministic row-major order).
SweepTable sweep_surface(const SweepConfig& config);

/// Combined CSV (all outcomes side by side), 17-significant-digit floats,
/// '.' decimal separator, LF line endings.
std::string sweep_csv_combined(const SweepTable& table);

/// One CSV per outcome, keyed "01", "10", ... plus "combined".
std::map<std::string, std::string> sweep_csv_files(const SweepTable& table);

struct LinePoint {
    double s_db;
    double b0;
    double b01;       // |B01 - 1| residual check source
    double b10;
    bool feasible;
};

/// Solves B01(S_dB, B0) = 1 for B0 at each S_dB sample (bracketed Brent on
/// a log grid); infeasible samples are reported as gaps.
std::vector<LinePoint> solve_b1_line(double s_min, double s_max, int steps);

std::string line_csv(const std::vector<LinePoint>& line);

struct Fig4Point {
    double s_db;
    double b0;
    double b20_at_b1;      // signed
    double abs_b02_at_b1;
    bool feasible;
};

/// Distortion multipliers of the two-photon outcomes at B = 1 along the
/// solved line; |b20| = |b02| there and both stay below one.
std::vector<Fig4Point> fig4_curve(double s_min, double s_max, int steps);

std::string fig4_csv(const std::vector<Fig4Point>& curve);

/// Thread budget: HYBRID_TELEPORT_THREADS when set, hardware concurrency
/// otherwise, never more than `jobs`.
int sweep_thread_count(int jobs);

}  // namespace hqt

#endif
