#include "hqt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "hqt/analytic.hpp"
#include "hqt/roots.hpp"

namespace hqt {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string outcome_tag(const std::pair<int, int>& o) {
    return std::to_string(o.first) + std::to_string(o.second);
}

double grid_value(double lo, double hi, int steps, int i) {
    return lo + (hi - lo) * i / (steps - 1);
}

double line_b0_for(double s_db) {
    const double y_smsv = SqueezeParams::from_db(s_db).y_smsv;
    auto f = [&](double b0) { return b01_parameter(y_smsv / (1.0 + b0), b0) - 1.0; };
    double root = 0.0;
    if (!brent_log_bracket(f, 1e-4, 1e4, &root))
        throw InfeasibleSolve("solve_b1_line: no bracket");
    return root;
}

void run_parallel(int jobs, const std::function<void(int)>& work) {
    const int threads = sweep_thread_count(jobs);
    if (threads <= 1) {
        for (int i = 0; i < jobs; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < jobs; i += threads) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

int sweep_thread_count(int jobs) {
    int n = 0;
    if (const char* env = std::getenv("HYBRID_TELEPORT_THREADS")) {
        n = std::atoi(env);
        if (n < 1) n = 1;
    } else {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
    }
    return std::min(n, std::max(1, jobs));
}

void SweepConfig::validate() const {
    if (!(s_min > 0.0) || !(s_max > s_min) || s_steps < 2)
        throw std::invalid_argument("SweepConfig: bad S_dB range");
    if (!(b0_min > 0.0) || !(b0_max > b0_min) || b0_steps < 2)
        throw std::invalid_argument("SweepConfig: bad B0 range");
    if (outcomes.empty())
        throw std::invalid_argument("SweepConfig: no outcomes requested");
    int max_total = 0;
    for (const auto& o : outcomes) {
        if (o.first < 0 || o.second < 0 || o.first + o.second == 0)
            throw std::invalid_argument("SweepConfig: bad outcome");
        max_total = std::max(max_total, o.first + o.second);
    }
    if (cutoff < 2 * max_total + 10)
        throw std::invalid_argument("SweepConfig: cutoff below 2*max_total + 10");
}

SweepTable sweep_surface(const SweepConfig& config) {
    config.validate();
    SweepTable table;
    table.config = config;
    const int rows = config.s_steps * config.b0_steps;
    table.cells.resize(static_cast<std::size_t>(rows));

    run_parallel(rows, [&](int idx) {
        const int si = idx / config.b0_steps;
        const int bi = idx % config.b0_steps;
        SweepCell cell;
        cell.s_db = grid_value(config.s_min, config.s_max, config.s_steps, si);
        cell.b0 = grid_value(config.b0_min, config.b0_max, config.b0_steps, bi);
        const double y0 = SqueezeParams::from_db(cell.s_db).y_smsv / (1.0 + cell.b0);
        for (const auto& o : config.outcomes) {
            double b_solved = 0.0, abs_b = 0.0, prob = 0.0;
            std::string status = "ok";
            try {
                b_solved = solve_unit_distortion_b(o.first, o.second, y0, cell.b0);
                abs_b = std::abs(distortion_factor(o.first, o.second, y0, cell.b0, b_solved));
                prob = perfect_outcome_probability(o.first, o.second, y0, b_solved);
                if (std::abs(abs_b - 1.0) > config.unit_b_tolerance)
                    status = "unit-check-failed";
            } catch (const SingularDistortion&) {
                status = "pole";
            } catch (const InfeasibleSolve&) {
                status = "infeasible";
            }
            if (status != "ok") { b_solved = 0.0; abs_b = 0.0; prob = 0.0; }
            cell.b_solved.push_back(b_solved);
            cell.abs_b.push_back(abs_b);
            cell.probability.push_back(prob);
            cell.status.push_back(status);
        }
        table.cells[static_cast<std::size_t>(idx)] = std::move(cell);
    });
    return table;
}

std::string sweep_csv_combined(const SweepTable& table) {
    std::string csv = "s_db,b0";
    for (const auto& o : table.config.outcomes) {
        const std::string tag = outcome_tag(o);
        csv += ",b_solved_" + tag + ",abs_b_" + tag + ",probability_" + tag + ",status_" + tag;
    }
    csv += "\n";
    for (const auto& cell : table.cells) {
        csv += fmt17(cell.s_db) + "," + fmt17(cell.b0);
        for (std::size_t j = 0; j < table.config.outcomes.size(); ++j) {
            if (cell.status[j] == "ok")
                csv += "," + fmt17(cell.b_solved[j]) + "," + fmt17(cell.abs_b[j]) + "," +
                       fmt17(cell.probability[j]);
            else
                csv += ",,,";
            csv += "," + cell.status[j];
        }
        csv += "\n";
    }
    return csv;
}

std::map<std::string, std::string> sweep_csv_files(const SweepTable& table) {
    std::map<std::string, std::string> files;
    files["combined"] = sweep_csv_combined(table);
    for (std::size_t j = 0; j < table.config.outcomes.size(); ++j) {
        const std::string tag = outcome_tag(table.config.outcomes[j]);
        std::string csv = "s_db,b0,b_solved,abs_b,probability,status\n";
        for (const auto& cell : table.cells) {
            csv += fmt17(cell.s_db) + "," + fmt17(cell.b0);
            if (cell.status[j] == "ok")
                csv += "," + fmt17(cell.b_solved[j]) + "," + fmt17(cell.abs_b[j]) + "," +
                       fmt17(cell.probability[j]);
            else
                csv += ",,,";
            csv += "," + cell.status[j] + "\n";
        }
        files[tag] = std::move(csv);
    }
    return files;
}

std::vector<LinePoint> solve_b1_line(double s_min, double s_max, int steps) {
    if (!(s_min > 0.0) || !(s_max > s_min) || steps < 2)
        throw std::invalid_argument("solve_b1_line: bad range");
    std::vector<LinePoint> line(static_cast<std::size_t>(steps));
    run_parallel(steps, [&](int i) {
        LinePoint pt;
        pt.s_db = grid_value(s_min, s_max, steps, i);
        try {
            pt.b0 = line_b0_for(pt.s_db);
            const double y0 = SqueezeParams::from_db(pt.s_db).y_smsv / (1.0 + pt.b0);
            pt.b01 = b01_parameter(y0, pt.b0);
            pt.b10 = 1.0 / pt.b01;
            pt.feasible = true;
        } catch (const std::exception&) {
            pt.b0 = 0.0;
            pt.b01 = 0.0;
            pt.b10 = 0.0;
            pt.feasible = false;
        }
        line[static_cast<std::size_t>(i)] = pt;
    });
    return line;
}

std::string line_csv(const std::vector<LinePoint>& line) {
    std::string csv = "s_db,b0,b01,b10,status\n";
    for (const auto& pt : line) {
        csv += fmt17(pt.s_db) + ",";
        if (pt.feasible)
            csv += fmt17(pt.b0) + "," + fmt17(pt.b01) + "," + fmt17(pt.b10) + ",ok\n";
        else
            csv += ",,,gap\n";
    }
    return csv;
}

std::vector<Fig4Point> fig4_curve(double s_min, double s_max, int steps) {
    const auto line = solve_b1_line(s_min, s_max, steps);
    std::vector<Fig4Point> curve(line.size());
    run_parallel(static_cast<int>(line.size()), [&](int i) {
        const auto& pt = line[static_cast<std::size_t>(i)];
        Fig4Point fp;
        fp.s_db = pt.s_db;
        fp.b0 = pt.b0;
        fp.feasible = pt.feasible;
        if (pt.feasible) {
            const double y0 = SqueezeParams::from_db(pt.s_db).y_smsv / (1.0 + pt.b0);
            fp.b20_at_b1 = distortion_factor(2, 0, y0, pt.b0, 1.0);
            fp.abs_b02_at_b1 = std::abs(distortion_factor(0, 2, y0, pt.b0, 1.0));
        } else {
            fp.b20_at_b1 = 0.0;
            fp.abs_b02_at_b1 = 0.0;
        }
        curve[static_cast<std::size_t>(i)] = fp;
    });
    return curve;
}

std::string fig4_csv(const std::vector<Fig4Point>& curve) {
    std::string csv = "s_db,b0,b20_at_b1,abs_b02_at_b1,status\n";
    for (const auto& fp : curve) {
        csv += fmt17(fp.s_db) + ",";
        if (fp.feasible)
            csv += fmt17(fp.b0) + "," + fmt17(fp.b20_at_b1) + "," + fmt17(fp.abs_b02_at_b1) + ",ok\n";
        else
            csv += ",,,gap\n";
    }
    return csv;
}

}  // namespace hqt
