#ifndef HQT_ROOTS_HPP
#define HQT_ROOTS_HPP

#include <functional>

namespace hqt {

/// Brent's method on [lo, hi]; f(lo) and f(hi) must bracket a sign change.
/// Throws std::invalid_argument otherwise.
double brent(const std::function<double(double)>& f, double lo, double hi,
             double xtol = 1e-14, int max_iter = 200);

/// Expands a log-spaced bracket inside [lo_limit, hi_limit] until f changes
/// sign, then runs Brent. Returns false when no sign change is found.
bool brent_log_bracket(const std::function<double(double)>& f, double lo_limit,
                       double hi_limit, double* root, double xtol = 1e-14);

}  // namespace hqt

#endif
