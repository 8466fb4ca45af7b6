#ifndef KEDLAB_UTIL_HPP
#define KEDLAB_UTIL_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace kedlab {

/// Worker count for parallel sections: KEDLAB_THREADS if set (clamped to
/// at least 1), otherwise the hardware concurrency.
std::size_t thread_budget();

/// Runs fn(i) for i in [0, n).  Work is split into contiguous blocks over
/// at most thread_budget() threads; the first exception thrown by any
/// worker is rethrown on the caller.  Results must be written to
/// index-addressed storage so the output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Neumaier-compensated accumulator.  Summation order is fixed by the
/// caller, so results are bit-stable across runs.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Shortest round-trippable-ish decimal formatting ("%.17g" is overkill
/// for human-facing tables; 12 significant digits everywhere keeps output
/// byte-stable and readable).
std::string fmt_g(double x, int precision = 12);

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

} // namespace kedlab

#endif
