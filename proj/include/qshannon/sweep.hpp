#pragma once

// Parameter-sweep kernels. map_serial is the reference; map_parallel distributes
// points over OpenMP threads and must return the same values in the same order.

#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace qshannon::sweep {

/// Inclusive start:stop:steps grid, linear or logarithmic.
struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;
    bool log = false;

    /// Accepts "x" (single point), "a:b:n", or a comma list "x,y,z" (stored in `explicit_values`).
    static SweepSpec parse(const std::string& text, bool log = false);

    [[nodiscard]] std::vector<double> values() const;

    std::vector<double> explicit_values;
    bool is_list = false;
};

std::vector<double> linspace(double start, double stop, std::size_t steps);
std::vector<double> logspace(double start, double stop, std::size_t steps);

template <class F>
auto map_serial(std::size_t n, F&& f) {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

/// `jobs <= 0` uses the OpenMP default thread count. The first exception thrown by
/// any point is rethrown after the parallel region.
template <class F>
auto map_parallel(std::size_t n, F&& f, int jobs = 0) {
    using R = std::invoke_result_t<F&, std::size_t>;
    static_assert(std::is_default_constructible_v<R>, "sweep results must be default constructible");
    std::vector<R> out(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

/// Serial for jobs == 1, otherwise parallel.
template <class F>
auto map(std::size_t n, F&& f, int jobs) {
    if (jobs == 1) return map_serial(n, std::forward<F>(f));
    return map_parallel(n, std::forward<F>(f), jobs);
}

}  // namespace qshannon::sweep
