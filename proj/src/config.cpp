#include "t3/config.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace t3 {

double RankTolerance::threshold(Index rows, Index cols, double sigma_ref) const {
    const double r = rel < 0
        ? static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon()
        : rel;
    return r * sigma_ref;
}

RankTolerance& RankTolerance::global() {
    static RankTolerance instance = [] {
        RankTolerance t;
        if (const char* env = std::getenv("T3_RANK_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && v > 0) t.rel = v;
        }
        return t;
    }();
    return instance;
}

namespace config {

int& threads() {
    static int count = 1;
    return count;
}

} // namespace config

void parallel_for(Index count, const std::function<void(Index)>& fn) {
    int want = config::threads();
    if (want == 0) want = static_cast<int>(std::thread::hardware_concurrency());
    if (want < 1) want = 1;
    const int workers = static_cast<int>(std::min<Index>(want, count));

    if (workers <= 1) {
        for (Index i = 0; i < count; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (Index i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

GaussianSampler::GaussianSampler(std::uint64_t seed) : engine_(seed) {}

double GaussianSampler::uniform01() {
    // 53 uniform bits in [0, 1); the engine sequence is standard-mandated.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

RealMatrix GaussianSampler::matrix(Index rows, Index cols) {
    RealMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = (*this)();
    return m;
}

} // namespace t3
