#include "smoothsums/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>

namespace smoothsums {

int default_parallelism() {
    if (const char* env = std::getenv("SMOOTHSUMS_JOBS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void parallel_for(std::size_t n, int degree, const std::function<void(std::size_t)>& body) {
    if (degree <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int workers = degree < static_cast<int>(n) ? degree : static_cast<int>(n);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load() && first_error) std::rethrow_exception(first_error);
}

} // namespace smoothsums
