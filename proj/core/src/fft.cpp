#include "smoothsums/fft.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "smoothsums/arith.hpp"

namespace smoothsums {

namespace {

std::mutex plan_mutex;

// tw[j] = e(-j/L) for j < L/2, cached per power-of-two L
const std::vector<Complex>& twiddles(std::size_t L) {
    static std::unordered_map<std::size_t, std::unique_ptr<std::vector<Complex>>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& slot = cache[L];
    if (!slot) {
        auto t = std::make_unique<std::vector<Complex>>(L / 2);
        const double step = -2.0 * std::numbers::pi / static_cast<double>(L);
        for (std::size_t j = 0; j < L / 2; ++j)
            (*t)[j] = Complex(std::cos(step * static_cast<double>(j)),
                              std::sin(step * static_cast<double>(j)));
        slot = std::move(t);
    }
    return *slot;
}

struct BluesteinPlan {
    std::size_t conv_len = 0;
    std::vector<Complex> chirp;  // chirp[m] = e(-m^2 / (2N)), exact index reduction mod 2N
    std::vector<Complex> filter; // forward FFT of the cyclic chirp-conjugate kernel
};

const BluesteinPlan& bluestein_plan(std::size_t n);

} // namespace

void fft_pow2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2 requires a power-of-two length");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2, stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                Complex w = tw[j * stride];
                if (sign > 0) w = std::conj(w);
                Complex u = a[i + j];
                Complex v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

namespace {

const BluesteinPlan& bluestein_plan(std::size_t n) {
    static std::unordered_map<std::size_t, std::unique_ptr<BluesteinPlan>> cache;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto plan = std::make_unique<BluesteinPlan>();
    std::size_t L = 1;
    while (L < 2 * n - 1) L <<= 1;
    plan->conv_len = L;
    plan->chirp.resize(n);
    const int64_t two_n = 2 * static_cast<int64_t>(n);
    const double step = -std::numbers::pi / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        int64_t sq = mulmod(static_cast<int64_t>(m), static_cast<int64_t>(m), two_n);
        plan->chirp[m] = Complex(std::cos(step * static_cast<double>(sq)),
                                 std::sin(step * static_cast<double>(sq)));
    }
    std::vector<Complex> b(L, Complex{0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
        Complex v = std::conj(plan->chirp[m]);
        b[m] = v;
        if (m != 0) b[L - m] = v;
    }
    fft_pow2(b, -1);
    plan->filter = std::move(b);

    std::lock_guard<std::mutex> lock(plan_mutex);
    auto [it, inserted] = cache.emplace(n, std::move(plan));
    return *it->second;
}

std::vector<Complex> dft_bluestein(const std::vector<Complex>& a) {
    const std::size_t n = a.size();
    const BluesteinPlan& plan = bluestein_plan(n);
    std::vector<Complex> u(plan.conv_len, Complex{0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) u[m] = a[m] * plan.chirp[m];
    fft_pow2(u, -1);
    for (std::size_t j = 0; j < plan.conv_len; ++j) u[j] *= plan.filter[j];
    fft_pow2(u, +1);
    const double scale = 1.0 / static_cast<double>(plan.conv_len);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = plan.chirp[k] * u[k] * scale;
    return out;
}

} // namespace

std::vector<Complex> dft(const std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    if (n == 1) return a;
    if (sign > 0) {
        std::vector<Complex> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = std::conj(a[i]);
        std::vector<Complex> r = dft(c, -1);
        for (auto& v : r) v = std::conj(v);
        return r;
    }
    if ((n & (n - 1)) == 0) {
        std::vector<Complex> r = a;
        fft_pow2(r, -1);
        return r;
    }
    return dft_bluestein(a);
}

} // namespace smoothsums
