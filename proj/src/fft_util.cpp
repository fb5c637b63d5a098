#include "nfdm/fft_util.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nfdm {

namespace {

// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t n = 0;

    PlanPair() = default;
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }

    void init(std::size_t size) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        n = size;
        buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size));
        fwd = fftw_plan_dft_1d(static_cast<int>(size), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(static_cast<int>(size), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (fwd == nullptr || bwd == nullptr) throw NumericalError("fftw plan creation failed");
    }
};

// Per-thread plan cache keyed by size. Thread-local keeps execution private
// to one thread per plan/buffer.
PlanPair& plan_for(std::size_t n) {
    thread_local std::map<std::size_t, PlanPair> cache;
    PlanPair& p = cache[n];
    if (p.n == 0) p.init(n);
    return p;
}

void run(CVec& data, bool forward) {
    if (data.empty()) return;
    PlanPair& p = plan_for(data.size());
    fftw_complex* b = p.buf;
    for (std::size_t i = 0; i < data.size(); ++i) {
        b[i][0] = data[i].real();
        b[i][1] = data[i].imag();
    }
    fftw_execute(forward ? p.fwd : p.bwd);
    if (forward) {
        for (std::size_t i = 0; i < data.size(); ++i) data[i] = Cd(b[i][0], b[i][1]);
    } else {
        const double inv = 1.0 / static_cast<double>(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) data[i] = Cd(b[i][0] * inv, b[i][1] * inv);
    }
}

}  // namespace

void fft_inplace(CVec& data) { run(data, true); }
void ifft_inplace(CVec& data) { run(data, false); }

CVec fft(const CVec& data) {
    CVec out = data;
    fft_inplace(out);
    return out;
}

CVec ifft(const CVec& data) {
    CVec out = data;
    ifft_inplace(out);
    return out;
}

double dft_omega(std::size_t k, std::size_t N, double dt) {
    const double n = static_cast<double>(N);
    double kk = static_cast<double>(k);
    if (kk >= n / 2.0) kk -= n;
    return 2.0 * kPi * kk / (n * dt);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace nfdm
