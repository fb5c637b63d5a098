#include "nfdm/nft_engine.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace nfdm {

double ContinuousSpectrum::unimodularity_defect() const {
    if (!has_ab()) return 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(std::norm(a[k]) + std::norm(b[k]) - 1.0));
    return worst;
}

double ContinuousSpectrum::rho_consistency_defect() const {
    if (!has_ab()) return 0.0;
    double scale = 0.0;
    for (const Cd& r : rho) scale = std::max(scale, std::abs(r));
    if (scale == 0.0) scale = 1.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(rho[k] - b[k] / a[k]) / scale);
    return worst;
}

void ContinuousSpectrum::validate() const {
    if (n < 2 || rho.size() != n) throw UsageError("ContinuousSpectrum: bad grid");
    if (!(dlambda > 0.0)) throw UsageError("ContinuousSpectrum: dlambda must be positive");
    if (has_ab() && (a.size() != n || b.size() != n))
        throw UsageError("ContinuousSpectrum: a/b size mismatch");
    if (rho_consistency_defect() > 1e-10)
        throw NumericalError("ContinuousSpectrum: rho != b/a beyond tolerance");
}

NftGrid NftGrid::for_envelope(const ComplexEnvelope& env) {
    NftGrid g;
    g.t0 = env.t0;
    g.dt = env.dt;
    g.nt = env.size();
    g.nlambda = g.nt;
    g.dlambda = kPi / (g.dt * static_cast<double>(g.nlambda));
    g.lambda_min = -kPi / (2.0 * g.dt);
    return g;
}

// ---------------------------------------------------------------------------
// Forward transform: layer peeling with exact per-sample transfer matrices,
// carried in the rotating frame (w1, w2) = (v1 e^{i lambda t}, v2 e^{-i lambda t})
// so a = w1, b = w2 at the right edge. Each factor is in SU(2), which keeps
// |a|^2 + |b|^2 = 1 to rounding on the real axis.
// ---------------------------------------------------------------------------

namespace {

struct ScatterResult {
    Cd a, b;
    bool singular;
};

ScatterResult scatter_one_lambda(const CVec& q, const std::vector<double>& abs2, double t0,
                                 double dt, double lambda) {
    Cd w1(1.0, 0.0), w2(0.0, 0.0);
    const Cd ph = std::exp(Cd(0.0, lambda * dt));
    const Cd ratio = std::exp(Cd(0.0, 2.0 * lambda * dt));
    Cd u = std::exp(Cd(0.0, 2.0 * lambda * t0));
    for (std::size_t m = 0; m < q.size(); ++m) {
        const double kappa2 = lambda * lambda + abs2[m];
        const double kappa = std::sqrt(kappa2);
        const double kh = kappa * dt;
        double c, s;
        if (kh < 1e-8) {
            c = 1.0 - 0.5 * kh * kh;
            s = dt * (1.0 - kh * kh / 6.0);
        } else {
            c = std::cos(kh);
            s = std::sin(kh) / kappa;
        }
        const Cd alpha(c, -lambda * s);
        const Cd beta = q[m] * s;
        const Cd A = ph * alpha;
        const Cd B = u * beta;
        const Cd nw1 = A * w1 + B * w2;
        const Cd nw2 = -std::conj(B) * w1 + std::conj(A) * w2;
        w1 = nw1;
        w2 = nw2;
        u *= ratio;
    }
    return {w1, w2, std::abs(w1) < 1e-12};
}

}  // namespace

ContinuousSpectrum fnft_continuous(const ComplexEnvelope& q, const NftGrid& grid,
                                   ExecPolicy policy) {
    require_units(q, Units::Normalized, "fnft_continuous");
    if (grid.nt != q.size()) throw UsageError("fnft_continuous: grid/envelope size mismatch");

    std::vector<double> abs2(q.size());
    for (std::size_t m = 0; m < q.size(); ++m) abs2[m] = std::norm(q.samples[m]);

    ContinuousSpectrum out;
    out.lambda_min = grid.lambda_min;
    out.dlambda = grid.dlambda;
    out.n = grid.nlambda;
    out.a.resize(out.n);
    out.b.resize(out.n);
    out.rho.resize(out.n);
    std::vector<uint8_t> singular(out.n, 0);

    const long nl = static_cast<long>(out.n);
    if (policy == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < nl; ++k) {
            ScatterResult r = scatter_one_lambda(q.samples, abs2, q.t0, q.dt,
                                                 out.lambda_at(static_cast<std::size_t>(k)));
            out.a[static_cast<std::size_t>(k)] = r.a;
            out.b[static_cast<std::size_t>(k)] = r.b;
            singular[static_cast<std::size_t>(k)] = r.singular ? 1 : 0;
        }
    } else {
        for (long k = 0; k < nl; ++k) {
            ScatterResult r = scatter_one_lambda(q.samples, abs2, q.t0, q.dt,
                                                 out.lambda_at(static_cast<std::size_t>(k)));
            out.a[static_cast<std::size_t>(k)] = r.a;
            out.b[static_cast<std::size_t>(k)] = r.b;
            singular[static_cast<std::size_t>(k)] = r.singular ? 1 : 0;
        }
    }

    for (std::size_t k = 0; k < out.n; ++k) {
        if (singular[k]) {
            std::ostringstream os;
            os << "fnft_continuous: |a| < 1e-12 at lambda = " << out.lambda_at(k)
               << " (rho undefined)";
            throw NumericalError(os.str());
        }
        out.rho[k] = out.b[k] / out.a[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// NIS map: exact bin-for-bin correspondence between the lambda grid and the
// DFT bins under omega = -2 lambda.
// ---------------------------------------------------------------------------

namespace {

void require_paired_grid(const ContinuousSpectrum& spec, const NftGrid& grid, const char* where) {
    const double expected_dl = kPi / (grid.dt * static_cast<double>(grid.nt));
    const double expected_min = -kPi / (2.0 * grid.dt);
    if (spec.n != grid.nt || std::abs(spec.dlambda - expected_dl) > 1e-9 * expected_dl ||
        std::abs(spec.lambda_min - expected_min) > 1e-9 * std::abs(expected_min))
        throw UsageError(std::string(where) + ": lambda grid is not paired with the time grid");
}

}  // namespace

ContinuousSpectrum nis_encode(const ComplexEnvelope& s) {
    require_units(s, Units::Normalized, "nis_encode");
    const NftGrid grid = NftGrid::for_envelope(s);
    const std::size_t N = grid.nt;

    CVec spec_bins = fft(s.samples);  // unscaled forward DFT

    ContinuousSpectrum out;
    out.lambda_min = grid.lambda_min;
    out.dlambda = grid.dlambda;
    out.n = grid.nlambda;
    out.rho.resize(N);
    const std::size_t half = N / 2;
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t m = (N + half - k) % N;  // bin of omega = -2 lambda_k
        const double omega = -2.0 * out.lambda_at(k);
        out.rho[k] = s.dt * std::exp(Cd(0.0, -omega * s.t0)) * spec_bins[m];
    }
    return out;
}

ComplexEnvelope nis_decode(const ContinuousSpectrum& spec, const NftGrid& grid) {
    require_paired_grid(spec, grid, "nis_decode");
    const std::size_t N = grid.nt;
    const std::size_t half = N / 2;

    CVec bins(N, Cd(0.0, 0.0));
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t m = (N + half - k) % N;
        const double omega = -2.0 * spec.lambda_at(k);
        bins[m] = spec.rho[k] * std::exp(Cd(0.0, omega * grid.t0)) / grid.dt;
    }
    ifft_inplace(bins);

    ComplexEnvelope out;
    out.t0 = grid.t0;
    out.dt = grid.dt;
    out.units = Units::Normalized;
    out.samples = std::move(bins);
    return out;
}

ContinuousSpectrum precompensate(const ContinuousSpectrum& spec, double L_norm) {
    if (L_norm < 0.0) throw UsageError("precompensate: L_norm must be >= 0");
    ContinuousSpectrum out = spec;
    for (std::size_t k = 0; k < out.n; ++k) {
        const double l = out.lambda_at(k);
        const Cd ph = std::exp(Cd(0.0, -4.0 * l * l * L_norm));
        out.rho[k] *= ph;
        if (!out.b.empty()) out.b[k] *= ph;
    }
    return out;
}

ContinuousSpectrum channel_spectral_phase(const ContinuousSpectrum& spec, double L_norm) {
    ContinuousSpectrum out = spec;
    for (std::size_t k = 0; k < out.n; ++k) {
        const double l = out.lambda_at(k);
        const Cd ph = std::exp(Cd(0.0, 4.0 * l * l * L_norm));
        out.rho[k] *= ph;
        if (!out.b.empty()) out.b[k] *= ph;
    }
    return out;
}

double spectral_energy(const ContinuousSpectrum& spec) {
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double v = std::log1p(std::norm(spec.rho[k]));
        acc += (k == 0 || k + 1 == spec.n) ? 0.5 * v : v;
    }
    return acc * spec.dlambda / kPi;
}

double solve_amplitude_for_energy(const std::vector<double>& rho_abs2, double dlambda,
                                  double target_energy) {
    if (target_energy <= 0.0) return 0.0;
    auto energy = [&](double A) {
        const double A2 = A * A;
        double acc = 0.0;
        for (std::size_t k = 0; k < rho_abs2.size(); ++k) {
            const double v = std::log1p(A2 * rho_abs2[k]);
            acc += (k == 0 || k + 1 == rho_abs2.size()) ? 0.5 * v : v;
        }
        return acc * dlambda / kPi;
    };
    double hi = 1.0;
    int guard = 0;
    while (energy(hi) < target_energy) {
        hi *= 2.0;
        if (++guard > 200) throw NumericalError("solve_amplitude_for_energy: no bracket");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (energy(mid) < target_energy)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// GLM solver. Input kernel F(x) = (1/2pi) int rho(lambda) e^{i lambda x} dl
// sampled on x_m = x0 + m dx with x0 = -2 t_end, dx = 2 dt. For output time t
// the coupled equations close on y in [t, y_max] and only F(x >= 2t) enters,
// so the per-point system is a pure slice of F:
//   K1(y_i) - sum_j w_j conj(F)(y_i + y_j) K2*(y_j) = conj(F)(t + y_i)
//   K2*(y_i) + sum_j w_j F(y_i + y_j) K1(y_j)      = 0
//   q(t) = -2 K1(y_0 = t).
// Reduced form: (I + B^H B) x = D^{1/2} rhs with B = D^{1/2} Hankel D^{1/2},
// Hermitian positive definite with smallest eigenvalue >= 1.
// ---------------------------------------------------------------------------

GlmSolver::GlmSolver(const ContinuousSpectrum& spec, const NftGrid& grid, Method method)
    : grid_(grid), method_(method) {
    require_paired_grid(spec, grid, "GlmSolver");

    // Edge-decay precondition (soft).
    double rho_max = 0.0;
    for (const Cd& r : spec.rho) rho_max = std::max(rho_max, std::abs(r));
    if (rho_max > 0.0) {
        const double edge = std::max(std::abs(spec.rho.front()), std::abs(spec.rho.back()));
        if (edge > 1e-3 * rho_max)
            std::cerr << "GlmSolver: warning: |rho| at lambda-grid edges is " << edge / rho_max
                      << " of max; spectrum does not vanish at the edges\n";
    }

    const std::size_t N = grid.nt;
    dx_ = 2.0 * grid.dt;
    x0_ = -2.0 * grid.t_end();

    CVec h(N);
    for (std::size_t k = 0; k < N; ++k)
        h[k] = spec.rho[k] * std::exp(Cd(0.0, static_cast<double>(k) * spec.dlambda * x0_));
    ifft_inplace(h);  // (1/N) sum_k h_k e^{+2pi i k m / N}

    F_.resize(N);
    const double scale = spec.dlambda / (2.0 * kPi) * static_cast<double>(N);
    for (std::size_t m = 0; m < N; ++m) {
        const double xm = x0_ + static_cast<double>(m) * dx_;
        F_[m] = scale * std::exp(Cd(0.0, spec.lambda_min * xm)) * h[m];
    }

    f_scale_ = 0.0;
    for (const Cd& v : F_) f_scale_ = std::max(f_scale_, std::abs(v));
    long last = static_cast<long>(N) - 1;
    while (last > 0 && std::abs(F_[static_cast<std::size_t>(last)]) <= 1e-14 * f_scale_) --last;
    m_eff_ = std::min<long>(last + 8, static_cast<long>(N) - 1);
}

namespace {

struct CgWorkspace {
    CVec ker_fft, buf, bv, x, r, p, ap, wsqrt, rhs;
};

CgWorkspace& workspace() {
    thread_local CgWorkspace ws;
    return ws;
}

// (Hankel_f u)(i) = sum_j f[i+j] u[j], i, j in [0, n]; f has length 2n+1.
// Uses the cached kernel FFT in ws.ker_fft (length L).
void hankel_apply(const CVec& ker_fft, std::size_t L, const Cd* u, std::size_t n1, CVec& buf,
                  Cd* out) {
    buf.assign(L, Cd(0.0, 0.0));
    for (std::size_t j = 0; j < n1; ++j) buf[n1 - 1 - j] = u[j];  // reversed
    fft_inplace(buf);
    for (std::size_t q = 0; q < L; ++q) buf[q] *= ker_fft[q];
    ifft_inplace(buf);
    for (std::size_t i = 0; i < n1; ++i) out[i] = buf[i + n1 - 1];
}

}  // namespace

Cd GlmSolver::solve_cg(long m0, long n_dom, GlmWarmState* warm) const {
    CgWorkspace& ws = workspace();
    const std::size_t n1 = static_cast<std::size_t>(n_dom) + 1;
    const std::size_t flen = 2 * static_cast<std::size_t>(n_dom) + 1;
    const std::size_t L = next_pow2(3 * static_cast<std::size_t>(n_dom) + 2);
    const double h = dx_;
    const std::size_t N = F_.size();

    // Kernel slice (zero-padded past the grid) and its FFT.
    ws.ker_fft.assign(L, Cd(0.0, 0.0));
    for (std::size_t l = 0; l < flen; ++l) {
        const long m = m0 + static_cast<long>(l);
        if (m >= 0 && m < static_cast<long>(N)) ws.ker_fft[l] = F_[static_cast<std::size_t>(m)];
    }
    fft_inplace(ws.ker_fft);

    double ker_max = 0.0;
    for (const Cd& v : ws.ker_fft) ker_max = std::max(ker_max, std::abs(v));
    const double cond_est = 1.0 + (h * ker_max) * (h * ker_max);
    if (cond_est > 1e12) {
        std::ostringstream os;
        os << "GlmSolver: system ill-conditioned (estimate " << cond_est << ") at t = "
           << x0_ / 2.0 + static_cast<double>(m0) * grid_.dt;
        throw NumericalError(os.str());
    }

    ws.wsqrt.resize(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        const double w = (i == 0 || i + 1 == n1) ? 0.5 * h : h;
        ws.wsqrt[i] = Cd(std::sqrt(w), 0.0);
    }

    ws.rhs.resize(n1);
    double rhs_norm2 = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        const long m = m0 + static_cast<long>(i);
        const Cd f = (m >= 0 && m < static_cast<long>(N)) ? F_[static_cast<std::size_t>(m)]
                                                          : Cd(0.0, 0.0);
        ws.rhs[i] = ws.wsqrt[i] * std::conj(f);
        rhs_norm2 += std::norm(ws.rhs[i]);
    }

    const double sqrt_w0 = ws.wsqrt[0].real();
    if (rhs_norm2 <= 1e-60 * f_scale_ * f_scale_) {
        Cd k1_0 = ws.rhs[0] / sqrt_w0;
        if (warm != nullptr) {
            warm->m0 = m0;
            warm->valid = true;
            warm->x.assign(n1, Cd(0.0, 0.0));
        }
        return -2.0 * k1_0;
    }

    // M x = x + B^H B x with B = D^{1/2} Hankel D^{1/2} (complex symmetric),
    // so B^H y = conj(B conj(y)): with z = Hankel(wsqrt v),
    // B^H B v = conj( wsqrt Hankel( w conj(z) ) ).
    auto matvec = [&](const CVec& v, CVec& out) {
        ws.bv.resize(n1);
        for (std::size_t i = 0; i < n1; ++i) ws.bv[i] = ws.wsqrt[i] * v[i];
        hankel_apply(ws.ker_fft, L, ws.bv.data(), n1, ws.buf, ws.bv.data());
        for (std::size_t i = 0; i < n1; ++i)
            ws.bv[i] = ws.wsqrt[i] * ws.wsqrt[i] * std::conj(ws.bv[i]);
        hankel_apply(ws.ker_fft, L, ws.bv.data(), n1, ws.buf, ws.bv.data());
        out.resize(n1);
        for (std::size_t i = 0; i < n1; ++i) out[i] = v[i] + std::conj(ws.wsqrt[i] * ws.bv[i]);
    };

    // Warm start: re-align the previous solution by the kernel-grid offset so
    // the guess matches the same absolute y positions.
    ws.x.assign(n1, Cd(0.0, 0.0));
    if (warm != nullptr && warm->valid && !warm->x.empty()) {
        const long shift = m0 - warm->m0;
        for (std::size_t i = 0; i < n1; ++i) {
            const long src = static_cast<long>(i) + shift;
            if (src >= 0 && src < static_cast<long>(warm->x.size()))
                ws.x[i] = warm->x[static_cast<std::size_t>(src)];
        }
    }

    matvec(ws.x, ws.ap);
    ws.r.resize(n1);
    double rs = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        ws.r[i] = ws.rhs[i] - ws.ap[i];
        rs += std::norm(ws.r[i]);
    }
    ws.p = ws.r;

    const double tol2 = 1e-18 * rhs_norm2;  // relative residual 1e-9
    int iters = 0;
    const int max_iters = 1000;
    while (rs > tol2) {
        if (++iters > max_iters) {
            std::ostringstream os;
            os << "GlmSolver: CG failed to converge at t = "
               << x0_ / 2.0 + static_cast<double>(m0) * grid_.dt;
            throw NumericalError(os.str());
        }
        matvec(ws.p, ws.ap);
        double p_ap = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
            p_ap += (std::conj(ws.p[i]) * ws.ap[i]).real();
        const double alpha = rs / p_ap;
        double rs_new = 0.0;
        for (std::size_t i = 0; i < n1; ++i) {
            ws.x[i] += alpha * ws.p[i];
            ws.r[i] -= alpha * ws.ap[i];
            rs_new += std::norm(ws.r[i]);
        }
        if (rs_new <= tol2) {
            rs = rs_new;
            break;
        }
        const double beta = rs_new / rs;
        for (std::size_t i = 0; i < n1; ++i) ws.p[i] = ws.r[i] + beta * ws.p[i];
        rs = rs_new;
    }
    stats_.cg_iterations.fetch_add(static_cast<uint64_t>(iters), std::memory_order_relaxed);

    if (warm != nullptr) {
        warm->m0 = m0;
        warm->valid = true;
        warm->x = ws.x;
    }
    return -2.0 * (ws.x[0] / sqrt_w0);
}

Cd GlmSolver::solve_dense(long m0, long n_dom) const {
    const long n1 = n_dom + 1;
    const long N = static_cast<long>(F_.size());
    const double h = dx_;

    auto fat = [&](long m) -> Cd {
        return (m >= 0 && m < N) ? F_[static_cast<std::size_t>(m)] : Cd(0.0, 0.0);
    };

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2 * n1, 2 * n1);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * n1);
    for (long i = 0; i < n1; ++i) {
        rhs(i) = std::conj(fat(m0 + i));
        for (long j = 0; j < n1; ++j) {
            const double w = (j == 0 || j == n_dom) ? 0.5 * h : h;
            const Cd f = fat(m0 + i + j);
            A(i, n1 + j) = -std::conj(f) * w;  // K1 row, K2* column
            A(n1 + i, j) = f * w;              // K2* row, K1 column
        }
    }
    Eigen::VectorXcd sol = A.partialPivLu().solve(rhs);
    return -2.0 * sol(0);
}

Cd GlmSolver::solve_point_impl(double t, GlmWarmState* warm) const {
    const double pos = (2.0 * t - x0_) / dx_;
    const long m0 = std::lround(pos);
    if (std::abs(pos - static_cast<double>(m0)) > 1e-6)
        throw FramingError("GlmSolver: output time not on the half-sample grid");
    if (m0 < 0) throw FramingError("GlmSolver: output time before the grid start");

    stats_.point_solves.fetch_add(1, std::memory_order_relaxed);

    const long n_dom = std::max<long>(m_eff_ - m0, 0);
    if (n_dom == 0) {
        // Zero-length history interval: K1 = conj(F)(2t) directly.
        const long N = static_cast<long>(F_.size());
        const Cd f = (m0 < N) ? F_[static_cast<std::size_t>(m0)] : Cd(0.0, 0.0);
        if (warm != nullptr) warm->valid = false;
        return -2.0 * std::conj(f);
    }
    if (method_ == Method::DenseReference) return solve_dense(m0, n_dom);
    return solve_cg(m0, n_dom, warm);
}

Cd GlmSolver::solve_point(double t) const { return solve_point_impl(t, nullptr); }

Cd GlmSolver::solve_point_warm(double t, GlmWarmState& warm) const {
    return solve_point_impl(t, &warm);
}

ComplexEnvelope GlmSolver::full(ExecPolicy policy) const {
    const std::size_t N = grid_.nt;
    ComplexEnvelope out;
    out.t0 = -grid_.t_end();
    out.dt = grid_.dt;
    out.units = Units::Normalized;
    out.samples.resize(N);

    const long nl = static_cast<long>(N);
    if (policy == ExecPolicy::OpenMP && method_ == Method::Fast) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long j = 0; j < nl; ++j)
            out.samples[static_cast<std::size_t>(j)] =
                solve_point(out.t0 + static_cast<double>(j) * out.dt);
    } else {
        for (long j = 0; j < nl; ++j)
            out.samples[static_cast<std::size_t>(j)] =
                solve_point(out.t0 + static_cast<double>(j) * out.dt);
    }
    return out;
}

ComplexEnvelope GlmSolver::full_warm(ExecPolicy policy) const {
    const std::size_t N = grid_.nt;
    ComplexEnvelope out;
    out.t0 = -grid_.t_end();
    out.dt = grid_.dt;
    out.units = Units::Normalized;
    out.samples.resize(N);

    // Fixed-size blocks; each block runs its own warm-start chain from the
    // high-t end (small systems first), so results do not depend on the
    // thread count.
    constexpr std::size_t kBlock = 64;
    const long nblocks = static_cast<long>((N + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::OpenMP)
    for (long b = 0; b < nblocks; ++b) {
        GlmWarmState warm;
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, N);
        for (std::size_t j = hi; j-- > lo;) {
            const double t = out.t0 + static_cast<double>(j) * out.dt;
            out.samples[j] = solve_point_warm(t, warm);
        }
    }
    return out;
}

CVec GlmSolver::window(double t_start, double t_end) const {
    if (t_start > t_end) throw UsageError("GlmSolver::window: t_start > t_end");
    const long count = std::lround((t_end - t_start) / grid_.dt) + 1;
    CVec out(static_cast<std::size_t>(count));
    for (long j = 0; j < count; ++j)
        out[static_cast<std::size_t>(j)] = solve_point(t_start + static_cast<double>(j) * grid_.dt);
    return out;
}

ComplexEnvelope bnft_glm(const ContinuousSpectrum& spec, const NftGrid& grid,
                         GlmSolver::Method method, ExecPolicy policy) {
    return GlmSolver(spec, grid, method).full(policy);
}

CVec bnft_windowed(const ContinuousSpectrum& spec, const NftGrid& grid, double t_start,
                   double t_end, GlmSolver::Method method) {
    return GlmSolver(spec, grid, method).window(t_start, t_end);
}

}  // namespace nfdm
