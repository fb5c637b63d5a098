#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "nfdm/fft_util.hpp"
#include "nfdm/types.hpp"

namespace nfdm {

enum class ExecPolicy : uint8_t { Serial, OpenMP };

/// Continuous part of the nonlinear spectrum on a uniform real lambda grid.
/// rho = b/a; a, b are present after a forward transform, optional otherwise.
struct ContinuousSpectrum {
    double lambda_min = 0.0;
    double dlambda = 0.0;
    std::size_t n = 0;
    CVec rho;
    CVec a;  // may be empty
    CVec b;  // may be empty

    double lambda_at(std::size_t k) const { return lambda_min + static_cast<double>(k) * dlambda; }
    bool has_ab() const { return !a.empty() && !b.empty(); }

    // max_k | |a|^2 + |b|^2 - 1 | (focusing-case unimodularity defect).
    double unimodularity_defect() const;
    // max_k |rho - b/a| / max|rho|; 0 when a, b absent.
    double rho_consistency_defect() const;
    void validate() const;
};

/// Time-grid / lambda-grid pairing for the transforms. The default lambda
/// grid is the image of the sampling bandwidth under lambda = -omega/2:
/// n_lambda = n_t points on [-pi/(2 dt), pi/(2 dt)).
struct NftGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t nt = 0;
    double lambda_min = 0.0;
    double dlambda = 0.0;
    std::size_t nlambda = 0;

    static NftGrid for_envelope(const ComplexEnvelope& env);
    double t_end() const { return t0 + static_cast<double>(nt - 1) * dt; }
};

/// Zakharov-Shabat scattering on the real axis by per-sample piecewise-
/// constant transfer matrices (exact 2x2 exponential per sample). Requires
/// normalized units. Discrete eigenvalues are not computed.
ContinuousSpectrum fnft_continuous(const ComplexEnvelope& q, const NftGrid& grid,
                                   ExecPolicy policy = ExecPolicy::OpenMP);

/// rho(lambda) = S(omega)|_{omega = -2 lambda}, S the ordinary Fourier
/// transform (kernel e^{-j omega t}) of the normalized envelope; exact
/// bin-for-bin map on the paired grids.
ContinuousSpectrum nis_encode(const ComplexEnvelope& s);
ComplexEnvelope nis_decode(const ContinuousSpectrum& spec, const NftGrid& grid);

/// Link precompensation: rho *= exp(-j 4 lambda^2 L_norm), the inverse of the
/// channel's nonlinear-spectrum evolution, so the zero-noise received
/// spectrum equals the unpropagated one. |rho| is unchanged pointwise.
ContinuousSpectrum precompensate(const ContinuousSpectrum& spec, double L_norm);

/// The channel's own spectral evolution over normalized distance L_norm:
/// rho *= exp(+j 4 lambda^2 L_norm).
ContinuousSpectrum channel_spectral_phase(const ContinuousSpectrum& spec, double L_norm);

/// (1/pi) * integral of ln(1 + |rho|^2) d lambda (trapezoid); equals the
/// time-domain energy when the spectrum is purely continuous.
double spectral_energy(const ContinuousSpectrum& spec);

/// Smallest A >= 0 with (1/pi) * integral ln(1 + A^2 |rho|^2) = target.
double solve_amplitude_for_energy(const std::vector<double>& rho_abs2, double dlambda,
                                  double target_energy);

struct GlmWorkStats {
    std::atomic<uint64_t> point_solves{0};
    std::atomic<uint64_t> cg_iterations{0};
};

/// Warm-start carrier for chained point solves. The stored solution is
/// re-aligned by the kernel-grid offset between consecutive requests.
struct GlmWarmState {
    long m0 = 0;
    bool valid = false;
    CVec x;
};

/// Backward transform via the Gelfand-Levitan-Marchenko equations: the input
/// kernel F is the inverse Fourier transform of rho; for each output time t
/// the coupled integral equations are discretized on [t, y_max] (Nystrom,
/// trapezoid) and q(t) = -2 K1(t, t). Vanishing boundary conditions; no
/// discrete spectrum.
class GlmSolver {
public:
    enum class Method : uint8_t {
        Fast,            // reduced Hermitian system, CG with FFT Hankel products
        DenseReference,  // direct LU on the coupled Nystrom system
    };

    GlmSolver(const ContinuousSpectrum& spec, const NftGrid& grid,
              Method method = Method::Fast);

    // Single output point, cold start.
    Cd solve_point(double t) const;

    // Single output point, warm-started from `warm` (updated in place).
    Cd solve_point_warm(double t, GlmWarmState& warm) const;

    // All points of `grid`'s time axis mirrored: t in [-t_end, -t0].
    // Cold per-point solves (restriction-identical with windowed calls).
    ComplexEnvelope full(ExecPolicy policy = ExecPolicy::OpenMP) const;

    // Samples on [t_start, t_end] with the grid spacing; per-point cold
    // solves, cost proportional to the number of requested points.
    CVec window(double t_start, double t_end) const;

    // Block-warm-started full evaluation (fixed 64-point blocks, results
    // independent of thread count). Production TX path.
    ComplexEnvelope full_warm(ExecPolicy policy = ExecPolicy::OpenMP) const;

    GlmWorkStats& stats() const { return stats_; }
    double q_grid_t0() const { return -grid_.t_end(); }
    double q_grid_dt() const { return grid_.dt; }
    std::size_t q_grid_n() const { return grid_.nt; }

    // GLM input kernel on x_m = kernel_x0() + m * kernel_dx() (for tests).
    const CVec& kernel() const { return F_; }
    double kernel_x0() const { return x0_; }
    double kernel_dx() const { return dx_; }

private:
    Cd solve_point_impl(double t, GlmWarmState* warm) const;
    Cd solve_dense(long m0, long n_dom) const;
    Cd solve_cg(long m0, long n_dom, GlmWarmState* warm) const;

    NftGrid grid_;
    Method method_;
    CVec F_;             // GLM input kernel on x_m = x0 + m dx
    double x0_ = 0.0;
    double dx_ = 0.0;    // = 2 dt
    double f_scale_ = 0.0;
    long m_eff_ = 0;     // last index with non-negligible |F|
    mutable GlmWorkStats stats_;
};

/// Convenience wrappers for the two spec-level entry points.
ComplexEnvelope bnft_glm(const ContinuousSpectrum& spec, const NftGrid& grid,
                         GlmSolver::Method method = GlmSolver::Method::Fast,
                         ExecPolicy policy = ExecPolicy::OpenMP);
CVec bnft_windowed(const ContinuousSpectrum& spec, const NftGrid& grid, double t_start,
                   double t_end, GlmSolver::Method method = GlmSolver::Method::Fast);

}  // namespace nfdm
