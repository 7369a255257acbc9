#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "besov/anisotropy.hpp"
#include "besov/lattice.hpp"
#include "besov/spectral.hpp"

namespace besov {

/// ||f - S_{a^{n-1}}(f)||_inf on the grid.
double approx_error(const GridFunction& f, const SmoothnessVector& sv, int n);

struct SlopeFit {
    double slope;
    double intercept;
    double residual_rms;
};

/// Ordinary least squares of log2(error) against n.
SlopeFit fit_slope(const std::vector<std::pair<int, double>>& points);

/**
 * Per-level grid choice: L stays fixed, N_j is the smallest power of two >= base_points_j
 * giving at least `samples_per_period` nodes per period of a_j^n, i.e.
 * h_j <= 2 pi / (samples_per_period * a_j^n).
 */
struct GridPolicy {
    std::vector<double> half_width;
    std::vector<std::size_t> base_points;
    double samples_per_period = 8.0;
    std::size_t max_points = std::size_t{1} << 22;

    Axes axes_for_level(const SmoothnessVector& sv, int n) const;
};

/// True if some band edge a_j^s, s in [0, max_level], lands on a frequency node of `axes`.
bool edges_on_grid(const SmoothnessVector& sv, const Axes& axes, int max_level);

struct RateOptions {
    std::vector<double> r;
    double p = 2.0;
    double theta = 1.0;
    int n_min = 2;
    int n_max = 6;
    GridPolicy policy;
    double c1 = 1.0;
    double normalize_theta = 1.0;
    std::optional<int> cutoff;  // Besov layer cutoff; default n_max + 2, capped by the grid
};

struct RateEntry {
    int n;
    double error;
    std::vector<std::size_t> points;
    double besov_norm;
    int cutoff_used;
    bool nyquist_warning;
    bool edge_on_grid;
};

struct RateReport {
    SmoothnessVector sv;
    double p;
    double theta;
    double normalize_theta;
    std::vector<RateEntry> entries;
    double fitted_slope;
    double fitted_intercept;
    double predicted_slope;
    double residual_rms;
    std::string config_digest;
};

/// -(g - d/p)
double predicted_slope(const SmoothnessVector& sv, double p);

/// Measures the approximation error of the unit-normalized witness g_1^{(n)} for each n
/// and fits the decay rate. Throws ParameterError naming the failing precondition.
RateReport rate_experiment(const RateOptions& options);

struct NikolskiiResult {
    double lhs;
    double rhs;
    bool holds;
};

/// ||g||_{p2} <= 2^d (prod nu_j)^{1/p1 - 1/p2} ||g||_{p1} for g band-limited in nu.
NikolskiiResult nikolskii_check(const GridFunction& g, const FrequencyBox& nu, double p1, double p2);

/**
 * Sparse real trigonometric polynomial with all frequencies in the shell Gamma_{a^s}.
 * `terms` holds (frequency node m, amplitude c) meaning the function
 * sum c e^{i lambda_m . x}, lambda_{m,j} = m_j pi / L_j. The list is closed under
 * m -> -m with conjugated amplitude.
 */
struct BandLimitedSample {
    std::uint64_t seed;
    int shell;
    std::vector<std::pair<std::vector<long>, Complex>> terms;
};

/**
 * `count` samples from one mt19937_64 stream seeded with `seed`. Each sample draws 8
 * frequency nodes uniformly from the grid nodes strictly inside Gamma_{a^s}, with
 * amplitude modulus uniform in [0.5, 1) and uniform phase, and adds the conjugate partners.
 */
std::vector<BandLimitedSample> random_bandlimited_samples(std::uint64_t seed, const SmoothnessVector& sv, int s,
                                                          std::size_t count, const Axes& axes);
GridFunction synthesize(const BandLimitedSample& sample, const Axes& axes);
std::vector<GridFunction> random_bandlimited(std::uint64_t seed, const SmoothnessVector& sv, int s,
                                             std::size_t count, const Axes& axes);

/**
 * Random real, decaying band-limited 1D function with spectrum split into two parts:
 * |lambda| <= low_band and high_lo <= |lambda| <= high_hi. Built from modulated,
 * translated Fejer kernels (sin(beta t/2)/(beta t/2))^2, which decay like 1/t^2.
 */
GridFunction random_wave_packets(std::uint64_t seed, const AxisSpec& axis, double low_band, double high_lo,
                                 double high_hi);

struct EmbeddingProbeLevel {
    int n;
    double max_ratio;
};

struct EmbeddingProbeResult {
    double kappa;
    std::vector<EmbeddingProbeLevel> levels;
    double drift;  // max_ratio(last level) / max_ratio(first level)
};

/// max over random shell-n samples of ||f||_{B^rho_{p',theta'}} / ||f||_{B^r_{p,theta}}.
EmbeddingProbeResult embedding_probe(const SmoothnessVector& sv, double p, double p_prime, double theta,
                                     double theta_prime, int n_min, int n_max, std::size_t count,
                                     std::uint64_t seed, const GridPolicy& policy);

}  // namespace besov
