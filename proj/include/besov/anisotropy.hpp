#pragma once

#include <cstddef>
#include <vector>

#include "besov/lattice.hpp"
#include "besov/spectral.hpp"

namespace besov {

/**
 * Anisotropic smoothness r = (r_1, ..., r_d) with its derived quantities:
 * g = (d^{-1} sum_j 1/r_j)^{-1}, radii a_j = 2^{g / r_j} and weight b = 2^g.
 * Since sum_j g / r_j = d, the radii always multiply to 2^d.
 */
class SmoothnessVector {
public:
    explicit SmoothnessVector(std::vector<double> r);

    const std::vector<double>& r() const { return r_; }
    std::size_t dim() const { return r_.size(); }
    double g() const { return g_; }
    const std::vector<double>& a() const { return a_; }
    double b() const { return b_; }

private:
    std::vector<double> r_;
    double g_;
    std::vector<double> a_;
    double b_;
};

SmoothnessVector smoothness(const std::vector<double>& r);

/// D_{a^s}: the box |lambda_j| < a_j^s.
FrequencyBox block(const SmoothnessVector& sv, int s);

/// Largest s such that block(sv, s) passes the Nyquist check on `axes` (-1 if none).
int max_admissible_level(const SmoothnessVector& sv, const Axes& axes);

struct LayerDecomposition {
    SmoothnessVector base;
    std::vector<GridFunction> layers;  // layers[s] = f_{a^s}, s = 0..cutoff
    int cutoff;
};

/// a-layering of f up to level S from a single forward transform.
LayerDecomposition layer_decompose(const GridFunction& f, const SmoothnessVector& sv, int cutoff);

struct BesovTerm {
    int s;
    double lp;        // ||f_{a^s}||_p
    double weighted;  // b^s ||f_{a^s}||_p
};

struct BesovNormResult {
    double norm;
    std::vector<BesovTerm> terms;
    bool truncation_warning;  // last weighted term > 10% of the norm
};

/**
 * (sum_{s<=S} b^{s theta} ||f_{a^s}||_p^theta)^{1/theta}, or max_s b^s ||f_{a^s}||_p
 * for theta = inf. The equivalence constants are taken to be 1.
 */
BesovNormResult besov_norm(const GridFunction& f, const SmoothnessVector& sv, double p, double theta, int cutoff);
BesovNormResult besov_norm(const SpectrumFunction& spectrum, const SmoothnessVector& sv, double p, double theta,
                           int cutoff);

struct EmbeddingParams {
    double kappa;
    std::vector<double> rho;  // rho_j = r_j kappa
    bool valid;               // kappa > 0
};

/// kappa = 1 - (1/p - 1/p') sum_j 1/r_j for 1 <= p <= p' <= inf.
EmbeddingParams embedding_params(const SmoothnessVector& sv, double p, double p_prime);

}  // namespace besov
