#pragma once

#include <span>

#include "besov/anisotropy.hpp"
#include "besov/lattice.hpp"

namespace besov {

/// Parameters of the lower-bound witness at level n for exponent p (p' its conjugate).
struct ExtremalSpec {
    ExtremalSpec(SmoothnessVector sv, int n, double p, double c1 = 1.0);

    SmoothnessVector sv;
    int n;
    double p;
    double p_conjugate;
    double c1;

    /// 2^{-n (g + d / p')}
    double g1_scale() const;
};

/// sin(sigma x) / x with the removable singularity filled in (3-term Taylor for |x| < 1e-8).
double sinc_factor(double sigma, double x);

/// F_n(x) = prod_j sqrt(2/pi) sin(a_j^n x_j)/x_j - prod_j sqrt(2/pi) sin(a_j^{n-1} x_j)/x_j on R^d.
double eval_F(const ExtremalSpec& spec, std::span<const double> x);

/**
 * L-periodic analogue of sqrt(2/pi) sin(sigma x)/x on [-L, L): the inverse transform
 * of the box weight |lambda| < sigma (1/2 on the edge) restricted to lambda in (pi/L) Z.
 * Closed form (dlambda / sqrt(2 pi)) * modified Dirichlet kernel.
 */
double periodic_sinc_factor(double sigma, double half_width, double x);

/// F_n built from periodic_sinc_factor on each axis of `axes`.
double eval_F_periodic(const ExtremalSpec& spec, const Axes& axes, std::span<const double> x);

/// Paper's product of 1D shells: prod_j chi_n(lambda_j), values in {0, 1/2^k, 1}.
double chi(const ExtremalSpec& spec, std::span<const double> lambda);
double chi(const SmoothnessVector& sv, int n, std::span<const double> lambda);

/// Exact transform of F_n: W_{a^n}(lambda) - W_{a^{n-1}}(lambda) with box weights (1/2 on faces).
double shell_indicator(const SmoothnessVector& sv, int n, std::span<const double> lambda);

/// Grid of the periodic F_n, evaluated node by node in closed form. Throws NyquistError
/// unless a_j^n < pi / h_j on every axis.
GridFunction gen_F(const ExtremalSpec& spec, const Axes& axes);

/// C1 * 2^{-n (g + d/p')} * F_n on the grid.
GridFunction gen_g1(const ExtremalSpec& spec, const Axes& axes);

}  // namespace besov
