#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace besov {

using Complex = std::complex<double>;
using Point = std::vector<double>;

/// One axis of the truncated box [-L, L) sampled at N points (N a power of two, N >= 4).
class AxisSpec {
public:
    AxisSpec(double half_width, std::size_t points);

    double half_width() const { return half_width_; }
    std::size_t points() const { return points_; }
    double spacing() const { return 2.0 * half_width_ / static_cast<double>(points_); }
    double node(std::size_t k) const { return -half_width_ + static_cast<double>(k) * spacing(); }

    friend bool operator==(const AxisSpec&, const AxisSpec&) = default;

private:
    double half_width_;
    std::size_t points_;
};

using Axes = std::vector<AxisSpec>;

std::size_t total_points(const Axes& axes);

/// Row-major flat index -> per-axis indices (last axis fastest).
std::vector<std::size_t> unravel(const Axes& axes, std::size_t flat);

/**
 * Complex samples of a function on a uniform box grid.
 *
 * Immutable after construction: every value is finite and the value count
 * matches the product of the axis sizes, or construction throws.
 */
class GridFunction {
public:
    GridFunction(Axes axes, std::vector<Complex> values, std::string label = {});

    static GridFunction zeros(const Axes& axes, std::string label = "zero");

    const Axes& axes() const { return axes_; }
    std::size_t dim() const { return axes_.size(); }
    std::size_t size() const { return values_.size(); }
    std::span<const Complex> values() const { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    const std::string& label() const { return label_; }

    /// Product of the grid spacings (the quadrature cell volume).
    double cell_volume() const;

    GridFunction relabeled(std::string label) const;

private:
    Axes axes_;
    std::vector<Complex> values_;
    std::string label_;
};

using Evaluator = std::function<Complex(std::span<const double>)>;

/// Samples `evaluator` at x_k = -L_j + k_j h_j. Throws InputError naming the node
/// if the evaluator returns a non-finite value.
GridFunction make_grid(const Axes& axes, const Evaluator& evaluator, std::string label = "evaluator");

/// Rectangle-rule L_p norm with pairwise summation, p in [1, inf).
double lp_norm(const GridFunction& f, double p);

/// max |f| over the nodes. A lower estimate of the essential supremum that is
/// faithful when h_j <= pi / (4 sigma_j) for the band limit sigma in play.
double linf_norm(const GridFunction& f);

/// lp_norm for finite p, linf_norm for p = inf.
double norm(const GridFunction& f, double p);

enum class CombineOp { add, sub, scale };

/// Pointwise f op g (or c * f for scale, where g is ignored).
GridFunction combine(const GridFunction& f, const GridFunction& g, CombineOp op, Complex c = 1.0);
GridFunction add(const GridFunction& f, const GridFunction& g);
GridFunction sub(const GridFunction& f, const GridFunction& g);
GridFunction scale(const GridFunction& f, Complex c);

/// Deterministic pairwise sum; the split point is always the midpoint, so the
/// reduction tree depends only on the length.
double pairwise_sum(std::span<const double> terms);

// Tail bound (int_{|x|>L} |sin x / x|^p dx)^{1/p} <= (2 L^{1-p} / (p - 1))^{1/p}, per axis.
double sinc_tail_bound(double half_width, double p);

/**
 * Throws InputError if the sinc tail bound on any axis, scaled by `amplitude`
 * (a bound on |x f(x)| along that axis) and relative to `norm_value`, exceeds
 * `tolerance`. Only meaningful for functions sampled directly on R with 1/|x| decay.
 */
void check_tail(const Axes& axes, double p, double amplitude, double norm_value, double tolerance = 1e-3);

/// Worker count from BESOV_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, n) across thread_count() workers. Each index is
/// written by exactly one worker so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace besov
