#include "besov/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "besov/error.hpp"

namespace besov {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::atomic<unsigned> g_thread_override{0};

std::string format_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j) os << ", ";
        os << x[j];
    }
    os << ')';
    return os.str();
}

constexpr std::size_t kPairwiseLeaf = 8;

double pairwise_serial(const double* a, std::size_t n) {
    if (n <= kPairwiseLeaf) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_serial(a, half) + pairwise_serial(a + half, n - half);
}

// Evaluates the same tree as pairwise_serial, computing the subtrees at a fixed
// depth concurrently and combining them in tree order.
double pairwise_parallel(const double* a, std::size_t n, unsigned depth) {
    if (depth == 0 || n <= kPairwiseLeaf) return pairwise_serial(a, n);
    const std::size_t half = n / 2;
    double left = 0.0;
    std::thread t([&] { left = pairwise_parallel(a, half, depth - 1); });
    const double right = pairwise_parallel(a + half, n - half, depth - 1);
    t.join();
    return left + right;
}

}  // namespace

AxisSpec::AxisSpec(double half_width, std::size_t points) : half_width_(half_width), points_(points) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ParameterError("axis half-width L must be positive and finite");
    }
    if (points < 4 || !is_power_of_two(points)) {
        throw ParameterError("axis point count N must be a power of two >= 4, got " + std::to_string(points));
    }
}

std::size_t total_points(const Axes& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.points();
    return n;
}

std::vector<std::size_t> unravel(const Axes& axes, std::size_t flat) {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t j = axes.size(); j-- > 0;) {
        idx[j] = flat % axes[j].points();
        flat /= axes[j].points();
    }
    return idx;
}

GridFunction::GridFunction(Axes axes, std::vector<Complex> values, std::string label)
    : axes_(std::move(axes)), values_(std::move(values)), label_(std::move(label)) {
    if (axes_.empty()) throw ParameterError("grid needs at least one axis");
    if (values_.size() != total_points(axes_)) {
        throw ShapeError("grid value count " + std::to_string(values_.size()) + " does not match axes (" +
                         std::to_string(total_points(axes_)) + ")");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
            throw InputError("non-finite grid value at flat index " + std::to_string(i));
        }
    }
}

GridFunction GridFunction::zeros(const Axes& axes, std::string label) {
    return GridFunction(axes, std::vector<Complex>(total_points(axes)), std::move(label));
}

double GridFunction::cell_volume() const {
    double v = 1.0;
    for (const auto& a : axes_) v *= a.spacing();
    return v;
}

GridFunction GridFunction::relabeled(std::string label) const {
    GridFunction out = *this;
    out.label_ = std::move(label);
    return out;
}

GridFunction make_grid(const Axes& axes, const Evaluator& evaluator, std::string label) {
    if (axes.empty()) throw ParameterError("grid needs at least one axis");
    const std::size_t n = total_points(axes);
    std::vector<Complex> values(n);
    std::vector<std::size_t> bad;
    std::atomic<bool> failed{false};
    parallel_for(n, [&](std::size_t i) {
        const auto idx = unravel(axes, i);
        std::vector<double> x(axes.size());
        for (std::size_t j = 0; j < axes.size(); ++j) x[j] = axes[j].node(idx[j]);
        values[i] = evaluator(x);
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) failed = true;
    });
    if (failed) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(values[i].real()) && std::isfinite(values[i].imag())) continue;
            const auto idx = unravel(axes, i);
            std::vector<double> x(axes.size());
            for (std::size_t j = 0; j < axes.size(); ++j) x[j] = axes[j].node(idx[j]);
            throw InputError("evaluator '" + label + "' returned a non-finite value at x = " + format_point(x));
        }
    }
    return GridFunction(axes, std::move(values), std::move(label));
}

double pairwise_sum(std::span<const double> terms) {
    const unsigned threads = thread_count();
    if (threads <= 1 || terms.size() < (std::size_t{1} << 16)) return pairwise_serial(terms.data(), terms.size());
    unsigned depth = 0;
    while ((1u << (depth + 1)) <= threads && depth < 6) ++depth;
    return pairwise_parallel(terms.data(), terms.size(), depth);
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0) || std::isinf(p)) {
        throw ParameterError("lp_norm needs 1 <= p < inf (route p = inf to linf_norm)");
    }
    const double peak = linf_norm(f);
    if (peak == 0.0) return 0.0;
    const auto values = f.values();
    std::vector<double> terms(values.size());
    parallel_for(values.size(), [&](std::size_t i) { terms[i] = std::pow(std::abs(values[i]) / peak, p); });
    return peak * std::pow(pairwise_sum(terms) * f.cell_volume(), 1.0 / p);
}

double linf_norm(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double norm(const GridFunction& f, double p) { return std::isinf(p) ? linf_norm(f) : lp_norm(f, p); }

GridFunction combine(const GridFunction& f, const GridFunction& g, CombineOp op, Complex c) {
    if (op == CombineOp::scale) {
        std::vector<Complex> out(f.values().begin(), f.values().end());
        for (auto& v : out) v *= c;
        std::ostringstream label;
        label << "scale(" << f.label() << ", " << c << ")";
        return GridFunction(f.axes(), std::move(out), label.str());
    }
    if (f.axes() != g.axes()) throw ShapeError("combine: grids have different axes");
    std::vector<Complex> out(f.size());
    const bool adding = op == CombineOp::add;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = adding ? f[i] + g[i] : f[i] - g[i];
    return GridFunction(f.axes(), std::move(out), (adding ? "add(" : "sub(") + f.label() + ", " + g.label() + ")");
}

GridFunction add(const GridFunction& f, const GridFunction& g) { return combine(f, g, CombineOp::add); }
GridFunction sub(const GridFunction& f, const GridFunction& g) { return combine(f, g, CombineOp::sub); }
GridFunction scale(const GridFunction& f, Complex c) { return combine(f, f, CombineOp::scale, c); }

double sinc_tail_bound(double half_width, double p) {
    if (!(p > 1.0)) throw ParameterError("sinc tail bound needs p > 1 (1/|x| decay is not integrable at p = 1)");
    if (std::isinf(p)) return 0.0;
    return std::pow(2.0 * std::pow(half_width, 1.0 - p) / (p - 1.0), 1.0 / p);
}

void check_tail(const Axes& axes, double p, double amplitude, double norm_value, double tolerance) {
    if (std::isinf(p)) return;
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const double rel = amplitude * sinc_tail_bound(axes[j].half_width(), p) / norm_value;
        if (rel > tolerance) {
            std::ostringstream os;
            os << "domain too small on axis " << j << ": relative L_" << p << " tail bound " << rel << " > "
               << tolerance << " (increase L)";
            throw InputError(os.str());
        }
    }
}

unsigned thread_count() {
    if (const unsigned o = g_thread_override.load(); o != 0) return o;
    if (const char* env = std::getenv("BESOV_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(unsigned n) { g_thread_override = n; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n / 1024 + 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, &errors, t, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace besov
