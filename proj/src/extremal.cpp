#include "besov/extremal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "besov/error.hpp"

namespace besov {

namespace {

constexpr double kTaylorThreshold = 1e-8;
constexpr double kEdgeTol = 1e-12;

const double kSqrtTwoOverPi = std::sqrt(2.0 / std::numbers::pi);

double shell_1d(double lo, double hi, double lam) {
    const double x = std::abs(lam);
    if (std::abs(x - hi) <= kEdgeTol * hi) return 0.5;
    if (lo > 0.0 && std::abs(x - lo) <= kEdgeTol * lo) return 0.5;
    return (x > lo && x < hi) ? 1.0 : 0.0;
}

double box_weight(double sigma, double lam) {
    const double x = std::abs(lam);
    if (std::abs(x - sigma) <= kEdgeTol * sigma) return 0.5;
    return x < sigma ? 1.0 : 0.0;
}

std::string format_r(const SmoothnessVector& sv) {
    std::ostringstream os;
    for (std::size_t j = 0; j < sv.dim(); ++j) os << (j ? "," : "") << sv.r()[j];
    return os.str();
}

std::vector<double> axis_factor(double sigma, const AxisSpec& axis) {
    std::vector<double> out(axis.points());
    for (std::size_t k = 0; k < axis.points(); ++k) {
        out[k] = periodic_sinc_factor(sigma, axis.half_width(), axis.node(k));
    }
    return out;
}

void require_strict_nyquist(const ExtremalSpec& spec, const Axes& axes) {
    if (axes.size() != spec.sv.dim()) throw ShapeError("grid dimension does not match the smoothness vector");
    const FrequencyBox outer = block(spec.sv, spec.n);
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const double limit = std::numbers::pi / axes[j].spacing();
        if (!(outer.sigma()[j] < limit * (1.0 - kEdgeTol))) {
            std::ostringstream os;
            os << "Nyquist violation on axis " << j << ": a_j^n = " << outer.sigma()[j] << " must stay below pi/h = "
               << limit;
            throw NyquistError(os.str());
        }
    }
}

}  // namespace

ExtremalSpec::ExtremalSpec(SmoothnessVector sv_in, int n_in, double p_in, double c1_in)
    : sv(std::move(sv_in)), n(n_in), p(p_in), p_conjugate(0.0), c1(c1_in) {
    if (n < 1) throw ParameterError("extremal level n must be >= 1");
    if (!(p > 1.0) || std::isinf(p)) throw ParameterError("extremal exponent p must lie in (1, inf)");
    if (!(c1 >= 0.0) || !std::isfinite(c1)) throw ParameterError("C1 must be finite and non-negative");
    p_conjugate = p / (p - 1.0);
}

double ExtremalSpec::g1_scale() const {
    const double d = static_cast<double>(sv.dim());
    return std::exp2(-static_cast<double>(n) * (sv.g() + d / p_conjugate));
}

double sinc_factor(double sigma, double x) {
    if (std::abs(x) < kTaylorThreshold) {
        const double u2 = sigma * x * sigma * x;
        return sigma * (1.0 - u2 / 6.0 + u2 * u2 / 120.0);
    }
    return std::sin(sigma * x) / x;
}

double eval_F(const ExtremalSpec& spec, std::span<const double> x) {
    if (x.size() != spec.sv.dim()) throw ShapeError("point dimension does not match the smoothness vector");
    double outer = 1.0;
    double inner = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double a = spec.sv.a()[j];
        outer *= kSqrtTwoOverPi * sinc_factor(std::pow(a, spec.n), x[j]);
        inner *= kSqrtTwoOverPi * sinc_factor(std::pow(a, spec.n - 1), x[j]);
    }
    return outer - inner;
}

double periodic_sinc_factor(double sigma, double half_width, double x) {
    const double dl = std::numbers::pi / half_width;
    const double q = sigma / dl;
    const double nearest = std::round(q);
    const bool on_edge = nearest >= 1.0 && std::abs(q - nearest) <= kEdgeTol * q;
    // Full-weight nodes |m| <= k; with an edge hit, the nodes |m| = k + 1 carry weight 1/2.
    const double k = on_edge ? nearest - 1.0 : std::ceil(q) - 1.0;
    const double theta = dl * x;
    double kernel;
    const double s = std::sin(0.5 * theta);
    if (s == 0.0) {
        kernel = 2.0 * k + 1.0 + (on_edge ? 1.0 : 0.0);
    } else {
        kernel = std::sin((k + 0.5) * theta) / s;
        if (on_edge) kernel += std::cos((k + 1.0) * theta);
    }
    return dl / std::sqrt(2.0 * std::numbers::pi) * kernel;
}

double eval_F_periodic(const ExtremalSpec& spec, const Axes& axes, std::span<const double> x) {
    if (x.size() != spec.sv.dim() || axes.size() != spec.sv.dim()) {
        throw ShapeError("point dimension does not match the smoothness vector");
    }
    double outer = 1.0;
    double inner = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double a = spec.sv.a()[j];
        outer *= periodic_sinc_factor(std::pow(a, spec.n), axes[j].half_width(), x[j]);
        inner *= periodic_sinc_factor(std::pow(a, spec.n - 1), axes[j].half_width(), x[j]);
    }
    return outer - inner;
}

double chi(const ExtremalSpec& spec, std::span<const double> lambda) { return chi(spec.sv, spec.n, lambda); }

double chi(const SmoothnessVector& sv, int n, std::span<const double> lambda) {
    if (n < 0) throw ParameterError("chi level must be >= 0");
    if (lambda.size() != sv.dim()) throw ShapeError("frequency dimension does not match the smoothness vector");
    double v = 1.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (n == 0) {
            v *= box_weight(1.0, lambda[j]);
        } else {
            const double a = sv.a()[j];
            v *= shell_1d(std::pow(a, n - 1), std::pow(a, n), lambda[j]);
        }
        if (v == 0.0) break;
    }
    return v;
}

double shell_indicator(const SmoothnessVector& sv, int n, std::span<const double> lambda) {
    if (n < 0) throw ParameterError("shell level must be >= 0");
    if (lambda.size() != sv.dim()) throw ShapeError("frequency dimension does not match the smoothness vector");
    double outer = 1.0;
    double inner = n == 0 ? 0.0 : 1.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        const double a = sv.a()[j];
        outer *= box_weight(std::pow(a, n), lambda[j]);
        if (n > 0) inner *= box_weight(std::pow(a, n - 1), lambda[j]);
    }
    return outer - inner;
}

GridFunction gen_F(const ExtremalSpec& spec, const Axes& axes) {
    require_strict_nyquist(spec, axes);
    const std::size_t d = axes.size();
    std::vector<std::vector<double>> outer;
    std::vector<std::vector<double>> inner;
    for (std::size_t j = 0; j < d; ++j) {
        const double a = spec.sv.a()[j];
        outer.push_back(axis_factor(std::pow(a, spec.n), axes[j]));
        inner.push_back(axis_factor(std::pow(a, spec.n - 1), axes[j]));
    }
    std::vector<Complex> values(total_points(axes));
    std::vector<std::size_t> c(d, 0);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        double po = 1.0;
        double pi = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            po *= outer[j][c[j]];
            pi *= inner[j][c[j]];
        }
        values[flat] = po - pi;
        for (std::size_t j = d; j-- > 0;) {
            if (++c[j] < axes[j].points()) break;
            c[j] = 0;
        }
    }
    std::ostringstream label;
    label << "F_n(r=" << format_r(spec.sv) << ",n=" << spec.n << ")";
    return GridFunction(axes, std::move(values), label.str());
}

GridFunction gen_g1(const ExtremalSpec& spec, const Axes& axes) {
    const GridFunction f = gen_F(spec, axes);
    const double factor = spec.c1 * spec.g1_scale();
    std::vector<Complex> values(f.values().begin(), f.values().end());
    for (auto& v : values) v *= factor;
    std::ostringstream label;
    label.precision(17);
    label << "g1(r=" << format_r(spec.sv) << ",n=" << spec.n << ",p=" << spec.p << ",C1=" << spec.c1 << ")";
    return GridFunction(axes, std::move(values), label.str());
}

}  // namespace besov
