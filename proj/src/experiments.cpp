#include "besov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "besov/error.hpp"
#include "besov/extremal.hpp"
#include "besov/format.hpp"

namespace besov {

namespace {

// Maps raw mt19937_64 output to [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return std::min(hi, lo + static_cast<long>(std::floor(uniform01(rng) * span)));
}

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

std::string canonical_form(const RateOptions& o) {
    std::ostringstream os;
    os << "r=" << format_list(o.r) << "\np=" << format_double(o.p) << "\ntheta=" << format_double(o.theta)
       << "\nn_min=" << o.n_min << "\nn_max=" << o.n_max << "\nL=" << format_list(o.policy.half_width) << "\nN=";
    for (std::size_t j = 0; j < o.policy.base_points.size(); ++j) os << (j ? "," : "") << o.policy.base_points[j];
    os << "\nsamples_per_period=" << format_double(o.policy.samples_per_period)
       << "\nmax_points=" << o.policy.max_points << "\nC1=" << format_double(o.c1)
       << "\nnormalize_theta=" << format_double(o.normalize_theta)
       << "\ncutoff=" << (o.cutoff ? std::to_string(*o.cutoff) : "auto") << "\n";
    return os.str();
}

}  // namespace

double approx_error(const GridFunction& f, const SmoothnessVector& sv, int n) {
    if (n < 1) throw ParameterError("approximation level n must be >= 1");
    if (sv.dim() != f.dim()) throw ShapeError("smoothness vector dimension does not match grid");
    return linf_norm(sub(f, fourier_section(f, block(sv, n - 1))));
}

SlopeFit fit_slope(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 2) throw ParameterError("slope fit needs at least 2 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].second > 0.0) || !std::isfinite(points[i].second)) {
            throw ParameterError("slope fit: error at index " + std::to_string(i) + " is not positive");
        }
    }
    const auto m = static_cast<double>(points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [n, e] : points) {
        mean_x += n;
        mean_y += std::log2(e);
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [n, e] : points) {
        const double dx = n - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log2(e) - mean_y);
    }
    if (sxx == 0.0) throw ParameterError("slope fit: all points share the same n");
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double ss = 0.0;
    for (const auto& [n, e] : points) {
        const double r = std::log2(e) - (intercept + slope * n);
        ss += r * r;
    }
    return SlopeFit{slope, intercept, std::sqrt(ss / m)};
}

Axes GridPolicy::axes_for_level(const SmoothnessVector& sv, int n) const {
    if (half_width.size() != sv.dim() || base_points.size() != sv.dim()) {
        throw ParameterError("grid policy needs one L and one N per axis (d = " + std::to_string(sv.dim()) + ")");
    }
    if (!(samples_per_period >= 2.0)) throw ParameterError("grid policy needs samples_per_period >= 2");
    Axes axes;
    for (std::size_t j = 0; j < sv.dim(); ++j) {
        const double sigma = std::pow(sv.a()[j], n);
        const double needed = 2.0 * half_width[j] * samples_per_period * sigma / (2.0 * std::numbers::pi);
        std::size_t points = std::max<std::size_t>(base_points[j], 4);
        while (static_cast<double>(points) < needed) {
            points *= 2;
            if (points > max_points) {
                std::ostringstream os;
                os << "grid policy: level n = " << n << " on axis " << j << " needs more than " << max_points
                   << " points (reduce L or n_max)";
                throw ParameterError(os.str());
            }
        }
        axes.emplace_back(half_width[j], points);
    }
    return axes;
}

bool edges_on_grid(const SmoothnessVector& sv, const Axes& axes, int max_level) {
    for (int s = 0; s <= max_level; ++s) {
        for (std::size_t j = 0; j < axes.size(); ++j) {
            const double q = std::pow(sv.a()[j], s) * axes[j].half_width() / std::numbers::pi;
            if (std::abs(q - std::round(q)) <= 1e-12 * q) return true;
        }
    }
    return false;
}

double predicted_slope(const SmoothnessVector& sv, double p) {
    return -(sv.g() - static_cast<double>(sv.dim()) / p);
}

RateReport rate_experiment(const RateOptions& o) {
    const SmoothnessVector sv(o.r);
    const double d = static_cast<double>(sv.dim());
    if (!(o.p > 1.0) || std::isinf(o.p)) throw ParameterError("rate experiment needs 1 < p < inf");
    if (!(o.theta >= 1.0)) throw ParameterError("rate experiment needs 1 <= theta <= inf");
    if (!(o.normalize_theta >= 1.0)) throw ParameterError("normalization theta must satisfy 1 <= theta <= inf");
    if (!(sv.g() > d / o.p)) {
        std::ostringstream os;
        os << "rate experiment needs g(r) > d/p, got g(r) = " << sv.g() << " <= d/p = " << d / o.p;
        throw ParameterError(os.str());
    }
    if (o.n_min < 1) throw ParameterError("rate experiment needs n_min >= 1");
    if (o.n_max - o.n_min + 1 < 3) throw ParameterError("rate experiment needs at least 3 levels (n_max - n_min >= 2)");
    const int requested_cutoff = o.cutoff.value_or(o.n_max + 2);

    RateReport report{sv, o.p, o.theta, o.normalize_theta, {}, 0.0, 0.0, predicted_slope(sv, o.p), 0.0,
                      fnv1a64_hex(canonical_form(o))};
    for (int n = o.n_min; n <= o.n_max; ++n) {
        const Axes axes = o.policy.axes_for_level(sv, n);
        const ExtremalSpec spec(sv, n, o.p, o.c1);
        const GridFunction g1 = gen_g1(spec, axes);
        const int cutoff = std::min(requested_cutoff, max_admissible_level(sv, axes));
        if (cutoff < n) {
            throw ParameterError("Besov cutoff " + std::to_string(cutoff) + " is below the witness level n = " +
                                 std::to_string(n));
        }
        const double bnorm = besov_norm(forward_ft(g1), sv, o.p, o.normalize_theta, cutoff).norm;
        if (!(bnorm > 0.0)) throw ParameterError("witness has zero Besov norm (C1 = 0?)");
        const GridFunction unit = scale(g1, 1.0 / bnorm);
        const bool warn = check_nyquist(axes, block(sv, n)) != NyquistStatus::ok ||
                          check_nyquist(axes, block(sv, n - 1)) != NyquistStatus::ok;
        std::vector<std::size_t> points;
        for (const auto& a : axes) points.push_back(a.points());
        report.entries.push_back(
            {n, approx_error(unit, sv, n), std::move(points), bnorm, cutoff, warn, edges_on_grid(sv, axes, cutoff)});
    }

    std::vector<std::pair<int, double>> fit_points;
    for (const auto& e : report.entries) {
        if (!e.nyquist_warning) fit_points.emplace_back(e.n, e.error);
    }
    if (fit_points.size() < 2) throw ParameterError("fewer than 2 levels survive the Nyquist warning filter");
    const SlopeFit fit = fit_slope(fit_points);
    report.fitted_slope = fit.slope;
    report.fitted_intercept = fit.intercept;
    report.residual_rms = fit.residual_rms;
    return report;
}

NikolskiiResult nikolskii_check(const GridFunction& g, const FrequencyBox& nu, double p1, double p2) {
    if (!(p1 >= 1.0) || !(p2 >= p1)) throw ParameterError("Nikol'skii check needs 1 <= p1 <= p2 <= inf");
    if (nu.dim() != g.dim()) throw ShapeError("frequency box dimension does not match grid");
    const SpectrumFunction spectrum = forward_ft(g);
    const double total = energy(spectrum);
    const double outside = energy_outside(spectrum, nu);
    if (outside > 1e-8 * total) {
        std::ostringstream os;
        os << "Nikol'skii check: input is not band-limited in the box (relative energy outside "
           << outside / total << " > 1e-8)";
        throw InputError(os.str());
    }
    const double d = static_cast<double>(g.dim());
    const double lhs = norm(g, p2);
    const double rhs = std::exp2(d) * std::pow(nu.volume_factor(), reciprocal(p1) - reciprocal(p2)) * norm(g, p1);
    return NikolskiiResult{lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

std::vector<BandLimitedSample> random_bandlimited_samples(std::uint64_t seed, const SmoothnessVector& sv, int s,
                                                          std::size_t count, const Axes& axes) {
    if (s < 0) throw ParameterError("shell index must be >= 0");
    if (axes.size() != sv.dim()) throw ShapeError("grid dimension does not match the smoothness vector");
    require_nyquist(axes, block(sv, s));
    constexpr double tol = 1e-12;
    // Largest |m| strictly inside a_j^s, and the inner box radius a_j^{s-1} in units of dlambda.
    std::vector<long> outer;
    std::vector<double> inner;
    bool shell_has_nodes = s == 0;
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const double dl = std::numbers::pi / axes[j].half_width();
        const double q = std::pow(sv.a()[j], s) / dl;
        long m = static_cast<long>(std::ceil(q)) - 1;
        if (std::abs(q - std::round(q)) <= tol * q) m = static_cast<long>(std::round(q)) - 1;
        m = std::min<long>(m, static_cast<long>(axes[j].points() / 2) - 1);
        outer.push_back(m);
        inner.push_back(s == 0 ? 0.0 : std::pow(sv.a()[j], s - 1) / dl);
        if (s > 0 && static_cast<double>(m) > inner.back() * (1.0 + tol)) shell_has_nodes = true;
    }
    if (!shell_has_nodes) {
        throw InputError("shell Gamma_{a^" + std::to_string(s) + "} contains no frequency node of this grid");
    }

    std::mt19937_64 rng(seed);
    std::vector<BandLimitedSample> out;
    out.reserve(count);
    constexpr int kPairs = 8;
    for (std::size_t i = 0; i < count; ++i) {
        std::map<std::vector<long>, Complex> acc;
        for (int t = 0; t < kPairs; ++t) {
            std::vector<long> node(axes.size());
            for (;;) {
                bool outside_inner = s == 0;
                for (std::size_t j = 0; j < axes.size(); ++j) {
                    node[j] = uniform_int(rng, -outer[j], outer[j]);
                    if (std::abs(static_cast<double>(node[j])) > inner[j] * (1.0 + tol)) outside_inner = true;
                }
                if (outside_inner) break;
            }
            const double modulus = 0.5 + 0.5 * uniform01(rng);
            const double phase = 2.0 * std::numbers::pi * uniform01(rng);
            const Complex c = std::polar(modulus, phase);
            std::vector<long> mirror(node.size());
            for (std::size_t j = 0; j < node.size(); ++j) mirror[j] = -node[j];
            acc[node] += c;
            acc[mirror] += std::conj(c);
        }
        BandLimitedSample sample{seed, s, {}};
        for (auto& [node, c] : acc) sample.terms.emplace_back(node, c);
        out.push_back(std::move(sample));
    }
    return out;
}

GridFunction synthesize(const BandLimitedSample& sample, const Axes& axes) {
    std::vector<Complex> coeffs(total_points(axes));
    double cell = 1.0;
    for (const auto& a : axes) cell *= std::numbers::pi / a.half_width();
    const double to_spectrum = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(axes.size())) / cell;
    for (const auto& [node, c] : sample.terms) {
        if (node.size() != axes.size()) throw ShapeError("sample dimension does not match grid");
        std::size_t flat = 0;
        for (std::size_t j = 0; j < axes.size(); ++j) {
            const long half = static_cast<long>(axes[j].points() / 2);
            if (node[j] <= -half || node[j] >= half) throw NyquistError("sample frequency outside the grid band");
            flat = flat * axes[j].points() + static_cast<std::size_t>(node[j] + half);
        }
        coeffs[flat] += c * to_spectrum;
    }
    const GridFunction raw = inverse_ft(SpectrumFunction(axes, std::move(coeffs)));
    std::vector<Complex> values(raw.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = raw[i].real();
    return GridFunction(axes, std::move(values),
                        "bandlimited(seed=" + std::to_string(sample.seed) + ",shell=" + std::to_string(sample.shell) +
                            ")");
}

std::vector<GridFunction> random_bandlimited(std::uint64_t seed, const SmoothnessVector& sv, int s,
                                             std::size_t count, const Axes& axes) {
    std::vector<GridFunction> out;
    for (const auto& sample : random_bandlimited_samples(seed, sv, s, count, axes)) {
        out.push_back(synthesize(sample, axes));
    }
    return out;
}

GridFunction random_wave_packets(std::uint64_t seed, const AxisSpec& axis, double low_band, double high_lo,
                                 double high_hi) {
    if (!(low_band > 0.0) || !(high_lo > low_band) || !(high_hi > high_lo)) {
        throw ParameterError("wave packets need 0 < low_band < high_lo < high_hi");
    }
    struct Packet {
        double amplitude, beta, omega, shift, phase;
    };
    std::mt19937_64 rng(seed);
    std::vector<Packet> packets;
    const double quarter = 0.25 * axis.half_width();
    for (int i = 0; i < 3; ++i) {
        const double beta = low_band * (0.3 + 0.7 * uniform01(rng));
        const double amp = (0.5 + 0.5 * uniform01(rng)) * (uniform01(rng) < 0.5 ? -1.0 : 1.0);
        packets.push_back({amp, beta, 0.0, quarter * (2.0 * uniform01(rng) - 1.0), 0.0});
    }
    const double width = high_hi - high_lo;
    for (int i = 0; i < 3; ++i) {
        const double beta = 0.5 * width * (0.3 + 0.7 * uniform01(rng));
        const double omega = high_lo + beta + (width - 2.0 * beta) * uniform01(rng);
        const double amp = 0.5 + 0.5 * uniform01(rng);
        packets.push_back(
            {amp, beta, omega, quarter * (2.0 * uniform01(rng) - 1.0), 2.0 * std::numbers::pi * uniform01(rng)});
    }
    return make_grid(
        {axis},
        [packets](std::span<const double> x) -> Complex {
            double v = 0.0;
            for (const auto& pk : packets) {
                const double t = x[0] - pk.shift;
                const double u = 0.5 * pk.beta * t;
                const double fejer = std::abs(u) < 1e-8 ? 1.0 - u * u / 3.0 : std::pow(std::sin(u) / u, 2);
                v += pk.amplitude * fejer * std::cos(pk.omega * t + pk.phase);
            }
            return v;
        },
        "wave_packets(seed=" + std::to_string(seed) + ")");
}

EmbeddingProbeResult embedding_probe(const SmoothnessVector& sv, double p, double p_prime, double theta,
                                     double theta_prime, int n_min, int n_max, std::size_t count,
                                     std::uint64_t seed, const GridPolicy& policy) {
    const EmbeddingParams ep = embedding_params(sv, p, p_prime);
    if (!ep.valid) throw ParameterError("embedding probe needs kappa > 0");
    if (theta_prime < theta) throw ParameterError("embedding probe needs theta' >= theta");
    if (n_min < 0 || n_max < n_min) throw ParameterError("embedding probe needs 0 <= n_min <= n_max");
    const SmoothnessVector target(ep.rho);
    EmbeddingProbeResult result{ep.kappa, {}, 0.0};
    for (int n = n_min; n <= n_max; ++n) {
        const Axes axes = policy.axes_for_level(sv, n);
        const int cutoff = std::min(n + 1, max_admissible_level(sv, axes));
        double worst = 0.0;
        for (const auto& f : random_bandlimited(seed + static_cast<std::uint64_t>(n), sv, n, count, axes)) {
            const SpectrumFunction spectrum = forward_ft(f);
            const double num = besov_norm(spectrum, target, p_prime, theta_prime, cutoff).norm;
            const double den = besov_norm(spectrum, sv, p, theta, cutoff).norm;
            worst = std::max(worst, num / den);
        }
        result.levels.push_back({n, worst});
    }
    result.drift = result.levels.back().max_ratio / result.levels.front().max_ratio;
    return result;
}

}  // namespace besov
