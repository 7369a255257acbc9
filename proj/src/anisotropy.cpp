#include "besov/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "besov/error.hpp"

namespace besov {

namespace {

void require_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw ParameterError(std::string(name) + " must satisfy 1 <= " + name + " <= inf");
}

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

std::string level_label(const GridFunction& f, int s) { return "f_a^" + std::to_string(s) + "(" + f.label() + ")"; }

}  // namespace

SmoothnessVector::SmoothnessVector(std::vector<double> r) : r_(std::move(r)) {
    if (r_.empty()) throw ParameterError("smoothness vector must have at least one component");
    double inv_sum = 0.0;
    for (std::size_t j = 0; j < r_.size(); ++j) {
        if (!(r_[j] > 0.0) || !std::isfinite(r_[j])) {
            throw ParameterError("smoothness component r_" + std::to_string(j + 1) + " must be positive and finite");
        }
        inv_sum += 1.0 / r_[j];
    }
    g_ = static_cast<double>(r_.size()) / inv_sum;
    a_.reserve(r_.size());
    for (double rj : r_) a_.push_back(std::exp2(g_ / rj));
    b_ = std::exp2(g_);
}

SmoothnessVector smoothness(const std::vector<double>& r) { return SmoothnessVector(r); }

FrequencyBox block(const SmoothnessVector& sv, int s) {
    if (s < 0) throw ParameterError("block level s must be >= 0, got " + std::to_string(s));
    std::vector<double> sigma;
    sigma.reserve(sv.dim());
    for (double rj : sv.r()) sigma.push_back(std::exp2(static_cast<double>(s) * sv.g() / rj));
    return FrequencyBox(std::move(sigma));
}

int max_admissible_level(const SmoothnessVector& sv, const Axes& axes) {
    int s = -1;
    while (s < 4096 && check_nyquist(axes, block(sv, s + 1)) != NyquistStatus::violated) ++s;
    return s;
}

LayerDecomposition layer_decompose(const GridFunction& f, const SmoothnessVector& sv, int cutoff) {
    if (cutoff < 0) throw ParameterError("layer cutoff S must be >= 0");
    if (sv.dim() != f.dim()) throw ShapeError("smoothness vector dimension does not match grid");
    if (check_nyquist(f.axes(), block(sv, cutoff)) == NyquistStatus::violated) {
        throw NyquistError("layer cutoff S = " + std::to_string(cutoff) +
                           " exceeds the grid's Nyquist band (largest admissible S = " +
                           std::to_string(max_admissible_level(sv, f.axes())) + "); use a smaller S or a finer grid");
    }
    const SpectrumFunction spectrum = forward_ft(f);
    std::vector<GridFunction> layers;
    layers.reserve(static_cast<std::size_t>(cutoff) + 1);
    layers.push_back(inverse_ft(section_spectrum(spectrum, block(sv, 0))).relabeled(level_label(f, 0)));
    for (int s = 1; s <= cutoff; ++s) {
        layers.push_back(
            inverse_ft(shell_spectrum(spectrum, block(sv, s), block(sv, s - 1))).relabeled(level_label(f, s)));
    }
    return LayerDecomposition{sv, std::move(layers), cutoff};
}

BesovNormResult besov_norm(const GridFunction& f, const SmoothnessVector& sv, double p, double theta, int cutoff) {
    require_exponent(p, "p");
    require_exponent(theta, "theta");
    return besov_norm(forward_ft(f), sv, p, theta, cutoff);
}

BesovNormResult besov_norm(const SpectrumFunction& spectrum, const SmoothnessVector& sv, double p, double theta,
                           int cutoff) {
    require_exponent(p, "p");
    require_exponent(theta, "theta");
    if (cutoff < 0) throw ParameterError("layer cutoff S must be >= 0");
    if (sv.dim() != spectrum.dim()) throw ShapeError("smoothness vector dimension does not match grid");
    if (check_nyquist(spectrum.axes(), block(sv, cutoff)) == NyquistStatus::violated) {
        throw NyquistError("Besov cutoff S = " + std::to_string(cutoff) + " exceeds the grid's Nyquist band");
    }

    BesovNormResult result{0.0, {}, false};
    double peak = 0.0;
    for (int s = 0; s <= cutoff; ++s) {
        const SpectrumFunction layer = s == 0 ? section_spectrum(spectrum, block(sv, 0))
                                              : shell_spectrum(spectrum, block(sv, s), block(sv, s - 1));
        const double lp = norm(inverse_ft(layer), p);
        const double weighted = std::pow(sv.b(), s) * lp;
        result.terms.push_back({s, lp, weighted});
        peak = std::max(peak, weighted);
    }
    if (peak == 0.0) return result;

    if (std::isinf(theta)) {
        result.norm = peak;
    } else {
        std::vector<double> powers;
        powers.reserve(result.terms.size());
        for (const auto& t : result.terms) powers.push_back(std::pow(t.weighted / peak, theta));
        result.norm = peak * std::pow(pairwise_sum(powers), 1.0 / theta);
    }
    result.truncation_warning = result.terms.back().weighted > 0.1 * result.norm;
    return result;
}

EmbeddingParams embedding_params(const SmoothnessVector& sv, double p, double p_prime) {
    require_exponent(p, "p");
    require_exponent(p_prime, "p'");
    if (p > p_prime) throw ParameterError("embedding needs p <= p'");
    double inv_sum = 0.0;
    for (double rj : sv.r()) inv_sum += 1.0 / rj;
    const double kappa = 1.0 - (reciprocal(p) - reciprocal(p_prime)) * inv_sum;
    std::vector<double> rho;
    rho.reserve(sv.dim());
    for (double rj : sv.r()) rho.push_back(rj * kappa);
    return EmbeddingParams{kappa, std::move(rho), kappa > 0.0};
}

}  // namespace besov
