#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "besov/lattice.hpp"

namespace besov {

/**
 * Unitary-convention Fourier coefficients on the dual grid of a GridFunction.
 *
 * Coefficients are stored row-major in centered order: position c_j along axis j
 * holds the frequency node m_j = c_j - N_j/2, i.e. lambda_j = m_j * pi / L_j.
 */
class SpectrumFunction {
public:
    SpectrumFunction(Axes axes, std::vector<Complex> coeffs, std::string label = {});

    const Axes& axes() const { return axes_; }
    std::size_t dim() const { return axes_.size(); }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
    const std::string& label() const { return label_; }

    double delta_lambda(std::size_t axis) const;
    /// lambda at centered position c along `axis`.
    double frequency(std::size_t axis, std::size_t c) const;
    /// Product of the frequency spacings.
    double cell_volume() const;

private:
    Axes axes_;
    std::vector<Complex> coeffs_;
    std::string label_;
};

/// Half-widths sigma_j of the frequency box |lambda_j| < sigma_j.
class FrequencyBox {
public:
    explicit FrequencyBox(std::vector<double> sigma);

    const std::vector<double>& sigma() const { return sigma_; }
    std::size_t dim() const { return sigma_.size(); }
    double volume_factor() const;  // prod_j sigma_j

private:
    std::vector<double> sigma_;
};

SpectrumFunction forward_ft(const GridFunction& f);
GridFunction inverse_ft(const SpectrumFunction& spectrum);

enum class NyquistStatus { ok, tight, violated };

// violated: sigma_j > pi/h_j on some axis. tight: pi/h_j < 2 sigma_j on some axis.
NyquistStatus check_nyquist(const Axes& axes, const FrequencyBox& box);

/// Throws NyquistError naming the first failing axis.
void require_nyquist(const Axes& axes, const FrequencyBox& box);

/**
 * 1D section weights along one axis in centered order: 1 inside |lambda| < sigma,
 * 1/2 on |lambda| = sigma (relative tolerance 1e-12), 0 outside. The Nyquist bin
 * m = -N/2 always gets 0.
 */
std::vector<double> section_weights(const AxisSpec& axis, double sigma);

/// Multiplies coefficients by the separable box weight prod_j w_j.
SpectrumFunction section_spectrum(const SpectrumFunction& spectrum, const FrequencyBox& box);

/// Coefficients times (W_outer - W_inner), the weight of the shell between two nested boxes.
SpectrumFunction shell_spectrum(const SpectrumFunction& spectrum, const FrequencyBox& outer, const FrequencyBox& inner);

/// S_sigma(f): spectral multiplier by the box indicator. Throws NyquistError.
GridFunction fourier_section(const GridFunction& f, const FrequencyBox& box);

/**
 * O(N^2) rectangle-rule evaluation of (1/pi) int f(y) sin(sigma (x - y)) / (x - y) dy
 * at every node, d = 1 only. Reference oracle for fourier_section.
 */
GridFunction section_oracle_1d(const GridFunction& f, double sigma);

/// Spectral energy sum |c|^2 dlambda over nodes outside the closed box (Nyquist bin counts as outside).
double energy_outside(const SpectrumFunction& spectrum, const FrequencyBox& box);
double energy(const SpectrumFunction& spectrum);

}  // namespace besov
