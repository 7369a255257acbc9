#include "besov/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "besov/error.hpp"

namespace besov {

namespace {

constexpr double kEdgeTol = 1e-12;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place unnormalized multidimensional DFT, row-major, via FFTW.
void dft_inplace(std::vector<Complex>& data, const Axes& axes, int sign) {
    std::vector<int> dims;
    for (const auto& a : axes) dims.push_back(static_cast<int>(a.points()));
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * data.size()));
    if (buf == nullptr) throw std::bad_alloc();
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign, FFTW_ESTIMATE);
    }
    std::copy(data.begin(), data.end(), reinterpret_cast<Complex*>(buf));
    fftw_execute(plan);
    std::copy(reinterpret_cast<Complex*>(buf), reinterpret_cast<Complex*>(buf) + data.size(), data.begin());
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

// Walks the centered multi-index in row-major order and yields, for each
// centered flat position, the flat DFT position and the phase sign (-1)^{sum m_j}.
// The grid starts at x = -L, so exp(-i lambda_m (-L)) = exp(i m pi) = (-1)^m.
template <class Fn>
void for_each_centered(const Axes& axes, Fn&& fn) {
    const std::size_t d = axes.size();
    std::vector<std::size_t> c(d, 0);
    const std::size_t total = total_points(axes);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t dft_flat = 0;
        long parity = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t n = axes[j].points();
            const std::size_t k = (c[j] + n / 2) % n;
            dft_flat = dft_flat * n + k;
            parity += static_cast<long>(c[j]) - static_cast<long>(n / 2);
        }
        fn(flat, dft_flat, (parity % 2 == 0) ? 1.0 : -1.0);
        for (std::size_t j = d; j-- > 0;) {
            if (++c[j] < axes[j].points()) break;
            c[j] = 0;
        }
    }
}

std::vector<std::vector<double>> box_weights(const Axes& axes, const FrequencyBox& box) {
    if (box.dim() != axes.size()) throw ShapeError("frequency box dimension does not match grid");
    std::vector<std::vector<double>> w;
    for (std::size_t j = 0; j < axes.size(); ++j) w.push_back(section_weights(axes[j], box.sigma()[j]));
    return w;
}

template <class Fn>
void for_each_weight(const Axes& axes, const std::vector<std::vector<double>>& w, Fn&& fn) {
    const std::size_t d = axes.size();
    std::vector<std::size_t> c(d, 0);
    const std::size_t total = total_points(axes);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double weight = 1.0;
        for (std::size_t j = 0; j < d; ++j) weight *= w[j][c[j]];
        fn(flat, weight);
        for (std::size_t j = d; j-- > 0;) {
            if (++c[j] < axes[j].points()) break;
            c[j] = 0;
        }
    }
}

std::string describe_box(const FrequencyBox& box) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t j = 0; j < box.dim(); ++j) os << (j ? "," : "") << box.sigma()[j];
    return os.str();
}

}  // namespace

SpectrumFunction::SpectrumFunction(Axes axes, std::vector<Complex> coeffs, std::string label)
    : axes_(std::move(axes)), coeffs_(std::move(coeffs)), label_(std::move(label)) {
    if (axes_.empty()) throw ParameterError("spectrum needs at least one axis");
    if (coeffs_.size() != total_points(axes_)) throw ShapeError("spectrum coefficient count does not match axes");
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("non-finite spectrum coefficient");
    }
}

double SpectrumFunction::delta_lambda(std::size_t axis) const { return std::numbers::pi / axes_[axis].half_width(); }

double SpectrumFunction::frequency(std::size_t axis, std::size_t c) const {
    const auto n = static_cast<double>(axes_[axis].points());
    return (static_cast<double>(c) - n / 2.0) * delta_lambda(axis);
}

double SpectrumFunction::cell_volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < axes_.size(); ++j) v *= delta_lambda(j);
    return v;
}

FrequencyBox::FrequencyBox(std::vector<double> sigma) : sigma_(std::move(sigma)) {
    if (sigma_.empty()) throw ParameterError("frequency box needs at least one axis");
    for (double s : sigma_) {
        if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("frequency box half-widths must be positive");
    }
}

double FrequencyBox::volume_factor() const {
    double v = 1.0;
    for (double s : sigma_) v *= s;
    return v;
}

SpectrumFunction forward_ft(const GridFunction& f) {
    const Axes& axes = f.axes();
    std::vector<Complex> work(f.values().begin(), f.values().end());
    dft_inplace(work, axes, FFTW_FORWARD);
    const double scale = f.cell_volume() / std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(axes.size()));
    std::vector<Complex> coeffs(work.size());
    for_each_centered(axes, [&](std::size_t c, std::size_t k, double sign) { coeffs[c] = work[k] * (sign * scale); });
    return SpectrumFunction(axes, std::move(coeffs), "F[" + f.label() + "]");
}

GridFunction inverse_ft(const SpectrumFunction& spectrum) {
    const Axes& axes = spectrum.axes();
    std::vector<Complex> work(spectrum.size());
    const double scale =
        spectrum.cell_volume() / std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(axes.size()));
    for_each_centered(axes, [&](std::size_t c, std::size_t k, double sign) { work[k] = spectrum[c] * (sign * scale); });
    dft_inplace(work, axes, FFTW_BACKWARD);
    return GridFunction(axes, std::move(work), "F^-1[" + spectrum.label() + "]");
}

NyquistStatus check_nyquist(const Axes& axes, const FrequencyBox& box) {
    if (box.dim() != axes.size()) throw ShapeError("frequency box dimension does not match grid");
    NyquistStatus status = NyquistStatus::ok;
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const double limit = std::numbers::pi / axes[j].spacing();
        const double sigma = box.sigma()[j];
        if (sigma > limit * (1.0 + kEdgeTol)) return NyquistStatus::violated;
        if (limit < 2.0 * sigma) status = NyquistStatus::tight;
    }
    return status;
}

void require_nyquist(const Axes& axes, const FrequencyBox& box) {
    if (box.dim() != axes.size()) throw ShapeError("frequency box dimension does not match grid");
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const double limit = std::numbers::pi / axes[j].spacing();
        if (box.sigma()[j] > limit * (1.0 + kEdgeTol)) {
            std::ostringstream os;
            os << "Nyquist violation on axis " << j << ": sigma = " << box.sigma()[j] << " > pi/h = " << limit
               << " (use a finer grid or a smaller box)";
            throw NyquistError(os.str());
        }
    }
}

std::vector<double> section_weights(const AxisSpec& axis, double sigma) {
    const std::size_t n = axis.points();
    const double dl = std::numbers::pi / axis.half_width();
    std::vector<double> w(n, 0.0);
    for (std::size_t c = 1; c < n; ++c) {
        const double lam = std::abs((static_cast<double>(c) - static_cast<double>(n) / 2.0) * dl);
        if (std::abs(lam - sigma) <= kEdgeTol * sigma) {
            w[c] = 0.5;
        } else if (lam < sigma) {
            w[c] = 1.0;
        }
    }
    return w;
}

SpectrumFunction section_spectrum(const SpectrumFunction& spectrum, const FrequencyBox& box) {
    const auto w = box_weights(spectrum.axes(), box);
    std::vector<Complex> out(spectrum.size());
    for_each_weight(spectrum.axes(), w, [&](std::size_t i, double weight) { out[i] = spectrum[i] * weight; });
    return SpectrumFunction(spectrum.axes(), std::move(out), "S[" + describe_box(box) + "]" + spectrum.label());
}

SpectrumFunction shell_spectrum(const SpectrumFunction& spectrum, const FrequencyBox& outer,
                                const FrequencyBox& inner) {
    const auto wo = box_weights(spectrum.axes(), outer);
    const auto wi = box_weights(spectrum.axes(), inner);
    const std::size_t d = spectrum.dim();
    std::vector<Complex> out(spectrum.size());
    std::vector<std::size_t> c(d, 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        double po = 1.0;
        double pi = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            po *= wo[j][c[j]];
            pi *= wi[j][c[j]];
        }
        out[flat] = spectrum[flat] * (po - pi);
        for (std::size_t j = d; j-- > 0;) {
            if (++c[j] < spectrum.axes()[j].points()) break;
            c[j] = 0;
        }
    }
    return SpectrumFunction(spectrum.axes(), std::move(out),
                            "shell[" + describe_box(inner) + ";" + describe_box(outer) + "]" + spectrum.label());
}

GridFunction fourier_section(const GridFunction& f, const FrequencyBox& box) {
    require_nyquist(f.axes(), box);
    return inverse_ft(section_spectrum(forward_ft(f), box))
        .relabeled("S_sigma(" + f.label() + "; sigma=" + describe_box(box) + ")");
}

GridFunction section_oracle_1d(const GridFunction& f, double sigma) {
    if (f.dim() != 1) throw UnsupportedError("section_oracle_1d supports d = 1 only");
    if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    const AxisSpec& axis = f.axes()[0];
    const std::size_t n = axis.points();
    const double h = axis.spacing();
    std::vector<Complex> out(n);
    parallel_for(n, [&](std::size_t i) {
        const double x = axis.node(i);
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = x - axis.node(k);
            const double kernel = (k == i) ? sigma : std::sin(sigma * t) / t;
            acc += f[k] * kernel;
        }
        out[i] = acc * (h / std::numbers::pi);
    });
    return GridFunction(f.axes(), std::move(out), "oracle_S(" + f.label() + ")");
}

double energy_outside(const SpectrumFunction& spectrum, const FrequencyBox& box) {
    if (box.dim() != spectrum.dim()) throw ShapeError("frequency box dimension does not match spectrum");
    std::vector<std::vector<double>> inside;
    for (std::size_t j = 0; j < spectrum.dim(); ++j) {
        const std::size_t n = spectrum.axes()[j].points();
        std::vector<double> in(n, 0.0);
        for (std::size_t c = 1; c < n; ++c) {
            in[c] = std::abs(spectrum.frequency(j, c)) <= box.sigma()[j] * (1.0 + kEdgeTol) ? 1.0 : 0.0;
        }
        inside.push_back(std::move(in));
    }
    std::vector<double> terms(spectrum.size());
    for_each_weight(spectrum.axes(), inside,
                    [&](std::size_t i, double in) { terms[i] = in > 0.0 ? 0.0 : std::norm(spectrum[i]); });
    return pairwise_sum(terms) * spectrum.cell_volume();
}

double energy(const SpectrumFunction& spectrum) {
    std::vector<double> terms(spectrum.size());
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(spectrum[i]);
    return pairwise_sum(terms) * spectrum.cell_volume();
}

}  // namespace besov
