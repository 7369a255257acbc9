#include <doctest.h>

#include <cmath>
#include <numbers>

#include "besov/error.hpp"
#include "besov/experiments.hpp"
#include "besov/extremal.hpp"
#include "besov/spectral.hpp"
#include "helpers.hpp"

using namespace besov;
using testing::gaussian;
using testing::rel_l2;

namespace {

constexpr double kPi = std::numbers::pi;

// Si(x) by composite Simpson on sin(t)/t; plenty accurate for the arguments used below.
double sine_integral(double x) {
    if (x == 0.0) return 0.0;
    const int m = 2 * static_cast<int>(std::ceil(std::abs(x) * 40.0)) + 2;
    const double h = x / m;
    auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
    double s = f(0.0) + f(x);
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
    return s * h / 3.0;
}

GridFunction direct_sinc(const AxisSpec& axis) {
    return make_grid({axis}, [](std::span<const double> x) {
        return Complex(std::sqrt(2.0 / kPi) * sinc_factor(1.0, x[0]));
    });
}

}  // namespace

TEST_CASE("zero in, zero out") {
    const Axes axes{AxisSpec(3.0, 16), AxisSpec(2.0, 8)};
    const SpectrumFunction s = forward_ft(GridFunction::zeros(axes));
    for (auto c : s.coeffs()) CHECK(c == Complex(0.0));
    const GridFunction back = inverse_ft(SpectrumFunction(axes, std::vector<Complex>(total_points(axes))));
    CHECK(linf_norm(back) == 0.0);
    CHECK(linf_norm(section_oracle_1d(GridFunction::zeros({AxisSpec(3.0, 16)}), 1.0)) == 0.0);
}

TEST_CASE("frequency layout") {
    const AxisSpec axis(kPi, 8);
    const SpectrumFunction s({axis}, std::vector<Complex>(8));
    CHECK(s.delta_lambda(0) == doctest::Approx(1.0));
    CHECK(s.frequency(0, 0) == doctest::Approx(-4.0));
    CHECK(s.frequency(0, 4) == 0.0);
    CHECK(s.frequency(0, 7) == doctest::Approx(3.0));
}

TEST_CASE("round trip and Parseval") {
    const GridFunction f = gaussian({AxisSpec(8.0, 128), AxisSpec(6.0, 64)});
    CHECK(rel_l2(inverse_ft(forward_ft(f)), f) < 1e-10);
    const GridFunction g = gaussian({AxisSpec(12.0, 256)});
    const double freq = std::sqrt(energy(forward_ft(g)));
    CHECK(std::abs(freq / lp_norm(g, 2.0) - 1.0) < 1e-8);
}

TEST_CASE("Gaussian is self-dual") {
    const SpectrumFunction s = forward_ft(gaussian({AxisSpec(16.0, 512)}));
    double worst = 0.0;
    for (std::size_t c = 0; c < s.size(); ++c) {
        const double lam = s.frequency(0, c);
        worst = std::max(worst, std::abs(s[c] - std::exp(-0.5 * lam * lam)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("2D Gaussian is self-dual") {
    const SpectrumFunction s = forward_ft(gaussian({AxisSpec(12.0, 128), AxisSpec(10.0, 64)}));
    double worst = 0.0;
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        const auto c = unravel(s.axes(), flat);
        const double l0 = s.frequency(0, c[0]);
        const double l1 = s.frequency(1, c[1]);
        worst = std::max(worst, std::abs(s[flat] - std::exp(-0.5 * (l0 * l0 + l1 * l1))));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("directly sampled sinc matches the transform of the truncated sinc") {
    // (1/sqrt(2 pi)) int_{-L}^{L} sqrt(2/pi) sin(x)/x e^{-i lambda x} dx = (Si((1+lambda)L) + Si((1-lambda)L)) / pi
    const AxisSpec axis(64.0 * kPi, 1 << 14);
    const SpectrumFunction s = forward_ft(direct_sinc(axis));
    const double dl = s.delta_lambda(0);
    const double L = axis.half_width();
    double worst = 0.0;
    double worst_box = 0.0;
    for (std::size_t c = 1; c < s.size(); ++c) {
        const double lam = s.frequency(0, c);
        if (std::abs(lam) > 3.0) continue;
        const double exact = (sine_integral((1.0 + lam) * L) + sine_integral((1.0 - lam) * L)) / kPi;
        worst = std::max(worst, std::abs(s[c] - exact));
        if (std::abs(std::abs(lam) - 1.0) > 8.0 * dl) {
            worst_box = std::max(worst_box, std::abs(s[c].real() - (std::abs(lam) < 1.0 ? 1.0 : 0.0)));
        }
    }
    // Rectangle rule against the exact truncated integral: endpoint error O(h / L).
    CHECK(worst < 2e-3);
    // Away from the edge the truncation ripple is below 2e-2.
    CHECK(worst_box < 2e-2);
}

TEST_CASE("periodic sinc has the box as its exact discrete spectrum") {
    const AxisSpec axis(64.0 * kPi * (1.0 - 1e-5), 1 << 12);
    const GridFunction f = make_grid({axis}, [&](std::span<const double> x) {
        return Complex(periodic_sinc_factor(1.0, axis.half_width(), x[0]));
    });
    const SpectrumFunction s = forward_ft(f);
    const auto w = section_weights(axis, 1.0);
    double worst = 0.0;
    for (std::size_t c = 0; c < s.size(); ++c) worst = std::max(worst, std::abs(s[c] - w[c]));
    CHECK(worst < 1e-12);
}

// The discrete inverse is a Dirichlet kernel; it tracks the sinc to 1e-3 on |x| <= L/4.
TEST_CASE("inverse of the indicator is the sinc away from the domain edge") {
    const AxisSpec axis(64.0 * kPi, 1 << 14);
    const auto w = section_weights(axis, 1.0);
    std::vector<Complex> coeffs(w.begin(), w.end());
    const GridFunction g = inverse_ft(SpectrumFunction({axis}, coeffs));
    double worst = 0.0;
    for (std::size_t k = 3 * axis.points() / 8; k < 5 * axis.points() / 8; ++k) {
        worst = std::max(worst, std::abs(g[k] - std::sqrt(2.0 / kPi) * sinc_factor(1.0, axis.node(k))));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("section weights") {
    const AxisSpec axis(kPi, 16);  // dlambda = 1, lambda in -8..7
    const auto w = section_weights(axis, 3.0);
    CHECK(w[0] == 0.0);         // Nyquist bin
    CHECK(w[8] == 1.0);         // lambda = 0
    CHECK(w[10] == 1.0);        // lambda = 2
    CHECK(w[11] == 0.5);        // lambda = 3 on the edge
    CHECK(w[5] == 0.5);         // lambda = -3
    CHECK(w[12] == 0.0);        // lambda = 4
    const auto all = section_weights(axis, 100.0);
    CHECK(all[0] == 0.0);
}

TEST_CASE("Nyquist checks") {
    const Axes axes{AxisSpec(kPi, 16)};  // pi/h = 8
    CHECK(check_nyquist(axes, FrequencyBox({3.0})) == NyquistStatus::ok);
    CHECK(check_nyquist(axes, FrequencyBox({5.0})) == NyquistStatus::tight);
    CHECK(check_nyquist(axes, FrequencyBox({9.0})) == NyquistStatus::violated);
    CHECK_THROWS_AS(fourier_section(gaussian(axes), FrequencyBox({9.0})), NyquistError);
    CHECK_THROWS_AS(fourier_section(gaussian(axes), FrequencyBox({1.0, 1.0})), ShapeError);
}

TEST_CASE("section identities") {
    const Axes axes{AxisSpec(201.06, 2048)};
    const SmoothnessVector sv({1.0});
    const GridFunction lo = random_bandlimited(3, sv, 1, 1, axes)[0];
    const GridFunction hi = random_bandlimited(4, sv, 3, 1, axes)[0];
    const GridFunction f = add(lo, hi);
    const FrequencyBox box({3.0});
    const FrequencyBox wide({6.0});

    CHECK(rel_l2(fourier_section(lo, box), lo) < 1e-10);
    const GridFunction once = fourier_section(f, box);
    CHECK(rel_l2(once, lo) < 1e-10);
    CHECK(rel_l2(fourier_section(once, box), once) < 1e-12);
    CHECK(rel_l2(fourier_section(fourier_section(f, wide), box), once) < 1e-12);

    const Complex alpha(1.5, -0.25);
    const Complex beta(-0.7, 0.0);
    const GridFunction lhs = fourier_section(add(scale(f, alpha), scale(hi, beta)), wide);
    const GridFunction rhs = add(scale(fourier_section(f, wide), alpha), scale(fourier_section(hi, wide), beta));
    CHECK(linf_norm(sub(lhs, rhs)) < 1e-12 * linf_norm(rhs));
}

TEST_CASE("oracle reproduces a band-limited sinc") {
    const AxisSpec axis(64.0 * kPi, 2048);
    const GridFunction f = direct_sinc(axis);
    const GridFunction o = section_oracle_1d(f, 2.0);
    double worst = 0.0;
    for (std::size_t k = axis.points() / 4; k < 3 * axis.points() / 4; ++k) worst = std::max(worst, std::abs(o[k] - f[k]));
    CHECK(worst < 1e-2);
    CHECK_THROWS_AS(section_oracle_1d(gaussian({AxisSpec(1.0, 4), AxisSpec(1.0, 4)}), 1.0), UnsupportedError);
}

TEST_CASE("oracle agrees with the DFT section on decaying band-limited input") {
    const AxisSpec axis(201.06, 4096);
    for (std::uint64_t seed : {1u, 2u}) {
        const GridFunction f = random_wave_packets(seed, axis, 1.0, 3.0, 6.0);
        const GridFunction fast = fourier_section(f, FrequencyBox({2.0}));
        const GridFunction slow = section_oracle_1d(f, 2.0);
        double worst = 0.0;
        for (std::size_t k = axis.points() / 4; k < 3 * axis.points() / 4; ++k) {
            worst = std::max(worst, std::abs(fast[k] - slow[k]));
        }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("energy outside a box") {
    const Axes axes{AxisSpec(201.06, 1024)};
    const GridFunction f = random_bandlimited(9, SmoothnessVector({1.0}), 2, 1, axes)[0];
    const SpectrumFunction s = forward_ft(f);
    CHECK(energy_outside(s, FrequencyBox({4.0})) < 1e-20 * energy(s));
    CHECK(energy_outside(s, FrequencyBox({1.0})) == doctest::Approx(energy(s)).epsilon(1e-12));
}
