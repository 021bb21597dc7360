#pragma once

// Measurement amplitudes for cat qubits.
//
// X basis: displace by d (nominally -alpha/2) and count photons; even counts
// read as X+, odd as X-. Z basis: x-quadrature homodyne in the convention where
// |beta> peaks at x = 2 Re(beta); outcomes below the midpoint alpha read as Z+.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "catclust/coherent.hpp"
#include "catclust/faddeeva.hpp"

namespace catclust {

enum class Outcome { plus, minus };

inline int sign(Outcome o) { return o == Outcome::plus ? 1 : -1; }

/// Photon-number cutoff leaving a Poisson(mu) tail below 1e-12.
inline std::size_t photonCutoff(double mu) {
    if (!(mu >= 0.0)) throw DomainError("photonCutoff: mean must be non-negative");
    return static_cast<std::size_t>(std::ceil(mu + 12.0 * std::sqrt(mu) + 30.0));
}

/// Integration tolerance for quadrature paths. CATCLUST_TOL overrides 1e-10.
inline double integralTolerance() {
    if (const char* env = std::getenv("CATCLUST_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) return v;
    }
    return 1e-10;
}

/// <n|gamma> in log space; exact zero for gamma = 0, n > 0.
inline Complex fockCoherent(std::size_t n, ComplexAmp gamma) {
    if (gamma == Complex{0.0, 0.0}) return n == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    const double dn = static_cast<double>(n);
    const double logMag = -0.5 * std::norm(gamma) + dn * std::log(std::abs(gamma)) - 0.5 * std::lgamma(dn + 1.0);
    return std::polar(std::exp(logMag), dn * std::arg(gamma));
}

/// <n|D(d)|beta> = e^{i Im[d conj(beta)]} <n|beta + d>.
inline Complex fockAmplitude(std::size_t n, ComplexAmp beta, ComplexAmp d) {
    return std::polar(1.0, (d * std::conj(beta)).imag()) * fockCoherent(n, beta + d);
}

/// Removes one mode from every term, multiplying coefficients by amp(beta).
template <class AmpFn>
SuperposedState projectMode(const SuperposedState& s, std::size_t mode, AmpFn&& amp) {
    s.checkMode(mode);
    std::vector<CoherentTerm> out;
    out.reserve(s.size());
    for (const auto& t : s.terms()) {
        CoherentTerm r;
        r.coeff = t.coeff * amp(t.alphas[mode]);
        r.alphas.reserve(t.alphas.size() - 1);
        for (std::size_t m = 0; m < t.alphas.size(); ++m)
            if (m != mode) r.alphas.push_back(t.alphas[m]);
        out.push_back(std::move(r));
    }
    return SuperposedState(s.modes() - 1, std::move(out));
}

/// Unnormalized residue after detecting n photons on `mode` behind D(d).
/// Its norm2 is the outcome probability.
inline SuperposedState fockProject(const SuperposedState& s, std::size_t mode, std::size_t n,
                                   ComplexAmp d = 0.0) {
    return projectMode(s, mode, [&](ComplexAmp beta) { return fockAmplitude(n, beta, d); });
}

/// <x|beta> = (2 pi)^{-1/4} exp{i Re b Im b - (Im b)^2 - (x - 2 b)^2 / 4}.
inline Complex homodyneAmplitude(double x, ComplexAmp beta) {
    const double re = beta.real();
    const double im = beta.imag();
    const Complex shift = x - 2.0 * beta;
    const Complex expo = kI * (re * im) - im * im - 0.25 * shift * shift;
    return std::pow(2.0 * std::numbers::pi, -0.25) * std::exp(expo);
}

/// Unnormalized residue after an x-quadrature outcome; norm2 is the density at x.
inline SuperposedState homodyneProject(const SuperposedState& s, std::size_t mode, double x) {
    return projectMode(s, mode, [&](ComplexAmp beta) { return homodyneAmplitude(x, beta); });
}

/// Z reading of a homodyne outcome; the measure-zero tie x = alpha reads minus.
inline Outcome zBin(double x, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("zBin: alpha must be positive");
    return x < alpha ? Outcome::plus : Outcome::minus;
}

inline Outcome xParity(std::size_t n) { return n % 2 == 0 ? Outcome::plus : Outcome::minus; }

namespace detail {

// conj(<x|bj>) <x|bk> = (2 pi)^{-1/2} exp{C - (x - mu)^2 / 2}.
struct BandGaussian {
    Complex mu;
    Complex c;
};

inline BandGaussian bandGaussian(ComplexAmp bj, ComplexAmp bk) {
    const Complex cj = std::conj(bj);
    const Complex mu = cj + bk;
    const double rj = bj.real(), ij = bj.imag(), rk = bk.real(), ik = bk.imag();
    const Complex c = 0.5 * mu * mu - cj * cj - bk * bk - ij * ij - ik * ik + kI * (rk * ik - rj * ij);
    return {mu, c};
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodX = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    Complex value;
    double error;
};

inline GkResult gaussKronrod15(const std::function<Complex(double)>& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const Complex fc = f(mid);
    Complex kronrod = fc * kKronrodW[7];
    Complex gauss = fc * kGaussW[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodX[i];
        const Complex s = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodW[i] * s;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * s;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

inline Complex adaptiveIntegrate(const std::function<Complex(double)>& f, double a, double b, double tol,
                                 int depth = 0) {
    const GkResult whole = gaussKronrod15(f, a, b);
    if (whole.error <= tol) return whole.value;
    if (depth > 40) throw AccuracyError("adaptive quadrature did not converge");
    const double m = 0.5 * (a + b);
    return adaptiveIntegrate(f, a, m, 0.5 * tol, depth + 1) + adaptiveIntegrate(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// int_lo^hi conj(<x|bj>) <x|bk> dx by adaptive Gauss-Kronrod. Infinite limits
/// are cut where the Gaussian envelope is below 1e-30 of its peak.
inline Complex gaussianBandIntegralQuadrature(ComplexAmp bj, ComplexAmp bk, double lo, double hi,
                                              double tol = integralTolerance()) {
    if (!(lo < hi)) throw DomainError("band integral needs lo < hi");
    const auto g = detail::bandGaussian(bj, bk);
    constexpr double kReach = 12.0;  // e^{-72}
    const double center = g.mu.real();
    const double a = std::max(lo, center - kReach);
    const double b = std::min(hi, center + kReach);
    if (!(a < b)) return {0.0, 0.0};
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto integrand = [&](double x) {
        const Complex u = x - g.mu;
        return norm * std::exp(g.c - 0.5 * u * u);
    };
    return detail::adaptiveIntegrate(integrand, a, b, tol);
}

/// int_lo^hi conj(<x|bj>) <x|bk> dx in closed form via the complex error
/// function; +-infinity are valid limits. Falls back to quadrature if the
/// closed form is not finite.
inline Complex gaussianBandIntegral(ComplexAmp bj, ComplexAmp bk, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("band integral needs lo < hi");
    const auto g = detail::bandGaussian(bj, bk);
    const double r2 = std::numbers::sqrt2;
    auto upperTail = [&](double t) { return 0.5 * detail::scaledErfc(g.c, (t - g.mu) / r2); };
    auto lowerTail = [&](double t) { return 0.5 * detail::scaledErfc(g.c, (g.mu - t) / r2); };
    const bool loInf = std::isinf(lo);
    const bool hiInf = std::isinf(hi);
    const double center = g.mu.real();
    Complex value;
    if (loInf && hiInf) {
        value = std::exp(g.c);
    } else if (hiInf) {
        value = upperTail(lo);
    } else if (loInf) {
        value = lowerTail(hi);
    } else if (lo >= center) {
        value = upperTail(lo) - upperTail(hi);
    } else if (hi <= center) {
        value = lowerTail(hi) - lowerTail(lo);
    } else {
        value = std::exp(g.c) - lowerTail(lo) - upperTail(hi);
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        return gaussianBandIntegralQuadrature(bj, bk, lo, hi);
    return value;
}

/// Band integral of one mode of a term pair (coefficients not included).
inline Complex gaussianBandIntegral(const CoherentTerm& a, const CoherentTerm& b, std::size_t mode, double lo,
                                    double hi) {
    if (mode >= a.alphas.size() || mode >= b.alphas.size()) throw ModeError("band integral: mode out of range");
    return gaussianBandIntegral(a.alphas[mode], b.alphas[mode], lo, hi);
}

/// Even- and odd-count sums of conj(<n|D(d)|bj>) <n|D(d)|bk>, truncated by the
/// photon-cutoff rule. Their sum is <bj|bk>; their difference is the parity
/// expectation used for X-basis correlations.
struct ParitySums {
    Complex even;
    Complex odd;
};

inline ParitySums fockParitySums(ComplexAmp bj, ComplexAmp bk, ComplexAmp d) {
    const ComplexAmp gj = bj + d;
    const ComplexAmp gk = bk + d;
    const Complex phase = std::polar(1.0, (d * std::conj(bk)).imag() - (d * std::conj(bj)).imag());
    const double logPrefactor = -0.5 * (std::norm(gj) + std::norm(gk));
    const Complex z = std::conj(gj) * gk;
    ParitySums sums{{0.0, 0.0}, {0.0, 0.0}};
    if (z == Complex{0.0, 0.0}) {
        sums.even = phase * std::exp(logPrefactor);
        return sums;
    }
    const double logAbsZ = std::log(std::abs(z));
    const double argZ = std::arg(z);
    const std::size_t cutoff = photonCutoff(std::max(std::norm(gj), std::norm(gk)));
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double dn = static_cast<double>(n);
        const Complex term = std::polar(std::exp(logPrefactor + dn * logAbsZ - std::lgamma(dn + 1.0)), dn * argZ);
        (n % 2 == 0 ? sums.even : sums.odd) += term;
    }
    sums.even *= phase;
    sums.odd *= phase;
    return sums;
}

}  // namespace catclust
