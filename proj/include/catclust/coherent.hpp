#pragma once

// Finite superpositions of multimode coherent states and their exact
// evolution under passive linear optics and displacements.
//
// A state is sum_j c_j |beta_j1, ..., beta_jM>. Beam splitters and
// displacements map coherent states to coherent states, so the term count is
// invariant under evolution; only measurement changes the mode count.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catclust/error.hpp"
#include "catclust/parallel.hpp"

namespace catclust {

using Complex = std::complex<double>;

/// Coherent amplitude of a single optical mode.
using ComplexAmp = Complex;

inline constexpr Complex kI{0.0, 1.0};

struct CoherentTerm {
    Complex coeff{1.0, 0.0};
    std::vector<ComplexAmp> alphas;
};

/// Symmetric two-mode beam splitter. The mode map is
///   a' = cos(theta) a - e^{+i phi} sin(theta) b
///   b' = e^{-i phi} sin(theta) a + cos(theta) b
/// which is unitary for every (theta, phi). With phi = -pi/2 it is the
/// weak-splitter CSIGN map (a cos + i b sin, i a sin + b cos); with phi = 0 it
/// sends |sqrt2 alpha, 0> to |alpha, alpha>.
struct BeamSplitterParams {
    double theta = 0.0;
    double phi = 0.0;

    void validate() const {
        if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
            throw DomainError("beam splitter theta must lie in [0, pi/2]");
        if (!(phi > -std::numbers::pi && phi <= std::numbers::pi))
            throw DomainError("beam splitter phi must lie in (-pi, pi]");
    }
};

/// Weak splitter acting as an approximate CSIGN for cat qubits of amplitude alpha.
inline BeamSplitterParams csignSplitter(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    return {std::numbers::pi / (2.0 * alpha * alpha), -std::numbers::pi / 2};
}

/// 50:50 splitter used to make |00> + |alpha alpha> from |0> + |sqrt2 alpha>.
inline BeamSplitterParams bellPrepSplitter() { return {std::numbers::pi / 4, 0.0}; }

/// 50:50 splitter of the teleporter's Bell measurement.
inline BeamSplitterParams teleportMixSplitter() { return {std::numbers::pi / 4, std::numbers::pi}; }

/// <beta|alpha> = exp{-(|alpha|^2 + |beta|^2)/2 + alpha conj(beta)}.
inline Complex overlap(ComplexAmp beta, ComplexAmp alpha) {
    return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)) + alpha * std::conj(beta));
}

class SuperposedState {
public:
    SuperposedState() = default;

    /// Zero-term states are allowed and represent the zero vector (what is
    /// left after pruning everything away); normalize() rejects them.
    /// Zero-mode states are scalar residues left by measuring the last mode.
    SuperposedState(std::size_t modes, std::vector<CoherentTerm> terms)
        : modes_(modes), terms_(std::move(terms)) {
        for (const auto& t : terms_) {
            if (t.alphas.size() != modes_)
                throw ModeError("term has " + std::to_string(t.alphas.size()) +
                                " amplitudes, state has " + std::to_string(modes_) + " modes");
        }
    }

    /// Single product coherent state with unit coefficient.
    static SuperposedState coherent(std::vector<ComplexAmp> alphas) {
        const std::size_t m = alphas.size();
        return SuperposedState(m, {CoherentTerm{Complex{1.0, 0.0}, std::move(alphas)}});
    }

    std::size_t modes() const { return modes_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    std::span<const CoherentTerm> terms() const { return terms_; }
    const CoherentTerm& term(std::size_t j) const { return terms_.at(j); }

    void checkMode(std::size_t mode) const {
        if (mode >= modes_)
            throw ModeError("mode " + std::to_string(mode) + " out of range for " +
                            std::to_string(modes_) + "-mode state");
    }

    // Mutating helpers used by the free functions below; every public
    // operation still takes and returns states by value.
    std::vector<CoherentTerm>& mutableTerms() { return terms_; }

private:
    std::size_t modes_ = 0;
    std::vector<CoherentTerm> terms_;
};

namespace detail {

inline double halfNormSquared(const CoherentTerm& t) {
    double s = 0.0;
    for (const auto& a : t.alphas) s += std::norm(a);
    return 0.5 * s;
}

// log <a|b> without coefficients; modes assumed equal.
inline Complex logKetOverlap(const CoherentTerm& a, double halfA, const CoherentTerm& b, double halfB) {
    Complex cross{0.0, 0.0};
    for (std::size_t m = 0; m < a.alphas.size(); ++m) cross += std::conj(a.alphas[m]) * b.alphas[m];
    return cross - halfA - halfB;
}

}  // namespace detail

/// conj(a.coeff) b.coeff prod_m <a_m|b_m>.
inline Complex termOverlap(const CoherentTerm& a, const CoherentTerm& b) {
    if (a.alphas.size() != b.alphas.size()) throw ModeError("termOverlap: mode-count mismatch");
    const Complex ket = std::exp(detail::logKetOverlap(a, detail::halfNormSquared(a), b,
                                                       detail::halfNormSquared(b)));
    return std::conj(a.coeff) * b.coeff * ket;
}

/// <a|b> for two superpositions over the same modes. Summation runs over rows
/// j of a in index order; each row sums over k in index order.
inline Complex innerProduct(const SuperposedState& a, const SuperposedState& b) {
    if (a.modes() != b.modes()) throw ModeError("innerProduct: mode-count mismatch");
    std::vector<double> halfB(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) halfB[k] = detail::halfNormSquared(b.term(k));
    std::vector<Complex> rows(a.size());
    parallelFor(a.size(), [&](std::size_t j) {
        const auto& tj = a.term(j);
        const double hj = detail::halfNormSquared(tj);
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < b.size(); ++k) {
            const auto& tk = b.term(k);
            acc += tk.coeff * std::exp(detail::logKetOverlap(tj, hj, tk, halfB[k]));
        }
        rows[j] = std::conj(tj.coeff) * acc;
    });
    Complex total{0.0, 0.0};
    for (const auto& r : rows) total += r;
    return total;
}

/// Gram-sum squared norm; the imaginary rounding residue is discarded.
inline double norm2(const SuperposedState& s) { return innerProduct(s, s).real(); }

/// True when norm2 is indistinguishable from rounding noise of the Gram sum.
inline bool isCancelled(const SuperposedState& s, double n2) {
    double scale = 0.0;
    for (const auto& t : s.terms()) scale += std::abs(t.coeff);
    return !(n2 > 64.0 * 2.220446049250313e-16 * scale * scale) || scale == 0.0;
}

inline SuperposedState normalize(SuperposedState s) {
    const double n2 = norm2(s);
    if (s.empty() || isCancelled(s, n2))
        throw CancelledStateError("cannot normalize: state norm is zero to rounding accuracy");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& t : s.mutableTerms()) t.coeff *= inv;
    return s;
}

inline SuperposedState scale(SuperposedState s, Complex factor) {
    for (auto& t : s.mutableTerms()) t.coeff *= factor;
    return s;
}

inline SuperposedState applyBeamSplitter(SuperposedState s, std::size_t modeA, std::size_t modeB,
                                         const BeamSplitterParams& p) {
    s.checkMode(modeA);
    s.checkMode(modeB);
    if (modeA == modeB) throw ModeError("beam splitter needs two distinct modes");
    p.validate();
    const double c = std::cos(p.theta);
    const double sn = std::sin(p.theta);
    const Complex toA = -std::polar(sn, p.phi);
    const Complex toB = std::polar(sn, -p.phi);
    for (auto& t : s.mutableTerms()) {
        const Complex a = t.alphas[modeA];
        const Complex b = t.alphas[modeB];
        t.alphas[modeA] = c * a + toA * b;
        t.alphas[modeB] = toB * a + c * b;
    }
    return s;
}

/// D(gamma) on one mode: beta -> beta + gamma, coefficient picks up
/// exp{i Im[gamma conj(beta)]}.
inline SuperposedState applyDisplacement(SuperposedState s, std::size_t mode, ComplexAmp gamma) {
    s.checkMode(mode);
    for (auto& t : s.mutableTerms()) {
        const Complex beta = t.alphas[mode];
        t.coeff *= std::polar(1.0, (gamma * std::conj(beta)).imag());
        t.alphas[mode] = beta + gamma;
    }
    return s;
}

/// Normalized single-mode cat state (|0> + |alpha>)/sqrt(2(1 + e^{-alpha^2/2})).
inline SuperposedState catState(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("catState: alpha must be positive");
    return normalize(SuperposedState(1, {CoherentTerm{1.0, {0.0}}, CoherentTerm{1.0, {alpha}}}));
}

/// |a> (x) |b>: all term pairs, a's terms outermost, a's modes first.
inline SuperposedState tensor(const SuperposedState& a, const SuperposedState& b) {
    std::vector<CoherentTerm> out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            CoherentTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.alphas = ta.alphas;
            t.alphas.insert(t.alphas.end(), tb.alphas.begin(), tb.alphas.end());
            out.push_back(std::move(t));
        }
    }
    return SuperposedState(a.modes() + b.modes(), std::move(out));
}

/// New mode i is old mode order[i]; order must be a permutation.
inline SuperposedState permuteModes(const SuperposedState& s, std::span<const std::size_t> order) {
    if (order.size() != s.modes()) throw ModeError("permuteModes: order length mismatch");
    std::vector<bool> seen(s.modes(), false);
    for (auto m : order) {
        s.checkMode(m);
        if (seen[m]) throw ModeError("permuteModes: repeated mode");
        seen[m] = true;
    }
    std::vector<CoherentTerm> out;
    out.reserve(s.size());
    for (const auto& t : s.terms()) {
        CoherentTerm r{t.coeff, std::vector<ComplexAmp>(order.size())};
        for (std::size_t i = 0; i < order.size(); ++i) r.alphas[i] = t.alphas[order[i]];
        out.push_back(std::move(r));
    }
    return SuperposedState(s.modes(), std::move(out));
}

/// Greedily drops terms (in index order) whose removal changes norm2 by less
/// than epsilon. epsilon = 0 keeps everything. May return the zero state.
inline SuperposedState pruneTerms(const SuperposedState& s, double epsilon) {
    if (!(epsilon >= 0.0)) throw DomainError("pruneTerms: epsilon must be non-negative");
    if (epsilon == 0.0) return s;
    const std::size_t n = s.size();
    // rowSum[j] = sum over kept k of <t_j|t_k>
    std::vector<Complex> rowSum(n, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) rowSum[j] += termOverlap(s.term(j), s.term(k));
    std::vector<bool> kept(n, true);
    for (std::size_t j = 0; j < n; ++j) {
        const double self = termOverlap(s.term(j), s.term(j)).real();
        const double change = 2.0 * rowSum[j].real() - self;
        if (std::abs(change) < epsilon) {
            kept[j] = false;
            for (std::size_t k = 0; k < n; ++k)
                if (kept[k]) rowSum[k] -= termOverlap(s.term(k), s.term(j));
        }
    }
    std::vector<CoherentTerm> out;
    for (std::size_t j = 0; j < n; ++j)
        if (kept[j]) out.push_back(s.term(j));
    return SuperposedState(s.modes(), std::move(out));
}

}  // namespace catclust
