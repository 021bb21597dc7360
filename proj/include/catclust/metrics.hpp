#pragma once

// Fidelity, stabilizer visibility, and their conversion to a per-qubit
// depolarizing error rate.
//
// Depolarizing channel: rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z),
// which scales every single-qubit Pauli expectation by (1 - 4p/3).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "catclust/cluster.hpp"
#include "catclust/coherent.hpp"
#include "catclust/factor_graph.hpp"
#include "catclust/graph.hpp"
#include "catclust/projectors.hpp"

namespace catclust {

inline double fidelity(const SuperposedState& a, const SuperposedState& b) {
    if (a.modes() != b.modes()) throw ModeError("fidelity: mode-count mismatch");
    const double na = norm2(a);
    const double nb = norm2(b);
    if (a.empty() || b.empty() || isCancelled(a, na) || isCancelled(b, nb))
        throw CancelledStateError("fidelity: zero-norm state");
    return std::norm(innerProduct(a, b)) / (na * nb);
}

// ---------------------------------------------------------------------------
// Stabilizer group of a graph state

namespace detail {

inline void checkStabilizerGraph(const GraphSpec& g) {
    if (g.vertexCount() > 30) throw DomainError("stabilizer enumeration supports at most 30 vertices");
}

inline std::vector<std::uint32_t> neighbourMasks(const GraphSpec& g) {
    std::vector<std::uint32_t> masks(g.vertexCount(), 0);
    for (const auto& e : g.edges()) {
        masks[e.u] |= std::uint32_t{1} << e.v;
        masks[e.v] |= std::uint32_t{1} << e.u;
    }
    return masks;
}

}  // namespace detail

/// counts[w] = number of stabilizer-group elements of Pauli weight w.
inline std::vector<double> stabilizerWeightCounts(const GraphSpec& g) {
    detail::checkStabilizerGraph(g);
    const std::size_t n = g.vertexCount();
    const auto nb = detail::neighbourMasks(g);
    std::vector<double> counts(n + 1, 0.0);
    // Gray-code walk over subsets S; the element has X on S and Z on the
    // symmetric difference of the neighbourhoods of S.
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    counts[0] += 1.0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        const int v = std::countr_zero(i);
        x ^= std::uint32_t{1} << v;
        z ^= nb[static_cast<std::size_t>(v)];
        counts[static_cast<std::size_t>(std::popcount(x | z))] += 1.0;
    }
    return counts;
}

/// Fidelity of the qubit cluster state with itself after independent
/// depolarizing noise of strength p on every qubit.
inline double depolarizedClusterFidelity(const GraphSpec& g, double p) {
    if (!(p >= 0.0 && p <= 0.75)) throw DomainError("depolarizing p must lie in [0, 0.75]");
    const auto counts = stabilizerWeightCounts(g);
    const double f = 1.0 - 4.0 * p / 3.0;
    double sum = 0.0;
    double fw = 1.0;
    for (double c : counts) {
        sum += c * fw;
        fw *= f;
    }
    return std::ldexp(sum, -static_cast<int>(g.vertexCount()));
}

inline double erFromFidelity(const GraphSpec& g, double F) {
    const double floor = std::ldexp(1.0, -static_cast<int>(g.vertexCount()));
    if (!(F > floor && F <= 1.0)) throw DomainError("fidelity outside the invertible range (2^-n, 1]");
    if (F == 1.0) return 0.0;
    const auto counts = stabilizerWeightCounts(g);
    auto model = [&](double p) {
        const double f = 1.0 - 4.0 * p / 3.0;
        double sum = 0.0;
        double fw = 1.0;
        for (double c : counts) {
            sum += c * fw;
            fw *= f;
        }
        return std::ldexp(sum, -static_cast<int>(g.vertexCount()));
    };
    double lo = 0.0;
    double hi = 0.75;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (model(mid) > F ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Operator patterns

enum class PauliLabel { I, X, Z };

class OperatorPattern {
public:
    OperatorPattern() = default;

    explicit OperatorPattern(std::vector<PauliLabel> labels) : labels_(std::move(labels)) {
        for (auto l : labels_)
            if (l != PauliLabel::I) return;
        throw FormatError("operator pattern needs at least one non-identity label");
    }

    static OperatorPattern parse(std::string_view text) {
        std::vector<PauliLabel> labels;
        for (char c : text) {
            switch (c) {
                case 'I': labels.push_back(PauliLabel::I); break;
                case 'X': labels.push_back(PauliLabel::X); break;
                case 'Z': labels.push_back(PauliLabel::Z); break;
                default: throw FormatError("operator pattern may only contain I, X, Z");
            }
        }
        return OperatorPattern(std::move(labels));
    }

    std::size_t size() const { return labels_.size(); }
    PauliLabel operator[](std::size_t i) const { return labels_.at(i); }
    const std::vector<PauliLabel>& labels() const { return labels_; }

    std::size_t weight() const {
        std::size_t w = 0;
        for (auto l : labels_) w += l != PauliLabel::I;
        return w;
    }

    std::string str() const {
        std::string s;
        for (auto l : labels_) s += l == PauliLabel::I ? 'I' : l == PauliLabel::X ? 'X' : 'Z';
        return s;
    }

private:
    std::vector<PauliLabel> labels_;
};

/// A pattern together with its eigenvalue on the ideal qubit cluster.
struct MeasuredStabilizer {
    OperatorPattern pattern;
    int eigenvalue = 1;
};

/// Checks that `pattern` is (up to sign) a stabilizer of the graph state and
/// returns its eigenvalue: (-1)^{#edges inside the X support}.
inline MeasuredStabilizer stabilizerFor(const GraphSpec& g, const OperatorPattern& pattern) {
    detail::checkStabilizerGraph(g);
    if (pattern.size() != g.vertexCount()) throw ModeError("pattern length does not match the graph");
    const auto nb = detail::neighbourMasks(g);
    std::uint32_t xs = 0;
    std::uint32_t zs = 0;
    for (std::size_t v = 0; v < pattern.size(); ++v) {
        if (pattern[v] == PauliLabel::X) xs |= std::uint32_t{1} << v;
        if (pattern[v] == PauliLabel::Z) zs |= std::uint32_t{1} << v;
    }
    std::uint32_t zFromX = 0;
    for (std::size_t v = 0; v < pattern.size(); ++v)
        if (xs >> v & 1u) zFromX ^= nb[v];
    if ((zFromX & xs) != 0 || zFromX != zs)
        throw DomainError("pattern " + pattern.str() + " is not a Y-free stabilizer of this graph");
    int inside = 0;
    for (const auto& e : g.edges()) inside += ((xs >> e.u) & 1u) && ((xs >> e.v) & 1u);
    return {pattern, inside % 2 == 0 ? 1 : -1};
}

// ---------------------------------------------------------------------------
// Visibility

/// Per-mode contributions of one term pair to the two outcome classes.
struct ClassKernel {
    Complex plus;
    Complex minus;
};

/// For a bra amplitude bj and ket amplitude bk: X modes split the overlap into
/// even/odd photon counts after D(-alpha/2); Z modes split it at x = alpha.
inline ClassKernel classKernel(PauliLabel label, ComplexAmp bj, ComplexAmp bk, double alpha) {
    switch (label) {
        case PauliLabel::I:
            return {overlap(bj, bk), {0.0, 0.0}};
        case PauliLabel::X: {
            const auto s = fockParitySums(bj, bk, -alpha / 2.0);
            return {s.even, s.odd};
        }
        case PauliLabel::Z: {
            const double inf = std::numeric_limits<double>::infinity();
            return {gaussianBandIntegral(bj, bk, -inf, alpha), gaussianBandIntegral(bj, bk, alpha, inf)};
        }
    }
    return {};
}

namespace detail {
inline double visibilityRatio(Complex correlated, Complex total, int eigenvalue) {
    if (!(std::abs(total.real()) > 0.0)) throw CancelledStateError("visibility: zero-norm state");
    return eigenvalue * correlated.real() / total.real();
}
}  // namespace detail

/// V = (Pmax - Pmin)/(Pmax + Pmin), where Pmax collects the outcome classes
/// whose product of signs equals the stabilizer eigenvalue. Pair sum over all
/// terms; rows are summed in index order.
inline double visibility(const SuperposedState& s, const MeasuredStabilizer& st, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("visibility: alpha must be positive");
    if (st.pattern.size() != s.modes()) throw ModeError("visibility: pattern length does not match state modes");
    const std::size_t t = s.size();
    std::vector<Complex> rowDiff(t), rowSum(t);
    parallelFor(t, [&](std::size_t j) {
        const auto& tj = s.term(j);
        Complex accDiff{0.0, 0.0}, accSum{0.0, 0.0};
        for (std::size_t k = 0; k < t; ++k) {
            const auto& tk = s.term(k);
            Complex diff = tk.coeff;
            Complex sum = tk.coeff;
            for (std::size_t m = 0; m < s.modes(); ++m) {
                const auto kern = classKernel(st.pattern[m], tj.alphas[m], tk.alphas[m], alpha);
                diff *= kern.plus - kern.minus;
                sum *= kern.plus + kern.minus;
            }
            accDiff += diff;
            accSum += sum;
        }
        rowDiff[j] = std::conj(tj.coeff) * accDiff;
        rowSum[j] = std::conj(tj.coeff) * accSum;
    });
    Complex d{0.0, 0.0}, n{0.0, 0.0};
    for (std::size_t j = 0; j < t; ++j) {
        d += rowDiff[j];
        n += rowSum[j];
    }
    return detail::visibilityRatio(d, n, st.eigenvalue);
}

enum class ClusterKind { ballistic, ideal };

/// Visibility of a cluster built over `g` without expanding its 4^n term
/// pairs: each output mode depends linearly on a few input bits, so the pair
/// sum factorizes over (bra bit, ket bit) variables per vertex and is
/// contracted exactly.
inline double networkVisibility(const GraphSpec& g, const MeasuredStabilizer& st, double alpha, ClusterKind kind) {
    if (!(alpha > 0.0)) throw DomainError("visibility: alpha must be positive");
    if (st.pattern.size() != g.vertexCount()) throw ModeError("visibility: pattern length does not match graph");
    const std::size_t n = g.vertexCount();
    const ModeNetwork net = kind == ClusterKind::ballistic ? ballisticNetwork(g, alpha) : identityNetwork(n);

    auto build = [&](bool correlated) {
        std::vector<Factor> factors;
        for (std::size_t m = 0; m < n; ++m) {
            Factor f;
            f.scope = net.support[m];
            const std::size_t size = detail::ipow(4, f.scope.size());
            f.table.resize(size);
            for (std::size_t idx = 0; idx < size; ++idx) {
                Complex bra{0.0, 0.0}, ket{0.0, 0.0};
                std::size_t rest = idx;
                for (auto v : f.scope) {
                    const std::size_t y = rest % 4;
                    rest /= 4;
                    if (y & 1u) bra += net.matrix[m][v];
                    if (y & 2u) ket += net.matrix[m][v];
                }
                const auto kern = classKernel(st.pattern[m], alpha * bra, alpha * ket, alpha);
                f.table[idx] = correlated ? kern.plus - kern.minus : kern.plus + kern.minus;
            }
            factors.push_back(std::move(f));
        }
        if (kind == ClusterKind::ideal) {
            for (const auto& e : g.edges()) {
                Factor f{{e.u, e.v}, std::vector<Complex>(16)};
                for (std::size_t yu = 0; yu < 4; ++yu)
                    for (std::size_t yv = 0; yv < 4; ++yv) {
                        const std::size_t braBoth = (yu & yv) & 1u;
                        const std::size_t ketBoth = ((yu & yv) >> 1) & 1u;
                        f.table[yu + 4 * yv] = (braBoth ^ ketBoth) ? -1.0 : 1.0;
                    }
                factors.push_back(std::move(f));
            }
        }
        return factors;
    };
    const Complex d = contractFactors(build(true), n, 4);
    const Complex total = contractFactors(build(false), n, 4);
    return detail::visibilityRatio(d, total, st.eigenvalue);
}

/// Visibility of the ideal-gate cluster over `g`.
inline double idealVisibility(const GraphSpec& g, const OperatorPattern& pattern, double alpha) {
    const auto st = stabilizerFor(g, pattern);
    if (g.vertexCount() > kMaxBuildVertices) return networkVisibility(g, st, alpha, ClusterKind::ideal);
    return visibility(buildIdeal(g, alpha), st, alpha);
}

/// Inverts (1 - 4p/3)^w = V for the pattern weight w. With `reference` set to
/// the ideal-gate visibility, the ratio V/reference is inverted instead (ratios
/// above 1 read as p = 0).
inline double erFromVisibility(const OperatorPattern& pattern, double V, double reference = 1.0) {
    if (!(V > 0.0)) throw DomainError("erFromVisibility: visibility must be positive");
    if (!(reference > 0.0 && reference <= 1.0)) throw DomainError("erFromVisibility: reference must lie in (0, 1]");
    double ratio = V / reference;
    if (reference == 1.0 && ratio > 1.0 + 1e-12) throw DomainError("erFromVisibility: visibility above 1");
    ratio = std::min(ratio, 1.0);
    const double w = static_cast<double>(pattern.weight());
    return 0.75 * (1.0 - std::pow(ratio, 1.0 / w));
}

}  // namespace catclust
