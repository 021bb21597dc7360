#pragma once

// Ballistic and ideal cat-qubit cluster states over a graph.
//
// Ballistic: every vertex starts in the cat state |0> + |alpha>, then each edge
// (in lexicographic order) is a weak CSIGN beam splitter. Ideal: the
// hypothetical state with exact CSIGN phases on the same nonorthogonal kets,
// sum_b (-1)^{#edges with both ends 1} |b_1 alpha, ..., b_n alpha>.
//
// Term j corresponds to the bitstring b with vertex 0 as the most significant bit.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "catclust/coherent.hpp"
#include "catclust/graph.hpp"

namespace catclust {

/// Largest vertex count for which full superpositions (2^n terms) are built.
inline constexpr std::size_t kMaxBuildVertices = 17;

namespace detail {
inline void checkBuildable(const GraphSpec& g, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("cluster build: alpha must be positive");
    if (g.vertexCount() > kMaxBuildVertices)
        throw DomainError("cluster build: at most 17 vertices can be expanded into 2^n terms");
}

inline bool bit(std::uint64_t b, std::size_t v, std::size_t n) { return (b >> (n - 1 - v)) & 1u; }
}  // namespace detail

inline SuperposedState buildBallistic(const GraphSpec& g, double alpha) {
    detail::checkBuildable(g, alpha);
    const auto cat = catState(alpha);
    SuperposedState s = cat;
    for (std::size_t v = 1; v < g.vertexCount(); ++v) s = tensor(s, cat);
    const auto bs = csignSplitter(alpha);
    for (const auto& e : g.edges()) s = applyBeamSplitter(std::move(s), e.u, e.v, bs);
    return normalize(std::move(s));
}

inline SuperposedState buildIdeal(const GraphSpec& g, double alpha) {
    detail::checkBuildable(g, alpha);
    const std::size_t n = g.vertexCount();
    std::vector<CoherentTerm> terms;
    terms.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        CoherentTerm t;
        t.alphas.resize(n);
        for (std::size_t v = 0; v < n; ++v) t.alphas[v] = detail::bit(b, v, n) ? alpha : 0.0;
        int parity = 0;
        for (const auto& e : g.edges()) parity ^= (detail::bit(b, e.u, n) && detail::bit(b, e.v, n)) ? 1 : 0;
        t.coeff = parity ? -1.0 : 1.0;
        terms.push_back(std::move(t));
    }
    return normalize(SuperposedState(n, std::move(terms)));
}

/// Output amplitudes of a cluster build as a linear function of the input
/// bits: mode m carries alpha * sum_v matrix[m][v] b_v. `support[m]` lists
/// the vertices that can reach mode m through the splitter sequence, decided
/// structurally rather than by testing coefficients against zero.
struct ModeNetwork {
    std::size_t vertices = 0;
    std::vector<std::vector<Complex>> matrix;
    std::vector<std::vector<std::size_t>> support;
};

inline ModeNetwork ballisticNetwork(const GraphSpec& g, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("ballisticNetwork: alpha must be positive");
    const std::size_t n = g.vertexCount();
    ModeNetwork net;
    net.vertices = n;
    net.matrix.assign(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
        net.matrix[v][v] = 1.0;
        reach[v][v] = true;
    }
    const auto bs = csignSplitter(alpha);
    const double c = std::cos(bs.theta);
    const double sn = std::sin(bs.theta);
    const Complex toA = -std::polar(sn, bs.phi);
    const Complex toB = std::polar(sn, -bs.phi);
    for (const auto& e : g.edges()) {
        for (std::size_t v = 0; v < n; ++v) {
            const Complex a = net.matrix[e.u][v];
            const Complex b = net.matrix[e.v][v];
            net.matrix[e.u][v] = c * a + toA * b;
            net.matrix[e.v][v] = toB * a + c * b;
            const bool r = reach[e.u][v] || reach[e.v][v];
            reach[e.u][v] = r;
            reach[e.v][v] = r;
        }
    }
    net.support.resize(n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t v = 0; v < n; ++v)
            if (reach[m][v]) net.support[m].push_back(v);
    return net;
}

inline ModeNetwork identityNetwork(std::size_t n) {
    ModeNetwork net;
    net.vertices = n;
    net.matrix.assign(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
    net.support.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        net.matrix[v][v] = 1.0;
        net.support[v] = {v};
    }
    return net;
}

}  // namespace catclust
