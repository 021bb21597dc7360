#pragma once

// Teleporting the two-qubit ballistic CSIGN output through two Bell pairs.
//
// Circuit (logical amplitude alpha throughout):
//   * each Bell pair |00> + |alpha alpha> comes from |0> + |sqrt2 alpha> on a
//     50:50 splitter;
//   * input qubit i and the first half of Bell pair i are displaced by
//     -alpha/2 and mixed on a 50:50 splitter with the pi phase, so the pair
//     of detectors behind it sees one coherent field of amplitude
//     +-alpha/sqrt2 in one port when the two logical values agree and in the
//     other port when they differ;
//   * photons are counted on the four detector modes; the second Bell halves
//     carry the output.
// Mode order after the circuit: [det1, det2, det3, det4, out1, out2].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "catclust/cluster.hpp"
#include "catclust/metrics.hpp"
#include "catclust/projectors.hpp"

namespace catclust {

/// Normalized |00> + |alpha alpha>, made by the Bell-prep splitter.
inline SuperposedState bellState(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("bellState: alpha must be positive");
    auto s = tensor(catState(std::numbers::sqrt2 * alpha), SuperposedState::coherent({0.0}));
    return normalize(applyBeamSplitter(std::move(s), 0, 1, bellPrepSplitter()));
}

/// The ballistic two-qubit CSIGN output that is fed to the teleporter.
inline SuperposedState ballisticCsign(double alpha) { return buildBallistic(presetGraph(PresetName::two), alpha); }

/// The ideal-gate target state (|00> + |0a> + |a0> - |aa>), Gram-normalized.
inline SuperposedState idealCsign(double alpha) { return buildIdeal(presetGraph(PresetName::two), alpha); }

inline SuperposedState teleporterPreDetection(const SuperposedState& input, double alpha) {
    if (input.modes() != 2) throw ModeError("teleporter input must have two modes");
    const auto bell = bellState(alpha);
    // modes: in1 in2 b1a b1b b2a b2b
    auto s = tensor(tensor(input, bell), bell);
    const std::array<std::pair<std::size_t, std::size_t>, 2> mixes = {{{0, 2}, {1, 4}}};
    for (const auto& [in, half] : mixes) {
        s = applyDisplacement(std::move(s), in, -alpha / 2.0);
        s = applyDisplacement(std::move(s), half, -alpha / 2.0);
        s = applyBeamSplitter(std::move(s), in, half, teleportMixSplitter());
    }
    const std::array<std::size_t, 6> order = {0, 2, 1, 4, 3, 5};
    return permuteModes(s, order);
}

struct DetectionPattern {
    std::array<std::size_t, 4> n{};
    friend bool operator==(const DetectionPattern&, const DetectionPattern&) = default;
    friend auto operator<=>(const DetectionPattern&, const DetectionPattern&) = default;
};

struct DetectionResult {
    double prob = 0.0;
    /// Normalized two-mode output; empty when the pattern has zero probability.
    std::optional<SuperposedState> out;
};

inline DetectionResult detect(const SuperposedState& state6, const DetectionPattern& pattern) {
    if (state6.modes() != 6) throw ModeError("detect expects the six-mode teleporter state");
    SuperposedState r = state6;
    for (std::size_t i = 0; i < 4; ++i) r = fockProject(r, 0, pattern.n[i]);
    DetectionResult res;
    res.prob = norm2(r);
    if (r.empty() || isCancelled(r, res.prob)) {
        res.prob = std::max(res.prob, 0.0);
        return res;
    }
    res.out = normalize(std::move(r));
    return res;
}

/// Correction ids index the group {1, Z1, Z2, Z1Z2}.
inline constexpr std::array<const char*, 4> kCorrectionNames = {"I", "Z1", "Z2", "Z1Z2"};

struct CorrectionResult {
    SuperposedState state;
    int correctionId = 0;
    double fidelityRaw = 0.0;
    double fidelity = 0.0;
};

namespace detail {
// Z on mode m flips the sign of every term whose mode-m ket is the |alpha> branch.
inline SuperposedState applyPhaseCorrection(SuperposedState s, int id, double alpha) {
    for (auto& t : s.mutableTerms()) {
        int flips = 0;
        if ((id & 1) && std::abs(t.alphas[0]) > alpha / 2.0) ++flips;
        if ((id & 2) && std::abs(t.alphas[1]) > alpha / 2.0) ++flips;
        if (flips % 2) t.coeff = -t.coeff;
    }
    return s;
}
}  // namespace detail

/// Picks the phase correction maximizing fidelity with the ideal CSIGN state;
/// ties go to the earlier group element.
inline CorrectionResult correct(const SuperposedState& out, double alpha) {
    if (out.modes() != 2) throw ModeError("correct expects a two-mode output");
    const auto ideal = idealCsign(alpha);
    CorrectionResult best{out, 0, 0.0, -1.0};
    for (int id = 0; id < 4; ++id) {
        auto s = detail::applyPhaseCorrection(out, id, alpha);
        const double f = fidelity(ideal, s);
        if (id == 0) best.fidelityRaw = f;
        if (f > best.fidelity) {
            best.fidelity = f;
            best.correctionId = id;
            best.state = normalize(std::move(s));
        }
    }
    return best;
}

struct OutcomeRecord {
    DetectionPattern pattern;
    double prob = 0.0;
    double fidelityRaw = 0.0;
    double fidelity = 0.0;
    int correctionId = 0;
};

/// Smallest per-detector photon cutoff accepted by scanOutcomes.
inline std::size_t teleportCutoff(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("teleportCutoff: alpha must be positive");
    return static_cast<std::size_t>(std::ceil(alpha * alpha / 2.0 + 12.0 * alpha / std::numbers::sqrt2 + 30.0));
}

struct ScanOptions {
    /// Patterns at or below this probability are not reported.
    double minProb = 1e-15;
    /// Per-detector-pair screening: (n, m) is kept when some term reaches
    /// |<n|b><m|b'>|^2 above this.
    double pairScreen = 1e-24;
    /// Allowed probability mass outside the reported patterns.
    double maxTail = 1e-9;
};

struct ScanResult {
    std::vector<OutcomeRecord> records;  // sorted by pattern
    double tail = 0.0;
};

/// Scans detection patterns of a six-mode teleporter state. The output modes
/// of every term are grouped into distinct kets so that each pattern costs a
/// small Gram-matrix product instead of a full projection.
inline ScanResult scanOutcomes(const SuperposedState& state6, double alpha, std::size_t cutoff,
                               const ScanOptions& opt = {}) {
    if (state6.modes() != 6) throw ModeError("scanOutcomes expects the six-mode teleporter state");
    if (cutoff < teleportCutoff(alpha)) throw DomainError("scanOutcomes: cutoff below the photon-count rule");
    const std::size_t T = state6.size();

    // distinct output kets
    std::vector<std::array<ComplexAmp, 2>> kets;
    std::vector<std::size_t> group(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::array<ComplexAmp, 2> k = {state6.term(t).alphas[4], state6.term(t).alphas[5]};
        auto it = std::find(kets.begin(), kets.end(), k);
        group[t] = static_cast<std::size_t>(it - kets.begin());
        if (it == kets.end()) kets.push_back(k);
    }
    const std::size_t K = kets.size();
    std::vector<Complex> gram(K * K);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b)
            gram[a * K + b] = overlap(kets[a][0], kets[b][0]) * overlap(kets[a][1], kets[b][1]);

    const auto ideal = idealCsign(alpha);
    const double idealNorm = norm2(ideal);
    // <ideal|ket_a>
    std::vector<Complex> idealProj(K, {0.0, 0.0});
    for (std::size_t a = 0; a < K; ++a)
        for (const auto& t : ideal.terms())
            idealProj[a] += std::conj(t.coeff) * overlap(t.alphas[0], kets[a][0]) * overlap(t.alphas[1], kets[a][1]);
    // sign of each ket under each correction
    std::vector<std::array<double, 4>> flip(K);
    for (std::size_t a = 0; a < K; ++a)
        for (int id = 0; id < 4; ++id) {
            int f = 0;
            if ((id & 1) && std::abs(kets[a][0]) > alpha / 2.0) ++f;
            if ((id & 2) && std::abs(kets[a][1]) > alpha / 2.0) ++f;
            flip[a][static_cast<std::size_t>(id)] = f % 2 ? -1.0 : 1.0;
        }

    // Fock amplitude tables per detector: amp[d][n * T + t]
    const std::size_t N = cutoff + 1;
    std::array<std::vector<Complex>, 4> amp;
    for (std::size_t d = 0; d < 4; ++d) {
        amp[d].resize(N * T);
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t t = 0; t < T; ++t) amp[d][n * T + t] = fockCoherent(n, state6.term(t).alphas[d]);
    }
    auto screenPairs = [&](std::size_t d1, std::size_t d2) {
        std::vector<std::array<std::size_t, 2>> out;
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t m = 0; m < N; ++m) {
                double w = 0.0;
                for (std::size_t t = 0; t < T; ++t)
                    w = std::max(w, std::norm(amp[d1][n * T + t] * amp[d2][m * T + t]));
                if (w > opt.pairScreen) out.push_back({n, m});
            }
        return out;
    };
    const auto first = screenPairs(0, 1);
    const auto second = screenPairs(2, 3);

    std::vector<std::vector<OutcomeRecord>> slots(first.size());
    parallelFor(first.size(), [&](std::size_t i) {
        const auto [n1, n2] = first[i];
        std::vector<Complex> c1(T);
        for (std::size_t t = 0; t < T; ++t)
            c1[t] = state6.term(t).coeff * amp[0][n1 * T + t] * amp[1][n2 * T + t];
        std::vector<Complex> v(K), gv(K);
        for (const auto& [n3, n4] : second) {
            std::fill(v.begin(), v.end(), Complex{0.0, 0.0});
            for (std::size_t t = 0; t < T; ++t) v[group[t]] += c1[t] * amp[2][n3 * T + t] * amp[3][n4 * T + t];
            double prob = 0.0;
            for (std::size_t a = 0; a < K; ++a) {
                Complex acc{0.0, 0.0};
                for (std::size_t b = 0; b < K; ++b) acc += gram[a * K + b] * v[b];
                gv[a] = acc;
                prob += (std::conj(v[a]) * acc).real();
            }
            if (!(prob > opt.minProb)) continue;
            OutcomeRecord rec;
            rec.pattern.n = {n1, n2, n3, n4};
            rec.prob = prob;
            rec.fidelity = -1.0;
            // flips act on both sides of the Gram product, so renormalize
            for (int id = 0; id < 4; ++id) {
                Complex ov{0.0, 0.0};
                double n2c = 0.0;
                for (std::size_t a = 0; a < K; ++a) {
                    const double sa = flip[a][static_cast<std::size_t>(id)];
                    ov += idealProj[a] * sa * v[a];
                    Complex acc{0.0, 0.0};
                    for (std::size_t b = 0; b < K; ++b) acc += gram[a * K + b] * flip[b][static_cast<std::size_t>(id)] * v[b];
                    n2c += (std::conj(sa * v[a]) * acc).real();
                }
                const double f = std::norm(ov) / (idealNorm * n2c);
                if (id == 0) rec.fidelityRaw = f;
                if (f > rec.fidelity) {
                    rec.fidelity = f;
                    rec.correctionId = id;
                }
            }
            slots[i].push_back(rec);
        }
    });
    ScanResult res;
    double kept = 0.0;
    for (const auto& slot : slots)
        for (const auto& r : slot) {
            kept += r.prob;
            res.records.push_back(r);
        }
    res.tail = std::max(0.0, norm2(state6) - kept);
    if (res.tail > opt.maxTail)
        throw DomainError("scanOutcomes: probability mass outside the scanned patterns exceeds the tail bound");
    std::sort(res.records.begin(), res.records.end(),
              [](const OutcomeRecord& a, const OutcomeRecord& b) { return a.pattern < b.pattern; });
    return res;
}

/// Scan of the ballistic CSIGN output at logical amplitude alpha.
inline ScanResult scanTeleporter(double alpha, std::size_t cutoff = 0, const ScanOptions& opt = {}) {
    if (cutoff == 0) cutoff = teleportCutoff(alpha);
    return scanOutcomes(teleporterPreDetection(ballisticCsign(alpha), alpha), alpha, cutoff, opt);
}

struct AverageFidelity {
    double fav = 0.0;
    double pdet = 0.0;
};

inline AverageFidelity averageFidelity(const std::vector<OutcomeRecord>& accepted) {
    AverageFidelity r;
    double weighted = 0.0;
    for (const auto& rec : accepted) {
        r.pdet += rec.prob;
        weighted += rec.prob * rec.fidelity;
    }
    if (!(r.pdet > 0.0)) throw DomainError("averageFidelity: accepted set has zero probability");
    r.fav = weighted / r.pdet;
    return r;
}

/// Records ordered by descending corrected fidelity, ties by pattern.
inline std::vector<OutcomeRecord> byFidelity(std::vector<OutcomeRecord> records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const OutcomeRecord& a, const OutcomeRecord& b) { return a.fidelity > b.fidelity; });
    return records;
}

/// Largest Pdet over fidelity-ordered prefixes whose Fav exceeds `threshold`.
inline double successProbability(const std::vector<OutcomeRecord>& records, double threshold = 0.99) {
    const auto sorted = byFidelity(records);
    double p = 0.0;
    double pf = 0.0;
    double best = 0.0;
    for (const auto& r : sorted) {
        p += r.prob;
        pf += r.prob * r.fidelity;
        if (pf / p > threshold) best = p;
    }
    return best;
}

inline double maxFidelity(const std::vector<OutcomeRecord>& records) {
    double best = 0.0;
    for (const auto& r : records) best = std::max(best, r.fidelity);
    return best;
}

}  // namespace catclust
