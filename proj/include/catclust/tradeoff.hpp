#pragma once

// Located-loss vs computational-error tradeoff of the post-selected teleporter.
//
// Accepting the best-fidelity detection patterns first, each accepted set gives
// a located loss rate 1 - Pdet and a computational error rate from inverting
// the two-qubit depolarizing model at Fav. A threshold model is the straight
// line between (compOnly, 0) and (0, lossOnly) in the (erComp, erLoss) plane.
//
// Amplitude bookkeeping: functions take the logical amplitude alpha_L used
// in the teleporter. The Bell-pair sources need cats of amplitude
// sqrt2 alpha_L, so the amplitude charged to teleportation is sqrt2 alpha_L;
// without that penalty it is alpha_L. Mean photon numbers follow
// nbar = (alpha/2)^2.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catclust/metrics.hpp"
#include "catclust/teleport.hpp"

namespace catclust {

struct ThresholdModel {
    std::string name;
    double compOnly = 0.0;
    double lossOnly = 0.0;

    void validate() const {
        if (!(compOnly > 0.0 && compOnly < 1.0 && lossOnly > 0.0 && lossOnly < 1.0))
            throw DomainError("threshold model rates must lie in (0, 1)");
    }
};

inline ThresholdModel barrettModel() { return {"barrett", 0.0063, 0.249}; }
inline ThresholdModel optimisticModel() { return {"optimistic", 0.01, 0.249}; }

inline ThresholdModel parseThresholdModel(std::string_view name) {
    if (name == "barrett") return barrettModel();
    if (name == "optimistic") return optimisticModel();
    throw FormatError("unknown threshold model '" + std::string(name) + "'");
}

/// Tolerable located loss at a given computational error rate.
inline double thresholdLine(const ThresholdModel& m, double erComp) {
    m.validate();
    return m.lossOnly * (1.0 - erComp / m.compOnly);
}

struct TradeoffPoint {
    std::size_t setSize = 0;
    double erComp = 0.0;
    double erLoss = 0.0;
    double fav = 0.0;
    double pdet = 0.0;
};

/// Greedy curve over fidelity-ordered prefixes of the scan.
inline std::vector<TradeoffPoint> tradeoffCurve(const std::vector<OutcomeRecord>& records) {
    if (records.empty()) throw DomainError("tradeoffCurve: empty scan");
    const auto two = presetGraph(PresetName::two);
    const auto counts = stabilizerWeightCounts(two);
    const auto sorted = byFidelity(records);
    std::vector<TradeoffPoint> curve;
    curve.reserve(sorted.size());
    double p = 0.0;
    double pf = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        p += sorted[i].prob;
        pf += sorted[i].prob * sorted[i].fidelity;
        TradeoffPoint pt;
        pt.setSize = i + 1;
        pt.pdet = p;
        pt.fav = std::min(1.0, pf / p);
        pt.erLoss = std::max(0.0, 1.0 - p);
        pt.erComp = erFromFidelity(two, pt.fav);
        curve.push_back(pt);
    }
    return curve;
}

/// Smallest (erLoss - threshold) over curve points left of compOnly; a value
/// <= 0 means the curve touches or crosses the threshold.
inline double thresholdMargin(const std::vector<TradeoffPoint>& curve, const ThresholdModel& m) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : curve)
        if (pt.erComp <= m.compOnly) best = std::min(best, pt.erLoss - thresholdLine(m, pt.erComp));
    return best;
}

inline bool crossesThreshold(double alphaLogical, const ThresholdModel& m) {
    return thresholdMargin(tradeoffCurve(scanTeleporter(alphaLogical).records), m) <= 0.0;
}

/// Smallest logical alpha on (or refined from) the grid whose curve crosses the
/// threshold. Bisection stops when the bracket is below `resolution` in
/// logical amplitude.
inline double findCrossingAlpha(const ThresholdModel& m, const std::vector<double>& grid,
                                double resolution = 0.05 / std::numbers::sqrt2) {
    m.validate();
    if (grid.empty()) throw DomainError("findCrossingAlpha: empty grid");
    std::optional<double> below;
    for (double a : grid) {
        if (crossesThreshold(a, m)) {
            if (!below) return a;
            double lo = *below;
            double hi = a;
            while (hi - lo > resolution) {
                const double mid = 0.5 * (lo + hi);
                (crossesThreshold(mid, m) ? hi : lo) = mid;
            }
            return hi;
        }
        below = a;
    }
    throw DomainError("findCrossingAlpha: no crossing on the grid");
}

/// Depolarizing ER of the ballistic two-qubit CSIGN output.
inline double ballisticEr(double alpha) {
    const auto two = presetGraph(PresetName::two);
    return erFromFidelity(two, fidelity(buildBallistic(two, alpha), buildIdeal(two, alpha)));
}

/// Ballistic amplitude whose two-qubit ER equals `er` (ER decreases with alpha).
inline double ballisticAlphaForEr(double er, double lo = 2.0, double hi = 60.0) {
    if (!(ballisticEr(lo) > er && ballisticEr(hi) < er)) throw DomainError("ballisticAlphaForEr: target out of range");
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        (ballisticEr(mid) > er ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double meanPhotons(double alpha) { return (alpha / 2.0) * (alpha / 2.0); }

struct PhotonSummary {
    std::string model;
    bool penalty = true;
    double erLossOnly = 0.0;
    double erCompOnly = 0.0;
    double ballisticAlpha = 0.0;
    double teleportAlphaLogical = 0.0;
    /// Amplitude charged to teleportation (sqrt2 alpha_L with penalty).
    double teleportAlpha = 0.0;
    /// Ballistic ER at teleportAlpha.
    double erCompAtTeleportAlpha = 0.0;
    double photonsBallistic = 0.0;
    double photonsTeleport = 0.0;
    double photonReduction = 0.0;
    /// Same reduction under the nbar = alpha^2 convention.
    double photonReductionAlphaSquared = 0.0;
};

inline PhotonSummary photonAccounting(const ThresholdModel& m, double crossingAlphaLogical, bool penalty = true) {
    m.validate();
    PhotonSummary s;
    s.model = m.name;
    s.penalty = penalty;
    s.erLossOnly = m.lossOnly;
    s.erCompOnly = m.compOnly;
    s.ballisticAlpha = ballisticAlphaForEr(m.compOnly);
    s.teleportAlphaLogical = crossingAlphaLogical;
    s.teleportAlpha = penalty ? std::numbers::sqrt2 * crossingAlphaLogical : crossingAlphaLogical;
    s.erCompAtTeleportAlpha = ballisticEr(s.teleportAlpha);
    s.photonsBallistic = meanPhotons(s.ballisticAlpha);
    s.photonsTeleport = meanPhotons(s.teleportAlpha);
    s.photonReduction = s.photonsBallistic - s.photonsTeleport;
    s.photonReductionAlphaSquared = s.ballisticAlpha * s.ballisticAlpha - s.teleportAlpha * s.teleportAlpha;
    return s;
}

}  // namespace catclust
