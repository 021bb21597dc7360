// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catclust/catclust.hpp"
#include "support/fock_oracle.hpp"

using namespace catclust;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[miss] ";
        }
        detail << what << "; ";
    }
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << v;
    return os.str();
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

Complex randomAmp(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> r(0.0, 1.0);
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    return std::polar(radius * std::sqrt(r(rng)), ph(rng));
}

// alpha where a decreasing error rate reaches `target`, to 1e-3
double bisectCrossing(const std::function<double(double)>& er, double lo, double hi, double target = 0.01) {
    if (!(er(lo) > target && er(hi) < target)) throw DomainError("crossing not bracketed");
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (er(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double fidelityEr(const GraphSpec& g, double a) { return erFromFidelity(g, fidelity(buildBallistic(g, a), buildIdeal(g, a))); }

double visibilityEr(const GraphSpec& g, const OperatorPattern& p, double a) {
    const auto st = stabilizerFor(g, p);
    return erFromVisibility(p, visibility(buildBallistic(g, a), st, a));
}

bool shapedPattern(const DetectionPattern& p) { return p.n[0] * p.n[1] == 0 && p.n[2] * p.n[3] == 0; }

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// criterion 4 results are reused by criterion 8
double gTwoFidelityCrossing = std::nan("");
double gStarFidelityCrossing = std::nan("");

void oracleEquivalence(Verdict& o) {
    const std::size_t dim = 81;
    std::mt19937_64 rng(1001);
    double worstOverlap = 0.0;
    double worstFock = 0.0;
    double worstHomodyne = 0.0;
    for (int i = 0; i < 40; ++i) {
        const Complex a = randomAmp(rng, 4.0);
        const Complex b = randomAmp(rng, 4.0);
        const Complex ref = oracle::coherent(b, dim).dot(oracle::coherent(a, dim));
        worstOverlap = std::max(worstOverlap, std::abs(overlap(b, a) - ref));
    }
    for (int i = 0; i < 25; ++i) {
        Complex beta;
        Complex d;
        do {
            beta = randomAmp(rng, 4.0);
            d = randomAmp(rng, 4.0);
        } while (std::abs(beta + d) > 4.0);
        const oracle::Vec v = oracle::displacement(d, dim) * oracle::coherent(beta, dim);
        for (std::size_t n = 0; n < 60; ++n)
            worstFock = std::max(worstFock, std::abs(fockAmplitude(n, beta, d) - v(static_cast<Eigen::Index>(n))));
    }
    std::uniform_real_distribution<double> xs(-4.0, 12.0);
    for (int i = 0; i < 40; ++i) {
        const Complex beta = randomAmp(rng, 4.0);
        const double x = xs(rng);
        worstHomodyne =
            std::max(worstHomodyne, std::abs(homodyneAmplitude(x, beta) - oracle::quadratureAmplitude(x, beta, dim)));
    }
    o.require(worstOverlap <= 1e-10, "overlap err " + sci(worstOverlap));
    o.require(worstFock <= 1e-10, "fock err " + sci(worstFock));
    o.require(worstHomodyne <= 1e-10, "homodyne err " + sci(worstHomodyne));
}

void completenessAndUnitarity(Verdict& o) {
    std::mt19937_64 rng(2002);
    double worstFock = 0.0;
    double worstHomodyne = 0.0;
    double worstNorm = 0.0;
    for (int i = 0; i < 40; ++i) {
        const Complex beta = randomAmp(rng, 25.0);
        const Complex d = randomAmp(rng, 25.0);
        const double mu = std::norm(beta + d);
        double total = 0.0;
        for (std::size_t n = 0; n <= photonCutoff(mu); ++n) total += std::norm(fockAmplitude(n, beta, d));
        worstFock = std::max(worstFock, std::abs(total - 1.0));
        worstHomodyne = std::max(worstHomodyne, std::abs(gaussianBandIntegral(beta, beta, -kInfinity, kInfinity) - 1.0));
    }
    std::uniform_int_distribution<std::size_t> modes(2, 6);
    std::uniform_int_distribution<std::size_t> terms(1, 24);
    std::uniform_real_distribution<double> th(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 60; ++i) {
        const std::size_t m = modes(rng);
        std::vector<CoherentTerm> ts;
        const std::size_t k = terms(rng);
        for (std::size_t t = 0; t < k; ++t) {
            CoherentTerm term{randomAmp(rng, 1.0), {}};
            for (std::size_t j = 0; j < m; ++j) term.alphas.push_back(randomAmp(rng, 25.0));
            ts.push_back(std::move(term));
        }
        const SuperposedState s(m, std::move(ts));
        const double n0 = norm2(s);
        if (!(n0 > 1e-6)) continue;
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        const std::size_t a = pick(rng);
        const std::size_t b = (a + 1 + pick(rng) % (m - 1)) % m;
        const auto bs = applyBeamSplitter(s, a, b, BeamSplitterParams{th(rng), ph(rng)});
        const auto dd = applyDisplacement(s, a, randomAmp(rng, 25.0));
        worstNorm = std::max({worstNorm, std::abs(norm2(bs) - n0) / std::max(1.0, n0),
                              std::abs(norm2(dd) - n0) / std::max(1.0, n0)});
    }
    o.require(worstFock <= 1e-9, "fock completeness err " + sci(worstFock));
    o.require(worstHomodyne <= 1e-9, "homodyne completeness err " + sci(worstHomodyne));
    o.require(worstNorm <= 1e-9, "splitter/displacement norm err " + sci(worstNorm));
}

void csignPhase(Verdict& o) {
    const double a = 10.0;
    const auto s = ballisticCsign(a);
    // conditional phase of each ballistic branch relative to its ideal ket
    auto branchPhase = [&](std::size_t idx, Complex x, Complex y) {
        const auto& t = s.term(idx);
        const Complex ov = std::conj(overlap(t.alphas[0], x) * overlap(t.alphas[1], y));
        return ov / std::abs(ov);
    };
    const Complex p11 = branchPhase(3, a, a);
    const Complex p01 = branchPhase(1, 0.0, a);
    const Complex p10 = branchPhase(2, a, 0.0);
    o.require(std::abs(p11 + 1.0) <= 2e-2, "|11> dist to -1 " + sci(std::abs(p11 + 1.0)));
    o.require(std::abs(p01 - 1.0) <= 2e-2, "|01> dist to +1 " + sci(std::abs(p01 - 1.0)));
    o.require(std::abs(p10 - 1.0) <= 2e-2, "|10> dist to +1 " + sci(std::abs(p10 - 1.0)));
}

void fidelityCrossings(Verdict& o) {
    const auto two = presetGraph(PresetName::two);
    const auto star = presetGraph(PresetName::fiveStar);
    gTwoFidelityCrossing = bisectCrossing([&](double a) { return fidelityEr(two, a); }, 6.0, 16.0);
    gStarFidelityCrossing = bisectCrossing([&](double a) { return fidelityEr(star, a); }, 12.0, 26.0);
    o.require(std::abs(gTwoFidelityCrossing - 11.07) <= 0.1, "two " + fmt(gTwoFidelityCrossing) + " vs 11.07");
    o.require(std::abs(gStarFidelityCrossing - 18.5) <= 0.2, "fiveStar " + fmt(gStarFidelityCrossing) + " vs 18.5");
}

void visibilityCrossings(Verdict& o) {
    const auto two = presetGraph(PresetName::two);
    const auto line = presetGraph(PresetName::fiveLinear);
    const auto star = presetGraph(PresetName::fiveStar);
    const auto xz = OperatorPattern::parse("XZ");
    const auto zxz = OperatorPattern::parse("IZXZI");
    const auto zzxzz = OperatorPattern::parse("XZZZZ");
    const double c2 = bisectCrossing([&](double a) { return visibilityEr(two, xz, a); }, 6.0, 18.0);
    const double c5 = bisectCrossing([&](double a) { return visibilityEr(line, zxz, a); }, 10.0, 22.0);
    const double cs = bisectCrossing([&](double a) { return visibilityEr(star, zzxzz, a); }, 14.0, 28.0);
    o.require(std::abs(c2 - 11.7) <= 0.2, "XZ two " + fmt(c2) + " vs 11.7");
    o.require(std::abs(c5 - 15.56) <= 0.3, "ZXZ fiveLinear " + fmt(c5) + " vs 15.56");
    o.require(std::abs(cs - 20.83) <= 0.4, "ZZXZZ fiveStar " + fmt(cs) + " vs 20.83");

    // the leaves beyond the measured star do not change the statistics once
    // |0> and |alpha> are nearly orthogonal; sampled at the reduced amplitudes
    // used for the seventeen-vertex run
    const auto seventeen = presetGraph(PresetName::seventeenStar);
    const auto big = stabilizerFor(seventeen, OperatorPattern::parse("XZZZZ" + std::string(12, 'I')));
    const auto small = stabilizerFor(star, zzxzz);
    double worst = 0.0;
    for (double a : {5.0, 6.0}) {
        worst = std::max(worst, std::abs(networkVisibility(seventeen, big, a, ClusterKind::ballistic) -
                                         visibility(buildBallistic(star, a), small, a)));
    }
    o.require(worst <= 1e-6, "17 vs 5 star max |dV| at alpha 5, 6 " + sci(worst));
}

void teleporter(Verdict& o) {
    const double maxF = maxFidelity(scanTeleporter(2.0).records);
    o.require(maxF >= 0.999, "max corrected F at 2.83 = " + fmt(maxF, 5));

    const auto scan = scanTeleporter(4.0);
    double shapedMass = 0.0;
    std::map<std::size_t, double> firing;
    for (const auto& r : scan.records) {
        if (shapedPattern(r.pattern)) shapedMass += r.prob;
        firing[std::max(r.pattern.n[0], r.pattern.n[1])] += r.prob / 2;
        firing[std::max(r.pattern.n[2], r.pattern.n[3])] += r.prob / 2;
    }
    std::size_t peak = 0;
    double best = 0.0;
    for (const auto& [n, p] : firing)
        if (p > best) {
            best = p;
            peak = n;
        }
    o.require(shapedMass > 0.9, "shaped mass at 5.66 = " + fmt(shapedMass));
    o.require(std::abs(double(peak) - 8.0) <= 3.0, "count peak " + std::to_string(peak) + " vs 8");

    std::vector<double> success;
    for (double aL : {3.0, 4.0, 5.0, 6.0}) success.push_back(successProbability(scanTeleporter(aL).records));
    bool monotone = true;
    for (std::size_t i = 1; i < success.size(); ++i) monotone = monotone && success[i] > success[i - 1];
    std::string list;
    for (double s : success) list += fmt(s, 3) + " ";
    o.require(monotone, "success over 4.24..8.49 = " + list + "monotone");
    o.require(success.back() > 0.9, "success at 8.49 = " + fmt(success.back(), 3) + " > 0.9");
}

void photonTables(Verdict& o) {
    std::vector<double> grid;
    for (double a = 3.0; a <= 15.0; a += 1.0) grid.push_back(a);
    struct Target {
        ThresholdModel model;
        double alpha;
        double erComp;
        double reduction;
        double noPenalty;
    };
    for (const auto& t : {Target{barrettModel(), 13.65, 0.0066, 2.16, 25.44},
                          Target{optimisticModel(), 10.69, 0.0107, 2.06, 16.35}}) {
        const double aL = findCrossingAlpha(t.model, grid);
        const auto with = photonAccounting(t.model, aL);
        const auto without = photonAccounting(t.model, aL, false);
        const std::string tag = t.model.name + " ";
        o.require(std::abs(with.teleportAlpha - t.alpha) <= 0.2,
                  tag + "crossing " + fmt(with.teleportAlpha) + " vs " + fmt(t.alpha, 2));
        o.require(std::abs(with.erCompAtTeleportAlpha - t.erComp) <= 0.001,
                  tag + "erComp " + fmt(100 * with.erCompAtTeleportAlpha, 3) + "% vs " + fmt(100 * t.erComp, 2) + "%");
        o.require(std::abs(with.photonReduction - t.reduction) <= 0.3,
                  tag + "reduction " + fmt(with.photonReduction, 2) + " vs " + fmt(t.reduction, 2));
        o.require(std::abs(without.photonReduction - t.noPenalty) <= 0.5,
                  tag + "no-penalty reduction " + fmt(without.photonReduction, 2) + " vs " + fmt(t.noPenalty, 2));
    }
}

void summaryNumbersGuard(Verdict& o) {
    if (std::isnan(gTwoFidelityCrossing) || std::isnan(gStarFidelityCrossing)) {
        const auto two = presetGraph(PresetName::two);
        const auto star = presetGraph(PresetName::fiveStar);
        gTwoFidelityCrossing = bisectCrossing([&](double a) { return fidelityEr(two, a); }, 6.0, 16.0);
        gStarFidelityCrossing = bisectCrossing([&](double a) { return fidelityEr(star, a); }, 12.0, 26.0);
    }
    // the headline 9.25 / 10.42 must not be what the pipeline produces
    for (double summary : {9.25, 10.42}) {
        const double gap = std::min(std::abs(gTwoFidelityCrossing - summary), std::abs(gStarFidelityCrossing - summary));
        o.require(gap > 0.2, "pipeline crossings keep clear of " + fmt(summary, 2) + " by " + fmt(gap, 2));
    }
}

struct Criterion {
    int id;
    const char* title;
    double budgetSeconds;
    void (*run)(Verdict&);
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "oracle equivalence", 60, oracleEquivalence},
        {2, "completeness and unitarity", 60, completenessAndUnitarity},
        {3, "CSIGN conditional phase at alpha=10", 10, csignPhase},
        {4, "fidelity ER 1% crossings", 300, fidelityCrossings},
        {5, "visibility ER 1% crossings", 1800, visibilityCrossings},
        {6, "teleporter fidelity, shape and success", 900, teleporter},
        {7, "photon-cost tables", 3600, photonTables},
        {8, "summary-number guard", 60, summaryNumbersGuard},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Verdict o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "[error] " << e.what() << "; ";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs <= c.budgetSeconds, "runtime " + fmt(secs, 1) + "s of " + fmt(c.budgetSeconds, 0) + "s");
        if (!o.pass) ++failed;
        std::printf("criterion %d: %s  %s  (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
