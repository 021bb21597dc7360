// catclust: sweeps and scans for cat-state cluster construction, written as
// CSV (and a JSON summary for the tradeoff command).

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catclust/catclust.hpp"

namespace {

using namespace catclust;

struct Options {
    std::string graph = "two";
    std::string graphFile;
    std::string pattern;
    double alphaMin = 2.0;
    double alphaMax = 20.0;
    int steps = 19;
    // tradeoff grid over the logical amplitude
    double gridMin = 3.0;
    double gridMax = 15.0;
    int gridSteps = 13;
    double alpha = 4.0;
    std::size_t cutoff = 0;
    std::string model = "barrett";
    bool noPenalty = false;
    bool ratio = false;
    bool longFormat = false;
    std::string kind = "ballistic";
    std::string out = "-";
    std::string summary;
    std::size_t stride = 1;
    unsigned threads = 1;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<double> alphaGrid(double lo, double hi, int steps) {
    if (!(lo < hi)) throw DomainError("--alpha-min must be below --alpha-max");
    if (steps < 2) throw DomainError("--steps must be at least 2");
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i) grid.push_back(lo + (hi - lo) * i / (steps - 1));
    return grid;
}

std::vector<double> alphaGrid(const Options& o) { return alphaGrid(o.alphaMin, o.alphaMax, o.steps); }

GraphSpec loadGraph(const Options& o) {
    if (!o.graphFile.empty()) {
        std::ifstream in(o.graphFile);
        if (!in) throw FormatError("cannot read graph file " + o.graphFile);
        try {
            return graphFromJson(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(std::string("graph file: ") + e.what());
        }
    }
    return presetGraph(parsePresetName(o.graph));
}

std::string graphLabel(const Options& o) { return o.graphFile.empty() ? o.graph : o.graphFile; }

// Short stabilizer names are placed on the measured vertices of the presets
// (ZZXZZ names the star's centre X even where it is graph-length); any other
// pattern as long as the graph is used verbatim.
OperatorPattern resolvePattern(const Options& o, const GraphSpec& g) {
    if (o.pattern.empty()) throw FormatError("--pattern is required");
    if (o.graphFile.empty()) {
        const auto preset = parsePresetName(o.graph);
        if (o.pattern == "ZXZ" && preset == PresetName::fiveLinear) return OperatorPattern::parse("IZXZI");
        if (o.pattern == "ZZXZZ" && (preset == PresetName::fiveStar || preset == PresetName::seventeenStar))
            return OperatorPattern::parse("XZZZZ" + std::string(g.vertexCount() - 5, 'I'));
    }
    if (o.pattern.size() == g.vertexCount()) return OperatorPattern::parse(o.pattern);
    throw FormatError("pattern " + o.pattern + " does not fit graph " + graphLabel(o));
}

void cmdFidelity(const Options& o) {
    const auto g = loadGraph(o);
    if (g.vertexCount() > 5) throw DomainError("fidelity sweeps support graphs of at most 5 vertices");
    Output out(o.out);
    if (o.longFormat) {
        CsvWriter csv(out.stream(), {"alpha", "graph", "quantity", "value", "er"});
        for (double a : alphaGrid(o)) {
            const double f = fidelity(buildBallistic(g, a), buildIdeal(g, a));
            csv.row(a, graphLabel(o), "fidelity", f, erFromFidelity(g, f));
        }
        return;
    }
    CsvWriter csv(out.stream(), {"alpha", "fidelity", "er"});
    for (double a : alphaGrid(o)) {
        const double f = fidelity(buildBallistic(g, a), buildIdeal(g, a));
        csv.row(a, f, erFromFidelity(g, f));
    }
}

void cmdVisibility(const Options& o) {
    const auto g = loadGraph(o);
    const auto st = stabilizerFor(g, resolvePattern(o, g));
    // beyond a handful of vertices the term-pair sum is replaced by the
    // equivalent factorized contraction
    const bool factorized = g.vertexCount() > 10;
    Output out(o.out);
    std::optional<CsvWriter> csv;
    if (o.longFormat)
        csv.emplace(out.stream(), std::initializer_list<std::string_view>{"alpha", "graph", "quantity", "value", "er"});
    else
        csv.emplace(out.stream(), std::initializer_list<std::string_view>{"alpha", "visibility", "ideal_visibility", "er"});
    for (double a : alphaGrid(o)) {
        const double v = factorized ? networkVisibility(g, st, a, ClusterKind::ballistic)
                                    : visibility(buildBallistic(g, a), st, a);
        const double vi = factorized ? networkVisibility(g, st, a, ClusterKind::ideal)
                                     : visibility(buildIdeal(g, a), st, a);
        const double er = erFromVisibility(st.pattern, v, o.ratio ? vi : 1.0);
        if (o.longFormat) {
            csv->row(a, graphLabel(o), "visibility_" + st.pattern.str(), v, er);
            csv->row(a, graphLabel(o), "ideal_visibility_" + st.pattern.str(), vi, erFromVisibility(st.pattern, vi));
        } else {
            csv->row(a, v, vi, er);
        }
    }
}

void cmdTeleport(const Options& o) {
    const auto scan = scanTeleporter(o.alpha, o.cutoff);
    Output out(o.out);
    CsvWriter csv(out.stream(), {"n1", "n2", "n3", "n4", "prob", "fidelity_raw", "fidelity_corrected", "correction_id"});
    for (const auto& r : scan.records)
        csv.row(r.pattern.n[0], r.pattern.n[1], r.pattern.n[2], r.pattern.n[3], r.prob, r.fidelityRaw, r.fidelity,
                r.correctionId);
}

nlohmann::json summaryJson(const PhotonSummary& s) {
    nlohmann::json j;
    j["model"] = s.model;
    j["penalty"] = s.penalty;
    j["er_loss_only"] = s.erLossOnly;
    j["er_comp_only"] = s.erCompOnly;
    j["ballistic_alpha"] = s.ballisticAlpha;
    j["teleport_alpha_raw"] = s.teleportAlphaLogical;
    j["teleport_alpha"] = s.teleportAlpha;
    j["er_comp_at_teleport_alpha"] = s.erCompAtTeleportAlpha;
    j["photons_ballistic"] = s.photonsBallistic;
    j["photons_teleport"] = s.photonsTeleport;
    j["photon_reduction"] = s.photonReduction;
    j["photon_reduction_alpha_squared"] = s.photonReductionAlphaSquared;
    return j;
}

void cmdTradeoff(const Options& o) {
    const auto model = parseThresholdModel(o.model);
    if (o.stride == 0) throw DomainError("--stride must be positive");
    const auto grid = alphaGrid(o.gridMin, o.gridMax, o.gridSteps);
    {
        Output out(o.out);
        CsvWriter csv(out.stream(), {"alpha", "alpha_scaled", "set_size", "er_comp", "er_loss", "f_av", "p_det"});
        for (double a : grid) {
            const auto curve = tradeoffCurve(scanTeleporter(a).records);
            for (std::size_t i = 0; i < curve.size(); ++i) {
                if (i % o.stride != 0 && i + 1 != curve.size()) continue;
                const auto& p = curve[i];
                csv.row(a, std::sqrt(2.0) * a, p.setSize, p.erComp, p.erLoss, p.fav, p.pdet);
            }
        }
    }
    const double crossing = findCrossingAlpha(model, grid);
    const auto s = photonAccounting(model, crossing, !o.noPenalty);
    const std::string text = summaryJson(s).dump(2) + "\n";
    if (!o.summary.empty()) {
        Output sum(o.summary);
        sum.stream() << text;
    } else if (o.out == "-") {
        std::cerr << text;
    } else {
        Output sum(o.out + ".summary.json");
        sum.stream() << text;
    }
}

void cmdDumpState(const Options& o) {
    SuperposedState s;
    if (o.kind == "ballistic") {
        s = buildBallistic(loadGraph(o), o.alpha);
    } else if (o.kind == "ideal") {
        s = buildIdeal(loadGraph(o), o.alpha);
    } else if (o.kind == "bell") {
        s = bellState(o.alpha);
    } else if (o.kind == "teleporter") {
        s = teleporterPreDetection(ballisticCsign(o.alpha), o.alpha);
    } else {
        throw FormatError("unknown --kind " + o.kind);
    }
    Output out(o.out);
    out.stream() << dumpState(s) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cat-state cluster construction: fidelity, visibility, teleporter and tradeoff data"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();

    auto addOut = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file ('-' for stdout)")->capture_default_str(); };
    auto addGraph = [&](CLI::App* c) {
        c->add_option("--graph", o.graph, "Preset graph: two, three, fiveLinear, fiveStar, seventeenStar, unitCell")
            ->capture_default_str();
        c->add_option("--graph-file", o.graphFile, "Graph JSON file {\"n\": int, \"edges\": [[i, j], ...]}");
    };
    auto addSweep = [&](CLI::App* c) {
        c->add_option("--alpha-min", o.alphaMin)->capture_default_str();
        c->add_option("--alpha-max", o.alphaMax)->capture_default_str();
        c->add_option("--steps", o.steps)->capture_default_str();
    };

    auto* fid = app.add_subcommand("fidelity", "Ballistic vs ideal cluster fidelity and its ER");
    addGraph(fid);
    addSweep(fid);
    addOut(fid);
    fid->add_flag("--long", o.longFormat, "Write alpha,graph,quantity,value,er rows");

    auto* vis = app.add_subcommand("visibility", "Stabilizer visibility of the ballistic cluster and its ER");
    addGraph(vis);
    addSweep(vis);
    addOut(vis);
    vis->add_option("--pattern", o.pattern, "XZ, ZXZ, ZZXZZ or a full-length I/X/Z string")->required();
    vis->add_flag("--ratio", o.ratio, "Invert V / ideal visibility instead of V");
    vis->add_flag("--long", o.longFormat, "Write alpha,graph,quantity,value,er rows");

    auto* tel = app.add_subcommand("teleport", "Detection-pattern scan of the CSIGN teleporter");
    tel->add_option("--alpha", o.alpha, "Logical amplitude")->capture_default_str();
    tel->add_option("--cutoff", o.cutoff, "Per-detector photon cutoff (0 = automatic)")->capture_default_str();
    addOut(tel);

    auto* tra = app.add_subcommand("tradeoff", "Loss/computational-error curves and threshold crossing");
    tra->add_option("--alpha-min", o.gridMin, "Logical amplitude grid start")->capture_default_str();
    tra->add_option("--alpha-max", o.gridMax, "Logical amplitude grid end")->capture_default_str();
    tra->add_option("--steps", o.gridSteps)->capture_default_str();
    tra->add_option("--model", o.model, "barrett or optimistic")->capture_default_str();
    tra->add_flag("--no-penalty", o.noPenalty, "Charge alpha instead of sqrt2 alpha to teleportation");
    tra->add_option("--summary", o.summary, "Summary JSON path (default: <out>.summary.json)");
    tra->add_option("--stride", o.stride, "Write every n-th curve point")->capture_default_str();
    addOut(tra);

    auto* dump = app.add_subcommand("dump-state", "Write a state as JSON");
    addGraph(dump);
    dump->add_option("--alpha", o.alpha)->capture_default_str();
    dump->add_option("--kind", o.kind, "ballistic, ideal, bell or teleporter")->capture_default_str();
    addOut(dump);

    CLI11_PARSE(app, argc, argv);

    try {
        setThreadCount(o.threads);
        if (app.got_subcommand(fid)) cmdFidelity(o);
        if (app.got_subcommand(vis)) cmdVisibility(o);
        if (app.got_subcommand(tel)) cmdTeleport(o);
        if (app.got_subcommand(tra)) cmdTradeoff(o);
        if (app.got_subcommand(dump)) cmdDumpState(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
