// Builds the two-qubit ballistic cluster, compares it with the ideal-gate
// state and measures the XZ stabilizer visibility.

#include <cstdio>

#include "catclust/catclust.hpp"

int main() {
    using namespace catclust;
    const auto g = presetGraph(PresetName::two);
    const auto xz = stabilizerFor(g, OperatorPattern::parse("XZ"));
    for (double alpha : {4.0, 8.0, 11.07, 16.0}) {
        const auto ballistic = buildBallistic(g, alpha);
        const double f = fidelity(ballistic, buildIdeal(g, alpha));
        const double v = visibility(ballistic, xz, alpha);
        std::printf("alpha %6.2f  fidelity %.6f  ER %.4f  XZ visibility %.6f  ER %.4f\n", alpha, f,
                    erFromFidelity(g, f), v, erFromVisibility(xz.pattern, v));
    }
    return 0;
}
