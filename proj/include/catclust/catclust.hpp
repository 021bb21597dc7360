#pragma once

// Umbrella header.

#include "catclust/cluster.hpp"
#include "catclust/coherent.hpp"
#include "catclust/csv.hpp"
#include "catclust/error.hpp"
#include "catclust/graph.hpp"
#include "catclust/metrics.hpp"
#include "catclust/parallel.hpp"
#include "catclust/projectors.hpp"
#include "catclust/state_json.hpp"
#include "catclust/teleport.hpp"
#include "catclust/tradeoff.hpp"
