#pragma once

#include <vector>

#include "sigmalab/metric.hpp"
#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// A pair (G, u): a sub-sigma-algebra together with the square-integrable
/// Radon-Nikodym density u = d(mu)/d(P|G). Construction enforces u >= 0,
/// E[u] = 1 and G-measurability.
struct DensityPair {
    Partition g;
    RandVec u;

    DensityPair(const FiniteProbSpace& space, Partition g_, RandVec u_);
};

/// rho evaluation: sqrt( E[ E[f|G]^2 u ] ). Reduces to ||E[f|G]||_2 at u = 1.
double rho_value(const FiniteProbSpace& space, const DensityPair& pair, const RandVec& f);

/// Per-index deviation combining the index L2-varying deviation and the
/// rho-functional deviation over the test family.
std::vector<double> rho_dev(const FiniteProbSpace& space, const std::vector<DensityPair>& seq,
                            const DensityPair& limit, const TestFamily& tests);

struct RhoExtraction {
    std::vector<std::size_t> indices;
    DensityPair limit;
    double cluster_radius = 0.0;        ///< max coordinate spread of the cluster
    std::vector<double> rho_envelope;   ///< rho_dev along the returned indices
};

/// Compactness extraction: pigeonhole a constant-partition subsequence, then
/// a Bolzano-Weierstrass bisection on the density coordinates down to a
/// certified cluster. The returned limit is the mean of the cluster and
/// satisfies the DensityPair invariants. Requires ||u_k||_2 <= k_bound.
RhoExtraction extract_rho_convergent(const FiniteProbSpace& space,
                                     const std::vector<DensityPair>& seq, double k_bound,
                                     const TestFamily& tests,
                                     double cluster_threshold = 1e-9);

}  // namespace sigmalab
