#pragma once

#include <vector>

#include "sigmalab/metric.hpp"
#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// An element of the bundle space: a fiber element u together with its index
/// partition pi(u). Construction enforces u in L2(pi(u)).
struct BundleElement {
    RandVec u;
    Partition index;

    BundleElement(RandVec u_, Partition index_, double measurability_tol = 1e-12);
};

/// Per-test evaluation pairs (<f, E[u_j|pi(f)]>, ||E[u_j|pi(f)]||_2).
struct Fingerprint {
    std::vector<std::pair<double, double>> entries;
    bool norm_warning = false;  ///< set when ||f||_2 > 1 (unit-ball soft precondition)
};

/// Per-index certificate for strong (tau) bundle convergence:
/// max( ||u_k - u||_2, sup over tests of the index norm deviation ).
std::vector<double> bundle_strong_dev(const FiniteProbSpace& space,
                                      const std::vector<BundleElement>& seq,
                                      const BundleElement& limit, const TestFamily& tests);

struct BundleWeakDev {
    double w1_sup = 0.0;            ///< max_k ||u_k||_2
    std::vector<double> w2_dev;     ///< pairing deviation against canonical pairings
};

/// Weak (sigma) convergence deviations: (W1) the norm bound, (W2) pairings
/// against the canonical strongly convergent sequences E[v|pi(u_k)].
BundleWeakDev bundle_weak_dev(const FiniteProbSpace& space,
                              const std::vector<BundleElement>& seq,
                              const BundleElement& limit, const TestFamily& tests);

Fingerprint fingerprint(const FiniteProbSpace& space, const BundleElement& f,
                        const TestFamily& tests);

}  // namespace sigmalab
