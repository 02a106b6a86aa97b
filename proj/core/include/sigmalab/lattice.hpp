#pragma once

#include <vector>

#include "sigmalab/metric.hpp"
#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// Common refinement: atoms share a block iff they share a block in both A
/// and B. The least upper bound in the refinement order.
Partition join(const Partition& a, const Partition& b);

/// Finest partition coarser than both, i.e. connected components of the
/// block-overlap graph. The greatest lower bound in the refinement order.
Partition meet(const Partition& a, const Partition& b);

/// P-independence of the two generated sigma-algebras: |P(a&b) - P(a)P(b)|
/// <= tol for every block pair.
bool independent(const FiniteProbSpace& space, const Partition& a, const Partition& b,
                 double tol = 1e-12);

struct LatticeContinuityReport {
    std::vector<double> dkappa_join;  ///< d_kappa(join(A_n,B_n), join(limA,limB))
    std::vector<double> dkappa_meet;  ///< d_kappa(meet(A_n,B_n), meet(limA,limB))
    /// Per index: sup over tests of the norm-trace deviation for the meet.
    std::vector<double> meet_lhs;
    /// Per index: sup over tests of the proof-style estimate
    /// ||(P_{A_n}-P_A)(f^C)|| + ||(P_{B_n}-P_B)(f^B)||.
    std::vector<double> meet_bound;
    /// (index, test) pairs where the per-test deviation exceeds the estimate.
    std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Joint-continuity experiment for join and meet along two convergent
/// partition sequences.
LatticeContinuityReport lattice_continuity_experiment(
    const FiniteProbSpace& space, const PartitionSequence& seq_a,
    const PartitionSequence& seq_b, const Partition& lim_a, const Partition& lim_b,
    const TestFamily& tests);

}  // namespace sigmalab
