#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sigmalab/metric.hpp"
#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// Per-index deviation traces for every convergence mode of the hierarchy,
/// for one partition sequence against a candidate limit.
struct ConvergenceReport {
    double eps = 0.1;
    std::vector<double> dev_l2varying;  ///< sup_f | ||P_n f|| - ||P f|| |, unit tests
    std::vector<double> dev_strong_op;  ///< sup_f ||(P_n - P) f||
    std::vector<double> dev_weak_op;    ///< sup_{f,g} |<(P_n - P) f, g>|
    std::vector<double> dev_op_norm;    ///< operator norm of P_n - P
    std::vector<double> dev_in_prob;    ///< sup over events A of P(|P_n 1_A - P 1_A| > eps)
    std::vector<double> dev_j1;         ///< sup over limit blocks A of P(|P_n 1_A - 1_A| > eps)
    std::vector<std::size_t> probe_atoms;
    /// pointwise_trace[a][n] = E[probe_f | B_n](probe_atoms[a])
    std::vector<std::vector<double>> pointwise_trace;
};

/// Computes every deviation functional. Test functions are normalized to unit
/// norm and augmented with atom indicators and the limit's block indicators,
/// so the hierarchy inequalities are theorems of the report.
ConvergenceReport analyze(const FiniteProbSpace& space, const PartitionSequence& seq,
                          const Partition& limit, const TestFamily& tests, double eps,
                          const std::vector<std::size_t>& probe_atoms, const RandVec& probe_f);

/// Checks the hierarchy inequalities per index; returns a human-readable
/// entry for each violated implication (empty on any genuine analyze output).
std::vector<std::string> check_hierarchy(const ConvergenceReport& report);

struct BorelCantelliResult {
    double sum = 0.0;
    bool summable_at_horizon = false;  ///< last-quarter increments all below 1e-6
    std::vector<double> terms;
};

/// Partial sums of P(|E[f|B_n] - E[f|limit]| > eps_n), a finite-horizon
/// summability heuristic for the Borel-Cantelli hypothesis.
BorelCantelliResult borel_cantelli_check(const FiniteProbSpace& space,
                                         const PartitionSequence& seq, const Partition& limit,
                                         const RandVec& f, const std::vector<double>& eps_seq);

}  // namespace sigmalab
