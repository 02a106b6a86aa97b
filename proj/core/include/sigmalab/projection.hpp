#pragma once

#include <Eigen/Dense>
#include <optional>

#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// Conditional expectation E[f|B]: blockwise weighted average. The output is
/// B-measurable by construction (one value computed per block).
RandVec cond_exp(const FiniteProbSpace& space, const RandVec& f, const Partition& b);

/// The matrix of E[.|B] in the atom basis: M[i][j] = p_j / P(block(i)) when j
/// shares i's block, else 0. Row-stochastic, idempotent, self-adjoint for the
/// weighted inner product.
class CondExpOperator {
public:
    CondExpOperator(FiniteProbSpace space, Partition partition);

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Partition& partition() const { return partition_; }
    const FiniteProbSpace& space() const { return space_; }

    RandVec apply(const RandVec& f) const;

private:
    FiniteProbSpace space_;
    Partition partition_;
    Eigen::MatrixXd matrix_;
};

CondExpOperator operator_of(const FiniteProbSpace& space, const Partition& b);

/// An arbitrary square operator to be tested against the Markovian-projection
/// characterizations. Carries no invariants of its own.
struct ProjectionCandidate {
    FiniteProbSpace space;
    Eigen::MatrixXd matrix;
};

struct CharacterizationReport {
    bool is_projection = false;      // idempotent + weighted-self-adjoint
    bool is_markov = false;          // fixes constants, maps [0,1] into [0,1]
    bool fixes_constants = false;
    bool range_is_lattice = false;   // range basis closed under pointwise min
    std::optional<Partition> recovered_partition;  // present iff projection & markov
};

CharacterizationReport check_markov_characterization(const ProjectionCandidate& c,
                                                     double tol = 1e-9);

/// Recovers the generating partition of a Markovian projection: atoms share a
/// block iff their matrix rows agree within 1e-9. Throws if the candidate is
/// not a Markovian projection or the round trip fails.
Partition partition_from_projection(const ProjectionCandidate& c, double tol = 1e-9);

/// Operator norm of P_A - P_B with respect to the weighted L2 norm: largest
/// singular value of D^{1/2}(M_A - M_B)D^{-1/2}. Eigendecomposition up to
/// n = 2048, power iteration beyond.
double operator_norm_dev(const CondExpOperator& a, const CondExpOperator& b);

}  // namespace sigmalab
