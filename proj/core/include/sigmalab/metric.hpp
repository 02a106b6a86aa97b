#pragma once

#include <optional>
#include <vector>

#include "sigmalab/partition.hpp"
#include "sigmalab/projection.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// Finite separating test family, weighted 2^{-j} by position (j from 1).
/// "atoms" holds the n atom indicators; "atoms+pairs" appends the n(n-1)/2
/// pairwise sums 1_i + 1_j in lexicographic order. Atoms alone fail to
/// separate partitions; atoms+pairs do.
struct TestFamily {
    enum class Kind { Atoms, AtomsPairs, Custom };

    Kind kind = Kind::Custom;
    std::vector<RandVec> functions;

    static TestFamily atoms(const FiniteProbSpace& space);
    static TestFamily atoms_pairs(const FiniteProbSpace& space);
    static TestFamily custom(std::vector<RandVec> functions);
};

/// A finite prefix of a sequence of partitions on one space.
struct PartitionSequence {
    std::vector<Partition> items;
};

/// theta(s) = |s| / (1 + |s|), the bounded remetrization of Prop-style
/// series metrics.
double theta(double s);

/// d_kappa(A,B) = sum_j 2^{-j} theta(||E[f_j|A]||_2 - ||E[f_j|B]||_2).
double d_kappa(const FiniteProbSpace& space, const Partition& a, const Partition& b,
               const TestFamily& tests);

/// Per-index sup over the family of | ||E[f|B_n]||_2 - ||E[f|limit]||_2 |.
std::vector<double> l2_varying_dev(const FiniteProbSpace& space, const PartitionSequence& seq,
                                   const Partition& limit, const TestFamily& tests);

struct SubsequenceExtraction {
    std::vector<std::size_t> indices;
    Partition limit;
};

/// The partition lattice is finite, so some value recurs most often; returns
/// all indices attaining the most frequent value and that value as the limit.
/// Ties break toward the value whose first occurrence is earliest.
SubsequenceExtraction extract_convergent_subsequence(const PartitionSequence& seq);

struct PropertyEResult {
    bool cauchy_ok = false;
    std::optional<Partition> limit;
    /// Tail indices where the strong deviation against the limit is <= tol.
    std::vector<std::size_t> tail_indices;
};

/// Cauchy criterion for the norm traces: cauchy_ok iff for every test f the
/// oscillation of ||E[f|B_k]||_2 over the last half of the sequence is <= tol.
/// When it holds, the limit is the stabilized partition: among candidate
/// partitions (values of the sequence plus the meet of the tail values),
/// those whose test norms match the tail means within tol, preferring fewer
/// blocks, then earliest occurrence.
PropertyEResult property_E_check(const FiniteProbSpace& space, const PartitionSequence& seq,
                                 const TestFamily& tests, double tol = 1e-9);

}  // namespace sigmalab
