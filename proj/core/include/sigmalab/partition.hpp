#pragma once

#include <cstddef>
#include <vector>

#include "sigmalab/space.hpp"

namespace sigmalab {

/// A partition of the atom set, i.e. a sub-sigma-algebra of a finite space.
/// Stored as an atom -> block-id map, canonicalized so block ids are numbered
/// by order of first appearance. Equality of partitions is equality of the
/// canonical maps.
class Partition {
public:
    /// Builds from an arbitrary labeling; labels are renumbered canonically.
    explicit Partition(std::vector<int> block_of);

    std::size_t n_atoms() const { return block_of_.size(); }
    std::size_t n_blocks() const { return n_blocks_; }
    int block_of(std::size_t atom) const { return block_of_[atom]; }
    const std::vector<int>& block_map() const { return block_of_; }

    /// Atom indices grouped per block, blocks in canonical order.
    std::vector<std::vector<std::size_t>> blocks() const;

    /// Probability of each block under the given space.
    std::vector<double> block_weights(const FiniteProbSpace& space) const;

    static Partition trivial(std::size_t n_atoms);
    static Partition singletons(std::size_t n_atoms);
    static Partition from_blocks(std::size_t n_atoms,
                                 const std::vector<std::vector<std::size_t>>& blocks);

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.block_of_ == b.block_of_;
    }

private:
    std::vector<int> block_of_;
    std::size_t n_blocks_ = 0;
};

bool partitions_equal(const Partition& a, const Partition& b);

/// True iff A is coarser than (or equal to) B: every block of B lies inside
/// a block of A.
bool is_coarser(const Partition& a, const Partition& b);

/// True iff f is constant on every block of B. Exact comparison by default;
/// pass a tolerance for numerically produced vectors.
bool is_measurable(const RandVec& f, const Partition& b, double tol = 0.0);

}  // namespace sigmalab
