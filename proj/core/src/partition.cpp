#include "sigmalab/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace sigmalab {

Partition::Partition(std::vector<int> block_of) : block_of_(std::move(block_of)) {
    if (block_of_.empty())
        throw std::invalid_argument("Partition: empty atom set");
    std::unordered_map<int, int> relabel;
    int next = 0;
    for (int& b : block_of_) {
        auto [it, fresh] = relabel.try_emplace(b, next);
        if (fresh) ++next;
        b = it->second;
    }
    n_blocks_ = static_cast<std::size_t>(next);
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
    std::vector<std::vector<std::size_t>> out(n_blocks_);
    for (std::size_t i = 0; i < block_of_.size(); ++i)
        out[static_cast<std::size_t>(block_of_[i])].push_back(i);
    return out;
}

std::vector<double> Partition::block_weights(const FiniteProbSpace& space) const {
    if (space.n_atoms() != n_atoms())
        throw std::invalid_argument("block_weights: dimension mismatch");
    std::vector<double> w(n_blocks_, 0.0);
    for (std::size_t i = 0; i < block_of_.size(); ++i)
        w[static_cast<std::size_t>(block_of_[i])] += space.weight(i);
    return w;
}

Partition Partition::trivial(std::size_t n_atoms) {
    return Partition(std::vector<int>(n_atoms, 0));
}

Partition Partition::singletons(std::size_t n_atoms) {
    std::vector<int> b(n_atoms);
    for (std::size_t i = 0; i < n_atoms; ++i) b[i] = static_cast<int>(i);
    return Partition(std::move(b));
}

Partition Partition::from_blocks(std::size_t n_atoms,
                                 const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<int> b(n_atoms, -1);
    int id = 0;
    for (const auto& blk : blocks) {
        for (std::size_t atom : blk) {
            if (atom >= n_atoms)
                throw std::invalid_argument("from_blocks: atom index out of range");
            if (b[atom] != -1)
                throw std::invalid_argument("from_blocks: atom listed twice");
            b[atom] = id;
        }
        ++id;
    }
    for (int x : b)
        if (x == -1) throw std::invalid_argument("from_blocks: atom not covered");
    return Partition(std::move(b));
}

bool partitions_equal(const Partition& a, const Partition& b) {
    if (a.n_atoms() != b.n_atoms())
        throw std::invalid_argument("partitions_equal: different spaces");
    return a == b;
}

bool is_coarser(const Partition& a, const Partition& b) {
    if (a.n_atoms() != b.n_atoms())
        throw std::invalid_argument("is_coarser: different spaces");
    // every B-block must map into a single A-block
    std::vector<int> image(b.n_blocks(), -1);
    for (std::size_t i = 0; i < a.n_atoms(); ++i) {
        int bb = b.block_of(i);
        int& img = image[static_cast<std::size_t>(bb)];
        if (img == -1)
            img = a.block_of(i);
        else if (img != a.block_of(i))
            return false;
    }
    return true;
}

bool is_measurable(const RandVec& f, const Partition& b, double tol) {
    if (f.size() != b.n_atoms())
        throw std::invalid_argument("is_measurable: dimension mismatch");
    std::vector<std::size_t> first(b.n_blocks(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::size_t blk = static_cast<std::size_t>(b.block_of(i));
        if (first[blk] == static_cast<std::size_t>(-1)) {
            first[blk] = i;
        } else if (std::abs(f[i] - f[first[blk]]) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace sigmalab
