#pragma once

#include <cstddef>
#include <vector>

namespace sigmalab {

/// A random variable on a finite probability space: one real value per atom.
struct RandVec {
    std::vector<double> values;

    RandVec() = default;
    explicit RandVec(std::vector<double> v) : values(std::move(v)) {}
    RandVec(std::size_t n, double fill) : values(n, fill) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

/// Finite probability space: atoms 0..n-1 with strictly positive weights
/// summing to one. Weights are normalized on construction; nonpositive
/// weights are rejected so the null ideal is trivial.
class FiniteProbSpace {
public:
    explicit FiniteProbSpace(std::vector<double> weights);

    std::size_t n_atoms() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    static FiniteProbSpace uniform(std::size_t n);

private:
    std::vector<double> weights_;
};

/// Weighted inner product <f,g> = E[f g] = sum_i p_i f_i g_i.
double inner(const FiniteProbSpace& space, const RandVec& f, const RandVec& g);

/// L2 norm sqrt(<f,f>).
double norm2(const FiniteProbSpace& space, const RandVec& f);

RandVec sub(const RandVec& f, const RandVec& g);

}  // namespace sigmalab
