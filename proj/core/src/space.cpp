#include "sigmalab/space.hpp"

#include <cmath>
#include <stdexcept>

namespace sigmalab {

FiniteProbSpace::FiniteProbSpace(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("FiniteProbSpace: needs at least one atom");
    double total = 0.0;
    for (double p : weights_) {
        if (!(p > 0.0))
            throw std::invalid_argument(
                "FiniteProbSpace: atom weights must be strictly positive");
        total += p;
    }
    for (double& p : weights_) p /= total;
}

FiniteProbSpace FiniteProbSpace::uniform(std::size_t n) {
    return FiniteProbSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double inner(const FiniteProbSpace& space, const RandVec& f, const RandVec& g) {
    if (f.size() != space.n_atoms() || g.size() != space.n_atoms())
        throw std::invalid_argument("inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += space.weight(i) * f[i] * g[i];
    return s;
}

double norm2(const FiniteProbSpace& space, const RandVec& f) {
    return std::sqrt(inner(space, f, f));
}

RandVec sub(const RandVec& f, const RandVec& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("sub: dimension mismatch");
    RandVec out(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] - g[i];
    return out;
}

}  // namespace sigmalab
