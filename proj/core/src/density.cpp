#include "sigmalab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sigmalab/projection.hpp"

namespace sigmalab {

DensityPair::DensityPair(const FiniteProbSpace& space, Partition g_, RandVec u_)
    : g(std::move(g_)), u(std::move(u_)) {
    if (u.size() != space.n_atoms() || g.n_atoms() != space.n_atoms())
        throw std::invalid_argument("DensityPair: dimension mismatch");
    double mean = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < -1e-12)
            throw std::invalid_argument("DensityPair: density must be nonnegative");
        mean += space.weight(i) * u[i];
    }
    if (std::abs(mean - 1.0) > 1e-12)
        throw std::invalid_argument("DensityPair: density must have expectation 1");
    if (!is_measurable(u, g, 1e-12))
        throw std::invalid_argument("DensityPair: density must be measurable for its partition");
}

double rho_value(const FiniteProbSpace& space, const DensityPair& pair, const RandVec& f) {
    RandVec c = cond_exp(space, f, pair.g);
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += space.weight(i) * c[i] * c[i] * std::max(pair.u[i], 0.0);
    return std::sqrt(s);
}

std::vector<double> rho_dev(const FiniteProbSpace& space, const std::vector<DensityPair>& seq,
                            const DensityPair& limit, const TestFamily& tests) {
    std::vector<double> limit_norms, limit_rho;
    for (const RandVec& f : tests.functions) {
        limit_norms.push_back(norm2(space, cond_exp(space, f, limit.g)));
        limit_rho.push_back(rho_value(space, limit, f));
    }
    std::vector<double> dev;
    dev.reserve(seq.size());
    for (const DensityPair& p : seq) {
        double d = 0.0;
        for (std::size_t j = 0; j < tests.functions.size(); ++j) {
            double nj = norm2(space, cond_exp(space, tests.functions[j], p.g));
            d = std::max(d, std::abs(nj - limit_norms[j]));
            d = std::max(d, std::abs(rho_value(space, p, tests.functions[j]) - limit_rho[j]));
        }
        dev.push_back(d);
    }
    return dev;
}

RhoExtraction extract_rho_convergent(const FiniteProbSpace& space,
                                     const std::vector<DensityPair>& seq, double k_bound,
                                     const TestFamily& tests, double cluster_threshold) {
    if (seq.empty())
        throw std::invalid_argument("extract_rho_convergent: empty sequence");
    for (std::size_t k = 0; k < seq.size(); ++k)
        if (norm2(space, seq[k].u) > k_bound + 1e-12)
            throw std::invalid_argument("extract_rho_convergent: norm bound violated at index " +
                                        std::to_string(k));

    // pigeonhole: most frequent index partition, ties to earliest occurrence
    PartitionSequence ps;
    for (const DensityPair& p : seq) ps.items.push_back(p.g);
    SubsequenceExtraction pigeon = extract_convergent_subsequence(ps);

    // Bolzano-Weierstrass by coordinate bisection: repeatedly halve the
    // bounding box along its widest coordinate, keeping the fuller half
    // (ties toward the half holding the earliest index).
    std::vector<std::size_t> cluster = pigeon.indices;
    const std::size_t n = space.n_atoms();
    auto spread = [&](const std::vector<std::size_t>& idx, std::size_t coord, double& lo,
                      double& hi) {
        lo = seq[idx[0]].u[coord];
        hi = lo;
        for (std::size_t k : idx) {
            lo = std::min(lo, seq[k].u[coord]);
            hi = std::max(hi, seq[k].u[coord]);
        }
    };
    double radius = 0.0;
    for (;;) {
        std::size_t widest = 0;
        double best = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            double lo, hi;
            spread(cluster, c, lo, hi);
            if (hi - lo > best) {
                best = hi - lo;
                widest = c;
            }
        }
        radius = best;
        if (best <= cluster_threshold || cluster.size() <= 1) break;
        double lo, hi;
        spread(cluster, widest, lo, hi);
        double mid = 0.5 * (lo + hi);
        std::vector<std::size_t> low, high;
        for (std::size_t k : cluster)
            (seq[k].u[widest] <= mid ? low : high).push_back(k);
        if (low.size() > high.size())
            cluster = std::move(low);
        else if (high.size() > low.size())
            cluster = std::move(high);
        else
            cluster = (low.front() < high.front()) ? std::move(low) : std::move(high);
    }

    // Cesaro representative of the cluster; invariants survive averaging
    RandVec mean(n, 0.0);
    for (std::size_t k : cluster)
        for (std::size_t i = 0; i < n; ++i) mean[i] += seq[k].u[i];
    for (double& v : mean.values) v /= static_cast<double>(cluster.size());

    DensityPair limit(space, pigeon.limit, std::move(mean));
    std::vector<DensityPair> selected;
    for (std::size_t k : cluster) selected.push_back(seq[k]);
    RhoExtraction res{std::move(cluster), std::move(limit), radius, {}};
    res.rho_envelope = rho_dev(space, selected, res.limit, tests);
    return res;
}

}  // namespace sigmalab
