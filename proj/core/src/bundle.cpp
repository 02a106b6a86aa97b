#include "sigmalab/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigmalab/projection.hpp"

namespace sigmalab {

BundleElement::BundleElement(RandVec u_, Partition index_, double measurability_tol)
    : u(std::move(u_)), index(std::move(index_)) {
    if (u.size() != index.n_atoms())
        throw std::invalid_argument("BundleElement: dimension mismatch");
    if (!is_measurable(u, index, measurability_tol))
        throw std::invalid_argument("BundleElement: u is not measurable for its index");
}

std::vector<double> bundle_strong_dev(const FiniteProbSpace& space,
                                      const std::vector<BundleElement>& seq,
                                      const BundleElement& limit, const TestFamily& tests) {
    std::vector<double> limit_norms;
    for (const RandVec& f : tests.functions)
        limit_norms.push_back(norm2(space, cond_exp(space, f, limit.index)));

    std::vector<double> dev;
    dev.reserve(seq.size());
    for (const BundleElement& e : seq) {
        double d = norm2(space, sub(e.u, limit.u));
        for (std::size_t j = 0; j < tests.functions.size(); ++j) {
            double nj = norm2(space, cond_exp(space, tests.functions[j], e.index));
            d = std::max(d, std::abs(nj - limit_norms[j]));
        }
        dev.push_back(d);
    }
    return dev;
}

BundleWeakDev bundle_weak_dev(const FiniteProbSpace& space,
                              const std::vector<BundleElement>& seq,
                              const BundleElement& limit, const TestFamily& tests) {
    BundleWeakDev res;
    std::vector<double> limit_pairings;
    for (const RandVec& v : tests.functions)
        limit_pairings.push_back(inner(space, limit.u, cond_exp(space, v, limit.index)));

    for (const BundleElement& e : seq) {
        res.w1_sup = std::max(res.w1_sup, norm2(space, e.u));
        double d = 0.0;
        for (std::size_t j = 0; j < tests.functions.size(); ++j) {
            double pk = inner(space, e.u, cond_exp(space, tests.functions[j], e.index));
            d = std::max(d, std::abs(pk - limit_pairings[j]));
        }
        res.w2_dev.push_back(d);
    }
    return res;
}

Fingerprint fingerprint(const FiniteProbSpace& space, const BundleElement& f,
                        const TestFamily& tests) {
    Fingerprint fp;
    fp.norm_warning = (norm2(space, f.u) > 1.0 + 1e-12);
    for (const RandVec& u : tests.functions) {
        RandVec cu = cond_exp(space, u, f.index);
        fp.entries.emplace_back(inner(space, f.u, cu), norm2(space, cu));
    }
    return fp;
}

}  // namespace sigmalab
