#include "sigmalab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "sigmalab/lattice.hpp"

namespace sigmalab {

TestFamily TestFamily::atoms(const FiniteProbSpace& space) {
    TestFamily fam;
    fam.kind = Kind::Atoms;
    const std::size_t n = space.n_atoms();
    for (std::size_t i = 0; i < n; ++i) {
        RandVec e(n, 0.0);
        e[i] = 1.0;
        fam.functions.push_back(std::move(e));
    }
    return fam;
}

TestFamily TestFamily::atoms_pairs(const FiniteProbSpace& space) {
    TestFamily fam = atoms(space);
    fam.kind = Kind::AtomsPairs;
    const std::size_t n = space.n_atoms();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            RandVec e(n, 0.0);
            e[i] = 1.0;
            e[j] = 1.0;
            fam.functions.push_back(std::move(e));
        }
    }
    return fam;
}

TestFamily TestFamily::custom(std::vector<RandVec> functions) {
    TestFamily fam;
    fam.kind = Kind::Custom;
    fam.functions = std::move(functions);
    return fam;
}

double theta(double s) {
    double a = std::abs(s);
    return a / (1.0 + a);
}

double d_kappa(const FiniteProbSpace& space, const Partition& a, const Partition& b,
               const TestFamily& tests) {
    if (tests.functions.empty()) throw std::invalid_argument("d_kappa: empty test family");
    double sum = 0.0;
    double w = 1.0;
    for (const RandVec& f : tests.functions) {
        w *= 0.5;  // 2^{-j}, j starting at 1
        double na = norm2(space, cond_exp(space, f, a));
        double nb = norm2(space, cond_exp(space, f, b));
        sum += w * theta(na - nb);
    }
    return sum;
}

std::vector<double> l2_varying_dev(const FiniteProbSpace& space, const PartitionSequence& seq,
                                   const Partition& limit, const TestFamily& tests) {
    std::vector<double> limit_norms;
    limit_norms.reserve(tests.functions.size());
    for (const RandVec& f : tests.functions)
        limit_norms.push_back(norm2(space, cond_exp(space, f, limit)));

    std::vector<double> dev;
    dev.reserve(seq.items.size());
    for (const Partition& p : seq.items) {
        double d = 0.0;
        for (std::size_t j = 0; j < tests.functions.size(); ++j) {
            double nj = norm2(space, cond_exp(space, tests.functions[j], p));
            d = std::max(d, std::abs(nj - limit_norms[j]));
        }
        dev.push_back(d);
    }
    return dev;
}

SubsequenceExtraction extract_convergent_subsequence(const PartitionSequence& seq) {
    if (seq.items.empty())
        throw std::invalid_argument("extract_convergent_subsequence: empty sequence");
    std::map<std::vector<int>, std::vector<std::size_t>> occurrences;
    for (std::size_t i = 0; i < seq.items.size(); ++i)
        occurrences[seq.items[i].block_map()].push_back(i);
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& [key, idx] : occurrences) {
        if (!best || idx.size() > best->size() ||
            (idx.size() == best->size() && idx.front() < best->front()))
            best = &idx;
    }
    return {*best, seq.items[best->front()]};
}

PropertyEResult property_E_check(const FiniteProbSpace& space, const PartitionSequence& seq,
                                 const TestFamily& tests, double tol) {
    if (seq.items.empty())
        throw std::invalid_argument("property_E_check: empty sequence");
    if (tests.functions.empty())
        throw std::invalid_argument("property_E_check: empty test family");
    const std::size_t len = seq.items.size();
    const std::size_t tail_start = len / 2;

    // norm traces over the tail
    const std::size_t nf = tests.functions.size();
    std::vector<std::vector<double>> tail_norms(nf);
    for (std::size_t k = tail_start; k < len; ++k)
        for (std::size_t j = 0; j < nf; ++j)
            tail_norms[j].push_back(
                norm2(space, cond_exp(space, tests.functions[j], seq.items[k])));

    PropertyEResult res;
    std::vector<double> tail_mean(nf, 0.0);
    for (std::size_t j = 0; j < nf; ++j) {
        auto [lo, hi] = std::minmax_element(tail_norms[j].begin(), tail_norms[j].end());
        if (*hi - *lo > tol) return res;  // cauchy_ok stays false
        for (double v : tail_norms[j]) tail_mean[j] += v;
        tail_mean[j] /= static_cast<double>(tail_norms[j].size());
    }
    res.cauchy_ok = true;

    // candidate limits: distinct values of the sequence plus the meet of the
    // tail values (the coarsest partition consistent with a collapsing tail)
    struct Candidate {
        Partition p;
        std::size_t first_occurrence;
    };
    std::vector<Candidate> candidates;
    auto add_candidate = [&](const Partition& p, std::size_t occ) {
        for (const auto& c : candidates)
            if (c.p == p) return;
        candidates.push_back({p, occ});
    };
    for (std::size_t i = 0; i < len; ++i) add_candidate(seq.items[i], i);
    Partition tail_meet = seq.items[tail_start];
    for (std::size_t k = tail_start + 1; k < len; ++k)
        tail_meet = meet(tail_meet, seq.items[k]);
    add_candidate(tail_meet, len);

    const Candidate* chosen = nullptr;
    for (const auto& c : candidates) {
        double score = 0.0;
        for (std::size_t j = 0; j < nf; ++j) {
            double nj = norm2(space, cond_exp(space, tests.functions[j], c.p));
            score = std::max(score, std::abs(nj - tail_mean[j]));
        }
        if (score > tol) continue;
        if (!chosen || c.p.n_blocks() < chosen->p.n_blocks() ||
            (c.p.n_blocks() == chosen->p.n_blocks() &&
             c.first_occurrence < chosen->first_occurrence))
            chosen = &c;
    }
    if (!chosen) {  // tail values themselves always qualify, but be safe
        res.limit = seq.items[tail_start];
    } else {
        res.limit = chosen->p;
    }

    for (std::size_t k = tail_start; k < len; ++k) {
        double strong = 0.0;
        for (const RandVec& f : tests.functions) {
            RandVec diff = sub(cond_exp(space, f, seq.items[k]), cond_exp(space, f, *res.limit));
            strong = std::max(strong, norm2(space, diff));
        }
        if (strong <= tol) res.tail_indices.push_back(k);
    }
    return res;
}

}  // namespace sigmalab
