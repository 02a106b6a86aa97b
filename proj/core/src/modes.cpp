#include "sigmalab/modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigmalab/projection.hpp"

namespace sigmalab {

namespace {

double prob_exceeds(const FiniteProbSpace& space, const RandVec& x, double eps) {
    double p = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > eps) p += space.weight(i);
    return p;
}

}  // namespace

ConvergenceReport analyze(const FiniteProbSpace& space, const PartitionSequence& seq,
                          const Partition& limit, const TestFamily& tests, double eps,
                          const std::vector<std::size_t>& probe_atoms, const RandVec& probe_f) {
    if (!(eps > 0.0)) throw std::invalid_argument("analyze: eps must be positive");
    const std::size_t n = space.n_atoms();

    // effective family: user tests, atom indicators, limit block indicators;
    // all normalized to unit norm
    std::vector<RandVec> eff = tests.functions;
    for (std::size_t i = 0; i < n; ++i) {
        RandVec e(n, 0.0);
        e[i] = 1.0;
        eff.push_back(std::move(e));
    }
    std::vector<RandVec> events;  // unnormalized indicators, for in-prob modes
    for (std::size_t i = 0; i < n; ++i) {
        RandVec e(n, 0.0);
        e[i] = 1.0;
        events.push_back(std::move(e));
    }
    std::vector<RandVec> limit_blocks;
    for (const auto& blk : limit.blocks()) {
        RandVec e(n, 0.0);
        for (std::size_t atom : blk) e[atom] = 1.0;
        limit_blocks.push_back(e);
        events.push_back(e);
        eff.push_back(std::move(e));
    }
    for (RandVec& f : eff) {
        double nrm = norm2(space, f);
        if (nrm > 0.0)
            for (double& v : f.values) v /= nrm;
    }

    ConvergenceReport rep;
    rep.eps = eps;
    rep.probe_atoms = probe_atoms;
    rep.pointwise_trace.assign(probe_atoms.size(), {});

    std::vector<RandVec> limit_cond;
    limit_cond.reserve(eff.size());
    for (const RandVec& f : eff) limit_cond.push_back(cond_exp(space, f, limit));

    CondExpOperator op_limit = operator_of(space, limit);

    for (const Partition& p : seq.items) {
        double l2v = 0.0, strong = 0.0, weak = 0.0;
        std::vector<RandVec> diffs;
        diffs.reserve(eff.size());
        for (std::size_t j = 0; j < eff.size(); ++j) {
            RandVec cj = cond_exp(space, eff[j], p);
            l2v = std::max(l2v, std::abs(norm2(space, cj) - norm2(space, limit_cond[j])));
            RandVec d = sub(cj, limit_cond[j]);
            strong = std::max(strong, norm2(space, d));
            diffs.push_back(std::move(d));
        }
        for (const RandVec& d : diffs)
            for (const RandVec& g : eff)
                weak = std::max(weak, std::abs(inner(space, d, g)));
        rep.dev_l2varying.push_back(l2v);
        rep.dev_strong_op.push_back(strong);
        rep.dev_weak_op.push_back(weak);
        rep.dev_op_norm.push_back(operator_norm_dev(operator_of(space, p), op_limit));

        double inprob = 0.0;
        for (const RandVec& a : events) {
            RandVec d = sub(cond_exp(space, a, p), cond_exp(space, a, limit));
            inprob = std::max(inprob, prob_exceeds(space, d, eps));
        }
        rep.dev_in_prob.push_back(inprob);

        double j1 = 0.0;
        for (const RandVec& a : limit_blocks) {
            RandVec d = sub(cond_exp(space, a, p), a);
            j1 = std::max(j1, prob_exceeds(space, d, eps));
        }
        rep.dev_j1.push_back(j1);

        RandVec trace = cond_exp(space, probe_f, p);
        for (std::size_t a = 0; a < probe_atoms.size(); ++a) {
            if (probe_atoms[a] >= n) throw std::invalid_argument("analyze: probe atom out of range");
            rep.pointwise_trace[a].push_back(trace[probe_atoms[a]]);
        }
    }
    return rep;
}

std::vector<std::string> check_hierarchy(const ConvergenceReport& rep) {
    std::vector<std::string> violations;
    const double slack = 1e-12;
    for (std::size_t k = 0; k < rep.dev_strong_op.size(); ++k) {
        auto flag = [&](const char* what) {
            violations.push_back(std::string(what) + " at index " + std::to_string(k));
        };
        if (rep.dev_weak_op[k] > rep.dev_strong_op[k] + slack)
            flag("weak-op <= strong-op violated");
        if (rep.dev_strong_op[k] > rep.dev_op_norm[k] + slack)
            flag("strong-op <= op-norm violated");
        if (rep.dev_l2varying[k] > rep.dev_strong_op[k] + slack)
            flag("l2-varying <= strong-op violated");
        double cheb = rep.dev_strong_op[k] / rep.eps;
        if (rep.dev_in_prob[k] > std::min(1.0, cheb * cheb) + slack)
            flag("in-probability Chebyshev bound violated");
        if (rep.dev_j1[k] > rep.dev_in_prob[k] + slack)
            flag("J1 <= in-probability violated");
    }
    return violations;
}

BorelCantelliResult borel_cantelli_check(const FiniteProbSpace& space,
                                         const PartitionSequence& seq, const Partition& limit,
                                         const RandVec& f, const std::vector<double>& eps_seq) {
    if (eps_seq.size() != seq.items.size())
        throw std::invalid_argument("borel_cantelli_check: length mismatch");
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        if (!(eps_seq[i] > 0.0))
            throw std::invalid_argument("borel_cantelli_check: eps_seq must be positive");
        if (i > 0 && eps_seq[i] > eps_seq[i - 1])
            throw std::invalid_argument("borel_cantelli_check: eps_seq must be decreasing");
    }
    BorelCantelliResult res;
    RandVec limit_cond = cond_exp(space, f, limit);
    for (std::size_t k = 0; k < seq.items.size(); ++k) {
        RandVec d = sub(cond_exp(space, f, seq.items[k]), limit_cond);
        double t = prob_exceeds(space, d, eps_seq[k]);
        res.terms.push_back(t);
        res.sum += t;
    }
    std::size_t q = seq.items.size() - seq.items.size() / 4;
    res.summable_at_horizon = true;
    for (std::size_t k = q; k < res.terms.size(); ++k)
        if (res.terms[k] > 1e-6) res.summable_at_horizon = false;
    return res;
}

}  // namespace sigmalab
