#include "sigmalab/infodesign.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigmalab/lattice.hpp"

namespace sigmalab {

double Utility::value(double x) const {
    switch (kind) {
        case Kind::Power:
            return std::pow(x, alpha);
        case Kind::Log1p:
            return std::log1p(x);
    }
    return 0.0;
}

double Utility::deriv(double x) const {
    switch (kind) {
        case Kind::Power:
            return alpha * std::pow(x, alpha - 1.0);
        case Kind::Log1p:
            return 1.0 / (1.0 + x);
    }
    return 0.0;
}

bool Utility::strictly_concave() const {
    return kind == Kind::Log1p || alpha < 1.0;
}

InfoDesignInstance::InfoDesignInstance(
    FiniteProbSpace space_, Partition dm_info_, std::vector<Partition> support_,
    int n_actions_, Utility v_, std::optional<std::vector<std::vector<double>>> state_utility_)
    : space(std::move(space_)),
      dm_info(std::move(dm_info_)),
      support(std::move(support_)),
      n_actions(n_actions_),
      v(v_),
      state_utility(std::move(state_utility_)) {
    if (n_actions < 1) throw std::invalid_argument("InfoDesignInstance: n_actions must be >= 1");
    if (support.empty()) throw std::invalid_argument("InfoDesignInstance: empty support");
    if (dm_info.n_atoms() != space.n_atoms())
        throw std::invalid_argument("InfoDesignInstance: dm_info dimension mismatch");
    if (v.kind == Utility::Kind::Power && !(v.alpha > 0.0 && v.alpha <= 1.0))
        throw std::invalid_argument("InfoDesignInstance: alpha must lie in (0,1]");
    bool contains_prior = false;
    for (const Partition& h : support) {
        if (h.n_atoms() != space.n_atoms())
            throw std::invalid_argument("InfoDesignInstance: support dimension mismatch");
        if (partitions_equal(h, dm_info)) contains_prior = true;
        observed_.push_back(join(dm_info, h));
    }
    if (!contains_prior)
        throw std::invalid_argument("InfoDesignInstance: support must contain dm_info");
    if (state_utility) {
        if (state_utility->size() != space.n_atoms())
            throw std::invalid_argument("InfoDesignInstance: state_utility rows mismatch");
        for (const auto& row : *state_utility)
            if (row.size() != static_cast<std::size_t>(n_actions))
                throw std::invalid_argument("InfoDesignInstance: state_utility cols mismatch");
    }
}

Transfer Transfer::dirac(std::size_t support_size, std::size_t h) {
    Transfer t;
    t.weights.assign(support_size, 0.0);
    t.weights.at(h) = 1.0;
    return t;
}

namespace {

void check_transfer(const InfoDesignInstance& inst, const Transfer& nu) {
    if (nu.weights.size() != inst.support.size())
        throw std::invalid_argument("Transfer: shape mismatch with support");
    double total = 0.0;
    for (double w : nu.weights) {
        if (w < -1e-12) throw std::invalid_argument("Transfer: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("Transfer: weights must sum to 1");
}

// Block-average state utilities per action; zero without state_utility.
std::vector<std::vector<double>> block_utilities(const InfoDesignInstance& inst,
                                                 std::size_t h) {
    const Partition& obs = inst.observed(h);
    const std::size_t nb = obs.n_blocks();
    const auto n_act = static_cast<std::size_t>(inst.n_actions);
    std::vector<std::vector<double>> c(nb, std::vector<double>(n_act, 0.0));
    if (!inst.state_utility) return c;
    std::vector<double> bw = obs.block_weights(inst.space);
    for (std::size_t i = 0; i < inst.space.n_atoms(); ++i) {
        auto blk = static_cast<std::size_t>(obs.block_of(i));
        for (std::size_t a = 0; a < n_act; ++a)
            c[blk][a] += inst.space.weight(i) * (*inst.state_utility)[i][a];
    }
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t a = 0; a < n_act; ++a) c[b][a] /= bw[b];
    return c;
}

struct BlockSolution {
    std::vector<double> s;
    double kkt_residual = 0.0;
};

// Maximizes sum_i v(s_i) + sum_i s_i c_i over the action simplex by
// water-filling on the Lagrange multiplier; closed forms where available.
BlockSolution best_point(const Utility& v, const std::vector<double>& c) {
    const std::size_t n = c.size();
    BlockSolution sol;
    sol.s.assign(n, 0.0);
    if (n == 1) {
        sol.s[0] = 1.0;
        return sol;
    }

    if (!v.strictly_concave()) {
        // linear objective over the simplex attains a vertex; ties to lowest index
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (c[i] > c[best]) best = i;
        sol.s[best] = 1.0;
        double g_best = v.deriv(1.0) + c[best];
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != best) worst = std::max(worst, v.deriv(0.0) + c[i] - g_best);
        sol.kkt_residual = std::max(0.0, worst);
        return sol;
    }

    bool uniform_case = std::all_of(c.begin(), c.end(), [&](double x) { return x == c[0]; });
    if (uniform_case) {
        // symmetric strictly concave problem: uniform point, residual 0
        std::fill(sol.s.begin(), sol.s.end(), 1.0 / static_cast<double>(n));
        return sol;
    }

    double c_max = *std::max_element(c.begin(), c.end());
    auto point_at = [&](double lambda) {
        std::vector<double> s(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double gap = lambda - c[i];
            if (v.kind == Utility::Kind::Power) {
                s[i] = std::pow(v.alpha / gap, 1.0 / (1.0 - v.alpha));
            } else {
                s[i] = std::max(0.0, 1.0 / gap - 1.0);
            }
        }
        return s;
    };
    auto total = [&](double lambda) {
        std::vector<double> s = point_at(lambda);
        double t = 0.0;
        for (double x : s) t += x;
        return t;
    };

    // bracket the multiplier: total is decreasing in lambda on (c_max, inf)
    double lo = c_max + 1e-8;
    while (total(lo) < 1.0 && lo - c_max > 1e-300) lo = c_max + (lo - c_max) / 16.0;
    double hi = c_max + 1.0;
    while (total(hi) > 1.0) hi = c_max + (hi - c_max) * 2.0;
    for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (total(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    sol.s = point_at(0.5 * (lo + hi));
    double t = 0.0;
    for (double x : sol.s) t += x;
    for (double& x : sol.s) x /= t;

    // KKT residual: gradient spread on the active set, violation on the rest
    double g_active_min = 0.0, g_active_max = 0.0, g_inactive_max = 0.0;
    bool has_active = false, has_inactive = false;
    for (std::size_t i = 0; i < n; ++i) {
        double g = v.deriv(sol.s[i]) + c[i];
        if (sol.s[i] > 1e-15) {
            if (!has_active) {
                g_active_min = g_active_max = g;
                has_active = true;
            } else {
                g_active_min = std::min(g_active_min, g);
                g_active_max = std::max(g_active_max, g);
            }
        } else {
            double g0 = v.deriv(0.0) + c[i];
            g_inactive_max = has_inactive ? std::max(g_inactive_max, g0) : g0;
            has_inactive = true;
        }
    }
    sol.kkt_residual = g_active_max - g_active_min;
    if (has_inactive)
        sol.kkt_residual = std::max(sol.kkt_residual, g_inactive_max - g_active_min);
    sol.kkt_residual = std::max(sol.kkt_residual, 0.0);
    return sol;
}

void check_profile(const InfoDesignInstance& inst, const StrategyProfile& s) {
    if (s.per_support.size() != inst.support.size())
        throw std::invalid_argument("StrategyProfile: shape mismatch with support");
    for (std::size_t h = 0; h < inst.support.size(); ++h) {
        if (s.per_support[h].size() != inst.observed(h).n_blocks())
            throw std::invalid_argument("StrategyProfile: block count mismatch");
        for (const auto& pt : s.per_support[h]) {
            if (pt.size() != static_cast<std::size_t>(inst.n_actions))
                throw std::invalid_argument("StrategyProfile: action count mismatch");
            double total = 0.0;
            for (double x : pt) {
                if (x < -1e-12)
                    throw std::invalid_argument("StrategyProfile: negative probability");
                total += x;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("StrategyProfile: block point must sum to 1");
        }
    }
}

double payoff_under_dirac(const InfoDesignInstance& inst, const StrategyProfile& s,
                          std::size_t h) {
    const Partition& obs = inst.observed(h);
    std::vector<double> bw = obs.block_weights(inst.space);
    std::vector<std::vector<double>> c = block_utilities(inst, h);
    double total = 0.0;
    for (std::size_t b = 0; b < obs.n_blocks(); ++b) {
        double blockval = 0.0;
        for (std::size_t a = 0; a < static_cast<std::size_t>(inst.n_actions); ++a) {
            double x = s.per_support[h][b][a];
            blockval += inst.v.value(x) + x * c[b][a];
        }
        total += bw[b] * blockval;
    }
    return total;
}

}  // namespace

double payoff(const InfoDesignInstance& inst, const StrategyProfile& s, const Transfer& nu) {
    check_transfer(inst, nu);
    check_profile(inst, s);
    double total = 0.0;
    for (std::size_t h = 0; h < inst.support.size(); ++h)
        if (nu.weights[h] != 0.0) total += nu.weights[h] * payoff_under_dirac(inst, s, h);
    return total;
}

StrategyProfile dm_best_response(const InfoDesignInstance& inst, const Transfer& nu) {
    check_transfer(inst, nu);
    StrategyProfile s;
    const auto n_act = static_cast<std::size_t>(inst.n_actions);
    for (std::size_t h = 0; h < inst.support.size(); ++h) {
        const std::size_t nb = inst.observed(h).n_blocks();
        std::vector<std::vector<double>> blocks(nb);
        if (nu.weights[h] > 0.0) {
            std::vector<std::vector<double>> c = block_utilities(inst, h);
            for (std::size_t b = 0; b < nb; ++b) blocks[b] = best_point(inst.v, c[b]).s;
        } else {
            for (std::size_t b = 0; b < nb; ++b)
                blocks[b].assign(n_act, 1.0 / static_cast<double>(n_act));
        }
        s.per_support.push_back(std::move(blocks));
    }
    return s;
}

double value_of_information(const InfoDesignInstance& inst, const Partition& h) {
    for (std::size_t i = 0; i < inst.support.size(); ++i) {
        if (partitions_equal(inst.support[i], h)) {
            Transfer nu = Transfer::dirac(inst.support.size(), i);
            return payoff_under_dirac(inst, dm_best_response(inst, nu), i);
        }
    }
    throw std::invalid_argument("value_of_information: partition not in support");
}

Equilibrium solve_equilibrium(const InfoDesignInstance& inst) {
    const std::size_t ns = inst.support.size();
    StrategyProfile s_hat;
    std::vector<double> voi(ns, 0.0);
    double kkt = 0.0;
    for (std::size_t h = 0; h < ns; ++h) {
        const std::size_t nb = inst.observed(h).n_blocks();
        std::vector<std::vector<double>> c = block_utilities(inst, h);
        std::vector<std::vector<double>> blocks(nb);
        for (std::size_t b = 0; b < nb; ++b) {
            BlockSolution bs = best_point(inst.v, c[b]);
            kkt = std::max(kkt, bs.kkt_residual);
            blocks[b] = std::move(bs.s);
        }
        s_hat.per_support.push_back(std::move(blocks));
        voi[h] = payoff_under_dirac(inst, s_hat, h);
    }
    std::size_t best = 0;
    for (std::size_t h = 1; h < ns; ++h)
        if (voi[h] > voi[best]) best = h;

    Equilibrium eq{Transfer::dirac(ns, best), std::move(s_hat), {}, voi[best]};
    eq.certificate.chosen_support_index = best;
    eq.certificate.dm_kkt_residual = kkt;
    double gap = 0.0;
    for (std::size_t h = 0; h < ns; ++h) {
        // linearity in nu makes vertex checking complete on the ID side
        double vertex = payoff(inst, eq.s_hat, Transfer::dirac(ns, h));
        gap = std::max(gap, vertex - eq.value);
        if (eq.value - voi[h] <= 1e-12) eq.certificate.optimal_face.push_back(h);
    }
    eq.certificate.id_vertex_gap = std::max(0.0, gap);
    return eq;
}

}  // namespace sigmalab
