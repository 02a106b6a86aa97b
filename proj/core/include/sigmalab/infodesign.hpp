#pragma once

#include <optional>
#include <vector>

#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

/// Concave increasing Bernoulli index: v(x) = x^alpha with alpha in (0,1],
/// or v(x) = log(1+x).
struct Utility {
    enum class Kind { Power, Log1p };

    Kind kind = Kind::Power;
    double alpha = 0.5;

    double value(double x) const;
    double deriv(double x) const;
    bool strictly_concave() const;
};

/// The finite information-design game: a decision maker (DM) with prior
/// information dm_info choosing a point of the action simplex per observed
/// block, and an information designer (ID) choosing a randomized transfer
/// over the support. Both share the payoff. state_utility (atoms x actions)
/// is an optional affine extension; absent, the payoff is state-independent.
struct InfoDesignInstance {
    FiniteProbSpace space;
    Partition dm_info;
    std::vector<Partition> support;
    int n_actions = 1;
    Utility v;
    std::optional<std::vector<std::vector<double>>> state_utility;

    InfoDesignInstance(FiniteProbSpace space_, Partition dm_info_,
                       std::vector<Partition> support_, int n_actions_, Utility v_,
                       std::optional<std::vector<std::vector<double>>> state_utility_ = {});

    /// join(dm_info, support[h]) — the DM's information after transfer h.
    const Partition& observed(std::size_t h) const { return observed_[h]; }

private:
    std::vector<Partition> observed_;
};

/// One simplex point per block of join(dm_info, H), per H in the support.
/// Measurability is structural: strategies are stored per observed block.
struct StrategyProfile {
    std::vector<std::vector<std::vector<double>>> per_support;  // [h][block][action]
};

/// Weights over the support, a point of the simplex.
struct Transfer {
    std::vector<double> weights;

    static Transfer dirac(std::size_t support_size, std::size_t h);
};

double payoff(const InfoDesignInstance& inst, const StrategyProfile& s, const Transfer& nu);

/// Blockwise best response of the DM: water-filling for strictly concave v,
/// the argmax vertex (ties to lowest action) for linear v. Support elements
/// with zero transfer weight get the uniform point.
StrategyProfile dm_best_response(const InfoDesignInstance& inst, const Transfer& nu);

/// Optimal expected payoff under the deterministic transfer H = support[h].
double value_of_information(const InfoDesignInstance& inst, const Partition& h);

struct EquilibriumCertificate {
    double dm_kkt_residual = 0.0;  ///< blockwise simplex KKT residual
    double id_vertex_gap = 0.0;    ///< max vertex payoff above the equilibrium payoff
    std::size_t chosen_support_index = 0;
    std::vector<std::size_t> optimal_face;  ///< support indices within 1e-12 of the max
};

struct Equilibrium {
    Transfer nu_hat;
    StrategyProfile s_hat;
    EquilibriumCertificate certificate;
    double value = 0.0;
};

/// Direct equilibrium computation: Dirac at the support element with maximal
/// value of information (ties to lowest index), per-H best responses for
/// the DM side, with a two-sided certificate.
Equilibrium solve_equilibrium(const InfoDesignInstance& inst);

}  // namespace sigmalab
