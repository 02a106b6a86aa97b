#include "sigmalab/lattice.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "sigmalab/projection.hpp"

namespace sigmalab {

Partition join(const Partition& a, const Partition& b) {
    if (a.n_atoms() != b.n_atoms()) throw std::invalid_argument("join: different spaces");
    std::map<std::pair<int, int>, int> label;
    std::vector<int> out(a.n_atoms());
    int next = 0;
    for (std::size_t i = 0; i < a.n_atoms(); ++i) {
        auto key = std::make_pair(a.block_of(i), b.block_of(i));
        auto [it, fresh] = label.try_emplace(key, next);
        if (fresh) ++next;
        out[i] = it->second;
    }
    return Partition(std::move(out));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); }
};

}  // namespace

Partition meet(const Partition& a, const Partition& b) {
    if (a.n_atoms() != b.n_atoms()) throw std::invalid_argument("meet: different spaces");
    const std::size_t n = a.n_atoms();
    UnionFind uf(n);
    // link atoms sharing an A-block or a B-block; components are the meet
    std::vector<int> first_a(a.n_blocks(), -1), first_b(b.n_blocks(), -1);
    for (std::size_t i = 0; i < n; ++i) {
        int& fa = first_a[static_cast<std::size_t>(a.block_of(i))];
        if (fa == -1)
            fa = static_cast<int>(i);
        else
            uf.unite(static_cast<int>(i), fa);
        int& fb = first_b[static_cast<std::size_t>(b.block_of(i))];
        if (fb == -1)
            fb = static_cast<int>(i);
        else
            uf.unite(static_cast<int>(i), fb);
    }
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = uf.find(static_cast<int>(i));
    return Partition(std::move(out));
}

bool independent(const FiniteProbSpace& space, const Partition& a, const Partition& b,
                 double tol) {
    if (a.n_atoms() != b.n_atoms() || a.n_atoms() != space.n_atoms())
        throw std::invalid_argument("independent: dimension mismatch");
    std::vector<double> pa = a.block_weights(space);
    std::vector<double> pb = b.block_weights(space);
    std::vector<std::vector<double>> pab(a.n_blocks(), std::vector<double>(b.n_blocks(), 0.0));
    for (std::size_t i = 0; i < space.n_atoms(); ++i)
        pab[static_cast<std::size_t>(a.block_of(i))][static_cast<std::size_t>(b.block_of(i))] +=
            space.weight(i);
    for (std::size_t x = 0; x < a.n_blocks(); ++x)
        for (std::size_t y = 0; y < b.n_blocks(); ++y)
            if (std::abs(pab[x][y] - pa[x] * pb[y]) > tol) return false;
    return true;
}

LatticeContinuityReport lattice_continuity_experiment(
    const FiniteProbSpace& space, const PartitionSequence& seq_a,
    const PartitionSequence& seq_b, const Partition& lim_a, const Partition& lim_b,
    const TestFamily& tests) {
    if (seq_a.items.size() != seq_b.items.size())
        throw std::invalid_argument("lattice_continuity_experiment: length mismatch");
    const std::size_t len = seq_a.items.size();

    Partition join_limit = join(lim_a, lim_b);
    Partition meet_limit = meet(lim_a, lim_b);

    // f^C is conditioned on the join of the whole B-side sequence (and its
    // limit), f^B on the A-side limit, following the meet estimate.
    Partition b_join = lim_b;
    for (const Partition& p : seq_b.items) b_join = join(b_join, p);

    std::vector<double> meet_limit_norms;
    for (const RandVec& f : tests.functions)
        meet_limit_norms.push_back(norm2(space, cond_exp(space, f, meet_limit)));

    LatticeContinuityReport rep;
    for (std::size_t k = 0; k < len; ++k) {
        Partition jn = join(seq_a.items[k], seq_b.items[k]);
        Partition mt = meet(seq_a.items[k], seq_b.items[k]);
        rep.dkappa_join.push_back(d_kappa(space, jn, join_limit, tests));
        rep.dkappa_meet.push_back(d_kappa(space, mt, meet_limit, tests));

        double lhs_sup = 0.0, bound_sup = 0.0;
        for (std::size_t j = 0; j < tests.functions.size(); ++j) {
            const RandVec& f = tests.functions[j];
            double lhs =
                std::abs(norm2(space, cond_exp(space, f, mt)) - meet_limit_norms[j]);
            RandVec f_c = cond_exp(space, f, b_join);
            RandVec f_b = cond_exp(space, f, lim_a);
            double bound =
                norm2(space, sub(cond_exp(space, f_c, seq_a.items[k]),
                                 cond_exp(space, f_c, lim_a))) +
                norm2(space, sub(cond_exp(space, f_b, seq_b.items[k]),
                                 cond_exp(space, f_b, lim_b)));
            lhs_sup = std::max(lhs_sup, lhs);
            bound_sup = std::max(bound_sup, bound);
            if (lhs > bound + 1e-10) rep.violations.emplace_back(k, j);
        }
        rep.meet_lhs.push_back(lhs_sup);
        rep.meet_bound.push_back(bound_sup);
    }
    return rep;
}

}  // namespace sigmalab
