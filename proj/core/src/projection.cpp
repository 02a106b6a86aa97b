#include "sigmalab/projection.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sigmalab {

RandVec cond_exp(const FiniteProbSpace& space, const RandVec& f, const Partition& b) {
    if (f.size() != space.n_atoms() || b.n_atoms() != space.n_atoms())
        throw std::invalid_argument("cond_exp: dimension mismatch");
    std::vector<double> num(b.n_blocks(), 0.0);
    std::vector<double> den(b.n_blocks(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto blk = static_cast<std::size_t>(b.block_of(i));
        num[blk] += space.weight(i) * f[i];
        den[blk] += space.weight(i);
    }
    RandVec out(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto blk = static_cast<std::size_t>(b.block_of(i));
        out[i] = num[blk] / den[blk];
    }
    return out;
}

CondExpOperator::CondExpOperator(FiniteProbSpace space, Partition partition)
    : space_(std::move(space)), partition_(std::move(partition)) {
    if (partition_.n_atoms() != space_.n_atoms())
        throw std::invalid_argument("CondExpOperator: dimension mismatch");
    const auto n = static_cast<Eigen::Index>(space_.n_atoms());
    std::vector<double> bw = partition_.block_weights(space_);
    matrix_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        int blk = partition_.block_of(static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            if (partition_.block_of(static_cast<std::size_t>(j)) == blk)
                matrix_(i, j) =
                    space_.weight(static_cast<std::size_t>(j)) / bw[static_cast<std::size_t>(blk)];
        }
    }
}

RandVec CondExpOperator::apply(const RandVec& f) const {
    if (f.size() != space_.n_atoms())
        throw std::invalid_argument("CondExpOperator::apply: dimension mismatch");
    const auto n = static_cast<Eigen::Index>(f.size());
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = f[static_cast<std::size_t>(i)];
    Eigen::VectorXd w = matrix_ * v;
    RandVec out(f.size(), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = w(i);
    return out;
}

CondExpOperator operator_of(const FiniteProbSpace& space, const Partition& b) {
    return CondExpOperator(space, b);
}

namespace {

// Orthonormal basis for the column space, rank revealed by pivot threshold.
std::vector<Eigen::VectorXd> column_space_basis(const Eigen::MatrixXd& m, double pivot_tol) {
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::VectorXd v = m.col(j);
        for (const auto& q : basis) v -= q.dot(v) * q;
        // second pass for numerical orthogonality
        for (const auto& q : basis) v -= q.dot(v) * q;
        double nrm = v.norm();
        if (nrm > pivot_tol) basis.push_back(v / nrm);
    }
    return basis;
}

bool in_span(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& v, double tol) {
    Eigen::VectorXd r = v;
    for (const auto& q : basis) r -= q.dot(r) * q;
    return r.norm() <= tol * (1.0 + v.norm());
}

}  // namespace

CharacterizationReport check_markov_characterization(const ProjectionCandidate& c, double tol) {
    const Eigen::MatrixXd& m = c.matrix;
    if (m.rows() != m.cols())
        throw std::invalid_argument("check_markov_characterization: matrix not square");
    if (static_cast<std::size_t>(m.rows()) != c.space.n_atoms())
        throw std::invalid_argument("check_markov_characterization: dimension mismatch");
    const Eigen::Index n = m.rows();

    CharacterizationReport rep;

    bool idem = ((m * m - m).cwiseAbs().maxCoeff() <= tol);
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = c.space.weight(static_cast<std::size_t>(i));
    Eigen::MatrixXd dm = d.asDiagonal() * m;
    bool selfadj = ((dm - dm.transpose()).cwiseAbs().maxCoeff() <= tol);
    rep.is_projection = idem && selfadj;

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    rep.fixes_constants = ((m * ones - ones).cwiseAbs().maxCoeff() <= tol);

    // Markov test on the finite generating family: 1_Omega, atom indicators
    // and their complements. Sufficient in finite spaces.
    bool markov = rep.fixes_constants;
    if (markov) {
        for (Eigen::Index j = 0; j < n && markov; ++j) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(j) = 1.0;
            for (const Eigen::VectorXd& f : {e, Eigen::VectorXd(ones - e)}) {
                Eigen::VectorXd y = m * f;
                if (y.minCoeff() < -tol || y.maxCoeff() > 1.0 + tol) {
                    markov = false;
                    break;
                }
            }
        }
    }
    rep.is_markov = markov;

    // Lattice test on a computed range basis: 1_Omega in the range, and
    // pointwise min of basis pairs stays in the range.
    auto basis = column_space_basis(m, 1e-9);
    bool lattice = in_span(basis, ones, tol);
    std::vector<Eigen::VectorXd> probes = basis;
    if (lattice) probes.push_back(ones);
    for (std::size_t a = 0; a < probes.size() && lattice; ++a) {
        for (std::size_t b = a + 1; b < probes.size() && lattice; ++b) {
            Eigen::VectorXd mn = probes[a].cwiseMin(probes[b]);
            if (!in_span(basis, mn, tol)) lattice = false;
        }
    }
    rep.range_is_lattice = lattice;

    if (rep.is_projection && rep.is_markov) {
        // atoms share a block iff their rows agree
        std::vector<int> block(static_cast<std::size_t>(n), -1);
        int next = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (block[static_cast<std::size_t>(i)] != -1) continue;
            block[static_cast<std::size_t>(i)] = next;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                if (block[static_cast<std::size_t>(j)] == -1 &&
                    (m.row(i) - m.row(j)).cwiseAbs().maxCoeff() <= tol)
                    block[static_cast<std::size_t>(j)] = next;
            }
            ++next;
        }
        rep.recovered_partition = Partition(block);
    }
    return rep;
}

Partition partition_from_projection(const ProjectionCandidate& c, double tol) {
    CharacterizationReport rep = check_markov_characterization(c, tol);
    if (!rep.recovered_partition)
        throw std::runtime_error("partition_from_projection: not a Markovian projection");
    CondExpOperator back = operator_of(c.space, *rep.recovered_partition);
    if ((back.matrix() - c.matrix).cwiseAbs().maxCoeff() > tol)
        throw std::runtime_error(
            "partition_from_projection: recovered partition does not reproduce the matrix");
    return *rep.recovered_partition;
}

double operator_norm_dev(const CondExpOperator& a, const CondExpOperator& b) {
    if (a.space().n_atoms() != b.space().n_atoms())
        throw std::invalid_argument("operator_norm_dev: dimension mismatch");
    const Eigen::Index n = a.matrix().rows();
    Eigen::VectorXd sq(n), isq(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double w = a.space().weight(static_cast<std::size_t>(i));
        sq(i) = std::sqrt(w);
        isq(i) = 1.0 / sq(i);
    }
    Eigen::MatrixXd s = sq.asDiagonal() * (a.matrix() - b.matrix()) * isq.asDiagonal();
    // s is symmetric up to roundoff since both operators are D-self-adjoint
    Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
    if (n <= 2048) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        return std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    }
    // power iteration on the symmetric matrix
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) += 1e-3 * std::sin(static_cast<double>(i + 1));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd w = sym * v;
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        w /= nw;
        double next = std::abs(w.dot(sym * w));
        if (std::abs(next - lambda) <= 1e-12) return next;
        lambda = next;
        v = w;
    }
    return lambda;
}

}  // namespace sigmalab
