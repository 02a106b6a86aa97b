#include "sigmalab/dyadic.hpp"

#include <stdexcept>
#include <string>

namespace sigmalab {

namespace {

Rational pow2_inv(int m) {
    // 2^-m
    boost::multiprecision::cpp_int den = boost::multiprecision::cpp_int(1) << m;
    return Rational(1, den);
}

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

DyadicSpace::DyadicSpace(int k) : resolution(k) {
    if (k < 1) throw std::invalid_argument("DyadicSpace: resolution must be >= 1");
    if (k > 30) throw std::invalid_argument("DyadicSpace: resolution too large");
}

FiniteProbSpace DyadicSpace::to_space() const {
    return FiniteProbSpace::uniform(n_atoms());
}

int dyadic_level(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("dyadic_level: n must be >= 1");
    int m = 0;
    while ((n >> (m + 1)) != 0) ++m;
    return m;
}

Partition partition_In(std::uint64_t n, const DyadicSpace& space) {
    int m = dyadic_level(n);
    if (m > space.resolution)
        throw std::invalid_argument("partition_In: resolution exceeded, need K >= " +
                                    std::to_string(m));
    const std::size_t n_atoms = space.n_atoms();
    if (m == 0) return Partition::trivial(n_atoms);
    std::uint64_t k = n - (std::uint64_t{1} << m);
    std::size_t atoms_per_block = n_atoms >> m;
    std::size_t lo = static_cast<std::size_t>(k) * atoms_per_block;
    std::size_t hi = lo + atoms_per_block;
    std::vector<int> block(n_atoms, 1);
    for (std::size_t i = lo; i < hi; ++i) block[i] = 0;
    return Partition(std::move(block));
}

RandVec g0(const DyadicSpace& space) {
    const std::size_t n = space.n_atoms();
    RandVec out(n, 0.0);
    double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<double>(2 * i + 1) * scale;
    return out;
}

std::vector<Rational> g0_exact(const DyadicSpace& space) {
    const std::size_t n = space.n_atoms();
    std::vector<Rational> out;
    out.reserve(n);
    boost::multiprecision::cpp_int den = boost::multiprecision::cpp_int(1)
                                         << space.resolution;
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(boost::multiprecision::cpp_int(2 * i + 1), den);
    return out;
}

std::vector<Claim1Row> claim1_trace(const DyadicSpace& space, std::uint64_t n_lo,
                                    std::uint64_t n_hi, const std::vector<Rational>& f) {
    const std::size_t n_atoms = space.n_atoms();
    if (f.size() != n_atoms) throw std::invalid_argument("claim1_trace: dimension mismatch");
    if (n_lo == 0 || n_lo > n_hi) throw std::invalid_argument("claim1_trace: bad n range");

    // prefix sums of p_i f_i with p_i = 2^-K
    Rational atom_weight = pow2_inv(space.resolution);
    std::vector<Rational> prefix(n_atoms + 1, Rational(0));
    for (std::size_t i = 0; i < n_atoms; ++i)
        prefix[i + 1] = prefix[i] + atom_weight * f[i];
    Rational mean = prefix[n_atoms];
    Rational mean_sq = mean * mean;

    std::vector<Claim1Row> rows;
    rows.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        Claim1Row row;
        row.n = n;
        row.m = dyadic_level(n);
        row.p_interval = pow2_inv(row.m);
        if (row.m == 0) {
            row.norm_sq = mean_sq;
            row.delta = 0;
        } else {
            if (row.m > space.resolution)
                throw std::invalid_argument("claim1_trace: resolution exceeded, need K >= " +
                                            std::to_string(row.m));
            std::uint64_t k = n - (std::uint64_t{1} << row.m);
            std::size_t atoms_per_block = n_atoms >> row.m;
            std::size_t lo = static_cast<std::size_t>(k) * atoms_per_block;
            std::size_t hi = lo + atoms_per_block;
            Rational in_mass = prefix[hi] - prefix[lo];
            Rational out_mass = mean - in_mass;
            Rational q = 1 - row.p_interval;
            row.norm_sq = in_mass * in_mass / row.p_interval + out_mass * out_mass / q;
            row.delta = rational_abs(row.norm_sq - mean_sq);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// E[g0|B_n] at a given atom, exact: the midpoint rule makes every dyadic
// block mean of g0 equal the continuum value (2k+1)/2^m.
Rational claim2_value(const DyadicSpace& space, std::uint64_t n, std::size_t atom) {
    int m = dyadic_level(n);
    if (m == 0) return Rational(1);
    std::uint64_t k = n - (std::uint64_t{1} << m);
    bool inside = (atom >> (space.resolution - m)) == static_cast<std::size_t>(k);
    Rational block_mean(boost::multiprecision::cpp_int(2 * k + 1),
                        boost::multiprecision::cpp_int(1) << m);
    if (inside) return block_mean;
    Rational p = pow2_inv(m);
    return (1 - block_mean * p) / (1 - p);
}

}  // namespace

std::vector<Claim2AtomTrace> claim2_trace(const DyadicSpace& space, std::uint64_t n_lo,
                                          std::uint64_t n_hi,
                                          const std::vector<std::size_t>& probe_atoms) {
    if (n_lo == 0 || n_lo > n_hi) throw std::invalid_argument("claim2_trace: bad n range");
    if (dyadic_level(n_hi) > space.resolution)
        throw std::invalid_argument("claim2_trace: resolution exceeded, need K >= " +
                                    std::to_string(dyadic_level(n_hi)));
    for (std::size_t a : probe_atoms)
        if (a >= space.n_atoms())
            throw std::invalid_argument("claim2_trace: probe atom out of range");

    // deepest level whose full band [2^m, 2^{m+1}-1] lies inside the range
    int deepest = -1;
    for (int m = 0; m <= space.resolution; ++m) {
        std::uint64_t band_lo = std::uint64_t{1} << m;
        std::uint64_t band_hi = (std::uint64_t{1} << (m + 1)) - 1;
        if (band_lo >= n_lo && band_hi <= n_hi) deepest = m;
    }

    std::vector<Claim2AtomTrace> out;
    for (std::size_t atom : probe_atoms) {
        Claim2AtomTrace tr;
        tr.atom = atom;
        tr.limsup_estimate = 0;
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            Rational v = claim2_value(space, n, atom);
            int m = dyadic_level(n);
            Rational dev = rational_abs(v - 1);
            if (m == deepest || (deepest == -1))
                if (dev > tr.limsup_estimate) tr.limsup_estimate = dev;
            tr.trace.push_back(std::move(v));
        }
        for (int m = 0; m <= space.resolution; ++m) {
            std::uint64_t n = std::uint64_t{1} << m;
            if (n >= n_lo && n <= n_hi)
                tr.pow2_dev.push_back(rational_abs(claim2_value(space, n, atom) - 1));
            if (m >= 1 && n + 1 >= n_lo && n + 1 <= n_hi)
                tr.pow2p1_dev.push_back(rational_abs(claim2_value(space, n + 1, atom) - 1));
        }
        out.push_back(std::move(tr));
    }
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace sigmalab
