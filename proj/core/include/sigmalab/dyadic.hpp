#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "sigmalab/partition.hpp"
#include "sigmalab/space.hpp"

namespace sigmalab {

using Rational = boost::multiprecision::cpp_rational;

/// Dyadically discretized unit interval: 2^K uniform atoms, atom i standing
/// for [i 2^-K, (i+1) 2^-K].
struct DyadicSpace {
    int resolution;  // K >= 1

    explicit DyadicSpace(int k);
    std::size_t n_atoms() const { return std::size_t{1} << resolution; }
    FiniteProbSpace to_space() const;
};

/// m(n) = floor(log2 n).
int dyadic_level(std::uint64_t n);

/// Two-block partition { I(k, m), complement } with k = n - 2^m, m = m(n).
/// n = 1 degenerates to the trivial partition. Throws (naming the minimal
/// resolution) when m(n) exceeds the space resolution.
Partition partition_In(std::uint64_t n, const DyadicSpace& space);

/// Midpoint discretization of g0(w) = 2w: exact block means over every
/// dyadic interval.
RandVec g0(const DyadicSpace& space);
std::vector<Rational> g0_exact(const DyadicSpace& space);

struct Claim1Row {
    std::uint64_t n = 0;
    int m = 0;
    Rational p_interval;  ///< P(I^(n)) = 2^-m
    Rational norm_sq;     ///< ||E[f|B_n]||_2^2
    Rational delta;       ///< | norm_sq - E[f]^2 |
};

/// Exact rational trace of the Claim-1 quantity per n in [n_lo, n_hi].
std::vector<Claim1Row> claim1_trace(const DyadicSpace& space, std::uint64_t n_lo,
                                    std::uint64_t n_hi, const std::vector<Rational>& f);

struct Claim2AtomTrace {
    std::size_t atom = 0;
    std::vector<Rational> trace;        ///< E[g0|B_n](atom) per n
    Rational limsup_estimate;           ///< max |trace - 1| over the deepest full level
    std::vector<Rational> pow2_dev;     ///< |trace(2^m) - 1| per available m
    std::vector<Rational> pow2p1_dev;   ///< |trace(2^m + 1) - 1| per available m
};

/// Pointwise trace of E[g0|B_n] at the probed atoms with horizon estimates
/// and the two canonical subsequence verdicts.
std::vector<Claim2AtomTrace> claim2_trace(const DyadicSpace& space, std::uint64_t n_lo,
                                          std::uint64_t n_hi,
                                          const std::vector<std::size_t>& probe_atoms);

double to_double(const Rational& r);

}  // namespace sigmalab
