#include <doctest.h>

#include <cmath>
#include <random>

#include "sigmalab/bundle.hpp"
#include "sigmalab/projection.hpp"
#include "test_util.hpp"

using namespace sigmalab;

TEST_CASE("bundle element enforces fiber membership") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    (void)u4;
    CHECK_NOTHROW(BundleElement(testutil::rv({1, 1, 2, 2}), Partition({0, 0, 1, 1})));
    CHECK_THROWS_AS(BundleElement(testutil::rv({1, 2, 3, 4}), Partition({0, 0, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("bundle_strong_dev examples") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    auto fam = TestFamily::atoms_pairs(u4);
    BundleElement lim(testutil::rv({1, 1, 2, 2}), Partition({0, 0, 1, 1}));

    auto zeros = bundle_strong_dev(u4, {lim, lim, lim}, lim, fam);
    for (double d : zeros) CHECK(d == 0.0);

    // fixed fiber: deviation reduces to the L2 distance
    BundleElement near(testutil::rv({1.1, 1.1, 2, 2}), Partition({0, 0, 1, 1}));
    auto dev = bundle_strong_dev(u4, {near}, lim, fam);
    CHECK(dev[0] == doctest::Approx(norm2(u4, sub(near.u, lim.u))));
}

TEST_CASE("conditioned sequence converges strongly to the conditioned limit") {
    // u_k = E[u|B_k] with B_k a fixed refinement chain ending at the limit fiber
    FiniteProbSpace u8 = FiniteProbSpace::uniform(8);
    auto fam = TestFamily::atoms_pairs(u8);
    RandVec u({3, 1, 4, 1, 5, 9, 2, 6});
    std::vector<Partition> chain{Partition({0, 0, 0, 0, 1, 1, 1, 1}),
                                 Partition({0, 0, 1, 1, 2, 2, 3, 3}),
                                 Partition::singletons(8)};
    std::vector<BundleElement> seq;
    for (const auto& b : chain) seq.emplace_back(cond_exp(u8, u, b), b);
    BundleElement lim(u, Partition::singletons(8));
    auto dev = bundle_strong_dev(u8, seq, lim, fam);
    CHECK(dev[0] >= dev[1]);
    CHECK(dev[2] == doctest::Approx(0.0));
}

TEST_CASE("bundle_weak_dev examples") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    auto fam = TestFamily::atoms_pairs(u4);
    Partition sing = Partition::singletons(4);

    // strong convergence implies the pairing deviation vanishes
    BundleElement lim(testutil::rv({1, 2, 0, 1}), sing);
    std::vector<BundleElement> seq;
    for (int k = 1; k <= 6; ++k) {
        RandVec v = lim.u;
        for (auto& x : v.values) x += 1.0 / (k * k * 8.0);
        seq.emplace_back(std::move(v), sing);
    }
    auto wd = bundle_weak_dev(u4, seq, lim, fam);
    CHECK(wd.w2_dev.back() < wd.w2_dev.front());
    CHECK(wd.w2_dev.back() < 1e-2);

    // weak-but-not-strong relative to a probe family orthogonal to the sequence
    auto mono = TestFamily::custom({testutil::rv({1, 1, 1, 1})});
    RandVec r({1, -1, 1, -1});
    std::vector<BundleElement> alt;
    for (int k = 0; k < 6; ++k) {
        RandVec v = r;
        if (k % 2) {
            for (auto& x : v.values) x = -x;
        }
        alt.emplace_back(std::move(v), sing);
    }
    BundleElement zero(RandVec(4, 0.0), sing);
    auto wd2 = bundle_weak_dev(u4, alt, zero, mono);
    CHECK(wd2.w1_sup == doctest::Approx(1.0));
    for (double d : wd2.w2_dev) CHECK(d == doctest::Approx(0.0));
    auto sd2 = bundle_strong_dev(u4, alt, zero, mono);
    for (double d : sd2) CHECK(d == doctest::Approx(1.0));

    // w1 is the norm sup, so unbounded sequences are visible there
    std::vector<BundleElement> growing;
    for (int k = 1; k <= 5; ++k)
        growing.emplace_back(RandVec(4, double(k)), Partition::trivial(4));
    auto wd3 = bundle_weak_dev(u4, growing, zero, fam);
    CHECK(wd3.w1_sup == doctest::Approx(5.0));
}

TEST_CASE("fingerprint examples and box bounds") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    auto fam = TestFamily::atoms_pairs(u4);

    BundleElement one(RandVec(4, 1.0), Partition::trivial(4));
    auto fp = fingerprint(u4, one, fam);
    for (std::size_t j = 0; j < fam.functions.size(); ++j) {
        double mean = inner(u4, fam.functions[j], RandVec(4, 1.0));
        CHECK(fp.entries[j].first == doctest::Approx(mean));
        CHECK(fp.entries[j].second == doctest::Approx(std::abs(mean)));
    }

    BundleElement zero(RandVec(4, 0.0), Partition({0, 0, 1, 1}));
    auto fpz = fingerprint(u4, zero, fam);
    for (auto& e : fpz.entries) CHECK(e.first == 0.0);

    // counterexample partitions separate through the second component
    BundleElement fa(RandVec(4, 0.5), Partition({0, 0, 1, 1}));
    BundleElement fb(RandVec(4, 0.5), Partition({0, 1, 0, 1}));
    auto pa = fingerprint(u4, fa, fam);
    auto pb = fingerprint(u4, fb, fam);
    double gap = 0.0;
    for (std::size_t j = 0; j < pa.entries.size(); ++j)
        gap = std::max(gap, std::abs(pa.entries[j].second - pb.entries[j].second));
    CHECK(gap > 1e-3);

    // box bounds on random elements
    std::mt19937_64 rng(47);
    for (int t = 0; t < 100; ++t) {
        auto s = testutil::random_space(rng, 5);
        auto famr = TestFamily::atoms_pairs(s);
        auto b = testutil::random_partition(rng, 5);
        auto f = cond_exp(s, testutil::random_randvec(rng, 5, -0.4, 0.4), b);
        BundleElement el(f, b);
        auto p = fingerprint(s, el, famr);
        double fn = norm2(s, f);
        for (std::size_t j = 0; j < famr.functions.size(); ++j) {
            double un = norm2(s, famr.functions[j]);
            CHECK(std::abs(p.entries[j].first) <= fn * un + 1e-12);
            CHECK(p.entries[j].second >= 0.0);
            CHECK(p.entries[j].second <= un + 1e-12);
        }
    }
}

TEST_CASE("fingerprint warns outside the unit ball") {
    FiniteProbSpace u2 = FiniteProbSpace::uniform(2);
    auto fam = TestFamily::atoms(u2);
    BundleElement big(RandVec(2, 3.0), Partition::trivial(2));
    CHECK(fingerprint(u2, big, fam).norm_warning);
    BundleElement small(RandVec(2, 0.5), Partition::trivial(2));
    CHECK_FALSE(fingerprint(u2, small, fam).norm_warning);
}

TEST_CASE("norm lower semicontinuity and fiber linearity") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    auto fam = TestFamily::atoms_pairs(u4);
    Partition sing = Partition::singletons(4);
    RandVec base({0.3, -0.1, 0.2, 0.4});
    BundleElement lim(base, sing);
    std::vector<BundleElement> seq, seq2, sum;
    for (int k = 1; k <= 8; ++k) {
        RandVec v = base, w = base;
        for (auto& x : v.values) x += 0.5 / (k * k);
        for (auto& x : w.values) x -= 0.25 / (k * k);
        seq.emplace_back(v, sing);
        seq2.emplace_back(w, sing);
        RandVec z(4, 0.0);
        for (std::size_t i = 0; i < 4; ++i) z[i] = 2.0 * v[i] + 3.0 * w[i];
        sum.emplace_back(z, sing);
    }
    // lower semicontinuity over a weakly (here strongly) convergent tail
    double tail_min = 1e300;
    for (std::size_t k = 4; k < 8; ++k) tail_min = std::min(tail_min, norm2(u4, seq[k].u));
    CHECK(tail_min >= norm2(u4, lim.u) - 1e-2);

    RandVec zl(4, 0.0);
    for (std::size_t i = 0; i < 4; ++i) zl[i] = 5.0 * base[i];
    BundleElement lim_sum(zl, sing);
    auto d1 = bundle_strong_dev(u4, seq, lim, fam);
    auto d2 = bundle_strong_dev(u4, seq2, lim, fam);
    auto ds = bundle_strong_dev(u4, sum, lim_sum, fam);
    for (std::size_t k = 0; k < 8; ++k)
        CHECK(ds[k] <= 2.0 * d1[k] + 3.0 * d2[k] + 1e-12);
}
