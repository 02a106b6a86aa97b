#include <doctest.h>

#include <random>

#include "sigmalab/dyadic.hpp"
#include "sigmalab/lattice.hpp"
#include "test_util.hpp"

using namespace sigmalab;

TEST_CASE("join examples") {
    Partition a({0, 0, 1, 1});
    Partition b({0, 1, 0, 1});
    CHECK(partitions_equal(join(a, Partition::trivial(4)), a));
    CHECK(partitions_equal(join(a, b), Partition::singletons(4)));
    CHECK(partitions_equal(join(a, Partition::singletons(4)), Partition::singletons(4)));
    CHECK(partitions_equal(join(a, a), a));
}

TEST_CASE("meet examples") {
    Partition a({0, 0, 1, 1});
    Partition b({0, 1, 0, 1});
    CHECK(partitions_equal(meet(a, Partition::singletons(4)), a));
    CHECK(partitions_equal(meet(a, b), Partition::trivial(4)));
    CHECK(partitions_equal(meet(a, Partition::trivial(4)), Partition::trivial(4)));
    CHECK(partitions_equal(meet(a, a), a));
    // partially overlapping blocks chain into one component
    Partition c({0, 0, 1, 1, 2, 2});
    Partition d({0, 1, 1, 2, 2, 3});
    CHECK(partitions_equal(meet(c, d), Partition::trivial(6)));
}

TEST_CASE("independence examples") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition a({0, 0, 1, 1});
    Partition b({0, 1, 0, 1});
    Partition b2({0, 1, 1, 0});
    CHECK(independent(u4, a, Partition::trivial(4)));
    CHECK(independent(u4, a, b));
    CHECK(independent(u4, a, b2));
    CHECK_FALSE(independent(u4, a, a));

    FiniteProbSpace skew({0.4, 0.1, 0.1, 0.4});
    CHECK_FALSE(independent(skew, a, b));
}

TEST_CASE("absorption laws on random pairs") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 300; ++t) {
        auto a = testutil::random_partition(rng, 7);
        auto b = testutil::random_partition(rng, 7);
        CHECK(partitions_equal(join(a, meet(a, b)), a));
        CHECK(partitions_equal(meet(a, join(a, b)), a));
    }
}

TEST_CASE("join is the least upper bound, meet the greatest lower bound") {
    std::vector<Partition> all;
    testutil::for_each_partition(6, [&](const Partition& p) { all.push_back(p); });
    REQUIRE(all.size() == 203);
    for (const auto& a : all) {
        for (const auto& b : all) {
            Partition j = join(a, b);
            Partition m = meet(a, b);
            CHECK(is_coarser(a, j));
            CHECK(is_coarser(b, j));
            CHECK(is_coarser(m, a));
            CHECK(is_coarser(m, b));
            for (const auto& c : all) {
                if (is_coarser(a, c) && is_coarser(b, c)) CHECK(is_coarser(j, c));
                if (is_coarser(c, a) && is_coarser(c, b)) CHECK(is_coarser(c, m));
            }
        }
    }
}

TEST_CASE("independence is stable along eventually-constant sequences") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition a({0, 0, 1, 1});
    Partition b({0, 1, 0, 1});
    PartitionSequence seqa{{Partition::trivial(4), a, a, a}};
    PartitionSequence seqb{{b, b, b, b}};
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(independent(u4, seqa.items[k], seqb.items[k]));
    // the tails are the limits, so the limit pair inherits independence exactly
    CHECK(independent(u4, seqa.items.back(), seqb.items.back()));
}

TEST_CASE("lattice continuity on constant sequences is identically zero") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition a({0, 0, 1, 1});
    Partition b({0, 1, 0, 1});
    auto fam = TestFamily::atoms_pairs(u4);
    auto rep = lattice_continuity_experiment(u4, {{a, a, a}}, {{b, b, b}}, a, b, fam);
    for (double d : rep.dkappa_join) CHECK(d == 0.0);
    for (double d : rep.dkappa_meet) CHECK(d == 0.0);
    CHECK(rep.violations.empty());
}

TEST_CASE("lattice continuity rejects length mismatch") {
    FiniteProbSpace u4 = FiniteProbSpace::uniform(4);
    Partition a({0, 0, 1, 1});
    auto fam = TestFamily::atoms(u4);
    CHECK_THROWS_AS(lattice_continuity_experiment(u4, {{a, a}}, {{a}}, a, a, fam),
                    std::invalid_argument);
}

TEST_CASE("meet of dyadic intervals against the half split") {
    // I^(n) inside one half makes the overlap graph connected: meet = trivial
    DyadicSpace ds(3);
    auto space = ds.to_space();
    Partition halves({0, 0, 0, 0, 1, 1, 1, 1});
    for (std::uint64_t n = 4; n <= 7; ++n) {
        CHECK(partitions_equal(meet(partition_In(n, ds), halves), Partition::trivial(8)));
    }
    // n=2 is exactly the left half, so the meet is the half split itself
    CHECK(partitions_equal(meet(partition_In(2, ds), halves), halves));
}
