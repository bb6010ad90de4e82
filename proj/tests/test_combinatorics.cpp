#include "doctest.h"
#include "properad/combinatorics.hpp"

using namespace properad;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(-2, 0) == 0);
}

TEST_CASE("stirling numbers of the second kind") {
    for (int m = 1; m <= 8; ++m) {
        CHECK(stirling2(m, m) == 1);
        CHECK(stirling2(m, 1) == 1);
    }
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(4, 2) == 7);
    // against direct set-partition enumeration
    for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= m; ++k)
            CHECK(stirling2(m, k) == Integer(static_cast<long>(set_partitions(m, k).size())));
    // recurrence S(m,k) = k S(m-1,k) + S(m-1,k-1)
    for (int m = 2; m <= 8; ++m)
        for (int k = 1; k <= m; ++k)
            CHECK(stirling2(m, k) == k * stirling2(m - 1, k) + stirling2(m - 1, k - 1));
}

TEST_CASE("alternating Stirling sum") {
    for (int m = 1; m <= 8; ++m) {
        Integer sum = 0;
        for (int k = 1; k <= m; ++k) {
            Integer term = factorial(static_cast<unsigned>(k)) * stirling2(m, k);
            sum += (k % 2 == 0) ? term : -term;
        }
        CHECK(sum == ((m % 2 == 0) ? 1 : -1));
    }
}

TEST_CASE("shuffles") {
    CHECK(shuffles(0, 3).size() == 1);
    CHECK(shuffles(0, 3)[0] == std::vector<int>{0, 1, 2});
    CHECK(shuffles(1, 1).size() == 2);
    CHECK(shuffles(2, 1).size() == 3);
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; k + l <= 8; ++l)
            CHECK(Integer(static_cast<long>(shuffles(k, l).size())) == binomial(k + l, k));
    // relative orders preserved
    for (const auto& sigma : shuffles(3, 2)) {
        std::vector<int> pos(5);
        for (int s = 0; s < 5; ++s) pos[static_cast<size_t>(sigma[s])] = s;
        CHECK(pos[0] < pos[1]);
        CHECK(pos[1] < pos[2]);
        CHECK(pos[3] < pos[4]);
    }
}

TEST_CASE("compositions") {
    CHECK(compositions(4, 2).size() == 3);
    CHECK(weak_compositions(3, 2).size() == 4);
    CHECK(compositions(3, 0).empty());
    CHECK(weak_compositions(0, 0).size() == 1);
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(Integer(static_cast<long>(compositions(n, k).size())) == binomial(n - 1, k - 1));
}

TEST_CASE("grafting counts") {
    for (int m = 1; m <= 4; ++m) CHECK(grafting_count(m, 0, 0, m) == 1);
    CHECK(grafting_count(1, 0, 0, 1) == 1);
    SUBCASE("closed formula equals direct enumeration") {
        for (int m = 1; m <= 4; ++m)
            for (int i = 0; i <= 3; ++i)
                for (int g = 0; g <= 3; ++g)
                    for (int p = 1; p <= 4; ++p)
                        CHECK(grafting_count(m, i, g, p) == grafting_count_enumerated(m, i, g, p));
    }
}

TEST_CASE("xi index enumeration") {
    SUBCASE("all emitted indices satisfy the invariants") {
        for (int m = 1; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (int g = 0; g <= 2; ++g)
                    for (int k = 1; k <= m + n + 2 * g; ++k)
                        for (const auto& xi : enumerate_xi(m, n, g, k)) CHECK(xi.valid(m, n, g));
    }
    SUBCASE("k beyond the level budget gives nothing") {
        // every level has weight >= 1 and the tower weight is m-1+n+2g
        for (int m = 1; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (int g = 0; g <= 2; ++g) {
                    int kmax = (m - 1) + n + 2 * g;
                    CHECK(enumerate_xi(m, n, g, kmax + 1).empty());
                }
    }
    SUBCASE("forced index at (2,0,0) and none at (1,0,0)") {
        CHECK(enumerate_xi(2, 0, 0, 1).size() == 1);
        CHECK(enumerate_xi(1, 0, 0, 1).empty());
    }
    SUBCASE("size-collapsed towers agree with explicit blocks") {
        for (int m = 1; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (int g = 0; g <= 1; ++g)
                    for (int k = 1; k <= 4; ++k) {
                        Integer explicit_count = 0;
                        for (const auto& xi : enumerate_xi(m, n, g, k)) {
                            (void)xi;
                            ++explicit_count;
                        }
                        Integer collapsed = 0;
                        for_each_tower(m, n, g, k, false,
                                       [&](const std::vector<int>&, const std::vector<int>&,
                                           const std::vector<int>&, const Integer& w) {
                                           collapsed += w;
                                       });
                        CHECK(explicit_count == collapsed);
                    }
    }
    SUBCASE("deterministic ordering") {
        auto a = enumerate_xi(2, 2, 1, 2);
        auto b = enumerate_xi(2, 2, 1, 2);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].blocks == b[i].blocks);
            CHECK(a[i].genus == b[i].genus);
            CHECK(a[i].p == b[i].p);
        }
    }
}
