#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "fps/zn.hpp"
#include "fps/random.hpp"
#include "helpers.hpp"

using namespace fps;

TEST_CASE("mod_reduce normalizes into {0..N-1}") {
    CHECK(mod_reduce(7, 5) == 2);
    CHECK(mod_reduce(-1, 5) == 4);
    CHECK(mod_reduce(-10, 5) == 0);
    CHECK(mod_reduce(0, 3) == 0);
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 8) == 3);
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(2, 7) == 4);
    CHECK_THROWS_MATCHES(mod_inverse(2, 8), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::not_invertible;
                         }));

    // u * u^{-1} = 1 for every unit, several moduli
    for (i64 n : {2, 3, 4, 5, 8, 9, 12, 15, 16}) {
        for (i64 u = 1; u < n; ++u) {
            if (std::gcd(u, n) != 1) continue;
            CHECK(mod_reduce(u * mod_inverse(u, n), n) == 1);
        }
    }
}

TEST_CASE("sgn_parity") {
    CHECK(sgn_parity(4) == 0);
    CHECK(sgn_parity(7) == 1);
    CHECK(sgn_parity(0) == 0);
    CHECK(sgn_parity(-3) == 1);
}

TEST_CASE("half_mod doubles back") {
    CHECK(half_mod(1, 3) == 2);
    CHECK(half_mod(0, 9) == 0);
    CHECK(half_mod(4, 5) == 2);
    CHECK_THROWS_MATCHES(half_mod(1, 4), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::even_modulus;
                         }));
    for (i64 n : {3, 5, 7, 9, 15}) {
        for (i64 u = 0; u < n; ++u) CHECK(mod_reduce(2 * half_mod(u, n), n) == u);
    }
}

TEST_CASE("Sl2 construction and validation") {
    CHECK_NOTHROW(Sl2(1, 0, 0, 1, 5));
    CHECK_THROWS_MATCHES(Sl2(1, 1, 1, 1, 5), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::not_sl2;
                         }));
    CHECK(Sl2::maybe(2, 0, 0, 3, 5).has_value());     // 6 = 1 mod 5
    CHECK_FALSE(Sl2::maybe(2, 0, 0, 2, 5).has_value());
}

TEST_CASE("Sl2 closure under product and inverse") {
    Rng rng(41);
    for (i64 n : {3, 4, 5, 8}) {
        for (int trial = 0; trial < 50; ++trial) {
            Sl2 m1 = random_sl2(n, rng);
            Sl2 m2 = random_sl2(n, rng);
            CHECK((m1 * m2).det() == 1);
            CHECK(m1.inverse().det() == 1);
            CHECK(m1 * m1.inverse() == Sl2::identity(n));
        }
    }
}

TEST_CASE("l1_check") {
    CHECK(l1_check(Sl2::identity(4)));
    CHECK(l1_check(Sl2(1, 0, 1, 1, 4)));
    CHECK_FALSE(l1_check(Sl2(1, 2, 1, 3, 4)));  // d = 3 diagonal, neither 1 nor even
    CHECK_THROWS_MATCHES(l1_check(Sl2(1, 0, 0, 1, 3)), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::not_power_of_two;
                         }));
}

TEST_CASE("line_points examples and ordering") {
    auto pts = line_points({1, 0, 0, 0, 3});
    REQUIRE(pts.size() == 3);
    CHECK(pts == std::vector<point>{{0, 0}, {0, 1}, {0, 2}});

    pts = line_points({1, 1, 0, 0, 3});
    CHECK(pts == std::vector<point>{{0, 0}, {1, 2}, {2, 1}});

    pts = line_points({1, 0, 1, 0, 3});
    CHECK(pts == std::vector<point>{{1, 0}, {1, 1}, {1, 2}});

    CHECK_THROWS_MATCHES(line_points({2, 4, 0, 0, 6}), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::degenerate_direction;
                         }));
}

TEST_CASE("line_points always yields N distinct points on the line") {
    for (i64 n : {2, 3, 4, 5, 6, 8, 9, 12}) {
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b) {
                if (gcd3(a, b, n) != 1) continue;
                auto pts = line_points({a, b, 1, 2, n});
                std::set<point> uniq(pts.begin(), pts.end());
                CHECK(uniq.size() == static_cast<size_t>(n));
                for (auto p : pts)
                    CHECK(mod_reduce(a * (p.x - 1) + b * (p.z - 2), n) == 0);
            }
    }
}

TEST_CASE("frequency_line_points") {
    auto pts = frequency_line_points({1, 0, 3});
    CHECK(pts == std::vector<point>{{0, 0}, {0, 2}, {0, 1}});
    pts = frequency_line_points({0, 1, 3});
    CHECK(pts == std::vector<point>{{0, 0}, {1, 0}, {2, 0}});
    // membership example at N = 8: t = 2 on (a=6, c=1) is (2, 4)
    pts = frequency_line_points({6, 1, 8});
    CHECK(pts[2] == point{2, 4});
}

TEST_CASE("cover_lines covers the grid") {
    // odd (incl. composite 9, 15), powers of two
    for (i64 n : {2, 3, 4, 5, 7, 8, 9, 11, 15, 16, 21, 25, 27, 31, 32}) {
        auto lines = cover_lines(n);
        CHECK(testutil::covers_grid(lines, n));
        // duplicate-free as point sets
        std::set<std::array<i64, 2>> canon;
        for (const auto& fl : lines) canon.insert(fl.canonical());
        CHECK(canon.size() == lines.size());
        CHECK(lines.size() <= static_cast<size_t>(2 * n));
    }
    CHECK_THROWS_MATCHES(cover_lines(6), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::unsupported_dimension;
                         }));
}

TEST_CASE("cover_lines N=3 uses four lines") {
    CHECK(cover_lines(3).size() == 4);
}

TEST_CASE("cover_lines N=2 matches the minimal hand cover") {
    auto lines = cover_lines(2);
    REQUIRE(lines.size() == 3);
    std::set<std::array<i64, 2>> got;
    for (auto& fl : lines) got.insert({mod_reduce(fl.a, 2), mod_reduce(fl.c, 2)});
    CHECK(got == std::set<std::array<i64, 2>>{{1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("cover_lines N=8 includes the line through (2,4) with c=1") {
    auto lines = cover_lines(8);
    bool found = false;
    for (const auto& fl : lines)
        if (mod_reduce(fl.c, 8) == 1 && mod_reduce(fl.a, 8) == 6) found = true;
    // family {(a,1): a even} contains (6,1), and (2,4) lies on it
    CHECK(found);
    CHECK(testutil::on_frequency_line({6, 1, 8}, {2, 4}));
}

TEST_CASE("sl2_with_first_column completes any admissible line") {
    for (i64 n : {3, 4, 5, 8, 9, 15, 16}) {
        for (i64 a = 0; a < n; ++a)
            for (i64 c = 0; c < n; ++c) {
                if (gcd3(a, c, n) != 1) continue;
                Sl2 m = sl2_with_first_column({a, c, n});
                CHECK(m.a == a);
                CHECK(m.c == c);
                CHECK(m.det() == 1);
            }
    }
}

TEST_CASE("all_sl2 sizes") {
    CHECK(all_sl2(2).size() == 6);
    CHECK(all_sl2(3).size() == 24);
    CHECK(all_sl2(5).size() == 120);
}
