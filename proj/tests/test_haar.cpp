#include <doctest.h>

#include "cantorvar/haar.hpp"
#include "cantorvar/verify.hpp"

using namespace cantorvar;

TEST_CASE("haar atom values") {
    Group g2 = make_group({2});
    CharacterTable t2 = characters(g2);
    // classical Haar on [0,1): +1 on [0,1/2), -1 on [1/2,1)
    HaarAtom h{{0, 0}, 1};
    CHECK(haar_value<Cyclo>(t2, h, 0, 1) == Cyclo(1));
    CHECK(haar_value<Cyclo>(t2, h, 1, 1) == Cyclo(-1));
    CHECK(haar_value<Cyclo>(t2, h, 2, 1) == Cyclo(0));  // outside [0,1)

    // s = 0 is the indicator
    for (long long c = 0; c < 4; ++c)
        CHECK(haar_value<Cyclo>(t2, HaarAtom{{0, 0}, 0}, c, 1) == Cyclo(c < 2 ? 1 : 0));

    // d = 3: children carry 1, omega, omega^2
    Group g3 = make_group({3});
    CharacterTable t3 = characters(g3);
    Cyclo w = Cyclo::root(12, 4);
    CHECK(haar_value<Cyclo>(t3, HaarAtom{{0, 0}, 1}, 0, 1) == Cyclo(1));
    CHECK(haar_value<Cyclo>(t3, HaarAtom{{0, 0}, 1}, 1, 1) == w);
    CHECK(haar_value<Cyclo>(t3, HaarAtom{{0, 0}, 1}, 2, 1) == w * w);

    // |h| = 1_I, exhaustively at resolution 2
    for (int s = 0; s < 3; ++s)
        for (long long c = 0; c < 9; ++c) {
            Cyclo v = haar_value<Cyclo>(t3, HaarAtom{{0, 1}, s}, c, 2);
            bool inside = c >= 3 && c < 6;
            CHECK((v * conj(v)) == Cyclo(inside ? 1 : 0));
        }

    CHECK_THROWS_AS(haar_value<Cyclo>(t2, HaarAtom{{1, 0}, 1}, 0, 1), std::invalid_argument);
}

TEST_CASE("haar atom on exact digit vectors") {
    Group g2 = make_group({2});
    CharacterTable t = characters(g2);
    DigitVector quarter = kappa(g2, Rat(1, 4), -3, 1);
    DigitVector threequarters = kappa(g2, Rat(3, 4), -3, 1);
    HaarAtom h{{0, 0}, 1};
    CHECK(haar_value<Cyclo>(t, h, quarter) == Cyclo(1));
    CHECK(haar_value<Cyclo>(t, h, threequarters) == Cyclo(-1));
    CHECK(haar_value<Cyclo>(t, h, kappa(g2, Rat(3, 2), -3, 1)) == Cyclo(0));
}

TEST_CASE("phi difference decomposition") {
    Group g2 = make_group({2});
    CharacterTable t2 = characters(g2);
    // d=2, (0,1): single term r=0, s=1
    auto terms = phi_difference_decomposition(g2, 0, 1);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].r == 0);
    CHECK(terms[0].s == 1);
    CHECK(terms[0].coeff == 1);
    CHECK_THROWS_AS(phi_difference_decomposition(g2, 1, 1), std::invalid_argument);

    // cell-exact over several windows and groups
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {4}}) {
        Group g = make_group(orders);
        CharacterTable t = characters(g);
        for (auto [k_lo, k_hi] : std::vector<std::pair<int, int>>{{0, 1}, {-1, 1}, {0, 2}}) {
            int res = k_hi;
            long long cells = ipow(g.d, res - k_lo) * g.d;
            for (long long c = 0; c < cells; ++c) {
                Cyclo lhs(0);
                for (const auto& term : phi_difference_decomposition(g, k_lo, k_hi))
                    lhs += Cyclo(term.coeff) *
                           haar_value<Cyclo>(t, {{term.r, 0}, term.s}, c, res);
                Cyclo rhs = Cyclo(phi_value_rat(k_hi, c, res, g.d)) -
                            Cyclo(phi_value_rat(k_lo, c, res, g.d));
                CHECK(lhs == rhs);
            }
        }
    }

    // d=3 single step on 3 cells: (2, -1, -1) = 3*1_{[0,1/3)} - 1_{[0,1)}
    Group g3 = make_group({3});
    CharacterTable t3 = characters(g3);
    std::vector<Cyclo> expect{Cyclo(2), Cyclo(-1), Cyclo(-1)};
    for (long long c = 0; c < 3; ++c) {
        Cyclo acc(0);
        for (int s = 1; s < 3; ++s) acc += haar_value<Cyclo>(t3, {{0, 0}, s}, c, 1);
        CHECK(acc == expect[static_cast<std::size_t>(c)]);
    }
    (void)t2;
}

TEST_CASE("character product identity") {
    Group g2 = make_group({2});
    CharacterTable t2 = characters(g2);
    // x = 1/4 in I = [0,1), y = 3/4 in J = [0,1): h(x (+) y) = h(1/2) = -1
    CHECK(character_product_check(g2, t2, {0, 0}, {0, 0}, 1, 1, 3, 2));
    // s = 0 always holds
    CHECK(character_product_check(g2, t2, {1, 1}, {1, 0}, 0, 2, 1, 2));
    CHECK_THROWS_AS(character_product_check(g2, t2, {0, 0}, {1, 0}, 1, 0, 0, 2),
                    std::invalid_argument);

    // d=3 conjugation: x = 2/3 in [0,1), h^1_{-I}(-x) = conj(omega^2)
    Group g3 = make_group({3});
    CharacterTable t3 = characters(g3);
    Cyclo w = Cyclo::root(12, 4);
    Cyclo lhs = haar_value<Cyclo>(t3, {interval_ominus(g3, {0, 0}), 1}, idx_ominus(g3, 2), 1);
    CHECK(lhs == conj(w * w));
    CHECK(character_product_check(g3, t3, {0, 0}, {0, 0}, 1, 2, 1, 1));
}

TEST_CASE("atom orthogonality over children") {
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
        Group g = make_group(orders);
        CharacterTable t = characters(g);
        DadicInterval I{1, 2};
        for (int s = 0; s < g.d; ++s)
            for (int s2 = 0; s2 < g.d; ++s2) {
                Cyclo acc(0);
                for (long long c = I.l * g.d; c < (I.l + 1) * g.d; ++c)
                    acc += haar_value<Cyclo>(t, {I, s}, c, 2) *
                           conj(haar_value<Cyclo>(t, {I, s2}, c, 2)) * Cyclo(dpow_rat(g.d, -2));
                Cyclo expect = s == s2 ? Cyclo(dpow_rat(g.d, -1)) : Cyclo(0);
                CHECK(acc == expect);
            }
    }
}

TEST_CASE("dual telescoping identity") {
    VerifyEnv env;
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {4}}) {
        auto r = check_dual_telescoping(make_group(orders), env);
        CHECK(r.failures == 0);
        CHECK(r.instances > 0);
    }
}
