#include <doctest.h>

#include "cantorvar/group.hpp"

using namespace cantorvar;

TEST_CASE("make_group labeling") {
    Group g2 = make_group({2});
    CHECK(g2.d == 2);

    Group g22 = make_group({2, 2});
    CHECK(g22.d == 4);
    CHECK(encode(g22, std::vector<int>{1, 0}) == 1);
    CHECK(encode(g22, std::vector<int>{0, 1}) == 2);

    Group g3 = make_group({3});
    CHECK(g3.d == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(add(g3, a, b) == (a + b) % 3);

    CHECK_THROWS_AS(make_group({}), std::invalid_argument);
    CHECK_THROWS_AS(make_group({1}), std::invalid_argument);
    CHECK_THROWS_AS(make_group({2, 0}), std::invalid_argument);
}

TEST_CASE("group addition and inverses") {
    Group g2 = make_group({2});
    CHECK(add(g2, 1, 1) == 0);

    Group g3 = make_group({3});
    CHECK(add(g3, 2, 2) == 1);

    Group g22 = make_group({2, 2});
    CHECK(add(g22, 1, 2) == 3);
    CHECK(neg(g22, 3) == 3);  // Klein four-group is 2-torsion

    CHECK_THROWS_AS(add(g2, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(neg(g2, -1), std::out_of_range);
}

TEST_CASE("group laws, exhaustive for small groups") {
    for (const auto& orders :
         std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {2, 3}, {2, 2, 2}, {16}}) {
        Group g = make_group(orders);
        for (int a = 0; a < g.d; ++a) {
            CHECK(add(g, a, 0) == a);
            CHECK(add(g, a, neg(g, a)) == 0);
            CHECK(encode(g, decode(g, a)) == a);
            for (int b = 0; b < g.d; ++b) {
                CHECK(add(g, a, b) == add(g, b, a));
                for (int c = 0; c < g.d; ++c)
                    CHECK(add(g, add(g, a, b), c) == add(g, a, add(g, b, c)));
            }
        }
    }
}

TEST_CASE("character tables") {
    Group g2 = make_group({2});
    CharacterTable t2 = characters(g2);
    CHECK(t2.rot(0, 0) == 0);
    CHECK(t2.rot(0, 1) == 0);
    CHECK(t2.rot(1, 0) == 0);
    CHECK(t2.rot(1, 1) == Rat(1, 2));  // xi_1 = (1, -1)

    Group g4 = make_group({4});
    CharacterTable t4 = characters(g4);
    CHECK(t4.rot(1, 1) == Rat(1, 4));  // xi_1(1) = i

    Group g22 = make_group({2, 2});
    CharacterTable t22 = characters(g22);
    for (int s = 0; s < 4; ++s)
        for (int a = 0; a < 4; ++a) {
            bool pm1 = t22.rot(s, a) == 0 || t22.rot(s, a) == Rat(1, 2);
            CHECK(pm1);
        }
    for (int s = 1; s < 4; ++s) {
        Cyclo sum(0);
        for (int a = 0; a < 4; ++a) sum += t22.value<Cyclo>(s, a);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("orthogonality and multiplicativity are exact") {
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {2, 3}}) {
        Group g = make_group(orders);
        CharacterTable t = characters(g);
        for (int s = 0; s < g.d; ++s)
            for (int s2 = 0; s2 < g.d; ++s2) {
                Cyclo acc(0);
                for (int a = 0; a < g.d; ++a)
                    acc += t.value<Cyclo>(s, a) * conj(t.value<Cyclo>(s2, a));
                CHECK(acc == Cyclo(s == s2 ? g.d : 0));
            }
        for (int s = 0; s < g.d; ++s)
            for (int a = 0; a < g.d; ++a)
                for (int b = 0; b < g.d; ++b)
                    CHECK(t.value<Cyclo>(s, add(g, a, b)) ==
                          t.value<Cyclo>(s, a) * t.value<Cyclo>(s, b));
    }
}

TEST_CASE("cyclotomic scalar basics") {
    Cyclo i = Cyclo::root(4, 1);
    CHECK(i * i == Cyclo(-1));
    CHECK(conj(i) == -i);
    Cyclo w = Cyclo::root(12, 4);  // primitive cube root
    CHECK(w.pow(3) == Cyclo(1));
    CHECK((Cyclo(1) + w + w * w).is_zero());
    Rat re, im;
    Cyclo z = Cyclo::gaussian(12, Rat(3, 8), Rat(-5, 8));
    CHECK(z.gaussian_parts(re, im));
    CHECK(re == Rat(3, 8));
    CHECK(im == Rat(-5, 8));
    CHECK_FALSE(w.gaussian_parts(re, im));
    CHECK(std::abs(w.to_complex() - std::polar(1.0, 2.0 * std::numbers::pi / 3)) < 1e-15);
}
