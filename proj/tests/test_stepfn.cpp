#include <doctest.h>

#include <random>

#include "cantorvar/io.hpp"
#include "cantorvar/verify.hpp"

using namespace cantorvar;

namespace {

Grid<Cyclo> grid1x1(const Cyclo& v) {
    Grid<Cyclo> g(1, 1);
    g(0, 0) = v;
    return g;
}

}  // namespace

TEST_CASE("make_step and refine") {
    Group g2 = make_group({2});
    auto unit = make_step<Cyclo>(g2, 0, 0, grid1x1(Cyclo(1)), true);
    CHECK(unit.cells() == 1);

    Grid<Cyclo> quarters(2, 2);
    quarters(0, 0) = Cyclo(1);
    quarters(0, 1) = Cyclo(2);
    quarters(1, 0) = Cyclo(3);
    quarters(1, 1) = Cyclo(4);
    auto f = make_step<Cyclo>(g2, 1, 0, quarters);
    CHECK(f.cells() == 2);

    Grid<Cyclo> bad(3, 3);
    CHECK_THROWS_AS(make_step<Cyclo>(g2, 1, 0, bad), std::invalid_argument);

    auto fine = refine(unit, 2);
    CHECK(fine.cells() == 4);
    for (long long i = 0; i < 4; ++i)
        for (long long j = 0; j < 4; ++j) CHECK(fine.vals(i, j) == Cyclo(1));
    CHECK(lp_norm_pow(fine, 2) == lp_norm_pow(unit, 2));

    CHECK_THROWS_AS(make_step<Cyclo>(g2, 0, 0, grid1x1(Cyclo(-1)), true),
                    std::invalid_argument);
}

TEST_CASE("lp norms") {
    Group g2 = make_group({2});
    auto two = make_step<Cyclo>(g2, 0, 0, grid1x1(Cyclo(2)), true);
    CHECK(lp_norm_pow(two, 4) == Cyclo(16));

    auto unit = make_step<Cyclo>(g2, 0, 0, grid1x1(Cyclo(1)), true);
    for (int p = 1; p <= 5; ++p) CHECK(lp_norm_pow(unit, p) == Cyclo(1));

    Grid<Cyclo> diag(2, 2);
    diag(0, 0) = Cyclo(1);
    diag(0, 1) = Cyclo(0);
    diag(1, 0) = Cyclo(0);
    diag(1, 1) = Cyclo(1);
    auto f = make_step<Cyclo>(g2, 1, 0, std::move(diag), true);
    CHECK(lp_norm_pow(f, 2) == Cyclo(Rat(1, 2)));

    // odd p without the nonneg flag is rejected in the exact backend
    Grid<Cyclo> cplx = grid1x1(Cyclo::gaussian(4, Rat(1), Rat(1)));
    auto z = make_step<Cyclo>(g2, 0, 0, std::move(cplx));
    CHECK_THROWS_AS(lp_norm_pow(z, 3), std::invalid_argument);
    CHECK(lp_norm_pow(z, 2) == Cyclo(2));  // |1+i|^2 = 2

    auto zf = to_float_step(z);
    CHECK(lp_norm_pow_f(zf, 3.0) == doctest::Approx(std::pow(std::sqrt(2.0), 3.0)));
}

TEST_CASE("tilde transforms") {
    Group g2 = make_group({2});
    auto unit = make_step<Cyclo>(g2, 0, 0, grid1x1(Cyclo(1)), true);
    auto ut = tilde_from_F(unit);
    CHECK(ut.vals(0, 0) == Cyclo(1));  // indicator of a subgroup square is fixed

    // single cell (1,1) shears to (0,1): z (-) y = 1 (-) 1 = 0
    Grid<Cyclo> delta(2, 2);
    delta.setConstant(Cyclo(0));
    delta(1, 1) = Cyclo(1);
    auto f = make_step<Cyclo>(g2, 0, 1, std::move(delta), true);
    auto ft = tilde_from_F(f);
    CHECK(ft.vals(0, 1) == Cyclo(1));
    CHECK(ft.vals(1, 1) == Cyclo(0));

    // norm preservation on a random exact grid
    std::mt19937_64 rng(42);
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
        Group g = make_group(orders);
        long long m = ipow(g.d, 1);
        auto F = make_step<Cyclo>(g, 1, 0, random_exact_grid(g, m, false, true, rng));
        CHECK(lp_norm_pow(tilde_from_F(F), 4) == lp_norm_pow(F, 4));
        CHECK(lp_norm_pow(tilde_from_G(F), 4) == lp_norm_pow(F, 4));
        CHECK(lp_norm_pow(tilde_from_F(F), 2) == lp_norm_pow(F, 2));
    }
}

TEST_CASE("step function JSON round trip") {
    Group g3 = make_group({3});
    std::mt19937_64 rng(7);
    auto F = make_step<Cyclo>(g3, 1, 0, random_exact_grid(g3, 3, false, true, rng));
    json j = to_json(F);
    auto back = step_exact_from_json(j);
    CHECK(back.K == F.K);
    CHECK(back.N == F.N);
    for (long long i = 0; i < 3; ++i)
        for (long long jj = 0; jj < 3; ++jj) CHECK(back.vals(i, jj) == F.vals(i, jj));

    auto Ff = to_float_step(F);
    json jf = to_json(Ff);
    auto backf = step_float_from_json(jf);
    for (long long i = 0; i < 3; ++i)
        for (long long jj = 0; jj < 3; ++jj) CHECK(backf.vals(i, jj) == Ff.vals(i, jj));
}
