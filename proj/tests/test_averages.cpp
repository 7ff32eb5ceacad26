#include <doctest.h>

#include <random>

#include "cantorvar/verify.hpp"

using namespace cantorvar;

namespace {

StepFn2<Cyclo> unit_indicator(const Group& g) {
    return constant_indicator_unit_square<Cyclo>(g, Cyclo(1));
}

}  // namespace

TEST_CASE("scale ladders") {
    CHECK_THROWS_AS(make_ladder({0}), std::invalid_argument);
    CHECK_THROWS_AS(make_ladder({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(make_ladder({1, 0}), std::invalid_argument);
    auto lad = make_ladder({-1, 0, 2});
    CHECK(lad.m() == 2);
    CHECK(lad.front() == -1);
    CHECK(lad.back() == 2);
}

TEST_CASE("bilinear averages of the unit square indicator") {
    Group g2 = make_group({2});
    auto one = unit_indicator(g2);

    // k >= 0 leaves the indicator fixed
    for (int k = 0; k <= 0; ++k) {
        auto A = bilinear_average(refine(one, 1), refine(one, 1), k);
        for (long long i = 0; i < A.cells(); ++i)
            for (long long j = 0; j < A.cells(); ++j) {
                bool inside = i < ipow(2, A.K) && j < ipow(2, A.K);
                CHECK(A.vals(i, j) == Cyclo(inside ? 1 : 0));
            }
    }

    // k = -1 halves it
    auto A = bilinear_average(one, one, -1);
    CHECK(A.N == 1);
    CHECK(A.vals(0, 0) == Cyclo(Rat(1, 2)));
    CHECK(A.vals(0, 1) == Cyclo(0));
    CHECK(A.vals(1, 1) == Cyclo(0));

    CHECK_THROWS_AS(bilinear_average(one, one, 1), std::invalid_argument);  // k > K
}

TEST_CASE("bilinear average of a half column") {
    // F = indicator of x in [0,1/2), G = full square, k = 0 -> constant 1/2
    Group g2 = make_group({2});
    Grid<Cyclo> col(2, 2);
    col.setConstant(Cyclo(0));
    col(0, 0) = Cyclo(1);
    col(0, 1) = Cyclo(1);
    auto F = make_step<Cyclo>(g2, 1, 0, std::move(col), true);
    auto G = refine(unit_indicator(g2), 1);
    auto A = bilinear_average(F, G, 0);
    for (long long i = 0; i < 2; ++i)
        for (long long j = 0; j < 2; ++j) CHECK(A.vals(i, j) == Cyclo(Rat(1, 2)));
}

TEST_CASE("grid cap is enforced") {
    Group g3 = make_group({3});
    Grid<Cyclo> v(9, 9);
    v.setConstant(Cyclo(1));
    auto F = make_step<Cyclo>(g3, 2, 0, std::move(v), true);
    CHECK_THROWS_AS(bilinear_average(F, F, -2), cap_exceeded);  // would need 3^4 = 81 cells
}

TEST_CASE("discrete averages") {
    Group g2 = make_group({2});
    // n = 0 is the pointwise product
    Grid<Cyclo> Fp(2, 2), Gp(2, 2);
    Fp << Cyclo(1), Cyclo(2), Cyclo(3), Cyclo(4);
    Gp << Cyclo(5), Cyclo(6), Cyclo(7), Cyclo(8);
    auto A0 = discrete_average(g2, Fp, Gp, 0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(A0(a, b) == Fp(a, b) * Gp(a, b));

    // delta at (0,0): A'_1 = (1/2) delta
    Grid<Cyclo> del(2, 2);
    del.setConstant(Cyclo(0));
    del(0, 0) = Cyclo(1);
    auto A1 = discrete_average(g2, del, del, 1);
    CHECK(A1(0, 0) == Cyclo(Rat(1, 2)));
    CHECK(A1(0, 1) == Cyclo(0));
    CHECK(A1(1, 0) == Cyclo(0));
    CHECK(A1(1, 1) == Cyclo(0));

    // constants are invariant
    Grid<Cyclo> ones(4, 4);
    ones.setConstant(Cyclo(1));
    Group g22 = make_group({2, 2});
    for (int n = 0; n <= 1; ++n) {
        auto A = discrete_average(g22, ones, ones, n);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(A(a, b) == Cyclo(1));
    }
    CHECK_THROWS_AS(discrete_average(g2, Fp, Gp, 3), std::invalid_argument);
}

TEST_CASE("variation sums") {
    MeasureWeights w = MeasureWeights::Constant(1, 1.0);
    // constant sequence
    std::vector<MeasuredValues> constant(3, MeasuredValues::Constant(1, 0.7));
    CHECK(variation_sum(constant, w, 2.0).variation_sum == doctest::Approx(0.0));

    // (0, indicator) with p = 2 -> 1
    std::vector<MeasuredValues> pair{MeasuredValues::Constant(1, 0.0),
                                     MeasuredValues::Constant(1, 1.0)};
    CHECK(variation_sum(pair, w, 2.0).variation_sum == doctest::Approx(1.0));

    // the (-1, 0) indicator ladder: A_{-1} = 1/2, A_0 = 1 on the unit square
    Group g2 = make_group({2});
    auto one = to_float_step(constant_indicator_unit_square<Cyclo>(g2, Cyclo(1)));
    auto oneb = extend_support(one, 1);
    std::vector<MeasuredValues> seq{flatten(bilinear_average(oneb, oneb, -1)),
                                    flatten(bilinear_average(oneb, oneb, 0))};
    auto rep = variation_sum(seq, uniform_cell_weights(oneb), 2.0);
    CHECK(rep.variation_sum == doctest::Approx(0.25));
    REQUIRE(rep.jump_norms.size() == 1);
    CHECK(rep.jump_norms[0] == doctest::Approx(0.5));
}

TEST_CASE("jump counting") {
    MeasureWeights w = MeasureWeights::Constant(1, 1.0);
    auto seq_of = [](std::initializer_list<double> vals) {
        std::vector<MeasuredValues> s;
        for (double v : vals) s.push_back(MeasuredValues::Constant(1, v));
        return s;
    };
    const double eps = 0.5;

    // alternating (0, e, 0, e): pairs (0,1), (1,2), (2,3) all qualify since a
    // pair may open where the previous one closed
    auto alt = seq_of({0.0, eps, 0.0, eps});
    CHECK(count_jumps(alt, w, eps, 2.0) == 3);
    CHECK(count_jumps_exhaustive(alt, w, eps, 2.0) == 3);

    CHECK(count_jumps(seq_of({0.3, 0.3, 0.3}), w, eps, 2.0) == 0);

    // monotone ramp 0, e/2, e, 3e/2: a single jump
    auto ramp = seq_of({0.0, eps / 2, eps, 1.5 * eps});
    CHECK(count_jumps(ramp, w, eps, 2.0) == 1);
    CHECK(count_jumps_exhaustive(ramp, w, eps, 2.0) == 1);

    // greedy must not anchor on the first index blindly
    auto tricky = seq_of({eps / 2, 0.0, eps});
    CHECK(count_jumps(tricky, w, eps, 2.0) == 1);
    CHECK(count_jumps_exhaustive(tricky, w, eps, 2.0) == 1);

    CHECK_THROWS_AS(count_jumps(alt, w, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("greedy equals exhaustive on random sequences") {
    std::mt19937_64 rng(99);
    MeasureWeights w = MeasureWeights::Constant(2, 0.5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        int len = 2 + static_cast<int>(rng() % 7);
        std::vector<MeasuredValues> seq;
        for (int i = 0; i < len; ++i) {
            MeasuredValues v(2);
            v << unif(rng), unif(rng);
            seq.push_back(v);
        }
        for (double eps : {0.1, 0.3, 0.7})
            CHECK(count_jumps(seq, w, eps, 2.0) == count_jumps_exhaustive(seq, w, eps, 2.0));
    }
}

TEST_CASE("holder bound for the last average") {
    std::mt19937_64 rng(1234);
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}}) {
        Group g = make_group(orders);
        for (int trial = 0; trial < 20; ++trial) {
            auto ctx = random_float_ctx(g, std::vector<int>{2, 3}, rng);
            auto A = bilinear_average(ctx.F, ctx.G, ctx.ladder.back());
            double akm = std::pow(lp_norm_pow_f(A, ctx.p), 1.0 / ctx.p);
            double f2p = std::pow(lp_norm_pow_f(ctx.F, 2.0 * ctx.p), 0.5 / ctx.p);
            double g2p = std::pow(lp_norm_pow_f(ctx.G, 2.0 * ctx.p), 0.5 / ctx.p);
            CHECK(akm <= f2p * g2p + 1e-9);
        }
    }
}
