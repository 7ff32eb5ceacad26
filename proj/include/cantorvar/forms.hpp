#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "cantorvar/averages.hpp"
#include "cantorvar/haar.hpp"

namespace cantorvar {

// ============================================================================
// Scalar lemma: |a|^p - |b|^p - p (a-b) b |b|^{p-2} >= c_p |a-b|^p.
//
// Dividing by |b|^p and substituting t = (a-b)/b turns the claim into
// theta(t) := (|1+t|^p - 1 - p t) / |t|^p >= c_p, so c_p = inf theta. The
// infimum is certified by splitting R \ {0} into a near-zero zone (second
// derivative bound), two tails (explicit lower bounds), and a middle region
// covered by adaptive intervals. On [a,b] with 0 < a the numerator and
// denominator are both increasing on each side, so theta >= num(a)/den(b)
// holds on the whole subinterval; refinement drives this to the sampled
// minimum.
// ============================================================================

inline double theta_scalar(double t, double p) {
    return (std::pow(std::abs(1.0 + t), p) - 1.0 - p * t) / std::pow(std::abs(t), p);
}

struct CpResult {
    double p = 2.0;
    double value = 1.0;         // certified lower bound for inf theta
    double observed_min = 1.0;  // smallest sampled theta value (upper bound for inf)
    double argmin = 0.0;        // sample point achieving observed_min
};

namespace detail {

// numerator of theta on the positive side (t > 0) resp. negative side (t = -u).
inline double theta_num_pos(double t, double p) { return std::pow(1.0 + t, p) - 1.0 - p * t; }
inline double theta_num_neg(double u, double p) {
    return std::pow(std::abs(1.0 - u), p) - 1.0 + p * u;
}

// Certified minimum of num(t)/t^p over [lo, hi], num increasing.
template <class Num>
double certify_side(Num num, double p, double lo, double hi, double target) {
    double cert = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        double bound = num(a) / std::pow(b, p);
        if (bound >= target || b - a <= 1e-10 * std::max(1.0, a)) {
            cert = std::min(cert, bound);
            continue;
        }
        double mid = b > 2.0 * a ? std::sqrt(a * b) : 0.5 * (a + b);
        stack.push_back({a, mid});
        stack.push_back({mid, b});
    }
    return cert;
}

}  // namespace detail

inline CpResult compute_cp(double p) {
    if (p < 2.0) throw std::invalid_argument("compute_cp: p must be >= 2");
    if (p == 2.0) return {2.0, 1.0, 1.0, std::nan("")};

    const double delta = 0.01;
    // near-zero: theta(t) >= p(p-1)/2 (1-delta)^{p-2} |t|^{2-p} >= that * delta^{2-p} >= 1
    double near_zero = 0.5 * p * (p - 1.0) * std::pow(1.0 - delta, p - 2.0) *
                       std::pow(delta, 2.0 - p);

    // sample to locate the minimum (upper bound for the infimum)
    double T = 16.0;
    auto tail_bound = [&](double TT) {
        return std::min(1.0 - (1.0 + p * TT) / std::pow(TT, p), std::pow(1.0 - 1.0 / TT, p));
    };
    CpResult r;
    r.p = p;
    r.observed_min = std::numeric_limits<double>::infinity();
    auto sample = [&](double t) {
        double v = theta_scalar(t, p);
        if (v < r.observed_min) {
            r.observed_min = v;
            r.argmin = t;
        }
    };
    for (double t = delta; t <= 1024.0; t *= 1.01) {
        sample(t);
        sample(-t);
    }
    while (tail_bound(T) < std::min(r.observed_min, 0.999999) && T < 1e9) T *= 2.0;

    double target = r.observed_min * (1.0 - 1e-9);
    double pos = detail::certify_side([&](double t) { return detail::theta_num_pos(t, p); }, p,
                                      delta, T, target);
    double neg = detail::certify_side([&](double u) { return detail::theta_num_neg(u, p); }, p,
                                      delta, T, target);
    r.value = std::min({near_zero, pos, neg, tail_bound(T)});
    return r;
}

/// The lemma itself, checked at one (a, b) pair with relative slack 1e-9.
inline bool scalar_lemma_check(double a, double b, double p, double cp) {
    double mid = b == 0.0 ? 0.0 : p * (a - b) * b * std::pow(std::abs(b), p - 2.0);
    double lhs = std::pow(std::abs(a), p) - std::pow(std::abs(b), p) - mid;
    double rhs = cp * std::pow(std::abs(a - b), p);
    double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return lhs >= rhs - slack;
}

/// Assembled constant of the full chain: C_p = c_p^{-1} (1 + p).
inline double assembled_constant(double p, double cp) { return (1.0 + p) / cp; }

// ============================================================================
// Form context and evaluators.
// ============================================================================

/// Everything the form evaluators share: exponent p >= 2, scale ladder, the
/// two step functions on a common grid wide enough for the coarsest scale,
/// and their tilde transforms.
template <class S>
struct FormContext {
    Group group;
    CharacterTable chars;
    int p = 2;
    ScaleLadder ladder;
    StepFn2<S> F, G;
    StepFn2<S> Ft, Gt;
    long long support_cells = 1;  // cells per axis of the original support square
};

template <class S>
FormContext<S> make_form_context(int p, ScaleLadder ladder, const StepFn2<S>& F,
                                 const StepFn2<S>& G) {
    if (p < 2) throw std::invalid_argument("form context: p must be an integer >= 2");
    if (!same_shape(F, G)) throw std::invalid_argument("form context: F and G shapes differ");
    if (ladder.back() > F.K)
        throw std::invalid_argument("form context: ladder exceeds grid resolution");
    if (ladder.front() < -8) throw std::invalid_argument("form context: ladder scale too coarse");
    int N2 = std::max(F.N, -ladder.front());
    FormContext<S> ctx;
    ctx.group = F.group;
    ctx.chars = characters(F.group);
    ctx.p = p;
    ctx.ladder = std::move(ladder);
    ctx.support_cells = F.cells();
    ctx.F = extend_support(F, N2);
    ctx.G = extend_support(G, N2);
    ctx.Ft = tilde_from_F(ctx.F);
    ctx.Gt = tilde_from_G(ctx.G);
    return ctx;
}

/// All bilinear averages A_{k_j}(F, G) along the ladder, on the common grid.
template <class S>
std::vector<StepFn2<S>> ladder_averages(const FormContext<S>& ctx) {
    std::vector<StepFn2<S>> out;
    out.reserve(ctx.ladder.ks.size());
    for (int k : ctx.ladder.ks) out.push_back(bilinear_average(ctx.F, ctx.G, k));
    return out;
}

/// Lambda(F, G) = sum_j int (A_{k_{j+1}} - A_{k_j}) A_{k_j}^{p-1} dx dy,
/// evaluated through the precomputed averages.
template <class S>
S lambda_fast(const FormContext<S>& ctx, const std::vector<StepFn2<S>>& avgs) {
    const long long m = avgs.front().cells();
    S total = scalar_ops<S>::zero();
    for (int j = 0; j + 1 < static_cast<int>(avgs.size()); ++j)
        for (long long x = 0; x < m; ++x)
            for (long long y = 0; y < m; ++y) {
                S diff = avgs[j + 1].vals(x, y) - avgs[j].vals(x, y);
                total += diff * scalar_ops<S>::pow_u(avgs[j].vals(x, y),
                                                     static_cast<unsigned>(ctx.p - 1));
            }
    Rat area = dpow_rat(ctx.group.d, -2 * ctx.F.K);
    return total * scalar_ops<S>::from_rat(area);
}

template <class S>
S lambda_fast(const FormContext<S>& ctx) {
    return lambda_fast(ctx, ladder_averages(ctx));
}

// --- vartheta sums through the Gram blocks b_L --------------------------------
//
// b_L(y1, y2) = int_L Ft(z, y1) Ft(z, y2) dz, and
// vs_k(y1, y2) = d^{(p-1)k} sum_{|L| = d^{-k}} b_L(y1, y2)^p
// is what the theta-family integrands pair against phi weights.

template <class S>
Grid<S> vartheta_pow_sum(const StepFn2<S>& Ft, int p, int k) {
    const int d = Ft.group.d;
    const long long m = Ft.cells();
    if (k > Ft.K) throw std::invalid_argument("vartheta: scale finer than resolution");
    if (k < -8) throw std::invalid_argument("vartheta: scale too coarse");
    long long span = std::min(ipow(d, Ft.K - k), m);  // cells per block inside the grid
    const S width = scalar_ops<S>::from_rat(dpow_rat(d, -Ft.K));
    Grid<S> vs(m, m);
    vs.setConstant(scalar_ops<S>::zero());
    for (long long z0 = 0; z0 < m; z0 += span) {
        for (long long y1 = 0; y1 < m; ++y1)
            for (long long y2 = y1; y2 < m; ++y2) {
                S b = scalar_ops<S>::zero();
                for (long long z = z0; z < z0 + span; ++z) b += Ft.vals(z, y1) * Ft.vals(z, y2);
                b = b * width;
                S bp = scalar_ops<S>::pow_u(b, static_cast<unsigned>(p));
                vs(y1, y2) += bp;
                if (y2 != y1) vs(y2, y1) += bp;
            }
    }
    const S scale = scalar_ops<S>::from_rat(dpow_rat(d, (p - 1) * k));
    for (long long y1 = 0; y1 < m; ++y1)
        for (long long y2 = 0; y2 < m; ++y2) vs(y1, y2) = vs(y1, y2) * scale;
    return vs;
}

/// Sums a vartheta grid against the phi_k(y1 (-) y2) weight.
template <class S>
S pair_with_phi(const Grid<S>& vs, const Group& g, int K, int k) {
    const long long m = vs.rows();
    S total = scalar_ops<S>::zero();
    for (long long y1 = 0; y1 < m; ++y1)
        for (long long y2 = 0; y2 < m; ++y2)
            if (same_block(y1, y2, k, K, g.d)) total += vs(y1, y2);
    Rat w = dpow_rat(g.d, k) * dpow_rat(g.d, -2 * K);  // phi height times dy1 dy2
    return total * scalar_ops<S>::from_rat(w);
}

/// Xi_k through the b_L route.
template <class S>
S xi_form(const StepFn2<S>& Ft, int p, int k) {
    return pair_with_phi(vartheta_pow_sum(Ft, p, k), Ft.group, Ft.K, k);
}

/// Theta through the b_L route: vs_{k_j} paired with phi_{k_{j+1}} - phi_{k_j}.
template <class S>
S theta_fast(const StepFn2<S>& Ft, int p, const ScaleLadder& ladder) {
    S total = scalar_ops<S>::zero();
    for (int j = 0; j + 1 < static_cast<int>(ladder.ks.size()); ++j) {
        Grid<S> vs = vartheta_pow_sum(Ft, p, ladder.ks[j]);
        total += pair_with_phi(vs, Ft.group, Ft.K, ladder.ks[j + 1]);
        total -= pair_with_phi(vs, Ft.group, Ft.K, ladder.ks[j]);
    }
    return total;
}

/// Complementary form: (vs_{k_{j+1}} - vs_{k_j}) paired with phi_{k_{j+1}}.
template <class S>
S theta_prime(const StepFn2<S>& Ft, int p, const ScaleLadder& ladder) {
    S total = scalar_ops<S>::zero();
    std::optional<Grid<S>> vs_lo;
    for (int j = 0; j + 1 < static_cast<int>(ladder.ks.size()); ++j) {
        if (!vs_lo) vs_lo = vartheta_pow_sum(Ft, p, ladder.ks[j]);
        Grid<S> vs_hi = vartheta_pow_sum(Ft, p, ladder.ks[j + 1]);
        total += pair_with_phi(vs_hi, Ft.group, Ft.K, ladder.ks[j + 1]);
        total -= pair_with_phi(*vs_lo, Ft.group, Ft.K, ladder.ks[j + 1]);
        vs_lo = std::move(vs_hi);
    }
    return total;
}

// ============================================================================
// Brute-force oracles: literal cell sums of the displayed multilinear forms.
// Independent of the Gram-block route (they walk Haar atoms and character
// values term by term), capped at kMaxOracleSummands.
// ============================================================================

template <class S>
long long lambda_tilde_oracle_cost(const FormContext<S>& ctx) {
    const int d = ctx.group.d;
    const long long supp = ctx.support_cells;
    long long cost = 0;
    for (int j = 0; j + 1 < static_cast<int>(ctx.ladder.ks.size()); ++j)
        for (int r = ctx.ladder.ks[j]; r < ctx.ladder.ks[j + 1]; ++r) {
            long long rspan = std::min(ipow(d, ctx.F.K - r), supp);
            long long lspan = std::min(ipow(d, ctx.F.K - ctx.ladder.ks[j]), supp);
            long long per_xy = rspan;
            for (int i = 0; i < ctx.p - 1; ++i) {
                per_xy *= lspan;
                if (per_xy > 4 * kMaxOracleSummands) break;
            }
            cost += (d - 1) * supp * supp * per_xy;
            if (cost > 4 * kMaxOracleSummands) return cost;
        }
    return cost;
}

/// Literal evaluation of the tilde form: sums over j, r, s, the cells of
/// (x, y, z_1, ..., z_p), with I, J the scale-r intervals of x and y,
/// K = I + J carrying the h^s atom for z_1 and L = d^{r-k_j} K the indicator
/// window for z_2..z_p. Zero-valued cells are skipped; everything else is the
/// displayed sum term by term. Equals Lambda(F, G) exactly.
template <class S>
S lambda_tilde_oracle(const FormContext<S>& ctx) {
    if (lambda_tilde_oracle_cost(ctx) > kMaxOracleSummands)
        throw cap_exceeded("lambda_tilde_oracle: instance above summand cap");
    const int d = ctx.group.d;
    const int K = ctx.F.K;
    const long long m = ctx.Ft.cells();
    const long long supp = ctx.support_cells;
    const int p = ctx.p;
    S total = scalar_ops<S>::zero();
    std::vector<S> prodv(static_cast<std::size_t>(m));
    std::vector<S> headv;
    std::vector<long long> nz;
    std::vector<std::size_t> odo(static_cast<std::size_t>(p > 1 ? p - 1 : 1), 0);
    for (int j = 0; j + 1 < static_cast<int>(ctx.ladder.ks.size()); ++j) {
        const int kj = ctx.ladder.ks[j];
        const long long lspan = ipow(d, K - kj);
        for (int r = kj; r < ctx.ladder.ks[j + 1]; ++r) {
            const long long rspan = ipow(d, K - r);
            const long long child = rspan / d;  // cells per child of a scale-r interval
            for (int s = 1; s < d; ++s) {
                // child-digit character value per cell, used by h^s at scale r
                std::vector<S> hv(static_cast<std::size_t>(m)), hvc(static_cast<std::size_t>(m));
                for (long long c = 0; c < m; ++c) {
                    hv[c] = ctx.chars.template value<S>(s, static_cast<int>((c / child) % d));
                    hvc[c] = scalar_ops<S>::conjugate(hv[c]);
                }
                const S coeff_s = scalar_ops<S>::from_rat(dpow_rat(d, r + (p - 1) * kj) *
                                                          dpow_rat(d, -(p + 2) * K));
                // x, y beyond the support give vanishing Gt resp. Ft columns
                for (long long x = 0; x < supp; ++x) {
                    const long long I = x / rspan;
                    for (long long y = 0; y < supp; ++y) {
                        const long long J = y / rspan;
                        const long long Kidx = idx_oplus(ctx.group, I, J);
                        const long long Lidx = Kidx / ipow(d, r - kj);
                        const long long z1_0 = Kidx * rspan;
                        const long long zo_0 = Lidx * lspan;
                        for (long long zc = zo_0; zc < zo_0 + lspan; ++zc)
                            prodv[zc] = ctx.Ft.vals(zc, y) * ctx.Gt.vals(zc, x);
                        nz.clear();
                        for (long long zc = zo_0; zc < zo_0 + lspan; ++zc)
                            if (!scalar_ops<S>::is_zero(prodv[zc])) nz.push_back(zc);
                        headv.clear();  // K = I (+) J is contained in its ancestor L
                        for (long long z1 = z1_0; z1 < z1_0 + rspan; ++z1)
                            if (!scalar_ops<S>::is_zero(prodv[z1]))
                                headv.push_back(hv[z1] * prodv[z1]);
                        if (headv.empty() || (p > 1 && nz.empty())) continue;
                        const S base0 = coeff_s * hvc[x] * hvc[y];
                        // odometer over z_2..z_p restricted to nonzero cells of L
                        std::fill(odo.begin(), odo.end(), 0);
                        while (true) {
                            S rest = base0;
                            for (int i = 0; i + 1 < p; ++i) rest *= prodv[nz[odo[i]]];
                            for (const S& h : headv) total += rest * h;
                            int i = 0;
                            while (i + 1 < p && ++odo[i] == nz.size()) odo[i++] = 0;
                            if (i + 1 >= p) break;
                        }
                    }
                }
            }
        }
    }
    return total;
}

template <class S>
long long theta_oracle_cost(const FormContext<S>& ctx) {
    const int d = ctx.group.d;
    const long long supp = ctx.support_cells;
    long long cost = 0;
    for (int j = 0; j + 1 < static_cast<int>(ctx.ladder.ks.size()); ++j) {
        long long lspan = std::min(ipow(d, ctx.F.K - ctx.ladder.ks[j]), supp);
        long long zp = 1;
        for (int i = 0; i < ctx.p && zp <= 4 * kMaxOracleSummands; ++i) zp *= lspan;
        for (int r = ctx.ladder.ks[j]; r < ctx.ladder.ks[j + 1]; ++r) {
            long long rspan = std::min(ipow(d, ctx.F.K - r), supp);
            long long pairs = supp * rspan;  // (y1, y2) sharing a scale-r interval
            cost += (d - 1) * pairs * std::max<long long>(supp / lspan, 1) * zp;
            if (cost > 4 * kMaxOracleSummands) return cost;
        }
    }
    return cost;
}

/// Literal Haar-sum route for Theta: sums h^s_J(y1) conj(h^s_J(y2)) against
/// the product of 2p samples of Ft over z_1..z_p confined to one scale-k_j
/// interval L. Equals theta_fast exactly (dual telescoping).
template <class S>
S theta_haar_oracle(const FormContext<S>& ctx, const StepFn2<S>& Ft) {
    if (theta_oracle_cost(ctx) > kMaxOracleSummands)
        throw cap_exceeded("theta_haar_oracle: instance above summand cap");
    const int d = ctx.group.d;
    const int K = Ft.K;
    const long long m = Ft.cells();
    const long long supp = std::min(ctx.support_cells, m);
    const int p = ctx.p;
    S total = scalar_ops<S>::zero();
    std::vector<S> prodv(static_cast<std::size_t>(m));
    std::vector<long long> nz;
    std::vector<std::size_t> odo(static_cast<std::size_t>(p), 0);
    for (int j = 0; j + 1 < static_cast<int>(ctx.ladder.ks.size()); ++j) {
        const int kj = ctx.ladder.ks[j];
        const long long lspan = ipow(d, K - kj);
        for (int r = kj; r < ctx.ladder.ks[j + 1]; ++r) {
            const long long rspan = ipow(d, K - r);
            const long long child = rspan / d;
            for (int s = 1; s < d; ++s) {
                std::vector<S> hv(static_cast<std::size_t>(m)), hvc(static_cast<std::size_t>(m));
                for (long long c = 0; c < m; ++c) {
                    hv[c] = ctx.chars.template value<S>(s, static_cast<int>((c / child) % d));
                    hvc[c] = scalar_ops<S>::conjugate(hv[c]);
                }
                const S coeff_s = scalar_ops<S>::from_rat(dpow_rat(d, r + (p - 1) * kj) *
                                                          dpow_rat(d, -(p + 2) * K));
                // columns of Ft beyond the support are identically zero
                for (long long y1 = 0; y1 < supp; ++y1)
                    for (long long y2 = 0; y2 < supp; ++y2) {
                        if (y1 / rspan != y2 / rspan) continue;  // y2 outside J
                        const S hy = coeff_s * hv[y1] * hvc[y2];
                        for (long long zc = 0; zc < m; ++zc)
                            prodv[zc] = Ft.vals(zc, y1) * Ft.vals(zc, y2);
                        for (long long l0 = 0; l0 < m; l0 += lspan) {
                            nz.clear();
                            for (long long zc = l0; zc < std::min(l0 + lspan, m); ++zc)
                                if (!scalar_ops<S>::is_zero(prodv[zc])) nz.push_back(zc);
                            if (nz.empty()) continue;
                            std::fill(odo.begin(), odo.end(), 0);
                            while (true) {
                                S prod = hy;
                                for (int i = 0; i < p; ++i) prod *= prodv[nz[odo[i]]];
                                total += prod;
                                int i = 0;
                                while (i < p && ++odo[i] == nz.size()) odo[i++] = 0;
                                if (i == p) break;
                            }
                        }
                    }
            }
        }
    }
    return total;
}

/// The intermediate of the Cauchy-Schwarz step: sums of absolute values of the
/// two inner integrals, sitting between |Lambda~| and sqrt(Theta Theta).
/// Float-only (absolute values leave the exact field).
inline double lambda_abs_oracle(const FormContext<std::complex<double>>& ctx) {
    const int d = ctx.group.d;
    const int K = ctx.F.K;
    const long long m = ctx.Ft.cells();
    const int p = ctx.p;
    if (lambda_tilde_oracle_cost(ctx) * 2 * p > kMaxOracleSummands)
        throw cap_exceeded("lambda_abs_oracle: instance above summand cap");
    double total = 0.0;
    std::vector<long long> z(static_cast<std::size_t>(p - 1), 0);
    for (int j = 0; j + 1 < static_cast<int>(ctx.ladder.ks.size()); ++j) {
        const int kj = ctx.ladder.ks[j];
        const long long lspan = ipow(d, K - kj);
        for (int r = kj; r < ctx.ladder.ks[j + 1]; ++r) {
            const long long rspan = ipow(d, K - r);
            const long long child = rspan / d;
            const long long nI = m / rspan;
            for (int s = 1; s < d; ++s) {
                std::vector<std::complex<double>> hv(static_cast<std::size_t>(m));
                for (long long c = 0; c < m; ++c)
                    hv[c] = ctx.chars.value<std::complex<double>>(
                        s, static_cast<int>((c / child) % d));
                const double coeff =
                    to_double(dpow_rat(d, r + (p - 1) * kj) * dpow_rat(d, -p * K));
                const double width = to_double(dpow_rat(d, -K));
                for (long long Ii = 0; Ii < nI; ++Ii)
                    for (long long Ji = 0; Ji < nI; ++Ji) {
                        const long long Kidx = idx_oplus(ctx.group, Ii, Ji);
                        const long long Lidx = Kidx / ipow(d, r - kj);
                        const long long z1_0 = Kidx * rspan, zo_0 = Lidx * lspan;
                        // odometer over z_2..z_p in L; z_1 over K
                        std::fill(z.begin(), z.end(), zo_0);
                        while (true) {
                            for (long long z1 = z1_0; z1 < z1_0 + rspan; ++z1) {
                                std::complex<double> wF(0.0, 0.0), wG(0.0, 0.0);
                                for (long long y = Ji * rspan; y < (Ji + 1) * rspan; ++y) {
                                    std::complex<double> prod = ctx.Ft.vals(z1, y);
                                    for (int i = 0; i + 1 < p; ++i) prod *= ctx.Ft.vals(z[i], y);
                                    wF += prod * std::conj(hv[y]) * width;
                                }
                                for (long long x = Ii * rspan; x < (Ii + 1) * rspan; ++x) {
                                    std::complex<double> prod = ctx.Gt.vals(z1, x);
                                    for (int i = 0; i + 1 < p; ++i) prod *= ctx.Gt.vals(z[i], x);
                                    wG += prod * std::conj(hv[x]) * width;
                                }
                                total += coeff * std::abs(wF) * std::abs(wG);
                            }
                            int i = 0;
                            while (i < p - 1 && ++z[i] == zo_0 + lspan) z[i++] = zo_0;
                            if (i == p - 1) break;
                        }
                    }
            }
        }
    }
    return total;
}

// ============================================================================
// The assembled Proposition chain, float mode: every inequality link of the
// proof evaluated on one instance, plus the final variation bound with
// C_p = c_p^{-1} (1 + p).
// ============================================================================

struct LinkResult {
    std::string id;
    bool pass = true;
    double margin = 0.0;  // rhs - lhs at the tightest point (negative = violated)
};

struct PropositionReport {
    VariationReport variation;
    std::vector<LinkResult> links;
    bool all_pass = true;

    const LinkResult* find(const std::string& id) const {
        for (const auto& l : links)
            if (l.id == id) return &l;
        return nullptr;
    }
};

namespace detail {

inline double slack_for(double a, double b) {
    return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

inline void push_le(PropositionReport& rep, const std::string& id, double lhs, double rhs) {
    double margin = rhs - lhs;
    bool pass = lhs <= rhs + slack_for(lhs, rhs);
    rep.links.push_back({id, pass, margin});
    rep.all_pass = rep.all_pass && pass;
}

}  // namespace detail

inline PropositionReport proposition_bound_check(const FormContext<std::complex<double>>& ctx,
                                                 double cp) {
    using C = std::complex<double>;
    if (!ctx.F.nonneg || !ctx.G.nonneg)
        throw std::invalid_argument("proposition_bound_check needs nonnegative F, G");
    PropositionReport rep;
    const int p = ctx.p;
    const long long m = ctx.F.cells();
    const double area = to_double(dpow_rat(ctx.group.d, -2 * ctx.F.K));

    auto avgs = ladder_averages(ctx);

    // (i) pointwise lemma chain, telescoped over the ladder, cell by cell
    {
        double worst = std::numeric_limits<double>::infinity();
        bool pass = true;
        for (long long x = 0; x < m; ++x)
            for (long long y = 0; y < m; ++y) {
                double lhs = 0.0, lam = 0.0;
                for (std::size_t j = 0; j + 1 < avgs.size(); ++j) {
                    double aj = avgs[j].vals(x, y).real();
                    double aj1 = avgs[j + 1].vals(x, y).real();
                    lhs += std::pow(std::abs(aj1 - aj), p);
                    lam += (aj1 - aj) * std::pow(aj, p - 1);
                }
                double am = avgs.back().vals(x, y).real();
                double a0 = avgs.front().vals(x, y).real();
                double rhs = (std::pow(am, p) - std::pow(a0, p) - p * lam) / cp;
                worst = std::min(worst, rhs - lhs);
                pass = pass && lhs <= rhs + detail::slack_for(lhs, rhs);
            }
        rep.links.push_back({"lemma_pointwise", pass, worst});
        rep.all_pass = rep.all_pass && pass;
    }

    const double f2p = std::pow(lp_norm_pow_f(ctx.F, 2.0 * p), 1.0 / (2.0 * p));
    const double g2p = std::pow(lp_norm_pow_f(ctx.G, 2.0 * p), 1.0 / (2.0 * p));

    // (ii) ||A_{k_m}||_p <= ||F||_{2p} ||G||_{2p}
    {
        double akm = std::pow(lp_norm_pow_f(avgs.back(), static_cast<double>(p)),
                              1.0 / static_cast<double>(p));
        detail::push_le(rep, "average_holder", akm, f2p * g2p);
    }

    const double lam = lambda_fast(ctx, avgs).real();
    const double thF = theta_fast(ctx.Ft, p, ctx.ladder).real();
    const double thG = theta_fast(ctx.Gt, p, ctx.ladder).real();

    // (iii) |Lambda| <= sqrt(Theta(Ft) Theta(Gt))
    detail::push_le(rep, "cauchy_schwarz", std::abs(lam),
                    std::sqrt(std::max(0.0, thF) * std::max(0.0, thG)));

    // (iv) Theta <= ||.||_{2p}^{2p} on both tilde sides
    detail::push_le(rep, "theta_upper_F", thF, std::pow(f2p, 2.0 * p));
    detail::push_le(rep, "theta_upper_G", thG, std::pow(g2p, 2.0 * p));

    // (v) Lemma parts: summation by parts, Theta' >= 0, Xi_k in range
    {
        double thpF = theta_prime(ctx.Ft, p, ctx.ladder).real();
        double xiF_m = xi_form(ctx.Ft, p, ctx.ladder.back()).real();
        double xiF_0 = xi_form(ctx.Ft, p, ctx.ladder.front()).real();
        double lhs = thF + thpF, rhs = xiF_m - xiF_0;
        double margin = -std::abs(lhs - rhs);
        bool pass = std::abs(lhs - rhs) <= detail::slack_for(lhs, rhs);
        rep.links.push_back({"summation_by_parts", pass, margin});
        rep.all_pass = rep.all_pass && pass;
        detail::push_le(rep, "theta_prime_nonneg", 0.0, thpF);
        bool xi_ok = true;
        double xi_margin = std::numeric_limits<double>::infinity();
        for (int k : ctx.ladder.ks) {
            double xi = xi_form(ctx.Ft, p, k).real();
            double up = std::pow(f2p, 2.0 * p);
            xi_ok = xi_ok && xi >= -detail::slack_for(xi, 0.0) &&
                    xi <= up + detail::slack_for(xi, up);
            xi_margin = std::min({xi_margin, xi, up - xi});
        }
        rep.links.push_back({"xi_bounds", xi_ok, xi_margin});
        rep.all_pass = rep.all_pass && xi_ok;
    }

    // (vi) the Jensen step in isolation: each parent block at scale k_j versus
    // its children at scale k_{j+1}
    {
        bool pass = true;
        double worst = std::numeric_limits<double>::infinity();
        const int d = ctx.group.d;
        const double width = to_double(dpow_rat(d, -ctx.F.K));
        for (std::size_t j = 0; j + 1 < ctx.ladder.ks.size(); ++j) {
            long long lspan = ipow(d, ctx.F.K - ctx.ladder.ks[j]);
            long long cspan = ipow(d, ctx.F.K - ctx.ladder.ks[j + 1]);
            double Nblocks = static_cast<double>(lspan / cspan);
            for (long long y1 = 0; y1 < m; ++y1)
                for (long long y2 = 0; y2 < m; ++y2)
                    for (long long l0 = 0; l0 < m; l0 += lspan) {
                        double sum_b = 0.0, sum_bp = 0.0;
                        for (long long c0 = l0; c0 < l0 + lspan; c0 += cspan) {
                            double b = 0.0;
                            for (long long zz = c0; zz < c0 + cspan; ++zz)
                                b += (ctx.Ft.vals(zz, y1) * ctx.Ft.vals(zz, y2)).real();
                            b *= width;
                            sum_b += b;
                            sum_bp += std::pow(b, p);
                        }
                        double lhs = std::pow(sum_b, p);
                        double rhs = std::pow(Nblocks, p - 1) * sum_bp;
                        pass = pass && lhs <= rhs + detail::slack_for(lhs, rhs);
                        worst = std::min(worst, rhs - lhs);
                    }
        }
        rep.links.push_back({"jensen_step", pass, worst});
        rep.all_pass = rep.all_pass && pass;
    }

    // final: the variation bound with the assembled constant
    {
        std::vector<MeasuredValues> seq;
        seq.reserve(avgs.size());
        for (const auto& a : avgs) seq.push_back(flatten(a));
        MeasureWeights w = MeasureWeights::Constant(m * m, area);
        rep.variation = variation_sum(seq, w, static_cast<double>(p));
        double bound = assembled_constant(p, cp) * std::pow(f2p, p) * std::pow(g2p, p);
        fill_bound(rep.variation, bound);
        detail::push_le(rep, "variation_bound", rep.variation.variation_sum, bound);
    }
    return rep;
}

}  // namespace cantorvar
