#pragma once

#include <algorithm>
#include <cmath>

#include "cantorvar/stepfn.hpp"

namespace cantorvar {

/// Strictly increasing scales k_0 < k_1 < ... < k_m, m >= 1.
struct ScaleLadder {
    std::vector<int> ks;

    int m() const { return static_cast<int>(ks.size()) - 1; }
    int front() const { return ks.front(); }
    int back() const { return ks.back(); }
};

inline ScaleLadder make_ladder(std::vector<int> ks) {
    if (ks.size() < 2) throw std::invalid_argument("ladder needs at least two scales");
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (ks[i] <= ks[i - 1]) throw std::invalid_argument("ladder scales must increase strictly");
    return ScaleLadder{std::move(ks)};
}

/// A_k(F,G)(x,y) = d^k int_{[0,d^{-k})} F(x+t, y) G(x, y+t) dt, evaluated as
/// the exact finite sum d^{k-K} sum_tau F(x+tau, y) G(x, y+tau) over the
/// resolution-K cells of [0, d^{-k}). Requires k <= K. The result lives on an
/// extended support square [0, d^{max(N,-k)})^2 (values outside [0, d^N)^2 are
/// zero; the extension keeps the tau range inside the grid).
template <class S>
StepFn2<S> bilinear_average(const StepFn2<S>& F, const StepFn2<S>& G, int k) {
    if (!same_shape(F, G)) throw std::invalid_argument("bilinear_average: mismatched grids");
    if (k > F.K) throw std::invalid_argument("bilinear_average: k > K, cell sum undefined");
    const int d = F.group.d;
    const int N2 = std::max(F.N, -k);
    const StepFn2<S> Fe = extend_support(F, N2);
    const StepFn2<S> Ge = extend_support(G, N2);
    const long long m = Fe.cells();
    const long long taus = ipow(d, F.K - k);
    const S scale = scalar_ops<S>::from_rat(dpow_rat(d, k - F.K));
    Grid<S> out(m, m);
    for (long long x = 0; x < m; ++x)
        for (long long y = 0; y < m; ++y) {
            S acc = scalar_ops<S>::zero();
            for (long long t = 0; t < taus; ++t) {
                long long xt = idx_oplus(F.group, x, t);
                long long yt = idx_oplus(F.group, y, t);
                if (xt >= m || yt >= m) continue;  // cannot happen: digit ops stay in window
                acc += Fe.vals(xt, y) * Ge.vals(x, yt);
            }
            out(x, y) = acc * scale;
        }
    return StepFn2<S>{F.group, F.K, N2, F.nonneg && G.nonneg, std::move(out)};
}

// --- discrete averages on Phi_N x Phi_N --------------------------------------
//
// Functions on A^N x A^N are square grids indexed by the integer labels
// iota'(a), iota'(b) in [0, d^N). The group translation below goes through the
// explicit digit-sequence route (kappa' / per-position group add / iota'), so
// the transference test compares two independently built paths.

template <class S>
Grid<S> discrete_average(const Group& g, const Grid<S>& Fp, const Grid<S>& Gp, int n) {
    const long long m = Fp.rows();
    if (Fp.cols() != m || Gp.rows() != m || Gp.cols() != m)
        throw std::invalid_argument("discrete_average: grids must be square and equal");
    long long dn = ipow(g.d, n);
    if (n < 0 || dn > m) throw std::invalid_argument("discrete_average: n out of range");
    auto translate = [&](long long a, long long c) {
        std::vector<int> da = kappa_prime(g, a), dc = kappa_prime(g, c);
        std::size_t len = std::max(da.size(), dc.size());
        da.resize(len, 0);
        dc.resize(len, 0);
        for (std::size_t i = 0; i < len; ++i) da[i] = add(g, da[i], dc[i]);
        return iota_prime(g, da);
    };
    const S inv = scalar_ops<S>::from_rat(Rat(1, dn));
    Grid<S> out(m, m);
    for (long long a = 0; a < m; ++a)
        for (long long b = 0; b < m; ++b) {
            S acc = scalar_ops<S>::zero();
            for (long long c = 0; c < dn; ++c)
                acc += Fp(translate(a, c), b) * Gp(a, translate(b, c));
            out(a, b) = acc * inv;
        }
    return out;
}

// --- variation functionals and jump counting ---------------------------------
//
// Sequences of measured functions: flattened value vectors sharing one weight
// vector (cell areas for grids, mu for finite systems).

using MeasuredValues = Eigen::ArrayXcd;
using MeasureWeights = Eigen::ArrayXd;

inline double lp_norm_measured(const MeasuredValues& v, const MeasureWeights& w, double p) {
    if (v.size() != w.size()) throw std::invalid_argument("lp_norm_measured: size mismatch");
    return std::pow((v.abs().pow(p) * w).sum(), 1.0 / p);
}

/// Per-step L^p jump sizes and their p-th-power sum along a ladder evaluation.
struct VariationReport {
    std::vector<double> jump_norms;  // ||seq[j+1] - seq[j]||_p
    double variation_sum = 0.0;      // sum of jump_norms[j]^p
    double bound = 0.0;              // filled by caller policy
    double ratio = 0.0;              // variation_sum / bound when bound > 0
};

inline VariationReport variation_sum(const std::vector<MeasuredValues>& seq,
                                     const MeasureWeights& w, double p) {
    if (p < 2.0) throw std::invalid_argument("variation_sum: p must be >= 2");
    VariationReport r;
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
        if (seq[j].size() != w.size() || seq[j + 1].size() != w.size())
            throw std::invalid_argument("variation_sum: mismatched grids");
        double nrm = lp_norm_measured(seq[j + 1] - seq[j], w, p);
        r.jump_norms.push_back(nrm);
        r.variation_sum += std::pow(nrm, p);
    }
    return r;
}

inline void fill_bound(VariationReport& r, double bound) {
    r.bound = bound;
    r.ratio = bound > 0.0 ? r.variation_sum / bound : 0.0;
}

inline MeasuredValues flatten(const StepFn2<std::complex<double>>& f) {
    MeasuredValues v(f.cells() * f.cells());
    for (long long i = 0; i < f.cells(); ++i)
        for (long long j = 0; j < f.cells(); ++j) v(i * f.cells() + j) = f.vals(i, j);
    return v;
}

inline MeasureWeights uniform_cell_weights(const StepFn2<std::complex<double>>& f) {
    double area = to_double(f.cell_width_rat() * f.cell_width_rat());
    return MeasureWeights::Constant(f.cells() * f.cells(), area);
}

/// Largest m admitting indices n_1 < n'_1 <= n_2 < n'_2 <= ... <= n_m < n'_m
/// with ||seq[n_j] - seq[n'_j]||_p >= eps. Pairs may share an endpoint with
/// the next pair. Greedy scan: close a jump at the earliest feasible right
/// endpoint and continue from it; an exchange argument makes this optimal,
/// and count_jumps_exhaustive re-derives it by full search.
inline int count_jumps(const std::vector<MeasuredValues>& seq, const MeasureWeights& w,
                       double eps, double p) {
    if (eps <= 0.0) throw std::invalid_argument("count_jumps: eps must be positive");
    int count = 0;
    std::size_t cur = 0;
    for (std::size_t j = 1; j < seq.size(); ++j) {
        bool feasible = false;
        for (std::size_t i = cur; i < j && !feasible; ++i)
            feasible = lp_norm_measured(seq[j] - seq[i], w, p) >= eps;
        if (feasible) {
            ++count;
            cur = j;
        }
    }
    return count;
}

/// Reference search over every admissible index family (lengths <= ~12 only).
inline int count_jumps_exhaustive(const std::vector<MeasuredValues>& seq,
                                  const MeasureWeights& w, double eps, double p) {
    const std::size_t n = seq.size();
    if (n > 12) throw cap_exceeded("count_jumps_exhaustive: sequence too long");
    auto rec = [&](auto&& self, std::size_t min_start) -> int {
        int best = 0;
        for (std::size_t i = min_start; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (lp_norm_measured(seq[j] - seq[i], w, p) >= eps)
                    best = std::max(best, 1 + self(self, j));
        return best;
    };
    return rec(rec, 0);
}

}  // namespace cantorvar
