#pragma once

#include <Eigen/Core>

#include "cantorvar/digits.hpp"

namespace cantorvar {

template <class S>
using Grid = Eigen::Array<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Complex step function on R_+^2, constant on d-adic cells of side d^{-K} and
/// supported in [0, d^N)^2. vals(a, b) is the value on cell
/// [a d^{-K}, (a+1) d^{-K}) x [b d^{-K}, (b+1) d^{-K}).
template <class S>
struct StepFn2 {
    Group group;
    int K = 0;
    int N = 0;
    bool nonneg = false;
    Grid<S> vals;

    long long cells() const { return vals.rows(); }
    Rat cell_width_rat() const { return K >= 0 ? Rat(1, ipow(group.d, K)) : Rat(ipow(group.d, -K)); }
};

namespace detail {

inline bool value_is_nonneg(const Cyclo& v) { return v.is_rational() && v.rational_value() >= 0; }
inline bool value_is_nonneg(const std::complex<double>& v) {
    return v.imag() == 0.0 && v.real() >= 0.0;
}

}  // namespace detail

template <class S>
StepFn2<S> make_step(const Group& g, int K, int N, Grid<S> vals, bool nonneg = false) {
    if (K < 0 || N < 0) throw std::invalid_argument("make_step: K and N must be nonnegative");
    long long m = ipow(g.d, N + K);
    if (m > kMaxCellsPerAxis)
        throw cap_exceeded("make_step: grid exceeds " + std::to_string(kMaxCellsPerAxis) +
                           " cells per axis");
    if (vals.rows() != m || vals.cols() != m)
        throw std::invalid_argument("make_step: grid must be d^(N+K) x d^(N+K)");
    if (nonneg)
        for (long long i = 0; i < m; ++i)
            for (long long j = 0; j < m; ++j)
                if (!detail::value_is_nonneg(vals(i, j)))
                    throw std::invalid_argument("make_step: nonneg flag on non-nonnegative data");
    return StepFn2<S>{g, K, N, nonneg, std::move(vals)};
}

template <class S>
StepFn2<S> constant_indicator_unit_square(const Group& g, const S& value) {
    Grid<S> v(1, 1);
    v(0, 0) = value;
    return make_step<S>(g, 0, 0, std::move(v), detail::value_is_nonneg(value));
}

/// Re-samples to a finer resolution K2 >= K; represents the same function.
template <class S>
StepFn2<S> refine(const StepFn2<S>& f, int K2) {
    if (K2 < f.K) throw std::invalid_argument("refine: target resolution is coarser");
    if (K2 == f.K) return f;
    long long scale = ipow(f.group.d, K2 - f.K);
    long long m2 = f.cells() * scale;
    if (m2 > kMaxCellsPerAxis) throw cap_exceeded("refine: grid exceeds cells-per-axis cap");
    Grid<S> v(m2, m2);
    for (long long i = 0; i < m2; ++i)
        for (long long j = 0; j < m2; ++j) v(i, j) = f.vals(i / scale, j / scale);
    return StepFn2<S>{f.group, K2, f.N, f.nonneg, std::move(v)};
}

/// Zero-pads the support square to [0, d^N2)^2.
template <class S>
StepFn2<S> extend_support(const StepFn2<S>& f, int N2) {
    if (N2 < f.N) throw std::invalid_argument("extend_support: target support is smaller");
    if (N2 == f.N) return f;
    long long m2 = ipow(f.group.d, N2 + f.K);
    if (m2 > kMaxCellsPerAxis)
        throw cap_exceeded("extend_support: grid exceeds cells-per-axis cap");
    Grid<S> v(m2, m2);
    v.setConstant(scalar_ops<S>::zero());
    v.block(0, 0, f.cells(), f.cells()) = f.vals;
    return StepFn2<S>{f.group, f.K, N2, f.nonneg, std::move(v)};
}

template <class S>
bool same_shape(const StepFn2<S>& a, const StepFn2<S>& b) {
    return same_group(a.group, b.group) && a.K == b.K && a.N == b.N;
}

/// ||F||_p^p for integer p >= 1, exact in the scalar. For data not flagged
/// nonnegative, p must be even so |z|^p = (z conj z)^{p/2} stays in the field.
template <class S>
S lp_norm_pow(const StepFn2<S>& f, int p) {
    if (p < 1) throw std::invalid_argument("lp_norm_pow: p must be >= 1");
    if (!f.nonneg && p % 2 != 0)
        throw std::invalid_argument("lp_norm_pow: odd p needs the nonneg flag");
    S acc = scalar_ops<S>::zero();
    const long long m = f.cells();
    for (long long i = 0; i < m; ++i)
        for (long long j = 0; j < m; ++j) {
            const S& v = f.vals(i, j);
            if (f.nonneg) {
                acc += scalar_ops<S>::pow_u(v, static_cast<unsigned>(p));
            } else {
                S a2 = v * scalar_ops<S>::conjugate(v);
                acc += scalar_ops<S>::pow_u(a2, static_cast<unsigned>(p / 2));
            }
        }
    Rat cell_area = f.cell_width_rat() * f.cell_width_rat();
    return acc * scalar_ops<S>::from_rat(cell_area);
}

/// Float-mode ||F||_p^p for arbitrary real p >= 1.
inline double lp_norm_pow_f(const StepFn2<std::complex<double>>& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm_pow_f: p must be >= 1");
    double acc = 0.0;
    const long long m = f.cells();
    for (long long i = 0; i < m; ++i)
        for (long long j = 0; j < m; ++j) acc += std::pow(std::abs(f.vals(i, j)), p);
    return acc * to_double(f.cell_width_rat() * f.cell_width_rat());
}

// --- tilde change of variables ----------------------------------------------
//
// Ft(z, y) = F(z (-) y, y) and Gt(z, x) = G(x, z (-) x). Both are cell
// permutations within each column, so every L^p norm is preserved exactly.

template <class S>
StepFn2<S> tilde_from_F(const StepFn2<S>& f) {
    const long long m = f.cells();
    Grid<S> v(m, m);
    for (long long z = 0; z < m; ++z)
        for (long long y = 0; y < m; ++y)
            v(z, y) = f.vals(idx_oplus(f.group, z, idx_ominus(f.group, y)), y);
    return StepFn2<S>{f.group, f.K, f.N, f.nonneg, std::move(v)};
}

template <class S>
StepFn2<S> tilde_from_G(const StepFn2<S>& g) {
    const long long m = g.cells();
    Grid<S> v(m, m);
    for (long long z = 0; z < m; ++z)
        for (long long x = 0; x < m; ++x)
            v(z, x) = g.vals(x, idx_oplus(g.group, z, idx_ominus(g.group, x)));
    return StepFn2<S>{g.group, g.K, g.N, g.nonneg, std::move(v)};
}

}  // namespace cantorvar
