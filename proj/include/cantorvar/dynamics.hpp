#pragma once

#include "cantorvar/forms.hpp"

namespace cantorvar {

/// Finite probability space with two commuting measure-preserving actions of
/// the truncated group Phi_N (= A^N). Actions are stored as permutations of X
/// for each of the N * (number of cyclic factors) generators and composed on
/// demand; construction verifies the action axioms exhaustively.
struct FiniteSystem {
    Group group;
    int depth = 0;  // N
    int size = 0;   // |X|
    Eigen::ArrayXd mu;
    // gen[pos * factors + i] = permutation for the unit of factor i at digit pos
    std::vector<std::vector<int>> genS, genT;

    int factors() const { return static_cast<int>(group.orders.size()); }
};

namespace detail {

inline std::vector<int> identity_perm(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
}

inline std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[static_cast<std::size_t>(g[i])];
    return r;
}

inline bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

}  // namespace detail

/// Composes the permutation for a group element a in Phi_n (label < d^n).
inline std::vector<int> action_perm(const FiniteSystem& sys, bool use_s, long long a) {
    const auto& gens = use_s ? sys.genS : sys.genT;
    std::vector<int> perm = detail::identity_perm(sys.size);
    int pos = 0;
    while (a > 0) {
        if (pos >= sys.depth) throw std::invalid_argument("group element beyond system depth");
        auto digit = decode(sys.group, static_cast<int>(a % sys.group.d));
        for (int i = 0; i < sys.factors(); ++i)
            for (int rep = 0; rep < digit[static_cast<std::size_t>(i)]; ++rep)
                perm = detail::compose(gens[static_cast<std::size_t>(pos * sys.factors() + i)],
                                       perm);
        a /= sys.group.d;
        ++pos;
    }
    return perm;
}

namespace detail {

inline void verify_system(const FiniteSystem& sys) {
    const int n = sys.size;
    if (static_cast<long long>(n) * ipow(sys.group.d, sys.depth) > kMaxActionPairs)
        throw cap_exceeded("system verification above |X| * d^N cap");
    if (sys.mu.size() != n) throw std::invalid_argument("mu size mismatch");
    double total = sys.mu.sum();
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mu must sum to 1");
    auto check_gens = [&](const std::vector<std::vector<int>>& gens) {
        for (const auto& g : gens)
            if (!is_permutation(g, n)) throw std::invalid_argument("generator is not a permutation");
        // measure preservation, generator orders, pairwise commutation
        for (int pos = 0; pos < sys.depth; ++pos)
            for (int i = 0; i < sys.factors(); ++i) {
                const auto& g = gens[static_cast<std::size_t>(pos * sys.factors() + i)];
                for (int x = 0; x < n; ++x)
                    if (std::abs(sys.mu(g[static_cast<std::size_t>(x)]) - sys.mu(x)) > 1e-12)
                        throw std::invalid_argument("action does not preserve mu");
                std::vector<int> acc = identity_perm(n);
                for (int rep = 0; rep < sys.group.orders[static_cast<std::size_t>(i)]; ++rep)
                    acc = compose(g, acc);
                if (acc != identity_perm(n))
                    throw std::invalid_argument("generator order violates the cyclic factor");
            }
        for (std::size_t a = 0; a < gens.size(); ++a)
            for (std::size_t b = a + 1; b < gens.size(); ++b)
                if (compose(gens[a], gens[b]) != compose(gens[b], gens[a]))
                    throw std::invalid_argument("generators of one action must commute");
    };
    check_gens(sys.genS);
    check_gens(sys.genT);
    for (const auto& s : sys.genS)
        for (const auto& t : sys.genT)
            if (compose(s, t) != compose(t, s))
                throw std::invalid_argument("S and T actions do not commute");
}

}  // namespace detail

/// Arbitrary commuting pair of actions given by explicit generator
/// permutations; axioms are verified and violations rejected.
inline FiniteSystem make_explicit_system(const Group& g, int depth, int size, Eigen::ArrayXd mu,
                                         std::vector<std::vector<int>> genS,
                                         std::vector<std::vector<int>> genT) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    std::size_t want = static_cast<std::size_t>(depth) * g.orders.size();
    if (genS.size() != want || genT.size() != want)
        throw std::invalid_argument("need depth * factors generator permutations per action");
    FiniteSystem sys{g, depth, size, std::move(mu), std::move(genS), std::move(genT)};
    detail::verify_system(sys);
    return sys;
}

/// Commuting translations on a finite abelian group B: S^a x = x + sigma(a),
/// T^a x = x + tau(a), with sigma and tau given by their images of the
/// generators of Phi_N. Rejects images whose order does not divide the
/// generator order.
inline FiniteSystem make_translation_system(const Group& g, int depth, const Group& B,
                                            const std::vector<int>& sigma_images,
                                            const std::vector<int>& tau_images) {
    std::size_t want = static_cast<std::size_t>(depth) * g.orders.size();
    if (sigma_images.size() != want || tau_images.size() != want)
        throw std::invalid_argument("need depth * factors generator images");
    auto build = [&](const std::vector<int>& images) {
        std::vector<std::vector<int>> gens;
        gens.reserve(images.size());
        for (std::size_t idx = 0; idx < images.size(); ++idx) {
            int img = images[idx];
            check_label(B, img);
            int order = g.orders[idx % g.orders.size()];
            int acc = 0;
            for (int rep = 0; rep < order; ++rep) acc = add(B, acc, img);
            if (acc != 0)
                throw std::invalid_argument("generator image order incompatible with Phi_N");
            std::vector<int> perm(static_cast<std::size_t>(B.d));
            for (int x = 0; x < B.d; ++x) perm[static_cast<std::size_t>(x)] = add(B, x, img);
            gens.push_back(std::move(perm));
        }
        return gens;
    };
    Eigen::ArrayXd mu = Eigen::ArrayXd::Constant(B.d, 1.0 / B.d);
    FiniteSystem sys{g, depth, B.d, std::move(mu), build(sigma_images), build(tau_images)};
    detail::verify_system(sys);
    return sys;
}

/// M_n(f, g) = |Phi_n|^{-1} sum_{a in Phi_n} (f o S^a)(g o T^a).
inline Eigen::ArrayXcd ergodic_average(const FiniteSystem& sys, const Eigen::ArrayXcd& f,
                                       const Eigen::ArrayXcd& g, int n) {
    if (n < 0 || n > sys.depth) throw std::invalid_argument("ergodic_average: n exceeds depth");
    if (f.size() != sys.size || g.size() != sys.size)
        throw std::invalid_argument("ergodic_average: function size mismatch");
    long long dn = ipow(sys.group.d, n);
    Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(sys.size);
    for (long long a = 0; a < dn; ++a) {
        auto ps = action_perm(sys, true, a);
        auto pt = action_perm(sys, false, a);
        for (int x = 0; x < sys.size; ++x)
            acc(x) += f(ps[static_cast<std::size_t>(x)]) * g(pt[static_cast<std::size_t>(x)]);
    }
    return acc / static_cast<double>(dn);
}

/// mu-weighted L^q norm on the system.
inline double system_norm(const FiniteSystem& sys, const Eigen::ArrayXcd& f, double q) {
    return std::pow((f.abs().pow(q) * sys.mu).sum(), 1.0 / q);
}

/// Norm-variation of the double averages M_{n_j}(f, g) along ns, reported
/// against the assembled bound C_p ||f||_{2p}^p ||g||_{2p}^p.
inline VariationReport theorem_check(const FiniteSystem& sys, const Eigen::ArrayXcd& f,
                                     const Eigen::ArrayXcd& g, int p,
                                     const std::vector<int>& ns, double cp) {
    if (p < 2) throw std::invalid_argument("theorem_check: p must be >= 2");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 0 || ns[i] > sys.depth)
            throw std::invalid_argument("theorem_check: ns exceeds depth");
        if (i > 0 && ns[i] <= ns[i - 1])
            throw std::invalid_argument("theorem_check: ns must increase");
    }
    std::vector<MeasuredValues> seq;
    seq.reserve(ns.size());
    for (int n : ns) seq.push_back(ergodic_average(sys, f, g, n));
    VariationReport rep = variation_sum(seq, sys.mu, static_cast<double>(p));
    double f2p = system_norm(sys, f, 2.0 * p);
    double g2p = system_norm(sys, g, 2.0 * p);
    fill_bound(rep, assembled_constant(p, cp) * std::pow(f2p, p) * std::pow(g2p, p));
    return rep;
}

/// Independent route for translation systems: M_n(f,g)(x) =
/// |Phi_n|^{-1} sum_c f(x + sigma(c)) g(x + tau(c)) computed directly through
/// the B group law, bypassing permutation composition.
inline Eigen::ArrayXcd ergodic_average_convolution(const FiniteSystem& sys, const Group& B,
                                                   const std::vector<int>& sigma_images,
                                                   const std::vector<int>& tau_images,
                                                   const Eigen::ArrayXcd& f,
                                                   const Eigen::ArrayXcd& g, int n) {
    long long dn = ipow(sys.group.d, n);
    auto hom = [&](const std::vector<int>& images, long long a) {
        int out = 0, pos = 0;
        while (a > 0) {
            auto digit = decode(sys.group, static_cast<int>(a % sys.group.d));
            for (std::size_t i = 0; i < sys.group.orders.size(); ++i)
                for (int rep = 0; rep < digit[i]; ++rep)
                    out = add(B, out, images[static_cast<std::size_t>(pos) *
                                                 sys.group.orders.size() + i]);
            a /= sys.group.d;
            ++pos;
        }
        return out;
    };
    Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(B.d);
    for (long long c = 0; c < dn; ++c) {
        int sc = hom(sigma_images, c), tc = hom(tau_images, c);
        for (int x = 0; x < B.d; ++x) acc(x) += f(add(B, x, sc)) * g(add(B, x, tc));
    }
    return acc / static_cast<double>(dn);
}

/// The transference identity at desk scale: the discrete average A'_n on
/// Phi_N x Phi_N equals, cell by cell, the bilinear average A_{-n} of the
/// step extensions F(x, y) = F'(kappa'(floor x), kappa'(floor y)). Exact.
inline bool transference_check(const Group& g, const Grid<Cyclo>& Fp, const Grid<Cyclo>& Gp,
                               int n) {
    const long long m = Fp.rows();
    long long dn = 1;
    int N = 0;
    while (dn < m) {
        dn *= g.d;
        ++N;
    }
    if (dn != m || Fp.cols() != m || Gp.rows() != m || Gp.cols() != m)
        throw std::invalid_argument("transference_check: grids must be d^N x d^N");
    if (n < 0 || n > N) throw std::invalid_argument("transference_check: n out of range");
    StepFn2<Cyclo> F = make_step<Cyclo>(g, 0, N, Fp);
    StepFn2<Cyclo> G = make_step<Cyclo>(g, 0, N, Gp);
    StepFn2<Cyclo> A = bilinear_average(F, G, -n);
    Grid<Cyclo> Ap = discrete_average(g, Fp, Gp, n);
    for (long long a = 0; a < m; ++a)
        for (long long b = 0; b < m; ++b)
            if (!(A.vals(a, b) == Ap(a, b))) return false;
    return true;
}

}  // namespace cantorvar
