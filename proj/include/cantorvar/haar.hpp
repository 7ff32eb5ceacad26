#pragma once

#include "cantorvar/digits.hpp"
#include "cantorvar/stepfn.hpp"

namespace cantorvar {

/// One Haar-system atom h_I^s: supported on the d-adic interval I, constant on
/// each child of I with value xi_s(child digit). s = 0 gives the indicator.
struct HaarAtom {
    DadicInterval I;
    int s = 0;
};

/// h_I^s evaluated on a resolution-K cell; K must resolve the child digit,
/// i.e. K >= I.k + 1.
template <class S>
S haar_value(const CharacterTable& chars, const HaarAtom& atom, long long cell, int K) {
    if (K < atom.I.k + 1)
        throw std::invalid_argument("haar_value: resolution too coarse for the child digit");
    if (atom.s < 0 || atom.s >= chars.d) throw std::out_of_range("haar_value: character index");
    long long span = ipow(chars.d, K - atom.I.k);
    if (cell / span != atom.I.l) return scalar_ops<S>::zero();
    int child_digit = static_cast<int>((cell / (span / chars.d)) % chars.d);
    return chars.template value<S>(atom.s, child_digit);
}

/// Evaluates h_I^s at an exact point given by its digit expansion.
template <class S>
S haar_value(const CharacterTable& chars, const HaarAtom& atom, const DigitVector& t) {
    Rat x = iota(t);
    Rat width = atom.I.k >= 0 ? Rat(1, ipow(t.group.d, atom.I.k)) : Rat(ipow(t.group.d, -atom.I.k));
    if (x < atom.I.l * width || x >= (atom.I.l + 1) * width) return scalar_ops<S>::zero();
    return chars.template value<S>(atom.s, t.digit(-atom.I.k - 1));
}

/// phi_k = d^k 1_{[0, d^{-k})} on a resolution-K cell (K >= k), as an exact
/// rational coefficient.
inline Rat phi_value_rat(int k, long long cell, int K, int d) {
    if (K < k) throw std::invalid_argument("phi_value: resolution coarser than scale");
    long long span = ipow(d, K - k);
    if (cell / span != 0) return Rat(0);
    return k >= 0 ? Rat(ipow(d, k)) : Rat(1, ipow(d, -k));
}

/// One term of the decomposition phi_{k_hi} - phi_{k_lo} =
/// sum_{r=k_lo}^{k_hi-1} sum_{s=1}^{d-1} d^r h^s_{[0, d^{-r})}.
struct PhiAtomTerm {
    int r;
    int s;
    Rat coeff;  // d^r
};

inline std::vector<PhiAtomTerm> phi_difference_decomposition(const Group& g, int k_lo, int k_hi) {
    if (k_lo >= k_hi) throw std::invalid_argument("phi_difference_decomposition: need k_lo < k_hi");
    std::vector<PhiAtomTerm> terms;
    terms.reserve(static_cast<std::size_t>((k_hi - k_lo) * (g.d - 1)));
    for (int r = k_lo; r < k_hi; ++r)
        for (int s = 1; s < g.d; ++s) terms.push_back({r, s, dpow_rat(g.d, r)});
    return terms;
}

/// Checks h^s_{I+J}(x+y) = h^s_I(x) h^s_J(y) and h^s_{-I}(-x) = conj(h^s_I(x))
/// exactly, for cells x in I, y in J at resolution K.
inline bool character_product_check(const Group& g, const CharacterTable& chars, DadicInterval I,
                                    DadicInterval J, int s, long long x_cell, long long y_cell,
                                    int K) {
    if (I.k != J.k) throw std::invalid_argument("character_product_check: |I| != |J|");
    long long span = ipow(g.d, K - I.k);
    if (x_cell / span != I.l || y_cell / span != J.l)
        throw std::invalid_argument("character_product_check: x not in I or y not in J");
    DadicInterval IJ = interval_oplus(g, I, J);
    long long xy = idx_oplus(g, x_cell, y_cell);
    Cyclo lhs = haar_value<Cyclo>(chars, {IJ, s}, xy, K);
    Cyclo rhs = haar_value<Cyclo>(chars, {I, s}, x_cell, K) *
                haar_value<Cyclo>(chars, {J, s}, y_cell, K);
    if (lhs != rhs) return false;
    Cyclo lhs2 = haar_value<Cyclo>(chars, {interval_ominus(g, I), s}, idx_ominus(g, x_cell), K);
    Cyclo rhs2 = conj(haar_value<Cyclo>(chars, {I, s}, x_cell, K));
    return lhs2 == rhs2;
}

}  // namespace cantorvar
