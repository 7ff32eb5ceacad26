#pragma once

#include <string>
#include <vector>

#include "cantorvar/group.hpp"
#include "cantorvar/util.hpp"

namespace cantorvar {

// --- digit-wise arithmetic on nonnegative integer labels --------------------
//
// A label t >= 0 is read as the base-d string of group labels (t_k)_{k>=0}
// with t = sum t_k d^k; the group law acts digit by digit. These are the hot
// helpers used for grid cell indices; kappa_prime/iota_prime below are the
// same correspondence spelled out on explicit digit sequences.

inline long long idx_oplus(const Group& g, long long a, long long b) {
    if (a < 0 || b < 0) throw std::invalid_argument("digit index must be nonnegative");
    long long r = 0, radix = 1;
    while (a > 0 || b > 0) {
        int da = static_cast<int>(a % g.d), db = static_cast<int>(b % g.d);
        r += static_cast<long long>(add(g, da, db)) * radix;
        a /= g.d;
        b /= g.d;
        radix *= g.d;
    }
    return r;
}

inline long long idx_ominus(const Group& g, long long a) {
    if (a < 0) throw std::invalid_argument("digit index must be nonnegative");
    long long r = 0, radix = 1;
    while (a > 0) {
        r += static_cast<long long>(neg(g, static_cast<int>(a % g.d))) * radix;
        a /= g.d;
        radix *= g.d;
    }
    return r;
}

inline long long iota_prime(const Group& g, std::span<const int> digits) {
    long long t = 0;
    for (std::size_t k = digits.size(); k-- > 0;) {
        check_label(g, digits[k]);
        t = t * g.d + digits[k];
    }
    return t;
}

inline std::vector<int> kappa_prime(const Group& g, long long t) {
    if (t < 0) throw std::invalid_argument("kappa_prime needs a nonnegative integer");
    std::vector<int> digits;
    while (t > 0) {
        digits.push_back(static_cast<int>(t % g.d));
        t /= g.d;
    }
    return digits;
}

// --- DigitVector: finite-window base-d expansions of d-adic rationals -------

/// A nonnegative d-adic rational sum_k a_k d^k with finitely many nonzero
/// digits in both directions. Digits are group labels; the stored window is
/// trimmed so digits_.front() and digits_.back() are nonzero (empty = zero).
struct DigitVector {
    Group group;
    int k_lo = 0;                // position of digits_[0]
    std::vector<int> digits_;    // positions k_lo .. k_lo + size - 1

    int digit(int k) const {
        if (k < k_lo || k >= k_lo + static_cast<int>(digits_.size())) return 0;
        return digits_[static_cast<std::size_t>(k - k_lo)];
    }
    bool is_zero() const { return digits_.empty(); }
};

inline DigitVector dv_canonical(Group g, int k_lo, std::vector<int> digits) {
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
    while (!digits.empty() && digits.front() == 0) {
        digits.erase(digits.begin());
        ++k_lo;
    }
    if (digits.empty()) k_lo = 0;
    for (int a : digits) check_label(g, a);
    return DigitVector{std::move(g), k_lo, std::move(digits)};
}

inline DigitVector dv_zero(const Group& g) { return DigitVector{g, 0, {}}; }

inline DigitVector oplus(const DigitVector& x, const DigitVector& y) {
    if (!same_group(x.group, y.group)) throw std::invalid_argument("mixed groups in oplus");
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    int lo = std::min(x.k_lo, y.k_lo);
    int hi = std::max(x.k_lo + static_cast<int>(x.digits_.size()),
                      y.k_lo + static_cast<int>(y.digits_.size()));
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) out.push_back(add(x.group, x.digit(k), y.digit(k)));
    return dv_canonical(x.group, lo, std::move(out));
}

inline DigitVector ominus(const DigitVector& x) {
    std::vector<int> out;
    out.reserve(x.digits_.size());
    for (int a : x.digits_) out.push_back(neg(x.group, a));
    return dv_canonical(x.group, x.k_lo, std::move(out));
}

inline Rat iota(const DigitVector& x) {
    Rat t(0);
    for (std::size_t i = x.digits_.size(); i-- > 0;) t = t * x.group.d + x.digits_[i];
    // digits_[0] sits at position k_lo
    Rat scale = x.k_lo >= 0 ? Rat(ipow(x.group.d, x.k_lo))
                            : Rat(1, ipow(x.group.d, -x.k_lo));
    return t * scale;
}

/// Terminating base-d expansion of a nonnegative d-adic rational inside the
/// window [k_lo, k_hi]. Rejects values with no terminating expansion in the
/// window (wrong denominator, or too large).
inline DigitVector kappa(const Group& g, const Rat& value, int k_lo, int k_hi) {
    if (k_lo > k_hi) throw std::invalid_argument("kappa: empty digit window");
    if (value < 0) throw std::invalid_argument("kappa: value must be nonnegative");
    Rat shifted = k_lo >= 0 ? Rat(value / ipow(g.d, k_lo)) : Rat(value * ipow(g.d, -k_lo));
    if (denominator(shifted) != 1)
        throw std::invalid_argument("kappa: value has no terminating expansion at this window");
    boost::multiprecision::cpp_int m = numerator(shifted);
    std::vector<int> digits;
    for (int k = k_lo; k <= k_hi; ++k) {
        digits.push_back(static_cast<int>(m % g.d));
        m /= g.d;
    }
    if (m != 0) throw std::invalid_argument("kappa: value exceeds the digit window");
    return dv_canonical(g, k_lo, std::move(digits));
}

/// Base-d rendering with a radix point, most significant digit first.
inline std::string render(const DigitVector& x) {
    static const char* glyphs = "0123456789abcdef";
    if (x.is_zero()) return "0";
    int hi = x.k_lo + static_cast<int>(x.digits_.size()) - 1;
    std::string out;
    for (int k = std::max(hi, 0); k >= std::min(x.k_lo, 0); --k) {
        if (k == -1) out.push_back('.');
        out.push_back(glyphs[x.digit(k)]);
    }
    return out;
}

// --- d-adic intervals --------------------------------------------------------

/// I = [d^{-k} l, d^{-k} (l+1)). Two intervals at the same scale are equal or
/// disjoint; the group law on R_+ maps interval pairs to intervals.
struct DadicInterval {
    int k = 0;
    long long l = 0;

    friend bool operator==(const DadicInterval&, const DadicInterval&) = default;
};

inline DadicInterval interval_oplus(const Group& g, DadicInterval a, DadicInterval b) {
    if (a.k != b.k) throw std::invalid_argument("interval_oplus needs equal scales");
    return {a.k, idx_oplus(g, a.l, b.l)};
}

inline DadicInterval interval_ominus(const Group& g, DadicInterval a) {
    return {a.k, idx_ominus(g, a.l)};
}

inline DadicInterval ancestor(DadicInterval a, int n, int d) {
    if (n < 0) throw std::invalid_argument("ancestor generations must be nonnegative");
    return {a.k - n, a.l / ipow(d, n)};
}

inline std::vector<DadicInterval> children(DadicInterval a, int d) {
    std::vector<DadicInterval> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.push_back({a.k + 1, a.l * d + i});
    return out;
}

/// True iff two resolution-K cells lie in the same scale-k d-adic interval,
/// i.e. their digits agree at all positions >= -k. Exactly the support test
/// for phi_k(y1 (-) y2).
inline bool same_block(long long c1, long long c2, int k, int K, int d) {
    if (K < k) throw std::invalid_argument("same_block: resolution coarser than scale");
    long long q = ipow(d, K - k);
    return c1 / q == c2 / q;
}

}  // namespace cantorvar
