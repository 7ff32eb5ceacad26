#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <atomic>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "cantorvar/util.hpp"

namespace cantorvar {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& q) { return static_cast<double>(q); }

/// d^e as an exact rational, e of either sign.
inline Rat dpow_rat(int d, int e) { return e >= 0 ? Rat(ipow(d, e)) : Rat(1, ipow(d, -e)); }

namespace detail {

// Dense polynomials over Rat, coefficient i = degree i.
using Poly = std::vector<Rat>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Exact division; requires b | a (used for cyclotomic polynomials only).
inline Poly poly_div_exact(Poly a, const Poly& b) {
    poly_trim(a);
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat coef = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = coef;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= coef * b[i];
        poly_trim(a);
    }
    if (!a.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

// Remainder modulo a monic polynomial.
inline void poly_rem_monic(Poly& a, const Poly& mod) {
    poly_trim(a);
    while (a.size() >= mod.size()) {
        Rat coef = a.back();
        std::size_t shift = a.size() - mod.size();
        for (std::size_t i = 0; i < mod.size(); ++i) a[shift + i] -= coef * mod[i];
        poly_trim(a);
    }
}

struct CycloField {
    unsigned n = 1;
    Poly phi;                          // cyclotomic polynomial, monic
    unsigned deg = 1;                  // Euler phi(n)
    std::vector<Poly> zeta_pow;        // zeta^j mod phi, j = 0..n-1, padded to deg
};

inline Poly cyclotomic_poly(unsigned n, std::map<unsigned, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    Poly num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned m = 1; m < n; ++m)
        if (n % m == 0) num = poly_div_exact(num, cyclotomic_poly(m, memo));
    memo.emplace(n, num);
    return num;
}

inline constexpr unsigned kMaxFieldOrder = 255;

inline const CycloField& cyclo_field(unsigned n) {
    static std::atomic<const CycloField*> table[kMaxFieldOrder + 1] = {};
    if (n == 0 || n > kMaxFieldOrder)
        throw std::invalid_argument("cyclotomic order out of range");
    if (const CycloField* hit = table[n].load(std::memory_order_acquire)) return *hit;
    static std::map<unsigned, Poly> poly_memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (const CycloField* hit = table[n].load(std::memory_order_acquire)) return *hit;
    auto* f = new CycloField;  // lives for the whole process
    f->n = n;
    f->phi = cyclotomic_poly(n, poly_memo);
    f->deg = static_cast<unsigned>(f->phi.size() - 1);
    f->zeta_pow.resize(n);
    Poly cur{Rat(1)};
    for (unsigned j = 0; j < n; ++j) {
        Poly padded = cur;
        padded.resize(f->deg, Rat(0));
        f->zeta_pow[j] = padded;
        cur.insert(cur.begin(), Rat(0));  // multiply by x
        poly_rem_monic(cur, f->phi);
    }
    table[n].store(f, std::memory_order_release);
    return *f;
}

}  // namespace detail

/// Exact element of the cyclotomic field Q(zeta_n), stored as coefficients in
/// the power basis 1, zeta, ..., zeta^{phi(n)-1}. Order n = 1 means a plain
/// rational; such constants promote transparently when combined with elements
/// of a larger field. Equality, arithmetic, and conjugation are exact.
class Cyclo {
public:
    Cyclo() : n_(1), c_(1, Rat(0)) {}
    Cyclo(int v) : n_(1), c_(1, Rat(v)) {}
    Cyclo(const Rat& v) : n_(1), c_(1, v) {}

    static Cyclo root(unsigned n, long long e) {
        const auto& f = detail::cyclo_field(n);
        long long j = e % static_cast<long long>(n);
        if (j < 0) j += n;
        Cyclo z;
        z.n_ = n;
        z.c_ = f.zeta_pow[static_cast<std::size_t>(j)];
        return z;
    }

    /// e^{2*pi*i*rot} where rot is a rational with denominator dividing n.
    static Cyclo from_rotation(unsigned n, const Rat& rot) {
        using boost::multiprecision::cpp_int;
        cpp_int num = numerator(rot), den = denominator(rot);
        if (den <= 0 || n % static_cast<unsigned>(den) != 0)
            throw std::invalid_argument("rotation denominator does not divide field order");
        cpp_int e = num * (n / static_cast<unsigned>(den));
        return root(n, static_cast<long long>(e % n));
    }

    /// re + im*i; requires 4 | n so that i = zeta^{n/4} lives in the field.
    static Cyclo gaussian(unsigned n, const Rat& re, const Rat& im) {
        if (n % 4 != 0) throw std::invalid_argument("gaussian values need 4 | field order");
        Cyclo z = root(n, n / 4);
        return Cyclo(re) + Cyclo(im) * z;
    }

    unsigned order() const { return n_; }
    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_value() const {
        if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
        return c_[0];
    }

    /// Extracts re + im*i components; false if the value has other summands.
    bool gaussian_parts(Rat& re, Rat& im) const {
        re = c_[0];
        im = 0;
        if (n_ == 1) return true;
        if (n_ % 4 != 0) return is_rational();
        unsigned q = n_ / 4;
        const auto& f = detail::cyclo_field(n_);
        if (q >= f.deg) {  // i is not a basis monomial; fall back to a subtraction test
            Cyclo rest = *this - Cyclo(c_[0]);
            if (rest.is_zero()) return true;
            return false;
        }
        im = c_[q];
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (i != q && c_[i] != 0) return false;
        return true;
    }

    Cyclo& operator+=(const Cyclo& b) {
        if (n_ == b.n_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
            return *this;
        }
        return *this = add_mixed(*this, b, false);
    }
    Cyclo& operator-=(const Cyclo& b) {
        if (n_ == b.n_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
            return *this;
        }
        return *this = add_mixed(*this, b, true);
    }
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        if (a.n_ == b.n_) {
            if (a.n_ == 1) {
                Cyclo r = a;
                r.c_[0] *= b.c_[0];
                return r;
            }
            return mul_same(a, b);
        }
        // a rational constant scales coefficient-wise
        if (a.n_ == 1) return scaled(b, a.c_[0]);
        if (b.n_ == 1) return scaled(a, b.c_[0]);
        throw std::invalid_argument("mixed cyclotomic field orders");
    }
    Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        auto [x, y] = promote(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    static Cyclo scaled(const Cyclo& a, const Rat& q) {
        Cyclo r = a;
        for (auto& c : r.c_) c *= q;
        return r;
    }

    Cyclo conj() const {
        if (n_ == 1) return *this;
        const auto& f = detail::cyclo_field(n_);
        Cyclo r;
        r.n_ = n_;
        r.c_.assign(f.deg, Rat(0));
        for (unsigned j = 0; j < f.deg; ++j) {
            if (c_[j] == 0) continue;
            const auto& zp = f.zeta_pow[(n_ - j) % n_];
            for (unsigned i = 0; i < f.deg; ++i) r.c_[i] += c_[j] * zp[i];
        }
        return r;
    }

    Cyclo pow(unsigned e) const {
        Cyclo r(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    std::complex<double> to_complex() const {
        std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi / n_);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * zeta + to_double(c_[i]);
        return acc;
    }

private:
    static Cyclo mul_same(const Cyclo& a, const Cyclo& b) {
        const auto& f = detail::cyclo_field(a.n_);
        const std::size_t deg = f.deg;
        std::vector<Rat> prod(2 * deg - 1, Rat(0));
        for (std::size_t i = 0; i < deg; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < deg; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        for (std::size_t t = 2 * deg - 2; t >= deg; --t) {
            if (prod[t] == 0) continue;
            // x^t = x^{t-deg} * (x^deg - phi) since phi is monic
            for (std::size_t i = 0; i < deg; ++i)
                if (f.phi[i] != 0) prod[t - deg + i] -= prod[t] * f.phi[i];
        }
        Cyclo r;
        r.n_ = a.n_;
        prod.resize(deg);
        r.c_ = std::move(prod);
        return r;
    }
    static Cyclo add_mixed(const Cyclo& a, const Cyclo& b, bool subtract) {
        auto [x, y] = promote(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (subtract)
                x.c_[i] -= y.c_[i];
            else
                x.c_[i] += y.c_[i];
        }
        return x;
    }
    static std::pair<Cyclo, Cyclo> promote(const Cyclo& a, const Cyclo& b) {
        if (a.n_ == b.n_) return {a, b};
        if (a.n_ == 1) return {lift(a, b.n_), b};
        if (b.n_ == 1) return {a, lift(b, a.n_)};
        throw std::invalid_argument("mixed cyclotomic field orders");
    }
    static Cyclo lift(const Cyclo& a, unsigned n) {
        const auto& f = detail::cyclo_field(n);
        Cyclo r;
        r.n_ = n;
        r.c_.assign(f.deg, Rat(0));
        r.c_[0] = a.c_[0];
        return r;
    }

    unsigned n_;
    std::vector<Rat> c_;
};

inline Cyclo conj(const Cyclo& z) { return z.conj(); }

// --- scalar backend shim ----------------------------------------------------
//
// Grids and form evaluators are templated on the scalar: Cyclo for exact runs,
// std::complex<double> for float sweeps.

template <class S>
struct scalar_ops;

template <>
struct scalar_ops<Cyclo> {
    static Cyclo zero() { return Cyclo(0); }
    static Cyclo one() { return Cyclo(1); }
    static Cyclo from_rat(const Rat& q) { return Cyclo(q); }
    static Cyclo char_val(unsigned field_n, const Rat& rot) {
        return Cyclo::from_rotation(field_n, rot);
    }
    static Cyclo conjugate(const Cyclo& z) { return z.conj(); }
    static Cyclo pow_u(const Cyclo& z, unsigned e) { return z.pow(e); }
    static std::complex<double> to_c(const Cyclo& z) { return z.to_complex(); }
    static bool exactly_equal(const Cyclo& a, const Cyclo& b) { return a == b; }
    static bool is_zero(const Cyclo& z) { return z.is_zero(); }
};

template <>
struct scalar_ops<std::complex<double>> {
    using C = std::complex<double>;
    static C zero() { return {0.0, 0.0}; }
    static C one() { return {1.0, 0.0}; }
    static C from_rat(const Rat& q) { return {to_double(q), 0.0}; }
    static C char_val(unsigned, const Rat& rot) {
        return std::polar(1.0, 2.0 * std::numbers::pi * to_double(rot));
    }
    static C conjugate(const C& z) { return std::conj(z); }
    static C pow_u(const C& z, unsigned e) {
        C r(1.0, 0.0);
        for (unsigned i = 0; i < e; ++i) r *= z;
        return r;
    }
    static std::complex<double> to_c(const C& z) { return z; }
    static bool exactly_equal(const C& a, const C& b) { return a == b; }
    static bool is_zero(const C& z) { return z == C(0.0, 0.0); }
};

}  // namespace cantorvar

namespace Eigen {

// Storage-grade traits: Cyclo grids use coefficient access, sums, and products
// but never Eigen's analytic helpers.
template <>
struct NumTraits<cantorvar::Cyclo> {
    using Real = cantorvar::Cyclo;
    using NonInteger = cantorvar::Cyclo;
    using Literal = cantorvar::Cyclo;
    using Nested = cantorvar::Cyclo;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 128
    };
    static inline Real epsilon() { return cantorvar::Cyclo(0); }
    static inline Real dummy_precision() { return cantorvar::Cyclo(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
