#pragma once

#include <Eigen/Core>
#include <numeric>
#include <span>
#include <vector>

#include "cantorvar/scalar.hpp"

namespace cantorvar {

/// Finite abelian group Z/d1 x ... x Z/dm with elements labeled 0..d-1 in
/// mixed-radix order (first factor least significant). Label 0 is the neutral
/// element.
struct Group {
    std::vector<int> orders;
    int d = 1;            // cardinality
    unsigned exponent = 1;  // lcm of the factor orders
    unsigned field_n = 4;   // cyclotomic order used by exact scalars: lcm(4, exponent)
};

inline Group make_group(const std::vector<int>& orders) {
    if (orders.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
    Group g;
    g.orders = orders;
    for (int o : orders) {
        if (o < 2) throw std::invalid_argument("cyclic factor order must be >= 2");
        g.d *= o;
        g.exponent = std::lcm(g.exponent, static_cast<unsigned>(o));
    }
    if (g.d > 64) throw std::invalid_argument("group too large for desk scale");
    g.field_n = std::lcm(4u, g.exponent);
    return g;
}

inline bool same_group(const Group& a, const Group& b) { return a.orders == b.orders; }

inline void check_label(const Group& g, int a) {
    if (a < 0 || a >= g.d) throw std::out_of_range("group label out of range");
}

inline std::vector<int> decode(const Group& g, int label) {
    check_label(g, label);
    std::vector<int> t(g.orders.size());
    for (std::size_t i = 0; i < g.orders.size(); ++i) {
        t[i] = label % g.orders[i];
        label /= g.orders[i];
    }
    return t;
}

inline int encode(const Group& g, std::span<const int> tuple) {
    if (tuple.size() != g.orders.size()) throw std::invalid_argument("tuple arity mismatch");
    int label = 0;
    for (std::size_t i = g.orders.size(); i-- > 0;) {
        if (tuple[i] < 0 || tuple[i] >= g.orders[i])
            throw std::out_of_range("tuple component out of range");
        label = label * g.orders[i] + tuple[i];
    }
    return label;
}

inline int add(const Group& g, int a, int b) {
    check_label(g, a);
    check_label(g, b);
    int label = 0, radix = 1;
    for (int o : g.orders) {
        int da = a % o, db = b % o;
        a /= o;
        b /= o;
        label += ((da + db) % o) * radix;
        radix *= o;
    }
    return label;
}

inline int neg(const Group& g, int a) {
    check_label(g, a);
    int label = 0, radix = 1;
    for (int o : g.orders) {
        int da = a % o;
        a /= o;
        label += ((o - da) % o) * radix;
        radix *= o;
    }
    return label;
}

/// All d characters of the group, stored exactly as rational rotation numbers:
/// rot(s, a) = q means xi_s(a) = e^{2*pi*i*q}. Row 0 is the trivial character.
/// Character s, decoded as a tuple (s_1..s_m), sends a to sum_i s_i a_i / d_i.
struct CharacterTable {
    int d = 1;
    unsigned field_n = 4;
    Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic> rot;

    const Rat& rotation(int s, int a) const { return rot(s, a); }
    template <class S>
    S value(int s, int a) const {
        return scalar_ops<S>::char_val(field_n, rot(s, a));
    }
};

inline CharacterTable characters(const Group& g) {
    CharacterTable t;
    t.d = g.d;
    t.field_n = g.field_n;
    t.rot.resize(g.d, g.d);
    for (int s = 0; s < g.d; ++s) {
        auto st = decode(g, s);
        for (int a = 0; a < g.d; ++a) {
            auto at = decode(g, a);
            Rat q(0);
            for (std::size_t i = 0; i < g.orders.size(); ++i)
                q += Rat(st[i] * at[i], g.orders[i]);
            // reduce mod 1 into [0,1)
            using boost::multiprecision::cpp_int;
            cpp_int num = numerator(q), den = denominator(q);
            cpp_int m = num % den;
            if (m < 0) m += den;
            t.rot(s, a) = Rat(m, den);
        }
    }
    return t;
}

}  // namespace cantorvar
