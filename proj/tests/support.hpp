#pragma once

#include "kmeis/exactalg.hpp"
#include "kmeis/oracle.hpp"
#include "kmeis/roots.hpp"
#include "kmeis/tree.hpp"

#include <ostream>

#include <random>

// Readable failure messages.
namespace kmeis {
inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunc& f) { return os << f.str(); }
inline std::ostream& operator<<(std::ostream& os, const RootVector& r) { return os << r.str(); }
inline std::ostream& operator<<(std::ostream& os, const IwasawaLabel& l) { return os << l.str(); }
inline std::ostream& operator<<(std::ostream& os, const LatticeVertex& v) { return os << v.str(); }
inline std::ostream& operator<<(std::ostream& os, const WeylWord& w) { return os << w.str(); }
}  // namespace kmeis

namespace testsupport {

// Small random rational function with denominators of degree <= 2.
inline kmeis::RationalFunc random_rf(std::mt19937_64& rng, bool allow_zero = true)
{
    using kmeis::LaurentPoly;
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, 2), shift(-2, 2), coin(0, 2), den(1, 5);
    for (;;) {
        std::vector<LaurentPoly::Term> t;
        int d = deg(rng), s = shift(rng);
        for (int k = 0; k <= d; ++k)
            t.emplace_back(k + s, mpq_class(coef(rng), den(rng)));
        LaurentPoly num = LaurentPoly::from_terms(t);
        if (!allow_zero && num.is_zero())
            continue;
        if (coin(rng) == 0)
            return kmeis::RationalFunc(num);
        std::vector<LaurentPoly::Term> u;
        int e = deg(rng) + 1;
        for (int k = 0; k <= e; ++k)
            u.emplace_back(k, coef(rng));
        LaurentPoly dn = LaurentPoly::from_terms(u);
        if (dn.is_zero())
            continue;
        return kmeis::RationalFunc(num, dn);
    }
}

// Rational evaluation point that is not a root of any of the given polys.
inline mpq_class random_point(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> a(-40, 40), b(1, 37);
    mpq_class x(a(rng), b(rng));
    x.canonicalize();
    return x == 0 ? mpq_class(1, 41) : x;
}

}  // namespace testsupport
