#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kmeis {

// Finite Laurent polynomial in z over Q.  Terms are kept sorted by exponent
// with no zero coefficients, so structural equality is value equality.
class LaurentPoly {
public:
    using Term = std::pair<long, mpq_class>;

    LaurentPoly() = default;
    LaurentPoly(const mpq_class& c);
    LaurentPoly(long c) : LaurentPoly(mpq_class(c)) {}
    static LaurentPoly monomial(long e, const mpq_class& c = 1);
    static LaurentPoly from_terms(std::vector<Term> terms);

    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }
    long low() const;
    long high() const;
    mpq_class coeff(long e) const;
    const std::vector<Term>& terms() const { return t_; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const mpq_class& c);

    LaurentPoly shift(long k) const;
    mpq_class eval(const mpq_class& z0) const;
    // z -> 1/(q z)
    LaurentPoly dual(long q) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string str() const;
    static LaurentPoly parse(const std::string& s);

private:
    std::vector<Term> t_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const mpq_class& c);
LaurentPoly operator*(const mpq_class& c, LaurentPoly a);

// Normalize a nonzero polynomial: integer coefficients with content 1 and
// positive lowest coefficient.  Exponents are left alone.
LaurentPoly primitive_part(const LaurentPoly& p);

// Rational roots of p (each listed once, ascending).  z = 0 is reported if
// the lowest exponent is positive.
std::vector<mpq_class> rational_roots(const LaurentPoly& p);

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quotient num/den in lowest terms.  den is an ordinary polynomial with
// nonzero constant term, integer coefficients of content 1 and a positive
// constant term; every power of z lives in num.
class RationalFunc {
public:
    RationalFunc() : den_(1) {}
    RationalFunc(const LaurentPoly& p) : num_(p), den_(1) {}
    RationalFunc(long c) : num_(c), den_(1) {}
    RationalFunc(const mpq_class& c) : num_(c), den_(1) {}
    RationalFunc(const LaurentPoly& num, const LaurentPoly& den);

    static RationalFunc z(long e = 1) { return LaurentPoly::monomial(e); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_ == LaurentPoly(1); }

    RationalFunc operator-() const;
    RationalFunc& operator+=(const RationalFunc& o);
    RationalFunc& operator-=(const RationalFunc& o);
    RationalFunc& operator*=(const RationalFunc& o);
    RationalFunc& operator/=(const RationalFunc& o);
    RationalFunc inverse() const;

    mpq_class eval(const mpq_class& z0) const;
    RationalFunc dual(long q) const;

    friend bool operator==(const RationalFunc& a, const RationalFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunc& a, const RationalFunc& b) { return !(a == b); }

    std::string str() const;
    static RationalFunc parse(const std::string& s);

private:
    struct Raw {};
    RationalFunc(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}

    LaurentPoly num_, den_;
};

RationalFunc operator+(RationalFunc a, const RationalFunc& b);
RationalFunc operator-(RationalFunc a, const RationalFunc& b);
RationalFunc operator*(RationalFunc a, const RationalFunc& b);
RationalFunc operator/(RationalFunc a, const RationalFunc& b);

RationalFunc dual_substitute(const RationalFunc& x, long q);

using RFMatrix = std::vector<std::vector<RationalFunc>>;

struct ParamSystem {
    RFMatrix matrix;
    std::vector<RationalFunc> rhs;
};

struct ParamSolution {
    std::vector<RationalFunc> x;
    // Solution is valid wherever this polynomial does not vanish.
    LaurentPoly locus;
    int rank = 0;
    std::vector<int> pivot_rows, pivot_cols;
};

struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solve over Q(z).  Rank and pivots come from fraction-free elimination on
// the row-scaled polynomial matrix; the pivot unknowns are the Cramer
// quotients for the pivot minor and the free unknowns are set to zero.
ParamSolution solve_param_system(const ParamSystem& S);

// Determinant by fraction-free elimination.
RationalFunc determinant(const RFMatrix& M);

}  // namespace kmeis
