#pragma once

#include "kmeis/eisenstein.hpp"
#include "kmeis/tree.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmeis {

// Polynomials and finite Laurent polynomials in t over F_q, q prime.
class Fq {
public:
    explicit Fq(long q);
    long q() const { return q_; }
    uint32_t add(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((a + b) % q_); }
    uint32_t sub(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((a + q_ - b) % q_); }
    uint32_t mul(uint32_t a, uint32_t b) const
    {
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % q_);
    }
    uint32_t neg(uint32_t a) const { return a ? static_cast<uint32_t>(q_ - a) : 0; }
    uint32_t inv(uint32_t a) const;

private:
    long q_;
};

bool is_prime(long q);

// Constant term first, no trailing zeros; empty is zero.
using FqPoly = std::vector<uint32_t>;

inline long degree(const FqPoly& p) { return p.empty() ? -1 : static_cast<long>(p.size()) - 1; }
FqPoly poly_add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b);
void poly_divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem);
FqPoly poly_gcd(const Fq& F, FqPoly a, FqPoly b);  // monic
// u a + v b = gcd(a, b) (monic)
FqPoly poly_xgcd(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& u, FqPoly& v);
// The polynomial whose coefficients are the base-q digits of index.
FqPoly poly_from_index(long q, uint64_t index);

// sum_k c[k] t^{low + k}; c has no leading or trailing zeros.
struct FqLaurent {
    long low = 0;
    FqPoly c;

    FqLaurent() = default;
    FqLaurent(const FqPoly& p);
    static FqLaurent monomial(long e, uint32_t coeff);

    bool is_zero() const { return c.empty(); }
    // degree in t; -infinity is reported as LONG_MIN
    long deg() const;
    uint32_t coeff(long e) const;
    void normalize();

    friend bool operator==(const FqLaurent& a, const FqLaurent& b) { return a.low == b.low && a.c == b.c; }
    friend bool operator<(const FqLaurent& a, const FqLaurent& b)
    {
        return a.low < b.low || (a.low == b.low && a.c < b.c);
    }
    std::string str() const;
};

FqLaurent add(const Fq& F, const FqLaurent& a, const FqLaurent& b);
FqLaurent sub(const Fq& F, const FqLaurent& a, const FqLaurent& b);
FqLaurent mul(const Fq& F, const FqLaurent& a, const FqLaurent& b);

struct Matrix2 {
    FqLaurent a11, a12, a21, a22;
};

Matrix2 mul(const Fq& F, const Matrix2& x, const Matrix2& y);
FqLaurent det(const Fq& F, const Matrix2& g);

// The class of the lattice spanned by the columns of [[t^a, x], [0, 1]]
// with x reduced to its terms of degree > a.  Height is -a; the base vertex
// is a = 0, x = 0 and sigma_n = diag(t^n, 1) is a = n, x = 0.
struct LatticeVertex {
    long a = 0;
    FqLaurent x;

    long height() const { return -a; }
    int type() const { return (a % 2 == 0) ? 1 : 2; }
    // Iwasawa n for the labeling i = 1
    long iwasawa_n() const;

    friend bool operator==(const LatticeVertex& u, const LatticeVertex& v) { return u.a == v.a && u.x == v.x; }
    friend bool operator<(const LatticeVertex& u, const LatticeVertex& v)
    {
        return u.a < v.a || (u.a == v.a && u.x < v.x);
    }
    std::string str() const;
};

LatticeVertex sigma(long n);
Matrix2 vertex_matrix(const LatticeVertex& v);

struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduce g by column operations over F_q[[1/t]] and scalars.  Throws
// InsufficientPrecision when more than P expansion terms would be needed.
LatticeVertex vertex_of(const Fq& F, const Matrix2& g, long P);

LatticeVertex down_neighbor(const LatticeVertex& v);
LatticeVertex up_neighbor(const Fq& F, const LatticeVertex& v, uint32_t c);
std::vector<LatticeVertex> neighbors(const Fq& F, const LatticeVertex& v);

// Bottom row (c, d) of a representative of (Gamma n U) \ Gamma, normalized
// by units: (0, 1), or c monic.
struct Coset {
    FqPoly c, d;
    long maxdeg() const { return std::max(degree(c), degree(d)); }
};

std::vector<Coset> enumerate_cosets(long q, long D);
// An element of SL_2(F_q[t]) with the given bottom row.
Matrix2 coset_representative(const Fq& F, const Coset& k);

// H(gamma v) for gamma with bottom row (c, d), without reducing the matrix.
long coset_height(const Fq& F, const Coset& k, const LatticeVertex& v);

struct BruteResult {
    std::vector<mpq_class> partial;  // partial[D'] sums cosets of degree <= D'
    mpq_class value;
    mpq_class tail_ratio;  // last increment over the one before
    mpq_class tail_bound;  // geometric estimate of what is missing
    bool tail_converges = false;
    long terms = 0;
};

// sum over cosets of degree <= D of z0^{H(gamma v)}.
BruteResult brute_eisenstein(long q, const LatticeVertex& v, const mpq_class& z0, long D);
// Same sum by explicit enumeration, skipping the degree-count shortcut used
// for vertices on the ray.
BruteResult brute_eisenstein_enumerated(long q, const LatticeVertex& v, const mpq_class& z0, long D);

// Cauchy test on partial sums: the smallest D' such that every later
// relative increment is below tol, or nothing.
std::optional<long> stabilization_degree(const BruteResult& r, const mpq_class& tol);

struct HeightBound {
    std::vector<long> min_height;  // cumulative over degree <= D'
    std::vector<long> min_n;
    long stabilized_at = -1;  // first degree after which the minimum never drops
};
HeightBound orbit_height_bound(long q, const LatticeVertex& v, long D);

struct QuotientReport {
    bool ok = false;
    bool insufficient_degree = false;
    long classes = 0;
    std::vector<long> down_mult, up_mult;  // edges from sigma_n to n-1 and n+1
    std::string message;
};
QuotientReport quotient_ray_check(long q, int R, long D);

// Map the vertices of a tree labeled with i = 1 onto lattice classes so that
// down and up neighbors correspond, up index c going to x + c t^a.
std::vector<LatticeVertex> embed_tree(const Tree& T);

struct CompareRow {
    long n;
    mpq_class brute, ray_model, ratio, tail_bound;
};
struct CompareReport {
    std::vector<CompareRow> rows;
    mpq_class scale;          // mean ratio
    mpq_class max_deviation;  // max |ratio / scale - 1|
};
CompareReport oracle_compare(long q, const mpq_class& z0, long D, long vertices = 6);
void write_compare_csv(std::ostream& os, const CompareReport& r, int digits = 12);

// Decimal rendering with `digits` significant digits, exact rounding.
std::string to_decimal(const mpq_class& x, int digits = 12);

}  // namespace kmeis
