#include "kmeis/exactalg.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kmeis;
using testsupport::random_point;
using testsupport::random_rf;

namespace {

RationalFunc rf(const char* s) { return RationalFunc::parse(s); }
LaurentPoly lp(const char* s) { return LaurentPoly::parse(s); }

// Gaussian elimination over Q, used as the numeric reference.
std::vector<mpq_class> solve_numeric(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b)
{
    const size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (A[p][c] == 0)
            ++p;
        std::swap(A[p], A[c]);
        std::swap(b[p], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0)
                continue;
            mpq_class f = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k)
                A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (size_t c = 0; c < n; ++c)
        b[c] /= A[c][c];
    return b;
}

}  // namespace

TEST_CASE("laurent polynomial arithmetic and formatting")
{
    CHECK(lp("2-2z^2").str() == "2-2z^2");
    CHECK(lp("z^-1+3/2*z").str() == "z^-1+3/2*z");
    CHECK((lp("z") + lp("z")).str() == "2z");
    CHECK((lp("1-z") * lp("1+z")) == lp("1-z^2"));
    CHECK(LaurentPoly().str() == "0");
    CHECK(lp("1-4z^2").eval(mpq_class(1, 4)) == mpq_class(3, 4));
    CHECK(lp("z").dual(2) == LaurentPoly::monomial(-1, mpq_class(1, 2)));
    CHECK_THROWS_AS(lp("1+"), std::invalid_argument);
}

TEST_CASE("rational function examples")
{
    const RationalFunc z = RationalFunc::z();
    CHECK(z * RationalFunc::z(-1) == RationalFunc(1));
    CHECK(rf("(1-4z^2)/(2-2z^2)") * rf("(2-2z^2)/(1-4z^2)") == RationalFunc(1));
    CHECK(z + z == RationalFunc(LaurentPoly::monomial(1, 2)));
    CHECK(dual_substitute(z, 3) == RationalFunc(LaurentPoly::monomial(-1, mpq_class(1, 3))));
    CHECK(dual_substitute(rf("(1-4z^2)/(2-2z^2)"), 2) == rf("(2-2z^2)/(1-4z^2)"));
    CHECK(z.eval(mpq_class(1, 4)) == mpq_class(1, 4));
    CHECK(rf("(2-2z^2)/(1-4z^2)").eval(mpq_class(1, 4)) == mpq_class(5, 2));
    CHECK_THROWS_AS(rf("(1)/(1-z)").eval(1), PoleError);
    CHECK_THROWS_AS(rf("(1)/(0)"), std::domain_error);
}

TEST_CASE("canonical form and string round trip")
{
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
        RationalFunc f = random_rf(rng);
        CHECK(RationalFunc::parse(f.str()) == f);
        if (!f.is_laurent()) {
            CHECK(f.den().low() == 0);
            CHECK(f.den().coeff(0) > 0);
        }
    }
    // equal values, different presentations
    CHECK(RationalFunc(lp("z-z^3"), lp("z^2-z^3")) == RationalFunc(lp("1+z"), lp("z")));
    CHECK(RationalFunc(lp("-3-6z-3z^2"), lp("2-4z-6z^2")) == rf("(-3/2-3/2*z)/(1-3z)"));
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 10000; ++k) {
        RationalFunc a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + b == b + a);
        REQUIRE(a - a == RationalFunc());
        if (!b.is_zero())
            REQUIRE((a / b) * b == a);
    }
}

TEST_CASE("evaluation is a ring homomorphism")
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 2000; ++k) {
        RationalFunc a = random_rf(rng), b = random_rf(rng);
        mpq_class x = random_point(rng);
        if (a.den().eval(x) == 0 || b.den().eval(x) == 0)
            continue;
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    }
}

TEST_CASE("dual substitution is an involution")
{
    std::mt19937_64 rng(17);
    for (long q = 2; q <= 5; ++q)
        for (int k = 0; k < 200; ++k) {
            RationalFunc f = random_rf(rng);
            CHECK(dual_substitute(dual_substitute(f, q), q) == f);
            // value at z equals the dual's value at 1/(qz)
            mpq_class x = random_point(rng);
            mpq_class y = 1 / (q * x);
            if (f.den().eval(y) != 0 && dual_substitute(f, q).den().eval(x) != 0)
                CHECK(dual_substitute(f, q).eval(x) == f.eval(y));
        }
}

TEST_CASE("rational roots")
{
    CHECK(rational_roots(lp("1-4z^2")) == std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)});
    CHECK(rational_roots(lp("1+z^2")).empty());
    CHECK(rational_roots(lp("z^-1-z")) == std::vector<mpq_class>{-1, 1});
    CHECK(rational_roots(lp("6-5z+z^2")) == std::vector<mpq_class>{2, 3});
}

TEST_CASE("solver examples")
{
    ParamSystem I{{{RationalFunc(1), RationalFunc(0)}, {RationalFunc(0), RationalFunc(1)}},
                  {RationalFunc(1), RationalFunc::z()}};
    ParamSolution s = solve_param_system(I);
    CHECK(s.x == std::vector<RationalFunc>{RationalFunc(1), RationalFunc::z()});
    CHECK(s.locus == LaurentPoly(1));

    ParamSystem one{{{RationalFunc::z()}}, {RationalFunc(1)}};
    s = solve_param_system(one);
    CHECK(s.x[0] == RationalFunc::z(-1));
    CHECK(s.locus == LaurentPoly::monomial(1));

    ParamSystem bad{{{RationalFunc(1)}, {RationalFunc(1)}}, {RationalFunc(1), RationalFunc(2)}};
    CHECK_THROWS_AS(solve_param_system(bad), NoSolution);

    // rank deficient but consistent: free unknowns are zero
    ParamSystem dep{{{RationalFunc(1), RationalFunc(1)}, {RationalFunc(2), RationalFunc(2)}},
                    {RationalFunc::z(), RationalFunc(LaurentPoly::monomial(1, 2))}};
    s = solve_param_system(dep);
    CHECK(s.rank == 1);
    CHECK(s.x[0] + s.x[1] == RationalFunc::z());
}

TEST_CASE("solver against numeric elimination")
{
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> size(1, 4);
    int compared = 0;
    for (int k = 0; k < 60; ++k) {
        const size_t n = static_cast<size_t>(size(rng));
        ParamSystem S{RFMatrix(n, std::vector<RationalFunc>(n)), std::vector<RationalFunc>(n)};
        for (auto& row : S.matrix)
            for (auto& e : row)
                e = random_rf(rng);
        for (auto& e : S.rhs)
            e = random_rf(rng);
        RationalFunc d = determinant(S.matrix);
        if (d.is_zero())
            continue;
        ParamSolution sol = solve_param_system(S);
        REQUIRE(sol.rank == static_cast<int>(n));
        for (int t = 0; t < 3; ++t) {
            mpq_class x = random_point(rng);
            bool pole = sol.locus.eval(x) == 0;
            for (const auto& row : S.matrix)
                for (const auto& e : row)
                    pole = pole || e.den().eval(x) == 0;
            for (const auto& e : S.rhs)
                pole = pole || e.den().eval(x) == 0;
            if (pole)
                continue;
            std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
            std::vector<mpq_class> b(n);
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j)
                    A[i][j] = S.matrix[i][j].eval(x);
                b[i] = S.rhs[i].eval(x);
            }
            auto ref = solve_numeric(A, b);
            for (size_t j = 0; j < n; ++j)
                CHECK(sol.x[j].eval(x) == ref[j]);
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("determinant")
{
    RFMatrix M{{rf("(1)/(1-z)"), RationalFunc::z()}, {RationalFunc(2), RationalFunc(1)}};
    CHECK(determinant(M) == rf("(1)/(1-z)") - RationalFunc(LaurentPoly::monomial(1, 2)));
    RFMatrix P{{RationalFunc(0), RationalFunc(1)}, {RationalFunc(1), RationalFunc(0)}};
    CHECK(determinant(P) == RationalFunc(-1));
}
