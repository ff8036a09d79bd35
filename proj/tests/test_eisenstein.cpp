#include "kmeis/eisenstein.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace kmeis;

namespace {

RationalFunc rf(const char* s) { return RationalFunc::parse(s); }

// c2 by eliminating c2 from the boundary rule at a numeric z, by hand:
// c2 = q (1/z - z) / (1/z - q^2 z).
mpq_class c2_by_hand(long q, const mpq_class& z) { return q * (1 / z - z) / (1 / z - q * q * z); }

}  // namespace

TEST_CASE("characteristic roots")
{
    for (long q = 2; q <= 7; ++q) {
        auto [a, b] = characteristic_roots(q);
        CHECK(a * b == LaurentPoly(q));
        CHECK(a + b == eigenvalue(q));
        CHECK(a * a - eigenvalue(q) * a + LaurentPoly(q) == LaurentPoly());
    }
}

TEST_CASE("solved constant term")
{
    EisensteinData E = eisenstein_ray(2);
    CHECK(E.c1 == RationalFunc(1));
    CHECK(E.c2.str() == "(2-2z^2)/(1-4z^2)");
    CHECK(E.locus == LaurentPoly::parse("1-4z^2"));
    for (long q = 2; q <= 7; ++q) {
        EisensteinData F = eisenstein_ray(q);
        for (const mpq_class& z : {mpq_class(2, 11), mpq_class(2, 3), mpq_class(5)})
            CHECK(F.c2.eval(z) == c2_by_hand(q, z));
        CHECK(boundary_ok(F));
        CHECK(recurrence_ok(F, 30));
        // the denominator of c2 divides the exceptional locus
        CHECK((RationalFunc(F.locus) / RationalFunc(F.c2.den())).is_laurent());
    }
}

TEST_CASE("numeric values at z = 1/4")
{
    EisensteinData E = eisenstein_ray(2);
    const mpq_class z0(1, 4);
    CHECK(E.c2.eval(z0) == mpq_class(5, 2));
    auto f = eisenstein_values(E, 4, z0);
    CHECK(f[0] == mpq_class(7, 2));
    CHECK(f[1] == mpq_class(21, 4));
    CHECK(f[2] == mpq_class(133, 8));
    const mpq_class lambda = eigenvalue(2).eval(z0);
    CHECK(lambda * f[0] == mpq_class(63, 4));
    CHECK(lambda * f[0] == 3 * f[1]);
    CHECK(2 * f[0] + f[2] == mpq_class(189, 8));
    CHECK(2 * f[0] + f[2] == lambda * f[1]);
    CHECK(E.value(0) == E.c1 + E.c2);
    CHECK(E.value(2).eval(z0) == mpq_class(133, 8));
    CHECK_THROWS_AS(eisenstein_values(E, 4, mpq_class(0)), PoleError);
    CHECK_THROWS_AS(eisenstein_values(E, 4, mpq_class(1, 2)), PoleError);
}

TEST_CASE("functional equation")
{
    EisensteinData E = eisenstein_ray(2);
    CHECK(E.c2.eval(mpq_class(1, 4)) * E.c2.eval(mpq_class(2)) == 1);
    for (long q = 2; q <= 5; ++q)
        CHECK(functional_equation_check(eisenstein_ray(q)));
    EisensteinData bad = E;
    bad.c2 *= RationalFunc::z();
    CHECK_FALSE(functional_equation_check(bad));
    CHECK_FALSE(boundary_ok(bad));
    CHECK(recurrence_ok(bad, 10));
}

TEST_CASE("poles")
{
    PoleReport P = poles(eisenstein_ray(2));
    CHECK(P.denominator == LaurentPoly::parse("1-4z^2"));
    CHECK(P.poles == std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)});
    CHECK(P.shared);
    CHECK(P.denominator.eval(mpq_class(1, 4)) != 0);
    for (long q = 2; q <= 7; ++q) {
        PoleReport Q = poles(eisenstein_ray(q));
        CHECK(Q.poles == std::vector<mpq_class>{mpq_class(-1, q), mpq_class(1, q)});
    }
}

TEST_CASE("continuation past z = 1/q")
{
    EisensteinData E = eisenstein_ray(3);
    for (const mpq_class& z0 : {mpq_class(1, 2), mpq_class(7, 5), mpq_class(-3)}) {
        auto f = eisenstein_values(E, 20, z0);
        CHECK(satisfies_ray_equations(3, eigenvalue(3).eval(z0), f));
    }
}

TEST_CASE("scaling keeps ratios")
{
    EisensteinData E = eisenstein_ray(2);
    EisensteinData S = scaled(E, rf("(3)/(1-z)"));
    CHECK(S.normalization == Normalization::OracleScaled);
    CHECK(S.c2 / S.c1 == E.c2 / E.c1);
    CHECK(satisfies_ray_equations(2, S.lambda, eisenstein_values(S, 10)));
    CHECK(normalization_name(S.normalization) == "oracle_scaled");
}

TEST_CASE("uniqueness system")
{
    for (long q = 2; q <= 4; ++q) {
        UniquenessReport U = uniqueness_system_check(q, 12);
        CHECK(U.symbolic_ok);
        CHECK(U.eigen_ok);
        CHECK(U.discrete_ok);
        CHECK(U.homogeneous_ok);
        CHECK(U.a_s_coefficient == LaurentPoly::parse("-1+2z"));
        CHECK(U.a_1ms_coefficient.is_zero());
    }
    CHECK_THROWS(uniqueness_system_check(2, 2));
}
