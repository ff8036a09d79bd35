#include "kmeis/eisenstein.hpp"

#include <stdexcept>

namespace kmeis {

namespace {

void check_q(long q)
{
    if (q < 2)
        throw std::invalid_argument("q must be >= 2");
}

LaurentPoly qz_power(long q, long n)
{
    mpz_class qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    return LaurentPoly::monomial(n, mpq_class(qn));
}

}  // namespace

RationalFunc EisensteinData::value(long n) const
{
    if (n < 0)
        throw std::invalid_argument("ray index must be >= 0");
    return c1 * RationalFunc::z(-n) + c2 * RationalFunc(qz_power(q, n));
}

std::pair<LaurentPoly, LaurentPoly> characteristic_roots(long q)
{
    check_q(q);
    return {LaurentPoly::monomial(1, q), LaurentPoly::monomial(-1)};
}

ParamSystem boundary_system(long q)
{
    check_q(q);
    // lambda (c1 + c2) = (q+1) (c1/z + c2 q z), i.e.
    // q (z - 1/z) c1 + (1/z - q^2 z) c2 = 0
    const LaurentPoly z = LaurentPoly::monomial(1), zi = LaurentPoly::monomial(-1);
    ParamSystem S;
    S.matrix = {{RationalFunc(1), RationalFunc(0)},
                {RationalFunc((z - zi) * mpq_class(q)), RationalFunc(zi - z * mpq_class(q * q))}};
    S.rhs = {RationalFunc(1), RationalFunc(0)};
    return S;
}

EisensteinData eisenstein_ray(long q)
{
    ParamSolution sol = solve_param_system(boundary_system(q));
    EisensteinData D;
    D.q = q;
    D.lambda = eigenvalue(q);
    D.c1 = sol.x[0];
    D.c2 = sol.x[1];
    D.locus = sol.locus;
    D.normalization = Normalization::C1Unit;
    return D;
}

EisensteinData scaled(const EisensteinData& D, const RationalFunc& s)
{
    EisensteinData r = D;
    r.c1 *= s;
    r.c2 *= s;
    r.normalization = Normalization::OracleScaled;
    return r;
}

RayFunction<RationalFunc> eisenstein_values(const EisensteinData& D, long N)
{
    if (N < 1)
        throw std::invalid_argument("eisenstein_values needs N >= 1");
    RayFunction<RationalFunc> f;
    f.reserve(N + 1);
    for (long n = 0; n <= N; ++n)
        f.push_back(D.value(n));
    return f;
}

RayFunction<mpq_class> eisenstein_values(const EisensteinData& D, long N, const mpq_class& z0)
{
    if (N < 1)
        throw std::invalid_argument("eisenstein_values needs N >= 1");
    if (z0 == 0)
        throw PoleError("pole at z = 0");
    const mpq_class c1 = D.c1.eval(z0), c2 = D.c2.eval(z0);
    const mpq_class zi = 1 / z0, qz = D.q * z0;
    RayFunction<mpq_class> f;
    f.reserve(N + 1);
    mpq_class a = 1, b = 1;
    for (long n = 0; n <= N; ++n) {
        f.push_back(c1 * a + c2 * b);
        a *= zi;
        b *= qz;
    }
    return f;
}

namespace {

template <class V, class L>
bool ray_equations(long q, const L& lambda, const RayFunction<V>& f)
{
    if (f.size() < 2)
        return false;
    auto Tf = ray_adjacency_apply(q, f);
    for (size_t n = 0; n < Tf.size(); ++n) {
        V lhs = f[n];
        lhs *= lambda;
        if (lhs != Tf[n])
            return false;
    }
    return true;
}

}  // namespace

bool satisfies_ray_equations(long q, const LaurentPoly& lambda, const RayFunction<RationalFunc>& f)
{
    return ray_equations(q, RationalFunc(lambda), f);
}

bool satisfies_ray_equations(long q, const mpq_class& lambda, const RayFunction<mpq_class>& f)
{
    return ray_equations(q, lambda, f);
}

bool boundary_ok(const EisensteinData& D)
{
    RationalFunc lhs = RationalFunc(D.lambda) * D.value(0);
    RationalFunc rhs = RationalFunc(D.q + 1) * D.value(1);
    return lhs == rhs;
}

bool recurrence_ok(const EisensteinData& D, long N)
{
    const RationalFunc lambda(D.lambda);
    RationalFunc prev = D.value(0), cur = D.value(1);
    for (long n = 1; n < N; ++n) {
        RationalFunc next = D.value(n + 1);
        if (lambda * cur != RationalFunc(D.q) * prev + next)
            return false;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return true;
}

bool functional_equation_check(const EisensteinData& D)
{
    return D.c2 * dual_substitute(D.c2, D.q) == RationalFunc(1);
}

PoleReport poles(const EisensteinData& D, long N)
{
    PoleReport r;
    r.denominator = D.c2.den();
    r.poles = rational_roots(r.denominator);
    for (long n = 0; n <= N; ++n)
        if (D.value(n).den() != r.denominator)
            r.shared = false;
    return r;
}

UniquenessReport uniqueness_system_check(long q, long vertices)
{
    check_q(q);
    if (vertices < 3)
        throw std::invalid_argument("uniqueness check needs at least 3 vertices");
    UniquenessReport rep;

    // a d/da acts by s on a^s and by 1-s on a^{1-s}; subtract (1-s).
    const LaurentPoly s = LaurentPoly::monomial(1), one(1);
    const LaurentPoly shift = one - s;
    const LaurentPoly c1(1);
    rep.a_s_coefficient = (s - shift) * c1;
    rep.a_1ms_coefficient = shift - shift;
    rep.symbolic_ok = rep.a_s_coefficient == s * mpq_class(2) - one && rep.a_1ms_coefficient.is_zero();

    // Both exponentials satisfy the ray recurrence away from sigma_0.
    const LaurentPoly lambda = eigenvalue(q);
    const auto [r1, r2] = characteristic_roots(q);
    rep.eigen_ok = true;
    for (const LaurentPoly& root : {r1, r2}) {
        RayFunction<LaurentPoly> f{LaurentPoly(1)};
        for (long n = 1; n < vertices; ++n)
            f.push_back(f.back() * root);
        auto Tf = ray_adjacency_apply(q, f);
        for (size_t n = 1; n < Tf.size(); ++n)
            if (Tf[n] != lambda * f[n])
                rep.eigen_ok = false;
    }

    // Unknowns f(0..N-1): c1 extracted from f(0), f(1); boundary rule;
    // recurrence at 1 <= n <= N-2.
    const long N = vertices;
    const LaurentPoly z = LaurentPoly::monomial(1), zi = LaurentPoly::monomial(-1);
    auto system = [&](const RationalFunc& c1_value) {
        ParamSystem S;
        S.matrix.assign(N, std::vector<RationalFunc>(N));
        S.rhs.assign(N, RationalFunc());
        // c1 (q z - 1/z) = q z f(0) - f(1)
        S.matrix[0][0] = RationalFunc(z * mpq_class(q));
        S.matrix[0][1] = RationalFunc(-1);
        S.rhs[0] = c1_value * RationalFunc(z * mpq_class(q) - zi);
        S.matrix[1][0] = RationalFunc(lambda);
        S.matrix[1][1] = RationalFunc(-(q + 1));
        for (long n = 1; n + 1 < N; ++n) {
            S.matrix[n + 1][n - 1] = RationalFunc(q);
            S.matrix[n + 1][n] = RationalFunc(-lambda);
            S.matrix[n + 1][n + 1] = RationalFunc(1);
        }
        return S;
    };

    ParamSolution sol = solve_param_system(system(RationalFunc(1)));
    EisensteinData D = eisenstein_ray(q);
    rep.discrete_ok = sol.rank == N;
    for (long n = 0; n < N && rep.discrete_ok; ++n)
        rep.discrete_ok = sol.x[n] == D.value(n);

    ParamSolution hom = solve_param_system(system(RationalFunc(0)));
    rep.homogeneous_ok = hom.rank == N;
    for (const auto& x : hom.x)
        if (!x.is_zero())
            rep.homogeneous_ok = false;
    return rep;
}

std::string normalization_name(Normalization n)
{
    return n == Normalization::C1Unit ? "c1_unit" : "oracle_scaled";
}

}  // namespace kmeis
