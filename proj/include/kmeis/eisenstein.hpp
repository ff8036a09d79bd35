#pragma once

#include "kmeis/exactalg.hpp"
#include "kmeis/spectral.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kmeis {

enum class Normalization { C1Unit, OracleScaled };

// E(n) = c1 z^{-n} + c2 (q z)^n on the ray, with eigenvalue lambda.
struct EisensteinData {
    long q = 2;
    LaurentPoly lambda;
    RationalFunc c1, c2;
    Normalization normalization = Normalization::C1Unit;
    // zero set outside of which the solve is valid
    LaurentPoly locus;

    RationalFunc value(long n) const;
};

// (q z, 1/z), the roots of x^2 - lambda x + q.
std::pair<LaurentPoly, LaurentPoly> characteristic_roots(long q);

// The linear system for (c1, c2): c1 = 1 and the boundary rule at sigma_0.
ParamSystem boundary_system(long q);
EisensteinData eisenstein_ray(long q);

// Rescale both coefficients, e.g. by a scale measured by the oracle.
EisensteinData scaled(const EisensteinData& D, const RationalFunc& s);

RayFunction<RationalFunc> eisenstein_values(const EisensteinData& D, long N);
RayFunction<mpq_class> eisenstein_values(const EisensteinData& D, long N, const mpq_class& z0);

// Recurrence at 1 <= n < N and the boundary rule, as exact identities.
bool satisfies_ray_equations(long q, const LaurentPoly& lambda, const RayFunction<RationalFunc>& f);
bool satisfies_ray_equations(long q, const mpq_class& lambda, const RayFunction<mpq_class>& f);
bool boundary_ok(const EisensteinData& D);
bool recurrence_ok(const EisensteinData& D, long N);

// c2(z) c2(1/(q z)) = 1
bool functional_equation_check(const EisensteinData& D);

struct PoleReport {
    LaurentPoly denominator;
    std::vector<mpq_class> poles;  // rational z
    bool shared = true;            // every E(n) checked has this denominator
};
PoleReport poles(const EisensteinData& D, long N = 8);

struct UniquenessReport {
    bool symbolic_ok = false;   // the a^s / a^{1-s} computation
    bool eigen_ok = false;      // both ray exponentials are eigenfunctions
    bool discrete_ok = false;   // the ray system pins down E
    bool homogeneous_ok = false;  // with c1 = 0 only the zero function
    LaurentPoly a_s_coefficient;  // in the variable s
    LaurentPoly a_1ms_coefficient;
    bool ok() const { return symbolic_ok && eigen_ok && discrete_ok && homogeneous_ok; }
};
UniquenessReport uniqueness_system_check(long q, long vertices = 30);

std::string normalization_name(Normalization n);

}  // namespace kmeis
