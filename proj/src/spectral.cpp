#include "kmeis/spectral.hpp"

namespace kmeis {

LaurentPoly eigenvalue(long q) { return LaurentPoly::monomial(1, q) + LaurentPoly::monomial(-1); }

VertexFunction<LaurentPoly> psi(const Tree& T)
{
    VertexFunction<LaurentPoly> f;
    f.reserve(T.size());
    for (int v = 0; v < static_cast<int>(T.size()); ++v)
        f.push_back(LaurentPoly::monomial(T.height(v)));
    return f;
}

EigenReport eigen_check(const Tree& T)
{
    EigenReport rep;
    const auto f = psi(T);
    const auto Tf = adjacency_apply(T, f);
    const LaurentPoly lambda = eigenvalue(T.q());
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        if (!T.interior(v))
            continue;
        ++rep.checked;
        if (Tf[v] != lambda * f[v]) {
            rep.ok = false;
            rep.exceptional.push_back(v);
        }
    }
    return rep;
}

LaurentPoly shell_eigenvalue(long q, long n)
{
    if (n < 0)
        throw std::invalid_argument("shell_eigenvalue needs n >= 0");
    const LaurentPoly S1 = eigenvalue(q);
    if (n == 0)
        return LaurentPoly(1);
    if (n == 1)
        return S1;
    LaurentPoly prev = S1, cur = S1 * S1 - LaurentPoly(q + 1);
    for (long k = 2; k < n; ++k) {
        LaurentPoly next = S1 * cur - prev * mpq_class(q);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

LaurentPoly radial_eigenvalue(const RadialKernel& K, long q)
{
    LaurentPoly r;
    for (const auto& [n, c] : K)
        r += shell_eigenvalue(q, n) * c;
    return r;
}

WeightedNorm weighted_l2_norm(long q, const RayFunction<mpq_class>& f, const mpq_class& ell)
{
    mpq_class e = 1 + 2 * ell;
    if (e.get_den() != 1)
        throw std::invalid_argument("weighted_l2_norm: 1 + 2*ell must be an integer");
    if (f.empty())
        throw std::invalid_argument("weighted_l2_norm: empty function");
    long k = e.get_num().get_si();
    mpz_class qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(std::labs(k)));
    // per-step weight factor q^{-k}
    mpq_class step = k >= 0 ? mpq_class(1, qk) : mpq_class(qk);
    step.canonicalize();

    WeightedNorm r;
    mpq_class w = 1, last = 0, before = 0;
    for (size_t n = 0; n < f.size(); ++n) {
        mpq_class term = f[n] * f[n] * w;
        r.partial += term;
        before = last;
        last = term;
        w *= step;
    }
    if (f.size() >= 2 && before != 0) {
        r.tail_ratio = last / before;
        r.divergent = r.tail_ratio >= 1;
    } else {
        r.tail_ratio = 0;
    }
    return r;
}

RayFunction<mpq_class> eval_ray(const RayFunction<RationalFunc>& f, const mpq_class& z0)
{
    RayFunction<mpq_class> out;
    out.reserve(f.size());
    for (const auto& x : f)
        out.push_back(x.eval(z0));
    return out;
}

}  // namespace kmeis
