#pragma once

#include "kmeis/exactalg.hpp"
#include "kmeis/tree.hpp"

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <vector>

namespace kmeis {

// Functions on the vertices of a truncated tree, indexed by vertex id, and
// on the quotient ray sigma_0, sigma_1, ...
template <class V>
using VertexFunction = std::vector<V>;
template <class V>
using RayFunction = std::vector<V>;

// F(n) for distance n; finitely supported.
using RadialKernel = std::map<long, mpq_class>;

// lambda = q z + 1/z
LaurentPoly eigenvalue(long q);

// Psi(v) = z^{H(v)}
VertexFunction<LaurentPoly> psi(const Tree& T);

// Neighbor sums at interior vertices; boundary entries are left as V{}.
template <class V>
VertexFunction<V> adjacency_apply(const Tree& T, const VertexFunction<V>& f)
{
    if (f.size() != T.size())
        throw std::invalid_argument("adjacency_apply: function does not match the tree");
    VertexFunction<V> out(T.size());
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        if (!T.interior(v))
            continue;
        V acc = f[T.toward(v)];
        for (long s = 0; s < T.q(); ++s)
            acc += f[T.child(v, s)];
        out[v] = std::move(acc);
    }
    return out;
}

struct EigenReport {
    bool ok = true;
    size_t checked = 0;
    std::vector<int> exceptional;
};

// T Psi = lambda Psi at every interior vertex.
EigenReport eigen_check(const Tree& T);

namespace detail {

template <class V, class F>
void for_each_at_distance(const Tree& T, int v, long n, F&& visit)
{
    // depth-first walk that never steps back along the edge it came from
    struct Frame {
        int v, from;
        long d;
    };
    std::vector<Frame> stack{{v, -1, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.d == n) {
            visit(f.v);
            continue;
        }
        for (int u : T.neighbors(f.v))
            if (u != f.from)
                stack.push_back({u, f.v, f.d + 1});
    }
}

}  // namespace detail

inline long kernel_support(const RadialKernel& K)
{
    long s = 0;
    for (const auto& [n, c] : K)
        if (c != 0)
            s = std::max(s, n);
    return s;
}

// (K f)(x) = sum_n F(n) sum_{d(x,y)=n} f(y), evaluated where the whole
// support fits in the ball.  Other entries are V{} and `valid` marks the
// evaluated vertices when given.
template <class V>
VertexFunction<V> radial_apply(const RadialKernel& K, const Tree& T, const VertexFunction<V>& f,
                               std::vector<char>* valid = nullptr)
{
    if (f.size() != T.size())
        throw std::invalid_argument("radial_apply: function does not match the tree");
    for (const auto& [n, c] : K)
        if (n < 0)
            throw std::invalid_argument("radial_apply: negative distance in kernel");
    const long supp = kernel_support(K);
    if (supp > T.radius())
        throw std::out_of_range("radial_apply: kernel support exceeds the truncation");
    VertexFunction<V> out(T.size());
    if (valid)
        valid->assign(T.size(), 0);
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        if (T.dist(v) + supp > T.radius())
            continue;
        V acc{};
        for (const auto& [n, c] : K) {
            if (c == 0)
                continue;
            V shell{};
            detail::for_each_at_distance<V>(T, v, n, [&](int u) { shell += f[u]; });
            shell *= c;
            acc += shell;
        }
        out[v] = std::move(acc);
        if (valid)
            (*valid)[v] = 1;
    }
    return out;
}

// Eigenvalue of the distance-n shell operator on Psi:
// S_0 = 1, S_1 = lambda, S_2 = S_1^2 - (q+1), S_{n+1} = S_1 S_n - q S_{n-1}.
LaurentPoly shell_eigenvalue(long q, long n);
LaurentPoly radial_eigenvalue(const RadialKernel& K, long q);

template <class V>
V constant_term(const Tree& T, const VertexFunction<V>& f, long k, int D)
{
    Horosphere h = horosphere(T, k, D);
    V acc{};
    for (size_t t = 0; t < h.members.size(); ++t) {
        V x = f[h.members[t]];
        x *= h.weights[t];
        acc += x;
    }
    return acc;
}

// (Tf)(n) = q f(n-1) + f(n+1) for n >= 1 and (Tf)(0) = (q+1) f(1).  The
// result is one entry shorter than f.
template <class V>
RayFunction<V> ray_adjacency_apply(long q, const RayFunction<V>& f)
{
    if (f.size() < 2)
        throw std::invalid_argument("ray_adjacency_apply needs at least two values");
    RayFunction<V> out(f.size() - 1);
    out[0] = f[1];
    out[0] *= mpq_class(q + 1);
    for (size_t n = 1; n + 1 < f.size(); ++n) {
        V a = f[n - 1];
        a *= mpq_class(q);
        a += f[n + 1];
        out[n] = std::move(a);
    }
    return out;
}

template <class V>
RayFunction<V> truncate_ray(const RayFunction<V>& f, const RayFunction<V>& profile)
{
    if (profile.size() < f.size())
        throw std::invalid_argument("truncate_ray: profile shorter than function");
    RayFunction<V> out(f.size());
    for (size_t n = 0; n < f.size(); ++n) {
        out[n] = f[n];
        out[n] -= profile[n];
    }
    return out;
}

struct WeightedNorm {
    mpq_class partial;     // sum over the truncation
    mpq_class tail_ratio;  // ratio of the last two terms
    bool divergent = false;
};

// sum_n |f(n)|^2 q^{-(1+2l) n}.  1 + 2l must be an integer so that the
// weights stay rational.
WeightedNorm weighted_l2_norm(long q, const RayFunction<mpq_class>& f, const mpq_class& ell);

RayFunction<mpq_class> eval_ray(const RayFunction<RationalFunc>& f, const mpq_class& z0);

}  // namespace kmeis
