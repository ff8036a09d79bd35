#include "kmeis/oracle.hpp"

#include <algorithm>
#include <climits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

namespace kmeis {

bool is_prime(long q)
{
    if (q < 2)
        return false;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

Fq::Fq(long q) : q_(q)
{
    if (!is_prime(q))
        throw std::invalid_argument("oracle needs q prime, got " + std::to_string(q));
    if (q > 65521)
        throw std::invalid_argument("oracle supports q < 2^16");
}

uint32_t Fq::inv(uint32_t a) const
{
    if (a % q_ == 0)
        throw std::domain_error("inverse of zero in F_q");
    uint64_t r = 1, b = a, e = static_cast<uint64_t>(q_ - 2);
    while (e) {
        if (e & 1)
            r = r * b % q_;
        b = b * b % q_;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

// ---- polynomials ----

namespace {

void trim(FqPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

void make_monic(const Fq& F, FqPoly& p)
{
    if (p.empty() || p.back() == 1)
        return;
    uint32_t il = F.inv(p.back());
    for (auto& c : p)
        c = F.mul(c, il);
}

}  // namespace

FqPoly poly_add(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

void poly_divmod(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem)
{
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    rem = a;
    quo.clear();
    if (a.size() < b.size())
        return;
    quo.assign(a.size() - b.size() + 1, 0);
    uint32_t il = F.inv(b.back());
    for (long k = static_cast<long>(rem.size()) - static_cast<long>(b.size()); k >= 0; --k) {
        uint32_t top = rem[k + b.size() - 1];
        if (!top)
            continue;
        uint32_t f = F.mul(top, il);
        quo[k] = f;
        for (size_t j = 0; j < b.size(); ++j)
            rem[k + j] = F.sub(rem[k + j], F.mul(f, b[j]));
    }
    trim(rem);
    trim(quo);
}

FqPoly poly_gcd(const Fq& F, FqPoly a, FqPoly b)
{
    FqPoly q, r;
    while (!b.empty()) {
        poly_divmod(F, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(F, a);
    return a;
}

FqPoly poly_xgcd(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& u, FqPoly& v)
{
    FqPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    FqPoly q, r;
    while (!r1.empty()) {
        poly_divmod(F, r0, r1, q, r);
        FqPoly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
        FqPoly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty())
        throw std::domain_error("xgcd of zero polynomials");
    uint32_t il = F.inv(r0.back());
    FqPoly scale{il};
    u = poly_mul(F, s0, scale);
    v = poly_mul(F, t0, scale);
    return poly_mul(F, r0, scale);
}

FqPoly poly_from_index(long q, uint64_t index)
{
    FqPoly p;
    while (index) {
        p.push_back(static_cast<uint32_t>(index % q));
        index /= q;
    }
    trim(p);
    return p;
}

// ---- Laurent polynomials ----

FqLaurent::FqLaurent(const FqPoly& p) : low(0), c(p) { normalize(); }

FqLaurent FqLaurent::monomial(long e, uint32_t coeff)
{
    FqLaurent r;
    if (coeff) {
        r.low = e;
        r.c = {coeff};
    }
    return r;
}

void FqLaurent::normalize()
{
    trim(c);
    size_t k = 0;
    while (k < c.size() && c[k] == 0)
        ++k;
    if (k) {
        c.erase(c.begin(), c.begin() + k);
        low += static_cast<long>(k);
    }
    if (c.empty())
        low = 0;
}

long FqLaurent::deg() const { return c.empty() ? LONG_MIN : low + static_cast<long>(c.size()) - 1; }

uint32_t FqLaurent::coeff(long e) const
{
    if (c.empty() || e < low || e > deg())
        return 0;
    return c[e - low];
}

std::string FqLaurent::str() const
{
    if (c.empty())
        return "0";
    std::string s;
    for (long k = static_cast<long>(c.size()) - 1; k >= 0; --k) {
        if (!c[k])
            continue;
        long e = low + k;
        if (!s.empty())
            s += '+';
        if (c[k] != 1 || e == 0)
            s += std::to_string(c[k]);
        if (e != 0) {
            if (c[k] != 1)
                s += '*';
            s += 't';
            if (e != 1)
                s += '^' + std::to_string(e);
        }
    }
    return s;
}

namespace {

FqLaurent combine(const Fq& F, const FqLaurent& a, const FqLaurent& b, bool subtract)
{
    if (b.is_zero())
        return a;
    if (a.is_zero() && !subtract)
        return b;
    long lo = a.is_zero() ? b.low : std::min(a.low, b.low);
    long hi = a.is_zero() ? b.deg() : std::max(a.deg(), b.deg());
    FqLaurent r;
    r.low = lo;
    r.c.assign(hi - lo + 1, 0);
    for (size_t k = 0; k < a.c.size(); ++k)
        r.c[a.low - lo + k] = a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) {
        uint32_t& x = r.c[b.low - lo + k];
        x = subtract ? F.sub(x, b.c[k]) : F.add(x, b.c[k]);
    }
    r.normalize();
    return r;
}

}  // namespace

FqLaurent add(const Fq& F, const FqLaurent& a, const FqLaurent& b) { return combine(F, a, b, false); }
FqLaurent sub(const Fq& F, const FqLaurent& a, const FqLaurent& b) { return combine(F, a, b, true); }

FqLaurent mul(const Fq& F, const FqLaurent& a, const FqLaurent& b)
{
    FqLaurent r;
    if (a.is_zero() || b.is_zero())
        return r;
    r.low = a.low + b.low;
    r.c = poly_mul(F, a.c, b.c);
    r.normalize();
    return r;
}

Matrix2 mul(const Fq& F, const Matrix2& x, const Matrix2& y)
{
    return {add(F, mul(F, x.a11, y.a11), mul(F, x.a12, y.a21)), add(F, mul(F, x.a11, y.a12), mul(F, x.a12, y.a22)),
            add(F, mul(F, x.a21, y.a11), mul(F, x.a22, y.a21)), add(F, mul(F, x.a21, y.a12), mul(F, x.a22, y.a22))};
}

FqLaurent det(const Fq& F, const Matrix2& g) { return sub(F, mul(F, g.a11, g.a22), mul(F, g.a12, g.a21)); }

// ---- vertices ----

long LatticeVertex::iwasawa_n() const
{
    long H = height();
    // H = 2n on type 1, 2n - 1 on type 2
    return H % 2 == 0 ? H / 2 : (H + 1) / 2;
}

std::string LatticeVertex::str() const { return "[" + std::to_string(a) + ";" + x.str() + "]"; }

LatticeVertex sigma(long n)
{
    if (n < 0)
        throw std::invalid_argument("ray index must be >= 0");
    return {n, FqLaurent()};
}

Matrix2 vertex_matrix(const LatticeVertex& v)
{
    return {FqLaurent::monomial(v.a, 1), v.x, FqLaurent(), FqLaurent::monomial(0, 1)};
}

namespace {

// Keep the terms of degree > a.
FqLaurent above(const FqLaurent& x, long a)
{
    if (x.is_zero() || x.deg() <= a)
        return FqLaurent();
    FqLaurent r = x;
    if (r.low <= a) {
        r.c.erase(r.c.begin(), r.c.begin() + (a + 1 - r.low));
        r.low = a + 1;
        r.normalize();
    }
    return r;
}

}  // namespace

LatticeVertex vertex_of(const Fq& F, const Matrix2& g, long P)
{
    FqLaurent d = det(F, g);
    if (d.is_zero())
        throw std::domain_error("vertex_of: singular matrix");
    const FqLaurent* g12 = &g.a12;
    const FqLaurent* g22 = &g.a22;
    if (g.a22.is_zero() || (!g.a21.is_zero() && g.a21.deg() > g.a22.deg())) {
        g12 = &g.a11;
        g22 = &g.a21;
    }
    LatticeVertex v;
    v.a = d.deg() - 2 * g22->deg();
    if (g12->is_zero())
        return v;
    const long top = g12->deg() - g22->deg();
    if (top <= v.a)
        return v;
    if (top - v.a > P)
        throw InsufficientPrecision("vertex_of needs " + std::to_string(top - v.a) + " expansion terms, precision is " +
                                    std::to_string(P));
    // Expand g12 / g22 in descending powers of t down to degree a + 1.
    const long dg = g22->deg();
    const uint32_t il = F.inv(g22->coeff(dg));
    FqLaurent r = *g12;
    FqLaurent x;
    x.low = v.a + 1;
    x.c.assign(top - v.a, 0);
    for (long e = top; e > v.a; --e) {
        uint32_t f = F.mul(r.coeff(dg + e), il);
        if (!f)
            continue;
        x.c[e - v.a - 1] = f;
        r = sub(F, r, mul(F, FqLaurent::monomial(e, f), *g22));
    }
    x.normalize();
    v.x = std::move(x);
    return v;
}

LatticeVertex down_neighbor(const LatticeVertex& v) { return {v.a + 1, above(v.x, v.a + 1)}; }

LatticeVertex up_neighbor(const Fq& F, const LatticeVertex& v, uint32_t c)
{
    return {v.a - 1, add(F, v.x, FqLaurent::monomial(v.a, c))};
}

std::vector<LatticeVertex> neighbors(const Fq& F, const LatticeVertex& v)
{
    std::vector<LatticeVertex> r{down_neighbor(v)};
    for (long c = 0; c < F.q(); ++c)
        r.push_back(up_neighbor(F, v, static_cast<uint32_t>(c)));
    return r;
}

// ---- cosets ----

namespace {

uint64_t ipow(long q, long e)
{
    uint64_t r = 1;
    for (long k = 0; k < e; ++k) {
        if (r > (UINT64_MAX / static_cast<uint64_t>(q)))
            throw std::overflow_error("enumeration too large");
        r *= static_cast<uint64_t>(q);
    }
    return r;
}

FqPoly monic_from_index(long q, long k, uint64_t m)
{
    FqPoly c = poly_from_index(q, m);
    c.resize(k, 0);
    c.push_back(1);
    return c;
}

std::mutex cache_mutex;

}  // namespace

std::vector<Coset> enumerate_cosets(long q, long D)
{
    if (D < 0)
        throw std::invalid_argument("enumerate_cosets needs D >= 0");
    Fq F(q);
    std::vector<Coset> out{{FqPoly{}, FqPoly{1}}};
    const uint64_t nd = ipow(q, D + 1);
    for (long k = 0; k <= D; ++k) {
        const uint64_t nc = ipow(q, k);
        for (uint64_t m = 0; m < nc; ++m) {
            FqPoly c = monic_from_index(q, k, m);
            for (uint64_t j = 0; j < nd; ++j) {
                FqPoly d = poly_from_index(q, j);
                FqPoly g = poly_gcd(F, c, d);
                if (g.size() == 1)
                    out.push_back({c, std::move(d)});
            }
        }
    }
    return out;
}

namespace {

const std::vector<Coset>& cosets_cached(long q, long D)
{
    static std::map<std::pair<long, long>, std::vector<Coset>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({q, D});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(q, D), enumerate_cosets(q, D)).first;
    return it->second;
}

}  // namespace

Matrix2 coset_representative(const Fq& F, const Coset& k)
{
    if (k.c.empty()) {
        if (k.d != FqPoly{1})
            throw std::invalid_argument("coset with c = 0 must have d = 1");
        return {FqLaurent::monomial(0, 1), FqLaurent(), FqLaurent(), FqLaurent::monomial(0, 1)};
    }
    FqPoly u, v;
    FqPoly g = poly_xgcd(F, k.c, k.d, u, v);
    if (g != FqPoly{1})
        throw std::invalid_argument("coset bottom row is not coprime");
    // v d + u c = 1, so [[v, -u], [c, d]] has determinant 1
    FqPoly mu = poly_sub(F, FqPoly{}, u);
    return {FqLaurent(v), FqLaurent(mu), FqLaurent(k.c), FqLaurent(k.d)};
}

long coset_height(const Fq& F, const Coset& k, const LatticeVertex& v)
{
    if (k.c.empty())
        return -v.a;
    FqLaurent g22 = add(F, mul(F, FqLaurent(k.c), v.x), FqLaurent(k.d));
    long m = degree(k.c) + v.a;
    if (!g22.is_zero())
        m = std::max(m, g22.deg());
    return -v.a + 2 * m;
}

// ---- brute-force Eisenstein sums ----

namespace {

mpq_class zpow(const mpq_class& z0, long e)
{
    mpq_class b = e >= 0 ? z0 : mpq_class(1 / z0);
    mpz_class num, den;
    unsigned long k = static_cast<unsigned long>(std::labs(e));
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

// pairs[k][j + 1] = #{(c monic of degree k, r of degree j < k) : gcd(c, r) = 1},
// with j = -1 standing for r = 0.
struct ResidueTable {
    std::vector<std::vector<uint64_t>> pairs;
};

int deg2(uint32_t x) { return x ? 31 - __builtin_clz(x) : -1; }

uint32_t gcd2(uint32_t a, uint32_t b)
{
    while (b) {
        int db = deg2(b);
        for (int da = deg2(a); da >= db; da = deg2(a))
            a ^= b << (da - db);
        std::swap(a, b);
    }
    return a;
}

ResidueTable residue_table(long q, long D)
{
    static std::map<std::pair<long, long>, ResidueTable> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        // a table for a larger D contains the smaller one
        for (auto& [key, t] : cache)
            if (key.first == q && key.second >= D) {
                ResidueTable r = t;
                r.pairs.resize(D + 1);
                return r;
            }
    }
    Fq F(q);
    ResidueTable T;
    T.pairs.assign(D + 1, {});
    for (long k = 0; k <= D; ++k) {
        auto& row = T.pairs[k];
        row.assign(k + 1, 0);
        if (k == 0) {
            row[0] = 1;  // c = 1, r = 0
            continue;
        }
        if (q == 2) {
            if (k > 30)
                throw std::overflow_error("residue table degree too large");
            const uint32_t lead = 1u << k;
            for (uint32_t m = 0; m < lead; ++m) {
                const uint32_t c = lead | m;
                for (uint32_t r = 1; r < lead; ++r)
                    if (gcd2(c, r) == 1)
                        ++row[deg2(r) + 1];
            }
            continue;
        }
        const uint64_t n = ipow(q, k);
        for (uint64_t m = 0; m < n; ++m) {
            FqPoly c = monic_from_index(q, k, m);
            for (uint64_t j = 1; j < n; ++j) {
                FqPoly r = poly_from_index(q, j);
                if (poly_gcd(F, c, r).size() == 1)
                    ++row[degree(r) + 1];
            }
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[{q, D}] = T;
    return T;
}

void finish(BruteResult& r, const std::vector<mpq_class>& inc)
{
    mpq_class s = 0;
    r.partial.clear();
    for (const auto& x : inc) {
        s += x;
        r.partial.push_back(s);
    }
    r.value = s;
    const size_t D = inc.size() - 1;
    r.tail_ratio = 0;
    r.tail_bound = 0;
    r.tail_converges = false;
    if (D >= 1 && inc[D - 1] != 0) {
        r.tail_ratio = inc[D] / inc[D - 1];
        if (r.tail_ratio < 1) {
            r.tail_converges = true;
            r.tail_bound = inc[D] * r.tail_ratio / (1 - r.tail_ratio);
        }
    }
}

void check_z0(const mpq_class& z0)
{
    if (z0 <= 0)
        throw std::invalid_argument("z0 must be positive");
}

}  // namespace

BruteResult brute_eisenstein_enumerated(long q, const LatticeVertex& v, const mpq_class& z0, long D)
{
    check_z0(z0);
    Fq F(q);
    std::vector<std::map<long, uint64_t>> counts(D + 1);
    const auto& cosets = cosets_cached(q, D);
    for (const auto& k : cosets)
        ++counts[k.maxdeg()][coset_height(F, k, v)];
    BruteResult r;
    std::vector<mpq_class> inc(D + 1);
    for (long d = 0; d <= D; ++d)
        for (const auto& [H, n] : counts[d]) {
            inc[d] += mpq_class(mpz_class(n)) * zpow(z0, H);
            r.terms += static_cast<long>(n);
        }
    finish(r, inc);
    return r;
}

BruteResult brute_eisenstein(long q, const LatticeVertex& v, const mpq_class& z0, long D)
{
    if (D < 0)
        throw std::invalid_argument("brute_eisenstein needs D >= 0");
    if (!v.x.is_zero() || v.a < 0)
        return brute_eisenstein_enumerated(q, v, z0, D);
    check_z0(z0);
    Fq F(q);
    const long n = v.a;
    ResidueTable T = residue_table(q, D);
    std::vector<mpq_class> inc(D + 1);
    BruteResult r;
    auto add = [&](long maxdeg, long H, const mpz_class& count) {
        inc[maxdeg] += mpq_class(count) * zpow(z0, H);
        r.terms += count.get_si();
    };
    add(0, -n, 1);  // c = 0, d = 1
    for (long k = 0; k <= D; ++k) {
        mpz_class total = 0;
        for (long j = -1; j < k; ++j) {
            const mpz_class cnt(static_cast<unsigned long>(T.pairs[k][j + 1]));
            total += cnt;
            if (cnt != 0)
                add(k, -n + 2 * std::max(k + n, j), cnt);  // d = r
        }
        // d = A c + r with deg A = e has degree k + e
        for (long e = 0; k + e <= D; ++e) {
            mpz_class cnt = total * (q - 1);
            mpz_class qe;
            mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
            cnt *= qe;
            const long b = k + e;
            add(b, -n + 2 * std::max(k + n, b), cnt);
        }
    }
    finish(r, inc);
    return r;
}

std::optional<long> stabilization_degree(const BruteResult& r, const mpq_class& tol)
{
    const long D = static_cast<long>(r.partial.size()) - 1;
    std::optional<long> best;
    for (long d = D; d >= 1; --d) {
        mpq_class inc = r.partial[d] - r.partial[d - 1];
        if (abs(inc) <= tol * abs(r.partial[d]))
            best = d;
        else
            break;
    }
    return best;
}

HeightBound orbit_height_bound(long q, const LatticeVertex& v, long D)
{
    Fq F(q);
    HeightBound hb;
    std::vector<long> at(D + 1, LONG_MAX);
    for (const auto& k : cosets_cached(q, D)) {
        long d = k.maxdeg();
        at[d] = std::min(at[d], coset_height(F, k, v));
    }
    long m = LONG_MAX;
    for (long d = 0; d <= D; ++d) {
        m = std::min(m, at[d]);
        hb.min_height.push_back(m);
        LatticeVertex probe{-m, FqLaurent()};
        hb.min_n.push_back(probe.iwasawa_n());
    }
    hb.stabilized_at = D;
    while (hb.stabilized_at > 0 && hb.min_height[hb.stabilized_at - 1] == hb.min_height[D])
        --hb.stabilized_at;
    return hb;
}

// ---- quotient of a ball by Gamma ----

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[x] != x)
            x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

QuotientReport quotient_ray_check(long q, int R, long D)
{
    if (R < 1)
        throw std::invalid_argument("quotient_ray_check needs R >= 1");
    Fq F(q);
    const long P = 2 * (D + R + 4);
    QuotientReport rep;

    std::map<LatticeVertex, int> index;
    std::vector<LatticeVertex> ball{sigma(0)};
    std::vector<int> dist{0};
    index[sigma(0)] = 0;
    for (size_t k = 0; k < ball.size(); ++k) {
        if (dist[k] == R)
            continue;
        for (const auto& u : neighbors(F, ball[k]))
            if (!index.count(u)) {
                index[u] = static_cast<int>(ball.size());
                ball.push_back(u);
                dist.push_back(dist[k] + 1);
            }
    }

    const auto& cosets = cosets_cached(q, D);
    std::vector<long> ray(ball.size());
    for (size_t k = 0; k < ball.size(); ++k) {
        long m = LONG_MAX;
        for (const auto& c : cosets)
            m = std::min(m, coset_height(F, c, ball[k]));
        ray[k] = -m;
    }

    UnionFind uf(ball.size());
    std::vector<FqLaurent> shifts;
    for (uint64_t j = 0; j < ipow(q, D + 1); ++j)
        shifts.emplace_back(poly_from_index(q, j));
    for (size_t k = 0; k < ball.size(); ++k) {
        for (const auto& c : cosets) {
            LatticeVertex w = vertex_of(F, mul(F, coset_representative(F, c), vertex_matrix(ball[k])), P);
            for (const auto& f : shifts) {
                LatticeVertex u{w.a, above(add(F, w.x, f), w.a)};
                auto it = index.find(u);
                if (it != index.end())
                    uf.unite(static_cast<int>(k), it->second);
            }
        }
        // diag(u, 1/u) sends x to u^2 x
        for (uint32_t u = 1; u < static_cast<uint32_t>(q); ++u) {
            LatticeVertex w{ball[k].a, mul(F, ball[k].x, FqLaurent::monomial(0, F.mul(u, u)))};
            auto it = index.find(w);
            if (it != index.end())
                uf.unite(static_cast<int>(k), it->second);
        }
    }

    std::map<int, long> class_ray;
    bool merged_distinct = false;
    for (size_t k = 0; k < ball.size(); ++k) {
        int r = uf.find(static_cast<int>(k));
        auto [it, fresh] = class_ray.emplace(r, ray[k]);
        if (!fresh && it->second != ray[k])
            merged_distinct = true;
    }
    rep.classes = static_cast<long>(class_ray.size());
    if (merged_distinct) {
        rep.message = "vertices with different ray index were identified";
        return rep;
    }
    if (rep.classes != R + 1) {
        rep.insufficient_degree = rep.classes > R + 1;
        rep.message = "ball collapses to " + std::to_string(rep.classes) + " classes, expected " + std::to_string(R + 1);
        return rep;
    }
    for (long n = 0; n <= R; ++n) {
        int k = index.at(sigma(n));
        if (ray[k] != n) {
            rep.message = "sigma_" + std::to_string(n) + " has ray index " + std::to_string(ray[k]);
            return rep;
        }
    }
    bool pattern = true;
    for (long n = 0; n < R; ++n) {
        long dn = 0, up = 0;
        for (const auto& u : neighbors(F, sigma(n))) {
            long r = ray[index.at(u)];
            if (r == n - 1)
                ++dn;
            else if (r == n + 1)
                ++up;
        }
        rep.down_mult.push_back(dn);
        rep.up_mult.push_back(up);
        bool want = n == 0 ? (dn == 0 && up == q + 1) : (dn == q && up == 1);
        pattern = pattern && want;
    }
    rep.ok = pattern;
    if (!pattern)
        rep.message = "unexpected multiplicity pattern";
    return rep;
}

std::vector<LatticeVertex> embed_tree(const Tree& T)
{
    if (T.labeling() != 1)
        throw std::invalid_argument("embed_tree needs the i = 1 labeling");
    Fq F(T.q());
    std::vector<LatticeVertex> img(T.size());
    std::vector<char> done(T.size(), 0);
    done[T.root()] = 1;
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        int d = T.down(v);
        if (d >= 0 && !done[d]) {
            img[d] = down_neighbor(img[v]);
            done[d] = 1;
        }
        auto up = T.up(v);
        for (size_t c = 0; c < up.size(); ++c)
            if (!done[up[c]]) {
                img[up[c]] = up_neighbor(F, img[v], static_cast<uint32_t>(c));
                done[up[c]] = 1;
            }
    }
    return img;
}

CompareReport oracle_compare(long q, const mpq_class& z0, long D, long vertices)
{
    if (vertices < 1)
        throw std::invalid_argument("oracle_compare needs at least one vertex");
    CompareReport rep;
    EisensteinData E = eisenstein_ray(q);
    auto model = eisenstein_values(E, std::max<long>(vertices, 1), z0);
    mpq_class sum = 0;
    for (long n = 0; n < vertices; ++n) {
        BruteResult b = brute_eisenstein(q, sigma(n), z0, D);
        CompareRow row{n, b.value, model[n], b.value / model[n], b.tail_bound};
        sum += row.ratio;
        rep.rows.push_back(row);
    }
    rep.scale = sum / vertices;
    rep.max_deviation = 0;
    for (const auto& row : rep.rows)
        rep.max_deviation = std::max(rep.max_deviation, mpq_class(abs(row.ratio / rep.scale - 1)));
    return rep;
}

void write_compare_csv(std::ostream& os, const CompareReport& r, int digits)
{
    os << "vertex,brute,ray_model,ratio,tail_bound\n";
    for (const auto& row : r.rows)
        os << "sigma_" << row.n << ',' << to_decimal(row.brute, digits) << ',' << to_decimal(row.ray_model, digits)
           << ',' << to_decimal(row.ratio, digits) << ',' << to_decimal(row.tail_bound, digits) << '\n';
}

std::string to_decimal(const mpq_class& x, int digits)
{
    if (digits < 1)
        throw std::invalid_argument("to_decimal needs at least one digit");
    if (x == 0)
        return "0";
    mpq_class a = abs(x);
    // e = floor(log10 a)
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
    auto pow10 = [](long k) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(k)));
        return k >= 0 ? mpq_class(p) : mpq_class(1 / mpq_class(p));
    };
    while (a >= pow10(e + 1))
        ++e;
    while (a < pow10(e))
        --e;
    auto scaled = [&](long ex) {
        mpq_class s = a * pow10(digits - 1 - ex) + mpq_class(1, 2);
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        return f;
    };
    mpz_class m = scaled(e);
    if (m >= pow10(digits).get_num()) {
        ++e;
        m = scaled(e);
    }
    std::string ds = m.get_str();
    std::string out = x < 0 ? "-" : "";
    if (e >= -5 && e < 15) {
        std::string intpart, frac;
        if (e >= 0) {
            if (static_cast<long>(ds.size()) <= e + 1) {
                intpart = ds + std::string(e + 1 - ds.size(), '0');
            } else {
                intpart = ds.substr(0, e + 1);
                frac = ds.substr(e + 1);
            }
        } else {
            intpart = "0";
            frac = std::string(-e - 1, '0') + ds;
        }
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        out += intpart;
        if (!frac.empty())
            out += "." + frac;
        return out;
    }
    std::string frac = ds.substr(1);
    while (!frac.empty() && frac.back() == '0')
        frac.pop_back();
    out += ds.substr(0, 1);
    if (!frac.empty())
        out += "." + frac;
    out += "e" + std::to_string(e);
    return out;
}

}  // namespace kmeis
