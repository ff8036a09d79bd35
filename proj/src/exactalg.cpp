#include "kmeis/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace kmeis {

namespace {

// Dense integer polynomial, constant term first.  Empty means zero.
using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

long deg(const ZPoly& p) { return static_cast<long>(p.size()) - 1; }

mpz_class content(const ZPoly& p)
{
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void make_primitive(ZPoly& p)
{
    if (p.empty())
        return;
    mpz_class g = content(p);
    if (p.back() < 0)
        g = -g;
    if (g != 1)
        for (auto& c : p)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZPoly mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b)
{
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

// a / b where the quotient is known to have integer coefficients.
ZPoly divexact(ZPoly a, const ZPoly& b)
{
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    if (a.empty())
        return {};
    if (a.size() < b.size())
        throw std::logic_error("inexact polynomial division");
    ZPoly q(a.size() - b.size() + 1);
    const mpz_class& lb = b.back();
    for (long k = deg(a) - deg(b); k >= 0; --k) {
        mpz_class& top = a[k + b.size() - 1];
        if (top == 0)
            continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
            throw std::logic_error("inexact polynomial division");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (size_t j = 0; j < b.size(); ++j)
            mpz_submul(a[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(a);
    if (!a.empty())
        throw std::logic_error("inexact polynomial division");
    trim(q);
    return q;
}

// lc(b)^(deg a - deg b + 1) * a mod b
ZPoly pseudo_rem(ZPoly a, const ZPoly& b)
{
    const mpz_class& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        mpz_class la = a.back();
        size_t off = a.size() - b.size();
        for (auto& c : a)
            c *= lb;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_submul(a[off + j].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
        trim(a);
    }
    return a;
}

// Primitive remainder sequence; result is primitive with positive leading
// coefficient.
ZPoly gcd(ZPoly a, ZPoly b)
{
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size())
        std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1)
            return {1};
        ZPoly r = pseudo_rem(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ZPoly lcm(const ZPoly& a, const ZPoly& b)
{
    ZPoly g = gcd(a, b);
    ZPoly r = mul(divexact(a, g), b);
    make_primitive(r);
    return r;
}

// p = c * z^shift * prim with prim integral, content 1, prim[0] > 0.
struct Split {
    mpq_class c;
    long shift = 0;
    ZPoly prim;
};

Split split(const LaurentPoly& p)
{
    Split s;
    const auto& t = p.terms();
    s.shift = t.front().first;
    mpz_class L = 1;
    for (const auto& [e, c] : t)
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
    s.prim.assign(t.back().first - s.shift + 1, 0);
    for (const auto& [e, c] : t)
        s.prim[e - s.shift] = c.get_num() * (L / c.get_den());
    mpz_class g = content(s.prim);
    if (s.prim[0] < 0)
        g = -g;
    for (auto& c : s.prim)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    s.c = mpq_class(g, L);
    s.c.canonicalize();
    return s;
}

LaurentPoly to_laurent(const ZPoly& p, long shift = 0, const mpq_class& c = 1)
{
    std::vector<LaurentPoly::Term> t;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0)
            t.emplace_back(static_cast<long>(i) + shift, c * mpq_class(p[i]));
    return LaurentPoly::from_terms(std::move(t));
}

ZPoly to_zpoly_den(const LaurentPoly& den)
{
    // den of a canonical RationalFunc: integral ordinary polynomial
    ZPoly r(den.high() + 1);
    for (const auto& [e, c] : den.terms())
        r[e] = c.get_num();
    return r;
}

std::string format_rational(const mpq_class& c)
{
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

}  // namespace

// ---- LaurentPoly ----

LaurentPoly::LaurentPoly(const mpq_class& c)
{
    if (c != 0) {
        t_.emplace_back(0, c);
        t_.back().second.canonicalize();
    }
}

LaurentPoly LaurentPoly::monomial(long e, const mpq_class& c)
{
    LaurentPoly p;
    if (c != 0) {
        p.t_.emplace_back(e, c);
        p.t_.back().second.canonicalize();
    }
    return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    for (auto& [e, c] : terms) {
        c.canonicalize();
        if (!p.t_.empty() && p.t_.back().first == e)
            p.t_.back().second += c;
        else
            p.t_.emplace_back(e, std::move(c));
        if (p.t_.back().second == 0)
            p.t_.pop_back();
    }
    return p;
}

long LaurentPoly::low() const
{
    if (t_.empty())
        throw std::domain_error("low() of zero polynomial");
    return t_.front().first;
}

long LaurentPoly::high() const
{
    if (t_.empty())
        throw std::domain_error("high() of zero polynomial");
    return t_.back().first;
}

mpq_class LaurentPoly::coeff(long e) const
{
    auto it = std::lower_bound(t_.begin(), t_.end(), e, [](const Term& t, long x) { return t.first < x; });
    return (it != t_.end() && it->first == e) ? it->second : mpq_class(0);
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_)
        c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    if (o.t_.empty())
        return *this;
    std::vector<Term> r;
    r.reserve(t_.size() + o.t_.size());
    auto a = t_.begin();
    auto b = o.t_.begin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->first < b->first)) {
            r.push_back(std::move(*a++));
        } else if (a == t_.end() || b->first < a->first) {
            r.push_back(*b++);
        } else {
            mpq_class s = a->second + b->second;
            if (s != 0)
                r.emplace_back(a->first, std::move(s));
            ++a, ++b;
        }
    }
    t_ = std::move(r);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o)
{
    if (t_.empty() || o.t_.empty()) {
        t_.clear();
        return *this;
    }
    if (o.t_.size() == 1) {
        for (auto& [e, c] : t_) {
            e += o.t_[0].first;
            c *= o.t_[0].second;
        }
        return *this;
    }
    long lo = t_.front().first + o.t_.front().first;
    std::vector<mpq_class> acc(t_.back().first + o.t_.back().first - lo + 1);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_)
            acc[ea + eb - lo] += ca * cb;
    t_.clear();
    for (size_t k = 0; k < acc.size(); ++k)
        if (acc[k] != 0)
            t_.emplace_back(lo + static_cast<long>(k), std::move(acc[k]));
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const mpq_class& c)
{
    if (c == 0)
        t_.clear();
    for (auto& [e, x] : t_)
        x *= c;
    return *this;
}

LaurentPoly LaurentPoly::shift(long k) const
{
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_)
        e += k;
    return r;
}

mpq_class LaurentPoly::eval(const mpq_class& z0) const
{
    if (t_.empty())
        return 0;
    if (z0 == 0) {
        if (t_.front().first < 0)
            throw PoleError("negative power of z evaluated at 0");
        return coeff(0);
    }
    // Horner in z0 over the shifted polynomial, then restore the shift.
    mpq_class acc = 0;
    long e = t_.back().first;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        for (; e > it->first; --e)
            acc *= z0;
        acc += it->second;
    }
    long lo = t_.front().first;
    mpq_class p = 1;
    mpq_class base = lo < 0 ? mpq_class(1 / z0) : z0;
    for (long k = 0; k < std::labs(lo); ++k)
        p *= base;
    return acc * p;
}

LaurentPoly LaurentPoly::dual(long q) const
{
    std::vector<Term> r;
    r.reserve(t_.size());
    for (const auto& [e, c] : t_) {
        mpz_class qe;
        mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(std::labs(e)));
        r.emplace_back(-e, e >= 0 ? mpq_class(c / qe) : mpq_class(c * qe));
    }
    return from_terms(std::move(r));
}

std::string LaurentPoly::str() const
{
    if (t_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (c < 0)
            s += '-';
        else if (!first)
            s += '+';
        first = false;
        mpq_class a = abs(c);
        if (e == 0) {
            s += format_rational(a);
            continue;
        }
        if (a != 1) {
            s += format_rational(a);
            if (a.get_den() != 1)
                s += '*';
        }
        s += 'z';
        if (e != 1)
            s += '^' + std::to_string(e);
    }
    return s;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eat(char c)
    {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool digit()
    {
        ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    mpz_class integer()
    {
        ws();
        size_t j = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (j == i)
            fail("expected integer");
        return mpz_class(s.substr(j, i - j));
    }
    [[noreturn]] void fail(const std::string& what)
    {
        throw std::invalid_argument("parse error at " + std::to_string(i) + " in '" + s + "': " + what);
    }

    LaurentPoly poly()
    {
        std::vector<LaurentPoly::Term> terms;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        for (;;) {
            mpq_class c = 1;
            bool have = false;
            if (digit()) {
                mpz_class n = integer();
                mpz_class d = 1;
                if (eat('/')) {
                    d = integer();
                    if (d == 0)
                        fail("zero denominator");
                }
                c = mpq_class(n, d);
                c.canonicalize();
                have = true;
                eat('*');
            }
            long e = 0;
            if (eat('z')) {
                e = 1;
                if (eat('^')) {
                    bool en = eat('-');
                    if (!en)
                        eat('+');
                    mpz_class v = integer();
                    if (!v.fits_slong_p())
                        fail("exponent too large");
                    e = en ? -v.get_si() : v.get_si();
                }
                have = true;
            }
            if (!have)
                fail("expected term");
            terms.emplace_back(e, neg ? mpq_class(-c) : c);
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                break;
        }
        return LaurentPoly::from_terms(std::move(terms));
    }

    void end()
    {
        ws();
        if (i != s.size())
            fail("trailing input");
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& s)
{
    Parser p{s};
    LaurentPoly r = p.poly();
    p.end();
    return r;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly r = a;
    return r *= b;
}
LaurentPoly operator*(LaurentPoly a, const mpq_class& c) { return a *= c; }
LaurentPoly operator*(const mpq_class& c, LaurentPoly a) { return a *= c; }

LaurentPoly primitive_part(const LaurentPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("primitive part of zero");
    Split s = split(p);
    return to_laurent(s.prim, s.shift);
}

namespace {

std::vector<mpz_class> divisors(mpz_class n)
{
    n = abs(n);
    if (n > mpz_class("1000000000000000000"))
        throw std::runtime_error("rational_roots: coefficient too large to factor");
    std::vector<std::pair<mpz_class, int>> f;
    for (mpz_class p = 2; p * p <= n; ++p) {
        int k = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++k;
        }
        if (k)
            f.emplace_back(p, k);
    }
    if (n > 1)
        f.emplace_back(n, 1);
    std::vector<mpz_class> d{1};
    for (const auto& [p, k] : f) {
        size_t m = d.size();
        mpz_class pk = 1;
        for (int j = 1; j <= k; ++j) {
            pk *= p;
            for (size_t t = 0; t < m; ++t)
                d.push_back(d[t] * pk);
        }
    }
    return d;
}

}  // namespace

std::vector<mpq_class> rational_roots(const LaurentPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("roots of zero polynomial");
    Split s = split(p);
    std::vector<mpq_class> roots;
    if (s.shift > 0)
        roots.push_back(0);
    LaurentPoly prim = to_laurent(s.prim);
    for (const auto& r : divisors(s.prim.front()))
        for (const auto& d : divisors(s.prim.back()))
            for (int sg : {1, -1}) {
                mpq_class x(sg * r, d);
                x.canonicalize();
                if (prim.eval(x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end())
                    roots.push_back(x);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---- RationalFunc ----

RationalFunc::RationalFunc(const LaurentPoly& num, const LaurentPoly& den)
{
    if (den.is_zero())
        throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    if (den.is_monomial()) {
        const auto& [e, c] = den.terms()[0];
        num_ = num.shift(-e) * mpq_class(1 / c);
        den_ = LaurentPoly(1);
        return;
    }
    Split n = split(num), d = split(den);
    ZPoly g = gcd(n.prim, d.prim);
    if (g.size() > 1) {
        n.prim = divexact(n.prim, g);
        d.prim = divexact(d.prim, g);
    }
    mpq_class c = n.c / d.c;
    if (d.prim[0] < 0) {
        for (auto& x : d.prim)
            x = -x;
        c = -c;
    }
    num_ = to_laurent(n.prim, n.shift - d.shift, c);
    den_ = to_laurent(d.prim);
}

RationalFunc RationalFunc::operator-() const { return RationalFunc(Raw{}, -num_, den_); }

RationalFunc& RationalFunc::operator+=(const RationalFunc& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    if (is_laurent() && o.is_laurent()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_)
        return *this = RationalFunc(num_ + o.num_, den_);
    ZPoly da = to_zpoly_den(den_), db = to_zpoly_den(o.den_);
    ZPoly g = gcd(da, db);
    LaurentPoly ca = to_laurent(divexact(db, g)), cb = to_laurent(divexact(da, g));
    return *this = RationalFunc(num_ * ca + o.num_ * cb, den_ * ca);
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& o) { return *this += -o; }

RationalFunc& RationalFunc::operator*=(const RationalFunc& o)
{
    if (is_zero() || o.is_zero())
        return *this = RationalFunc();
    if (is_laurent() && o.is_laurent()) {
        num_ *= o.num_;
        return *this;
    }
    return *this = RationalFunc(num_ * o.num_, den_ * o.den_);
}

RationalFunc RationalFunc::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero rational function");
    return RationalFunc(den_, num_);
}

RationalFunc& RationalFunc::operator/=(const RationalFunc& o) { return *this *= o.inverse(); }

mpq_class RationalFunc::eval(const mpq_class& z0) const
{
    mpq_class d = den_.eval(z0);
    if (d == 0)
        throw PoleError("pole at z = " + z0.get_str());
    return num_.eval(z0) / d;
}

RationalFunc RationalFunc::dual(long q) const { return RationalFunc(num_.dual(q), den_.dual(q)); }

std::string RationalFunc::str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

RationalFunc RationalFunc::parse(const std::string& s)
{
    Parser p{s};
    if (p.eat('(')) {
        LaurentPoly n = p.poly();
        if (!p.eat(')'))
            p.fail("expected ')'");
        if (!p.eat('/')) {
            p.end();
            return RationalFunc(n);
        }
        if (!p.eat('('))
            p.fail("expected '('");
        LaurentPoly d = p.poly();
        if (!p.eat(')'))
            p.fail("expected ')'");
        p.end();
        if (d.is_zero())
            throw std::domain_error("rational function with zero denominator");
        return RationalFunc(n, d);
    }
    LaurentPoly n = p.poly();
    p.end();
    return RationalFunc(n);
}

RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
RationalFunc operator*(RationalFunc a, const RationalFunc& b) { return a *= b; }
RationalFunc operator/(RationalFunc a, const RationalFunc& b) { return a /= b; }

RationalFunc dual_substitute(const RationalFunc& x, long q)
{
    if (q < 2)
        throw std::invalid_argument("dual_substitute: q must be >= 2");
    return x.dual(q);
}

// ---- linear solver ----

namespace {

struct ScaledRow {
    std::vector<ZPoly> entries;
    RationalFunc scale;  // entries = scale * original row (up to the z shift)
};

ScaledRow scale_row(const std::vector<RationalFunc>& row)
{
    ZPoly L{1};
    for (const auto& e : row)
        if (!e.is_laurent())
            L = lcm(L, to_zpoly_den(e.den()));
    LaurentPoly Lp = to_laurent(L);
    std::vector<LaurentPoly> lifted;
    lifted.reserve(row.size());
    bool any = false;
    long lo = 0;
    mpz_class D = 1;
    for (const auto& e : row) {
        LaurentPoly p = e.is_laurent() ? e.num() * Lp : e.num() * to_laurent(divexact(L, to_zpoly_den(e.den())));
        if (!p.is_zero()) {
            lo = any ? std::min(lo, p.low()) : p.low();
            any = true;
            for (const auto& [x, c] : p.terms())
                mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
        }
        lifted.push_back(std::move(p));
    }
    ScaledRow r;
    r.scale = RationalFunc(Lp.shift(-lo) * mpq_class(D));
    for (const auto& p : lifted) {
        ZPoly z;
        if (!p.is_zero()) {
            z.assign(p.high() - lo + 1, 0);
            for (const auto& [e, c] : p.terms())
                z[e - lo] = c.get_num() * (D / c.get_den());
        }
        r.entries.push_back(std::move(z));
    }
    return r;
}

struct Elimination {
    std::vector<std::vector<ZPoly>> A;
    std::vector<int> perm;  // perm[k] = original index of row k
    std::vector<int> pivot_cols;
    std::vector<RationalFunc> scales;  // by original index
    int swaps = 0;
};

// Fraction-free row echelon form on the scaled matrix; `ncols` leading
// columns are eligible as pivots, the rest ride along.
Elimination eliminate(const RFMatrix& M, size_t ncols)
{
    Elimination E;
    for (size_t i = 0; i < M.size(); ++i) {
        ScaledRow r = scale_row(M[i]);
        E.A.push_back(std::move(r.entries));
        E.scales.push_back(std::move(r.scale));
        E.perm.push_back(static_cast<int>(i));
    }
    const size_t rows = M.size();
    const size_t width = rows ? E.A[0].size() : 0;
    ZPoly prev{1};
    size_t k = 0;
    for (size_t c = 0; c < ncols && k < rows; ++c) {
        size_t p = k;
        while (p < rows && E.A[p][c].empty())
            ++p;
        if (p == rows)
            continue;
        if (p != k) {
            std::swap(E.A[p], E.A[k]);
            std::swap(E.perm[p], E.perm[k]);
            ++E.swaps;
        }
        const ZPoly& piv = E.A[k][c];
        for (size_t i = k + 1; i < rows; ++i) {
            auto& Ri = E.A[i];
            const ZPoly f = Ri[c];
            for (size_t j = c + 1; j < width; ++j) {
                if (f.empty() && Ri[j].empty())
                    continue;
                ZPoly v = mul(piv, Ri[j]);
                if (!f.empty())
                    v = sub(v, mul(f, E.A[k][j]));
                Ri[j] = divexact(std::move(v), prev);
            }
            Ri[c].clear();
        }
        prev = piv;
        E.pivot_cols.push_back(static_cast<int>(c));
        ++k;
    }
    return E;
}

}  // namespace

ParamSolution solve_param_system(const ParamSystem& S)
{
    const size_t rows = S.matrix.size();
    if (S.rhs.size() != rows)
        throw std::invalid_argument("solve_param_system: rhs length does not match row count");
    const size_t cols = rows ? S.matrix[0].size() : 0;
    RFMatrix aug;
    aug.reserve(rows);
    for (size_t i = 0; i < rows; ++i) {
        if (S.matrix[i].size() != cols)
            throw std::invalid_argument("solve_param_system: ragged matrix");
        aug.push_back(S.matrix[i]);
        aug.back().push_back(S.rhs[i]);
    }

    Elimination E = eliminate(aug, cols);
    const size_t r = E.pivot_cols.size();
    for (size_t i = r; i < rows; ++i)
        if (!E.A[i][cols].empty())
            throw NoSolution("system is inconsistent over the rational function field");

    ParamSolution sol;
    sol.rank = static_cast<int>(r);
    sol.pivot_cols = E.pivot_cols;
    sol.pivot_rows.assign(E.perm.begin(), E.perm.begin() + r);
    sol.x.assign(cols, RationalFunc());
    if (r == 0) {
        sol.locus = LaurentPoly(1);
        return sol;
    }

    // y_k = d * x_k are the Cramer numerators of the scaled pivot minor and
    // therefore polynomials; back substitution divides exactly.
    const ZPoly d = E.A[r - 1][E.pivot_cols[r - 1]];
    std::vector<ZPoly> y(r);
    for (size_t k = r; k-- > 0;) {
        ZPoly acc = mul(d, E.A[k][cols]);
        for (size_t l = k + 1; l < r; ++l)
            if (!E.A[k][E.pivot_cols[l]].empty())
                acc = sub(acc, mul(E.A[k][E.pivot_cols[l]], y[l]));
        y[k] = divexact(std::move(acc), E.A[k][E.pivot_cols[k]]);
    }
    LaurentPoly dl = to_laurent(d);
    for (size_t k = 0; k < r; ++k)
        sol.x[E.pivot_cols[k]] = RationalFunc(to_laurent(y[k]), dl);

    // Exceptional locus: zeros of the pivot minor's determinant together with
    // the poles of the entries that enter the formula.
    RationalFunc det(dl);
    for (size_t k = 0; k < r; ++k)
        det /= E.scales[E.perm[k]];
    LaurentPoly locus = det.num();
    if (locus.low() < 0)
        locus = locus.shift(-locus.low());
    ZPoly L{1};
    for (size_t k = 0; k < r; ++k) {
        const auto& row = aug[E.perm[k]];
        for (size_t l = 0; l < r; ++l)
            if (!row[E.pivot_cols[l]].is_laurent())
                L = lcm(L, to_zpoly_den(row[E.pivot_cols[l]].den()));
        if (!row[cols].is_laurent())
            L = lcm(L, to_zpoly_den(row[cols].den()));
    }
    sol.locus = primitive_part(locus * to_laurent(L));
    return sol;
}

RationalFunc determinant(const RFMatrix& M)
{
    const size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n)
            throw std::invalid_argument("determinant: matrix is not square");
    if (n == 0)
        return RationalFunc(1);
    Elimination E = eliminate(M, n);
    if (E.pivot_cols.size() < n)
        return RationalFunc();
    RationalFunc det(to_laurent(E.A[n - 1][n - 1]));
    for (const auto& s : E.scales)
        det /= s;
    return E.swaps % 2 ? -det : det;
}

}  // namespace kmeis
