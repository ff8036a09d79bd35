#include "kmeis/roots.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace kmeis {

CartanMatrix::CartanMatrix(long m_) : m(m_)
{
    if (m < 2)
        throw std::invalid_argument("Cartan matrix needs m >= 2");
}

namespace {

void check_letter(int i)
{
    if (i != 1 && i != 2)
        throw std::invalid_argument("simple reflection index must be 1 or 2");
}

}  // namespace

WeylWord::WeylWord(std::vector<int> l) : letters(std::move(l))
{
    for (int i : letters)
        check_letter(i);
}

WeylWord WeylWord::parse(const std::string& s)
{
    std::vector<int> l;
    for (char c : s) {
        if (c == '1' || c == '2')
            l.push_back(c - '0');
        else if (c != ' ')
            throw std::invalid_argument("bad Weyl word '" + s + "'");
    }
    return WeylWord(std::move(l));
}

WeylWord WeylWord::alternating(int first, size_t len)
{
    check_letter(first);
    WeylWord w;
    for (size_t k = 0; k < len; ++k)
        w.letters.push_back(k % 2 ? 3 - first : first);
    return w;
}

bool WeylWord::is_reduced() const
{
    return std::adjacent_find(letters.begin(), letters.end()) == letters.end();
}

WeylWord WeylWord::reduced() const
{
    WeylWord r;
    for (int i : letters) {
        if (!r.letters.empty() && r.letters.back() == i)
            r.letters.pop_back();
        else
            r.letters.push_back(i);
    }
    return r;
}

WeylWord WeylWord::inverse() const
{
    WeylWord r = *this;
    std::reverse(r.letters.begin(), r.letters.end());
    return r;
}

std::string WeylWord::str() const
{
    std::string s;
    for (int i : letters)
        s += static_cast<char>('0' + i);
    return s;
}

WeylWord operator*(const WeylWord& x, const WeylWord& y)
{
    WeylWord r = x;
    r.letters.insert(r.letters.end(), y.letters.begin(), y.letters.end());
    return r;
}

RootVector reflect(int i, const RootVector& r, const CartanMatrix& A)
{
    check_letter(i);
    if (i == 1)
        return {A.m * r.b - r.a, r.b};
    return {r.a, A.m * r.a - r.b};
}

RootVector act(const WeylWord& w, const RootVector& r, const CartanMatrix& A)
{
    RootVector x = r;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        x = reflect(*it, x, A);
    return x;
}

std::vector<WeylWord> reduced_words(size_t len)
{
    if (len == 0)
        return {WeylWord()};
    return {WeylWord::alternating(1, len), WeylWord::alternating(2, len)};
}

namespace {

void require_reduced(const WeylWord& w)
{
    if (!w.is_reduced())
        throw std::invalid_argument("word '" + w.str() + "' is not reduced");
}

}  // namespace

std::vector<RootVector> inversion_set(const WeylWord& w, const CartanMatrix& A)
{
    require_reduced(w);
    std::vector<RootVector> S;
    WeylWord prefix;
    for (int i : w.letters) {
        S.push_back(act(prefix, RootVector::simple(i), A));
        prefix.letters.push_back(i);
    }
    return S;
}

std::vector<RootVector> inversion_set_recursive(const WeylWord& w, const CartanMatrix& A)
{
    require_reduced(w);
    if (w.empty())
        return {};
    int first = w.letters.front();
    WeylWord rest(std::vector<int>(w.letters.begin() + 1, w.letters.end()));
    std::vector<RootVector> S{RootVector::simple(first)};
    for (const auto& r : inversion_set_recursive(rest, A))
        S.push_back(reflect(first, r, A));
    return S;
}

std::vector<RootVector> inversion_set_by_definition(const WeylWord& w, const CartanMatrix& A, size_t depth)
{
    WeylWord winv = w.inverse();
    std::vector<RootVector> S;
    for (const auto& beta : positive_roots(depth, A))
        if (!act(winv, beta, A).is_positive())
            S.push_back(beta);
    return S;
}

RootVector delta_re_element(int i, Chain c, size_t k, const CartanMatrix& A)
{
    check_letter(i);
    if (c == Chain::Positive) {
        int last = k % 2 ? 3 - i : i;
        return act(WeylWord::alternating(i, k), RootVector::simple(last), A);
    }
    int j = 3 - i;
    int last = k % 2 ? i : j;
    return -act(WeylWord::alternating(j, k), RootVector::simple(last), A);
}

std::vector<RootVector> delta_re_stream(int i, size_t count, const CartanMatrix& A, Chain c)
{
    check_letter(i);
    std::vector<RootVector> out;
    out.reserve(count);
    if (count == 0)
        return out;
    int j = 3 - i;
    if (c == Chain::Positive) {
        RootVector prev = RootVector::simple(i), cur = reflect(i, RootVector::simple(j), A);
        out.push_back(prev);
        if (count > 1)
            out.push_back(cur);
        // p_k = w_i w_{3-i} p_{k-2}
        for (size_t k = 2; k < count; ++k)
            out.push_back(reflect(i, reflect(j, out[k - 2], A), A));
        return out;
    }
    for (size_t k = 0; k < count; ++k) {
        if (k < 2)
            out.push_back(delta_re_element(i, c, k, A));
        else
            out.push_back(reflect(j, reflect(i, out[k - 2], A), A));
    }
    return out;
}

RootVector delta_re_at(int i, long k, const CartanMatrix& A)
{
    if (k >= 0)
        return delta_re_element(i, Chain::Positive, static_cast<size_t>(k), A);
    return delta_re_element(i, Chain::Negative, static_cast<size_t>(-k - 1), A);
}

bool delta_re_index(int i, const RootVector& r, const CartanMatrix& A, long* index)
{
    check_letter(i);
    // |height| increases strictly along both chains, so a bounded scan decides
    // membership.
    mpz_class h = abs(r.height());
    Chain c = r.is_positive() ? Chain::Positive : Chain::Negative;
    for (size_t k = 0;; ++k) {
        RootVector x = delta_re_element(i, c, k, A);
        if (x == r) {
            if (index)
                *index = c == Chain::Positive ? static_cast<long>(k) : -static_cast<long>(k) - 1;
            return true;
        }
        if (abs(x.height()) > h)
            return false;
    }
}

long haar_index_exponent(int i, long n, const CartanMatrix& A)
{
    check_letter(i);
    if (n < 0)
        throw std::invalid_argument("haar_index_exponent needs n >= 0");
    const size_t prefix = static_cast<size_t>(2 * n + 4);
    auto chain = delta_re_stream(i, prefix, A, Chain::Positive);
    WeylWord t;
    for (long k = 0; k < n; ++k)
        t = t * WeylWord({i, 3 - i});
    std::set<RootVector> image;
    for (const auto& r : chain) {
        RootVector x = act(t, r, A);
        if (!delta_re_index(i, x, A))
            throw std::logic_error("translation does not preserve the positive chain");
        image.insert(x);
    }
    long displaced = 0;
    for (const auto& r : chain)
        if (!image.count(r))
            ++displaced;
    return displaced;
}

bool check_inversion_containment(const WeylWord& w, int i, const CartanMatrix& A)
{
    for (const auto& r : inversion_set(w, A))
        if (!delta_re_index(i, r, A))
            return false;
    return true;
}

bool check_inversion_containment(const WeylWord& w, const CartanMatrix& A)
{
    if (w.empty())
        return true;
    return check_inversion_containment(w, w.letters.front(), A);
}

std::vector<RootVector> positive_roots(size_t depth, const CartanMatrix& A)
{
    std::vector<RootVector> out = delta_re_stream(1, depth, A, Chain::Positive);
    auto two = delta_re_stream(2, depth, A, Chain::Positive);
    out.insert(out.end(), two.begin(), two.end());
    return out;
}

RootPartition root_partition(const WeylWord& w, size_t depth, const CartanMatrix& A)
{
    require_reduced(w);
    if (depth < w.size())
        throw std::invalid_argument("root_partition: depth is smaller than the word length");
    RootPartition P;
    P.inversions = inversion_set(w, A);
    std::set<RootVector> S(P.inversions.begin(), P.inversions.end());
    for (const auto& r : positive_roots(depth, A))
        if (!S.count(r))
            P.complement.push_back(r);
    return P;
}

}  // namespace kmeis
