#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace kmeis {

// Symmetric rank-2 generalized Cartan matrix [[2, -m], [-m, 2]].
struct CartanMatrix {
    long m = 2;

    explicit CartanMatrix(long m_ = 2);
    long entry(int i, int j) const { return i == j ? 2 : -m; }
};

// a*alpha_1 + b*alpha_2
struct RootVector {
    mpz_class a, b;

    RootVector() = default;
    RootVector(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    static RootVector simple(int i) { return i == 1 ? RootVector(1, 0) : RootVector(0, 1); }

    mpz_class height() const { return a + b; }
    bool is_positive() const { return a >= 0 && b >= 0 && (a != 0 || b != 0); }
    // a^2 + b^2 - m a b
    mpz_class norm(const CartanMatrix& A) const { return a * a + b * b - A.m * a * b; }

    RootVector operator-() const { return {-a, -b}; }
    friend bool operator==(const RootVector& x, const RootVector& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const RootVector& x, const RootVector& y) { return !(x == y); }
    friend bool operator<(const RootVector& x, const RootVector& y)
    {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    }

    std::string str() const { return "(" + a.get_str() + "," + b.get_str() + ")"; }
};

// Word in the simple reflections.  act() composes right to left, so "12"
// acts as w1(w2(r)).
struct WeylWord {
    std::vector<int> letters;

    WeylWord() = default;
    WeylWord(std::vector<int> l);
    static WeylWord parse(const std::string& s);
    // The alternating word of length len starting with letter first.
    static WeylWord alternating(int first, size_t len);

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    bool is_reduced() const;
    // Cancel adjacent equal letters until none remain.
    WeylWord reduced() const;
    WeylWord inverse() const;
    size_t length() const { return reduced().size(); }

    friend bool operator==(const WeylWord& x, const WeylWord& y) { return x.letters == y.letters; }
    std::string str() const;
};

WeylWord operator*(const WeylWord& x, const WeylWord& y);

RootVector reflect(int i, const RootVector& r, const CartanMatrix& A);
RootVector act(const WeylWord& w, const RootVector& r, const CartanMatrix& A);

// All reduced words of length exactly len (two for len >= 1).
std::vector<WeylWord> reduced_words(size_t len);

// Positive roots made negative by w^{-1}, listed as
// alpha_{i1}, w_{i1} alpha_{i2}, w_{i1} w_{i2} alpha_{i3}, ...
std::vector<RootVector> inversion_set(const WeylWord& w, const CartanMatrix& A);
// Same set by the recursion S_w = {alpha_{i1}} u w_{i1} S_{w'}.
std::vector<RootVector> inversion_set_recursive(const WeylWord& w, const CartanMatrix& A);
// Same set by filtering candidates: beta > 0 with w^{-1} beta < 0.
std::vector<RootVector> inversion_set_by_definition(const WeylWord& w, const CartanMatrix& A, size_t depth);

// The real roots attached to the i-th simple root come in two chains:
//   positive: alpha_i, w_i alpha_{3-i}, w_i w_{3-i} alpha_i, ...
//   negative: -alpha_{3-i}, -w_{3-i} alpha_i, -w_{3-i} w_i alpha_{3-i}, ...
// Each chain is listed by increasing |height|.
enum class Chain { Negative, Positive };

RootVector delta_re_element(int i, Chain c, size_t k, const CartanMatrix& A);
std::vector<RootVector> delta_re_stream(int i, size_t count, const CartanMatrix& A, Chain c = Chain::Negative);

// Bi-infinite indexing of delta_re_i: k >= 0 is the k-th positive element,
// k < 0 is the (-k-1)-th negative element.  w_1 sends index k of stream 1
// to k-1 of stream 2 and w_2 sends it to k+1.
RootVector delta_re_at(int i, long k, const CartanMatrix& A);

// Index of r in delta_re_i, or nothing if r is not in that set.
bool delta_re_index(int i, const RootVector& r, const CartanMatrix& A, long* index = nullptr);

// Number of roots in a prefix of the positive chain of delta_re_i that the
// translation (w_i w_{3-i})^n moves the chain off of.
long haar_index_exponent(int i, long n, const CartanMatrix& A = CartanMatrix(2));

// S_w is contained in delta_re of its first letter.
bool check_inversion_containment(const WeylWord& w, const CartanMatrix& A);
bool check_inversion_containment(const WeylWord& w, int i, const CartanMatrix& A);

// Positive real roots whose chain index is below `depth`, split into S_w and
// the rest.
struct RootPartition {
    std::vector<RootVector> inversions, complement;
};
RootPartition root_partition(const WeylWord& w, size_t depth, const CartanMatrix& A);
std::vector<RootVector> positive_roots(size_t depth, const CartanMatrix& A);

}  // namespace kmeis
