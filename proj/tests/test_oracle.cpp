#include "kmeis/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace kmeis;

namespace {

FqLaurent t(long e, uint32_t c = 1) { return FqLaurent::monomial(e, c); }

Matrix2 diag(long a) { return {t(a), FqLaurent(), FqLaurent(), t(0)}; }

// Coprime pairs (c monic of degree k, d nonzero of degree < k or d = 0)
// counted by the classical formula: a pair of monic polynomials of degrees
// k, j >= 1 is coprime with probability 1 - 1/q.
uint64_t coprime_pairs(long q, long k, long j)
{
    auto pw = [q](long e) {
        uint64_t r = 1;
        for (long s = 0; s < e; ++s)
            r *= static_cast<uint64_t>(q);
        return r;
    };
    if (j == -1)
        return k == 0 ? 1 : 0;
    if (j == 0)
        return static_cast<uint64_t>(q - 1) * pw(k);
    return static_cast<uint64_t>(q - 1) * (pw(k + j) - pw(k + j - 1));
}

}  // namespace

TEST_CASE("finite field polynomials")
{
    Fq F(5);
    CHECK(F.mul(3, F.inv(3)) == 1);
    CHECK_THROWS(Fq(4));
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
    FqPoly a{1, 2, 1}, b{1, 1};  // (1 + t)^2, 1 + t
    FqPoly quo, rem;
    poly_divmod(F, a, b, quo, rem);
    CHECK(quo == FqPoly{1, 1});
    CHECK(rem.empty());
    CHECK(poly_gcd(F, a, b) == FqPoly{1, 1});
    FqPoly u, v;
    FqPoly c{2, 0, 1}, d{1, 3};
    CHECK(poly_xgcd(F, c, d, u, v) == FqPoly{1});
    CHECK(poly_add(F, poly_mul(F, u, c), poly_mul(F, v, d)) == FqPoly{1});
    CHECK(poly_from_index(3, 5) == FqPoly{2, 1});
}

TEST_CASE("vertex reduction examples")
{
    Fq F(3);
    Matrix2 id{t(0), FqLaurent(), FqLaurent(), t(0)};
    LatticeVertex base = vertex_of(F, id, 8);
    CHECK(base == sigma(0));
    CHECK(base.height() == 0);
    CHECK(base.type() == 1);
    LatticeVertex s1 = vertex_of(F, diag(1), 8);
    CHECK(s1 == sigma(1));
    CHECK(std::labs(s1.height()) == 1);
    // upper unipotent with a polynomial entry fixes the end
    for (long n = 0; n <= 3; ++n) {
        Matrix2 u{t(0), FqLaurent(FqPoly{1, 2, 0, 1}), FqLaurent(), t(0)};
        LatticeVertex w = vertex_of(F, mul(F, u, vertex_matrix(sigma(n))), 16);
        CHECK(w.height() == sigma(n).height());
    }
    // scalars do not move the class
    Matrix2 sc{t(1, 2), FqLaurent(), FqLaurent(), t(1, 2)};
    CHECK(vertex_of(F, mul(F, sc, vertex_matrix(sigma(2))), 8) == sigma(2));
    // too little precision is reported, not guessed
    Matrix2 far{t(0), t(10), FqLaurent(), t(0)};
    CHECK_THROWS_AS(vertex_of(F, mul(F, far, vertex_matrix(LatticeVertex{-1, t(0)})), 2), InsufficientPrecision);
}

TEST_CASE("neighbors are the index-q sublattices")
{
    for (long q : {2L, 3L}) {
        Fq F(q);
        std::vector<LatticeVertex> sample{sigma(0), sigma(2), LatticeVertex{-2, t(-1)},
                                          LatticeVertex{1, FqLaurent()}, LatticeVertex{-3, add(F, t(-2), t(-1))}};
        for (const auto& v : sample) {
            Matrix2 M = vertex_matrix(v);
            std::set<LatticeVertex> direct;
            // columns (pi e1, c e1 + e2) and (e1, pi e2), pi = 1/t
            direct.insert(vertex_of(F, mul(F, M, Matrix2{t(0), FqLaurent(), FqLaurent(), t(-1)}), 32));
            for (uint32_t c = 0; c < static_cast<uint32_t>(q); ++c)
                direct.insert(vertex_of(F, mul(F, M, Matrix2{t(-1), t(0, c), FqLaurent(), t(0)}), 32));
            auto nb = neighbors(F, v);
            CHECK(std::set<LatticeVertex>(nb.begin(), nb.end()) == direct);
            CHECK(direct.size() == static_cast<size_t>(q + 1));
            CHECK(down_neighbor(v).height() == v.height() - 1);
        }
    }
}

TEST_CASE("coset enumeration")
{
    for (long q : {2L, 3L, 5L}) {
        Fq F(q);
        auto c0 = enumerate_cosets(q, 0);
        CHECK(c0.size() == static_cast<size_t>(1 + q));
        auto cs = enumerate_cosets(q, 3);
        std::vector<long> by(4, 0);
        for (const auto& k : cs) {
            ++by[k.maxdeg()];
            if (!k.c.empty()) {
                CHECK(k.c.back() == 1);
                CHECK(poly_gcd(F, k.c, k.d) == FqPoly{1});
            }
            Matrix2 g = coset_representative(F, k);
            CHECK(det(F, g) == t(0));
            CHECK(g.a21 == FqLaurent(k.c));
            CHECK(g.a22 == FqLaurent(k.d));
        }
        // ratio of consecutive degree counts tends to q^2
        mpq_class r(by[3], by[2]);
        CHECK(abs(r - q * q) <= mpq_class(q * q, 2));
    }
    CHECK(enumerate_cosets(2, 6).size() > enumerate_cosets(2, 5).size());
}

TEST_CASE("coset height agrees with reducing the translated lattice")
{
    for (long q : {2L, 3L}) {
        Fq F(q);
        const auto cosets = enumerate_cosets(q, 3);
        std::vector<LatticeVertex> sample{sigma(0), sigma(1), sigma(3), up_neighbor(F, sigma(0), 1),
                                          LatticeVertex{-2, t(-1)}};
        for (const auto& v : sample)
            for (const auto& k : cosets) {
                LatticeVertex w = vertex_of(F, mul(F, coset_representative(F, k), vertex_matrix(v)), 64);
                CHECK(coset_height(F, k, v) == w.height());
            }
        // identity coset
        CHECK(coset_height(F, cosets.front(), sigma(0)) == 0);
    }
}

TEST_CASE("fast diagonal sums agree with enumeration")
{
    for (long q : {2L, 3L})
        for (long n = 0; n <= 3; ++n) {
            const mpq_class z0(1, q * q);
            BruteResult fast = brute_eisenstein(q, sigma(n), z0, 4);
            BruteResult slow = brute_eisenstein_enumerated(q, sigma(n), z0, 4);
            CHECK(fast.partial == slow.partial);
            CHECK(fast.terms == slow.terms);
        }
}

TEST_CASE("residue counts match the coprimality formula")
{
    // The fast path counts pairs through this table; read it back through
    // the number of terms at each degree.
    for (long q : {2L, 3L}) {
        const long D = 5;
        BruteResult r = brute_eisenstein(q, sigma(0), mpq_class(1, 2 * q), D);
        uint64_t expect = 1;  // c = 0, d = 1
        for (long k = 0; k <= D; ++k) {
            uint64_t total = 0;
            for (long j = -1; j < k; ++j)
                total += coprime_pairs(q, k, j);
            expect += total;
            uint64_t qe = 1;
            for (long e = 0; k + e <= D; ++e, qe *= static_cast<uint64_t>(q))
                expect += total * static_cast<uint64_t>(q - 1) * qe;
        }
        CHECK(static_cast<uint64_t>(r.terms) == expect);
        CHECK(static_cast<size_t>(r.terms) == enumerate_cosets(q, D).size());
    }
}

TEST_CASE("brute force sums")
{
    BruteResult r = brute_eisenstein(2, sigma(0), mpq_class(1, 4), 10);
    for (size_t d = 1; d < r.partial.size(); ++d)
        CHECK(r.partial[d] > r.partial[d - 1]);
    CHECK(r.tail_converges);
    CHECK(abs(r.value - mpq_class(7, 2)) < mpq_class(1, 1000));
    CHECK(r.value + r.tail_bound <= mpq_class(7, 2) + mpq_class(1, 1000000));
    auto st = stabilization_degree(r, mpq_class(1, 20000));
    REQUIRE(st);
    CHECK(*st <= 10);

    BruteResult div = brute_eisenstein(2, sigma(0), mpq_class(1, 2), 10);
    CHECK_FALSE(div.tail_converges);
    CHECK_FALSE(stabilization_degree(div, mpq_class(1, 20000)));
    CHECK_THROWS(brute_eisenstein(2, sigma(0), mpq_class(0), 3));
}

TEST_CASE("left invariance of the brute sum")
{
    // w sigma_1 is the vertex [-1; 0]; both sums approach the same value
    const mpq_class z0(1, 4);
    BruteResult a = brute_eisenstein(2, sigma(1), z0, 8);
    BruteResult b = brute_eisenstein_enumerated(2, LatticeVertex{-1, FqLaurent()}, z0, 8);
    CHECK(abs(a.value / b.value - 1) < mpq_class(1, 100));
}

TEST_CASE("orbit heights are bounded below")
{
    HeightBound hb = orbit_height_bound(2, sigma(0), 8);
    CHECK(hb.stabilized_at <= 5);
    CHECK(hb.min_height.size() == 9);
    for (size_t d = 1; d < hb.min_height.size(); ++d)
        CHECK(hb.min_height[d] <= hb.min_height[d - 1]);
    CHECK(hb.min_height.back() == 0);
}

TEST_CASE("quotient of a ball is the ray")
{
    for (long q : {2L, 3L}) {
        QuotientReport one = quotient_ray_check(q, 1, 2);
        CHECK(one.ok);
        CHECK(one.classes == 2);
        CHECK(one.up_mult == std::vector<long>{q + 1});
    }
    QuotientReport Q = quotient_ray_check(2, 4, 4);
    CHECK(Q.ok);
    CHECK(Q.classes == 5);
    CHECK(Q.down_mult == std::vector<long>{0, 2, 2, 2});
    CHECK(Q.up_mult == std::vector<long>{3, 1, 1, 1});
    // with too few cosets the ball does not collapse
    QuotientReport low = quotient_ray_check(2, 4, 0);
    CHECK_FALSE(low.ok);
}

TEST_CASE("tree embedding")
{
    Tree T(2, 5, 1);
    auto img = embed_tree(T);
    Fq F(2);
    std::set<LatticeVertex> distinct(img.begin(), img.end());
    CHECK(distinct.size() == T.size());
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        CHECK(img[v].height() == T.height(v));
        CHECK(img[v].type() == T.type(v));
        if (T.down(v) >= 0)
            CHECK(img[T.down(v)] == down_neighbor(img[v]));
    }
    CHECK_THROWS(embed_tree(Tree(2, 3, 2)));
}

TEST_CASE("oracle comparison")
{
    CompareReport R = oracle_compare(2, mpq_class(1, 4), 10, 4);
    CHECK(R.rows.size() == 4);
    CHECK(R.max_deviation < mpq_class(1, 1000));
    CHECK(abs(R.scale - 1) < mpq_class(1, 1000));
    std::ostringstream os;
    write_compare_csv(os, R);
    CHECK(os.str().rfind("vertex,brute,ray_model,ratio,tail_bound\n", 0) == 0);
}

TEST_CASE("decimal rendering")
{
    CHECK(to_decimal(mpq_class(7, 2)) == "3.5");
    CHECK(to_decimal(mpq_class(1, 3), 5) == "0.33333");
    CHECK(to_decimal(mpq_class(2, 3), 3) == "0.667");
    CHECK(to_decimal(mpq_class(-1024)) == "-1024");
    CHECK(to_decimal(mpq_class(0)) == "0");
    CHECK(to_decimal(mpq_class(999999, 1000000), 3) == "1");
}
