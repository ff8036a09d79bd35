#pragma once

#include "kmeis/roots.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kmeis {

// Iwasawa cell (i, n, j): the vertex lies in U (w_i w_{3-i})^n P_j.
struct IwasawaLabel {
    int i = 1;
    long n = 0;
    int j = 1;

    // Exponent of the character: 2n on P_i cosets, 2n-1 on P_{3-i} cosets.
    long height() const { return j == i ? 2 * n : 2 * n - 1; }

    friend bool operator==(const IwasawaLabel& a, const IwasawaLabel& b)
    {
        return a.i == b.i && a.n == b.n && a.j == b.j;
    }
    friend bool operator!=(const IwasawaLabel& a, const IwasawaLabel& b) { return !(a == b); }
    std::string str() const;
};

struct NeighborLabels {
    IwasawaLabel down, up;
};

// Labels of the distinguished neighbor and of the q others.
NeighborLabels neighbor_labels(const IwasawaLabel& L);

struct TreeVertex {
    int id = 0;
    int j = 1;
    WeylWord bruhat_word;
    IwasawaLabel iwasawa;
    int down = -1;          // -1 when it lies outside the ball
    std::vector<int> up;    // fewer than q entries only on the boundary sphere
};

// Ball of radius R around the base vertex P_1 in the (q+1)-regular tree.
//
// A vertex is addressed by gallery data (side a, s_1..s_L): P_a at L = 0,
// and each s in 0..q-1 steps to a new neighbor away from the base edge.
// s = 0 throughout is the standard apartment.  The vertex is
// chi(s_1) w_a chi(s_2) w_{3-a} ... P_j, with distance L from P_1 when a = 1
// and L + 1 when a = 2.
class Tree {
public:
    // `seed` permutes the order in which children receive ids.
    Tree(long q, int R, int i, std::optional<uint64_t> seed = std::nullopt);

    long q() const { return q_; }
    int radius() const { return R_; }
    int labeling() const { return i_; }
    size_t size() const { return side_.size(); }

    int root() const { return 0; }
    // P_a for a = 1, 2
    int base(int a) const { return a == 1 ? 0 : toward_[0]; }

    int side(int v) const { return side_[v]; }
    int level(int v) const { return level_[v]; }
    int dist(int v) const { return level_[v] + (side_[v] == 2 ? 1 : 0); }
    bool interior(int v) const { return dist(v) < R_; }
    int type(int v) const { return label_[v].j; }

    // Neighbor one step closer to the base edge (the other base vertex for
    // P_1 and P_2), and the child with index s, or -1 outside the ball.
    int toward(int v) const { return toward_[v]; }
    int child(int v, long s) const { return children_[static_cast<size_t>(v) * q_ + s]; }
    std::vector<uint8_t> coords(int v) const;
    bool on_apartment(int v) const;

    std::vector<int> neighbors(int v) const;
    int down(int v) const { return down_[v]; }
    // The q neighbors of height H + 1.  Index 0 is the apartment neighbor
    // when v is on the apartment.
    std::vector<int> up(int v) const;

    const IwasawaLabel& label(int v) const { return label_[v]; }
    long height(int v) const { return label_[v].height(); }
    WeylWord bruhat_word(int v) const;
    TreeVertex vertex(int v) const;

    // Apartment vertex of height k, or -1 outside the ball.
    int apartment_vertex(long k) const;
    int find(int side, const std::vector<uint8_t>& coords) const;

    void write_jsonl(std::ostream& os) const;

private:
    long q_;
    int R_, i_;
    std::vector<uint8_t> side_, last_;
    std::vector<int> level_, toward_, down_, children_;
    std::vector<IwasawaLabel> label_;
};

// Height read off the gallery data alone.
long bruhat_height(int i, int side, const std::vector<uint8_t>& coords);

// Labels from neighbor propagation against the closed form from gallery
// data, the sign rule for apartment words, and the neighbor transitions at
// every interior vertex.
struct LabelReport {
    bool ok = true;
    size_t checked = 0;
    std::vector<std::string> failures;
};
LabelReport verify_bruhat_iwasawa(const Tree& T);

struct Horosphere {
    long level = 0;
    int depth = 0;
    std::vector<int> members;
    std::vector<mpq_class> weights;
};

// Vertices of height k reached from the level-k apartment vertex by D steps
// down followed by D steps up; uniform weights.
Horosphere horosphere(const Tree& T, long k, int D);

}  // namespace kmeis
