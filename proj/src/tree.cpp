#include "kmeis/tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kmeis {

std::string IwasawaLabel::str() const
{
    return "(" + std::to_string(i) + "," + std::to_string(n) + "," + std::to_string(j) + ")";
}

NeighborLabels neighbor_labels(const IwasawaLabel& L)
{
    if (L.j == 3 - L.i)
        return {{L.i, L.n - 1, L.i}, {L.i, L.n, L.i}};
    return {{L.i, L.n, 3 - L.i}, {L.i, L.n + 1, 3 - L.i}};
}

Tree::Tree(long q, int R, int i, std::optional<uint64_t> seed) : q_(q), R_(R), i_(i)
{
    if (q < 2)
        throw std::invalid_argument("tree needs q >= 2");
    if (q > 255)
        throw std::invalid_argument("tree supports q <= 255");
    if (R < 1)
        throw std::invalid_argument("tree needs radius >= 1");
    if (i != 1 && i != 2)
        throw std::invalid_argument("labeling index must be 1 or 2");

    auto add = [&](int side, int level, int last, int toward) {
        side_.push_back(static_cast<uint8_t>(side));
        level_.push_back(level);
        last_.push_back(static_cast<uint8_t>(last));
        toward_.push_back(toward);
        children_.insert(children_.end(), q_, -1);
        return static_cast<int>(side_.size()) - 1;
    };
    add(1, 0, 0, 1);
    add(2, 0, 0, 0);

    std::vector<long> order(q_);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed.value_or(0));
    for (size_t v = 0; v < side_.size(); ++v) {
        if (dist(static_cast<int>(v)) >= R_)
            continue;
        if (seed)
            std::shuffle(order.begin(), order.end(), rng);
        for (long s : order) {
            int c = add(side_[v], level_[v] + 1, static_cast<int>(s), static_cast<int>(v));
            children_[v * q_ + s] = c;
        }
    }

    const int n = static_cast<int>(size());
    down_.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (side_[v] == i_ || !on_apartment(v))
            down_[v] = toward_[v];
        else
            down_[v] = child(v, 0);
    }

    // Propagate labels outward from P_1.  Every vertex other than P_1 is
    // reached first from the neighbor it was created from.
    label_.assign(n, IwasawaLabel{});
    std::vector<char> done(n, 0);
    label_[0] = {i_, 0, 1};
    done[0] = 1;
    for (int v = 0; v < n; ++v) {
        NeighborLabels nl = neighbor_labels(label_[v]);
        for (int u : neighbors(v)) {
            if (done[u])
                continue;
            label_[u] = u == down_[v] ? nl.down : nl.up;
            done[u] = 1;
        }
    }
}

std::vector<uint8_t> Tree::coords(int v) const
{
    std::vector<uint8_t> c(level_[v]);
    for (int k = level_[v]; k > 0; --k) {
        c[k - 1] = last_[v];
        v = toward_[v];
    }
    return c;
}

bool Tree::on_apartment(int v) const
{
    while (level_[v] > 0) {
        if (last_[v] != 0)
            return false;
        v = toward_[v];
    }
    return true;
}

std::vector<int> Tree::neighbors(int v) const
{
    std::vector<int> r{toward_[v]};
    for (long s = 0; s < q_; ++s)
        if (child(v, s) >= 0)
            r.push_back(child(v, s));
    return r;
}

std::vector<int> Tree::up(int v) const
{
    std::vector<int> r;
    long s0 = 0;
    if (side_[v] != i_ && on_apartment(v)) {
        r.push_back(toward_[v]);
        s0 = 1;
    }
    for (long s = s0; s < q_; ++s)
        if (child(v, s) >= 0)
            r.push_back(child(v, s));
    return r;
}

WeylWord Tree::bruhat_word(int v) const
{
    size_t L = static_cast<size_t>(level_[v]);
    return WeylWord::alternating(side_[v], L + L % 2);
}

TreeVertex Tree::vertex(int v) const
{
    TreeVertex t;
    t.id = v;
    t.j = label_[v].j;
    t.bruhat_word = bruhat_word(v);
    t.iwasawa = label_[v];
    t.down = down_[v];
    t.up = up(v);
    return t;
}

int Tree::apartment_vertex(long k) const
{
    int v = k >= 0 ? base(i_) : base(3 - i_);
    long steps = k >= 0 ? k : -k - 1;
    for (long t = 0; t < steps && v >= 0; ++t)
        v = child(v, 0);
    return v;
}

int Tree::find(int side, const std::vector<uint8_t>& coords) const
{
    int v = base(side);
    for (uint8_t s : coords) {
        if (v < 0 || s >= q_)
            return -1;
        v = child(v, s);
    }
    return v;
}

void Tree::write_jsonl(std::ostream& os) const
{
    for (int v = 0; v < static_cast<int>(size()); ++v) {
        nlohmann::ordered_json rec;
        rec["id"] = v;
        rec["j"] = label_[v].j;
        rec["word"] = bruhat_word(v).str();
        rec["i"] = label_[v].i;
        rec["n"] = label_[v].n;
        rec["H"] = height(v);
        rec["down"] = down_[v] >= 0 ? nlohmann::ordered_json(down_[v]) : nlohmann::ordered_json(nullptr);
        rec["up"] = up(v);
        os << rec.dump() << '\n';
    }
}

long bruhat_height(int i, int side, const std::vector<uint8_t>& coords)
{
    long L = static_cast<long>(coords.size());
    if (side == i)
        return L;
    auto nz = std::find_if(coords.begin(), coords.end(), [](uint8_t s) { return s != 0; });
    if (nz == coords.end())
        return -1 - L;
    long r = (nz - coords.begin()) + 1;
    return L + 1 - 2 * r;
}

LabelReport verify_bruhat_iwasawa(const Tree& T)
{
    LabelReport rep;
    const int i = T.labeling();
    auto fail = [&](int v, const std::string& what) {
        rep.ok = false;
        if (rep.failures.size() < 20)
            rep.failures.push_back("vertex " + std::to_string(v) + ": " + what);
    };
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        ++rep.checked;
        const IwasawaLabel& L = T.label(v);
        WeylWord w = T.bruhat_word(v);
        if (w.size() % 2)
            fail(v, "odd Bruhat word " + w.str());
        int type = T.level(v) % 2 ? 3 - T.side(v) : T.side(v);
        if (L.j != type)
            fail(v, "label type " + std::to_string(L.j) + " but coset type " + std::to_string(type));
        if (L.height() != bruhat_height(i, T.side(v), T.coords(v)))
            fail(v, "label " + L.str() + " disagrees with gallery height");
        // U (w_i w_{3-i})^k K has n = k and U (w_{3-i} w_i)^k K has n = -k.
        if (T.side(v) == i || T.on_apartment(v)) {
            long k = static_cast<long>(w.size() / 2);
            long n = w.empty() || w.letters.front() == i ? k : -k;
            if (L.n != n)
                fail(v, "word " + w.str() + " gives n = " + std::to_string(n) + ", label " + L.str());
        }
        if (!T.interior(v))
            continue;
        NeighborLabels nl = neighbor_labels(L);
        auto up = T.up(v);
        if (T.down(v) < 0 || static_cast<long>(up.size()) != T.q())
            fail(v, "interior vertex without full neighborhood");
        else if (T.label(T.down(v)) != nl.down)
            fail(v, "down neighbor has label " + T.label(T.down(v)).str());
        for (int u : up)
            if (T.label(u) != nl.up)
                fail(v, "up neighbor " + std::to_string(u) + " has label " + T.label(u).str());
    }
    return rep;
}

Horosphere horosphere(const Tree& T, long k, int D)
{
    if (D < 0)
        throw std::invalid_argument("horosphere depth must be >= 0");
    Horosphere h;
    h.level = k;
    h.depth = D;
    int v = T.apartment_vertex(k);
    for (int t = 0; t < D && v >= 0; ++t)
        v = T.down(v);
    if (v < 0)
        throw std::out_of_range("horosphere: truncation too small for level " + std::to_string(k) +
                                " at depth " + std::to_string(D));
    std::vector<int> frontier{v};
    for (int t = 0; t < D; ++t) {
        std::vector<int> next;
        next.reserve(frontier.size() * T.q());
        for (int u : frontier) {
            auto up = T.up(u);
            if (static_cast<long>(up.size()) != T.q())
                throw std::out_of_range("horosphere: truncation too small for level " + std::to_string(k) +
                                        " at depth " + std::to_string(D));
            next.insert(next.end(), up.begin(), up.end());
        }
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());
    h.members = std::move(frontier);
    h.weights.assign(h.members.size(), mpq_class(1, h.members.size()));
    return h;
}

}  // namespace kmeis
