#include "reference_assembler.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace oracle {

namespace {

// Bonding matrix entry for labels i, j.
bool m(int i, int j) {
    return (1 - i % 2) * (i == j + 1) + (i % 2) * (i == j - 1) != 0;
}

// Active when some label of the alphabet bonds to it.
bool active(int i, int labels) {
    for (int j = 0; j < labels; ++j)
        if (m(i, j))
            return true;
    return false;
}

const int dx[4] = {0, 1, 0, -1};
const int dy[4] = {-1, 0, 1, 0};

struct Config {
    std::array<int, 4> edge;  // facing N, E, S, W
    bool operator<(const Config& o) const { return edge < o.edge; }
    bool operator==(const Config& o) const { return edge == o.edge; }
};

Config rotate(const RefTile& t, int quarter_turns) {
    Config c{};
    // After one clockwise turn the old west edge faces north.
    for (int dir = 0; dir < 4; ++dir)
        c.edge[dir] = t.label[((dir - quarter_turns) % 4 + 4) % 4];
    return c;
}


}  // namespace

std::vector<RefTile> decode(unsigned long long value, int tiles, int labels) {
    int bits = 0;
    while ((1 << bits) < labels)
        ++bits;
    const int total = tiles * 4 * bits;
    std::vector<RefTile> out(static_cast<std::size_t>(tiles));
    for (int t = 0; t < tiles; ++t)
        for (int e = 0; e < 4; ++e) {
            int v = 0;
            for (int b = 0; b < bits; ++b) {
                const int genome_bit = (4 * t + e) * bits + b;
                v = v * 2 + static_cast<int>((value >> (total - 1 - genome_bit)) & 1ULL);
            }
            out[static_cast<std::size_t>(t)].label[static_cast<std::size_t>(e)] = v;
        }
    return out;
}

namespace {

struct Setup {
    std::vector<Config> configs;
    int seed_config = 0;
    int labels = 0;
    int dim = 0;

    bool on_border(int x, int y) const { return x == 0 || y == 0 || x == dim - 1 || y == dim - 1; }

    // Configurations that bond to a neighbour exposing `theirs`, seen from a
    // cell lying in direction `dir` from that neighbour.
    std::set<int> offers(int theirs, int dir) const {
        std::set<int> out;
        if (!active(theirs, labels))
            return out;
        for (std::size_t i = 0; i < configs.size(); ++i)
            if (m(configs[i].edge[static_cast<std::size_t>((dir + 2) % 4)], theirs))
                out.insert(static_cast<int>(i));
        return out;
    }
};

Setup make_setup(const std::vector<RefTile>& tiles, int labels, int dim) {
    Setup st;
    st.labels = labels;
    st.dim = dim;
    for (const auto& t : tiles)
        for (int r = 0; r < 4; ++r) {
            const Config c = rotate(t, r);
            if (std::find(st.configs.begin(), st.configs.end(), c) == st.configs.end())
                st.configs.push_back(c);
        }
    st.seed_config = static_cast<int>(std::find(st.configs.begin(), st.configs.end(), rotate(tiles[0], 0)) -
                                      st.configs.begin());
    return st;
}

struct Closure {
    bool multi_offer = false;     // some face admits two configurations
    bool functional = true;       // at most one configuration per cell
    bool touches_border = false;
    std::vector<int> cells;       // the configuration of each cell when functional
};

// Every (cell, configuration) some order of attachment could place, ignoring
// that ambiguities end a run. A superset of what can really be placed, so an
// ambiguity absent here cannot occur.
Closure closure(const Setup& st) {
    const int d = st.dim;
    // (cell, configuration, direction of the neighbour it bonded to); the
    // face toward that neighbour never sees an empty cell.
    using Item = std::array<int, 3>;
    std::set<Item> placed{{(d / 2) * d + d / 2, st.seed_config, -1}};
    std::vector<Item> todo(placed.begin(), placed.end());
    Closure c;
    while (!todo.empty()) {
        const auto [cell, config, parent] = todo.back();
        todo.pop_back();
        const int x = cell % d, y = cell / d;
        if (st.on_border(x, y)) {
            c.touches_border = true;
            continue;
        }
        for (int dir = 0; dir < 4; ++dir) {
            if (dir == parent)
                continue;
            const int nx = x + dx[dir], ny = y + dy[dir];
            const auto o = st.offers(st.configs[static_cast<std::size_t>(config)].edge[static_cast<std::size_t>(dir)],
                                     dir);
            if (o.size() > 1)
                c.multi_offer = true;
            if (o.size() != 1)
                continue;
            const Item next{ny * d + nx, *o.begin(), (dir + 2) % 4};
            if (placed.insert(next).second)
                todo.push_back(next);
        }
    }
    c.cells.assign(static_cast<std::size_t>(d * d), -1);
    for (const auto& [cell, config, parent] : placed) {
        auto& slot = c.cells[static_cast<std::size_t>(cell)];
        if (slot != -1 && slot != config)
            c.functional = false;
        slot = config;
    }
    return c;
}

std::string draw(const std::vector<int>& s, int dim) {
    int x0 = dim, y0 = dim, x1 = -1, y1 = -1;
    for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x)
            if (s[static_cast<std::size_t>(y * dim + x)] != -1) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
    std::string rows;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x)
            rows += s[static_cast<std::size_t>(y * dim + x)] != -1 ? '#' : '.';
        rows += '\n';
    }
    return rows;
}

}  // namespace

RefResult classify(const std::vector<RefTile>& tiles, int labels, int dim, std::size_t state_limit) {
    const Setup st = make_setup(tiles, labels, dim);
    RefResult res;

    // Without any ambiguity every order builds the same configuration, so
    // the closure alone settles the class.
    const Closure c = closure(st);
    if (!c.multi_offer && c.functional) {
        res.kind = c.touches_border ? RefKind::kUnbound : RefKind::kDeterministic;
        if (!c.touches_border)
            res.shape = draw(c.cells, dim);
        return res;
    }
    // With trivial ambiguity ruled out, one reachable border placement
    // settles the class.
    const bool stop_at_border = !c.multi_offer;

    // Otherwise walk every reachable assembly state.
    bool trivial = false, unbound = false, conflict = false;
    std::set<std::string> terminal_shapes;
    std::vector<int> start(static_cast<std::size_t>(dim * dim), -1);
    start[static_cast<std::size_t>((dim / 2) * dim + dim / 2)] = st.seed_config;
    auto key = [](const std::vector<int>& s) { return std::string(s.begin(), s.end()); };
    std::unordered_set<std::string> seen{key(start)};
    std::vector<std::vector<int>> todo{start};

    while (!todo.empty() && !trivial && !(unbound && stop_at_border)) {
        if (seen.size() > state_limit) {
            res.exhausted = false;
            break;
        }
        const std::vector<int> s = std::move(todo.back());
        todo.pop_back();

        bool any_move = false;
        for (int y = 0; y < dim && !trivial; ++y)
            for (int x = 0; x < dim && !trivial; ++x) {
                if (s[static_cast<std::size_t>(y * dim + x)] != -1)
                    continue;
                // What each occupied neighbour admits here.
                std::set<int> all;
                for (int dir = 0; dir < 4; ++dir) {
                    const int nx = x + dx[dir], ny = y + dy[dir];
                    if (nx < 0 || ny < 0 || nx >= dim || ny >= dim)
                        continue;
                    const int nc = s[static_cast<std::size_t>(ny * dim + nx)];
                    if (nc == -1)
                        continue;
                    const auto here = st.offers(
                        st.configs[static_cast<std::size_t>(nc)].edge[static_cast<std::size_t>((dir + 2) % 4)], (dir + 2) % 4);
                    if (here.size() > 1)
                        trivial = true;
                    all.insert(here.begin(), here.end());
                }
                if (trivial || all.empty())
                    continue;
                any_move = true;
                if (all.size() > 1) {
                    conflict = true;
                    continue;
                }
                if (st.on_border(x, y)) {
                    unbound = true;
                    continue;
                }
                std::vector<int> next = s;
                next[static_cast<std::size_t>(y * dim + x)] = *all.begin();
                if (seen.insert(key(next)).second)
                    todo.push_back(std::move(next));
            }
        if (!any_move && !trivial)
            terminal_shapes.insert(draw(s, dim));
    }
    res.states = seen.size();

    if (trivial)
        res.kind = RefKind::kTrivial;
    else if (unbound)
        res.kind = RefKind::kUnbound;
    else if (conflict || terminal_shapes.size() > 1)
        res.kind = RefKind::kSteric;
    else {
        res.kind = RefKind::kDeterministic;
        res.shape = *terminal_shapes.begin();
    }
    return res;
}

}  // namespace oracle
