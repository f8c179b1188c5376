#pragma once

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace unknot {

struct PdSyntaxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PdStructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing in canonical (arc-labeled, traversal-ordered) form. Slots are
// listed counterclockwise starting at the incoming under-strand: slot 0 is
// the under-arc that terminates here, slot 2 continues it, slots 1 and 3
// both carry the over-arc. sign +1 means the over-strand enters at slot 3.
struct Crossing {
    std::array<int, 4> arcs{};
    int sign = 0;
};

struct KnotDiagram {
    int n = 0;
    int arc_count = 0;
    std::vector<Crossing> crossings;                // canonical; crossing k ends arc k+1
    std::vector<std::array<int, 4>> pd_edges;       // raw edge-labeled code, input order
    std::vector<int> input_signs;                   // sign per raw crossing, input order
};

namespace detail {

// Resolves travel direction of every passage. Each edge label occurs exactly
// twice across all slots; along the curve it leaves one crossing and enters
// one. Under passages travel slot0 -> slot2; an over passage travels between
// slots 1 and 3 in whichever direction is globally consistent.
struct Traversal {
    std::map<int, int> succ;          // edge -> next edge
    std::map<int, int> under_in_at;   // under-in edge -> crossing index
    std::vector<int> over_in_slot;    // per crossing: 1 or 3
};

inline Traversal orient_passages(const std::vector<std::array<int, 4>>& xs) {
    const int n = int(xs.size());
    const int m = 2 * n;

    std::map<int, int> count;
    for (const auto& x : xs)
        for (int e : x) ++count[e];
    for (const auto& [e, c] : count) {
        if (e < 1 || e > m)
            throw PdStructureError("edge label " + std::to_string(e) +
                                   " out of range 1.." + std::to_string(m));
        if (c != 2)
            throw PdStructureError("edge label " + std::to_string(e) +
                                   " appears " + std::to_string(c) +
                                   " times (expected 2)");
    }
    if (int(count.size()) != m)
        throw PdStructureError("expected " + std::to_string(m) +
                               " distinct edge labels, found " +
                               std::to_string(count.size()));

    // occurrences[e] = up to two (crossing, slot) sites
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < 4; ++s) occ[xs[i][s]].push_back({i, s});

    // role[e][which occurrence] : +1 edge enters the passage, -1 edge leaves
    std::map<int, std::array<int, 2>> role;
    for (const auto& [e, sites] : occ) role[e] = {0, 0};

    auto site_index = [&](int e, int cr, int slot) {
        const auto& sites = occ[e];
        for (int w = 0; w < int(sites.size()); ++w)
            if (sites[w] == std::pair<int, int>{cr, slot}) return w;
        throw PdStructureError("internal: occurrence lookup failed");
    };

    std::vector<std::pair<int, int>> work;  // (edge, occurrence) with fresh role
    auto set_role = [&](int e, int w, int r) {
        int& slot_role = role[e][w];
        if (slot_role == r) return;
        if (slot_role != 0)
            throw PdStructureError("edge " + std::to_string(e) +
                                   " cannot be oriented consistently");
        slot_role = r;
        // the edge's other occurrence takes the opposite role
        int& other = role[e][1 - w];
        if (other == 0) {
            other = -r;
            work.push_back({e, 1 - w});
        } else if (other != -r) {
            throw PdStructureError("edge " + std::to_string(e) +
                                   " cannot be oriented consistently");
        }
        work.push_back({e, w});
    };

    for (int i = 0; i < n; ++i) {
        set_role(xs[i][0], site_index(xs[i][0], i, 0), +1);
        set_role(xs[i][2], site_index(xs[i][2], i, 2), -1);
    }
    // propagate through over pairs: within one over passage the two slots
    // carry opposite roles
    while (!work.empty()) {
        auto [e, w] = work.back();
        work.pop_back();
        auto [cr, slot] = occ[e][w];
        if (slot == 0 || slot == 2) continue;
        int mate_slot = slot == 1 ? 3 : 1;
        int mate = xs[cr][mate_slot];
        set_role(mate, site_index(mate, cr, mate_slot), -role[e][w]);
    }
    for (const auto& [e, r] : role)
        if (r[0] == 0 || r[1] == 0)
            throw PdStructureError("edge " + std::to_string(e) +
                                   " direction undetermined (closed over-strand "
                                   "component?)");

    Traversal t;
    t.over_in_slot.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        t.succ[xs[i][0]] = xs[i][2];
        if (t.under_in_at.count(xs[i][0]))
            throw PdStructureError("edge " + std::to_string(xs[i][0]) +
                                   " ends at two crossings");
        t.under_in_at[xs[i][0]] = i;
        int b = xs[i][1], d = xs[i][3];
        int rb = role[b][site_index(b, i, 1)];
        if (rb == +1) {
            t.succ[b] = d;
            t.over_in_slot[i] = 1;
        } else {
            t.succ[d] = b;
            t.over_in_slot[i] = 3;
        }
    }
    if (int(t.succ.size()) != m)
        throw PdStructureError("open strand: traversal map incomplete");

    // single closed component
    int e = xs[0][0], visited = 0;
    do {
        ++visited;
        e = t.succ.at(e);
        if (visited > m) break;
    } while (e != xs[0][0]);
    if (visited != m)
        throw PdStructureError(
            "multiple components: traversal visits " + std::to_string(visited) +
            " of " + std::to_string(m) + " edges");
    return t;
}

}  // namespace detail

// Builds the canonical arc-labeled diagram: merge edges into arcs across
// over-passages, relabel arcs 1..n along the traversal, reorder crossings so
// crossing k terminates arc k, and derive signs (+1 iff the over-strand
// enters at slot 3, i.e. travels slot3 -> slot1).
inline KnotDiagram canonicalize(std::vector<std::array<int, 4>> xs) {
    KnotDiagram d;
    d.n = int(xs.size());
    d.pd_edges = xs;
    if (d.n == 0) return d;

    auto t = detail::orient_passages(xs);
    const int m = 2 * d.n;

    // walk the cycle starting just after the first input crossing's under
    // passage; cut arcs after every under-in edge
    int start = t.succ.at(xs[0][0]);
    std::vector<int> order;
    order.reserve(m);
    for (int e = start, i = 0; i < m; ++i, e = t.succ.at(e)) order.push_back(e);

    std::map<int, int> arc_of_edge;
    std::vector<int> arc_end_crossing(d.n + 1, -1);  // arc label -> crossing idx
    int arc = 1;
    for (int e : order) {
        arc_of_edge[e] = arc;
        auto it = t.under_in_at.find(e);
        if (it != t.under_in_at.end()) {
            arc_end_crossing[arc] = it->second;
            ++arc;
        }
    }
    if (arc != d.n + 1)
        throw PdStructureError("arc merge produced " + std::to_string(arc - 1) +
                               " arcs (expected " + std::to_string(d.n) + ")");
    d.arc_count = d.n;

    d.input_signs.assign(d.n, 0);
    for (int i = 0; i < d.n; ++i)
        d.input_signs[i] = t.over_in_slot[i] == 3 ? +1 : -1;

    d.crossings.resize(d.n);
    for (int k = 1; k <= d.n; ++k) {
        int ci = arc_end_crossing[k];
        if (ci < 0)
            throw PdStructureError("arc " + std::to_string(k) +
                                   " does not terminate at any crossing");
        const auto& x = xs[ci];
        Crossing c;
        c.sign = d.input_signs[ci];
        c.arcs = {arc_of_edge.at(x[0]), arc_of_edge.at(x[1]),
                  arc_of_edge.at(x[2]), arc_of_edge.at(x[3])};
        if (c.arcs[0] != k)
            throw PdStructureError("crossing reorder failed at arc " +
                                   std::to_string(k));
        d.crossings[k - 1] = c;
    }
    return d;
}

// Recomputes one canonical crossing's sign from the raw code alone.
inline int recompute_sign(const KnotDiagram& d, int k) {
    return canonicalize(d.pd_edges).crossings.at(k).sign;
}

inline void validate(const KnotDiagram& d) {
    if (d.n == 0) {
        if (!d.crossings.empty() || d.arc_count != 0)
            throw PdStructureError("empty diagram must have no crossings");
        return;
    }
    if (int(d.crossings.size()) != d.n)
        throw PdStructureError("crossing count mismatch");
    if (d.arc_count != d.n)
        throw PdStructureError("arc count " + std::to_string(d.arc_count) +
                               " != crossing count " + std::to_string(d.n));
    std::vector<int> under_ends(d.n + 1, 0), under_starts(d.n + 1, 0);
    for (int k = 0; k < d.n; ++k) {
        const auto& c = d.crossings[k];
        for (int s = 0; s < 4; ++s)
            if (c.arcs[s] < 1 || c.arcs[s] > d.arc_count)
                throw PdStructureError("crossing " + std::to_string(k + 1) +
                                       ": arc label out of range");
        if (c.arcs[0] != k + 1)
            throw PdStructureError("crossing " + std::to_string(k + 1) +
                                   " does not terminate arc " +
                                   std::to_string(k + 1));
        if (c.arcs[2] != (k + 1) % d.n + 1)
            throw PdStructureError("crossing " + std::to_string(k + 1) +
                                   ": outgoing under-arc is not the successor");
        if (c.arcs[1] != c.arcs[3])
            throw PdStructureError("crossing " + std::to_string(k + 1) +
                                   ": over slots disagree on the over-arc");
        if (c.sign != 1 && c.sign != -1)
            throw PdStructureError("crossing " + std::to_string(k + 1) +
                                   ": sign must be +1 or -1");
        ++under_ends[c.arcs[0]];
        ++under_starts[c.arcs[2]];
    }
    for (int a = 1; a <= d.arc_count; ++a) {
        if (under_ends[a] != 1)
            throw PdStructureError("arc " + std::to_string(a) + " incident " +
                                   std::to_string(under_ends[a]) +
                                   " times as terminating under-strand");
        if (under_starts[a] != 1)
            throw PdStructureError("arc " + std::to_string(a) + " incident " +
                                   std::to_string(under_starts[a]) +
                                   " times as outgoing under-strand");
    }
    // stored signs must agree with recomputation from the raw code
    KnotDiagram fresh = canonicalize(d.pd_edges);
    for (int k = 0; k < d.n; ++k)
        if (fresh.crossings[k].sign != d.crossings[k].sign)
            throw PdStructureError("crossing " + std::to_string(k + 1) +
                                   ": stored sign disagrees with recomputation");
}

// ------------------------------------------------------------------ parsing

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw PdSyntaxError("expected '" + std::string(1, c) + "' at offset " +
                                std::to_string(i));
    }
    bool eat_kw(const char* kw) {
        skip_ws();
        std::size_t j = i;
        for (const char* p = kw; *p; ++p, ++j)
            if (j >= s.size() || s[j] != *p) return false;
        i = j;
        return true;
    }
    int integer() {
        skip_ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw PdSyntaxError("expected integer at offset " + std::to_string(i));
        int v = std::stoi(s.substr(i, j - i));
        i = j;
        if (v <= 0) throw PdSyntaxError("edge labels must be positive");
        return v;
    }
    bool at_end() {
        skip_ws();
        return i == s.size();
    }
};

inline std::vector<std::array<int, 4>> parse_pd_text(const std::string& text) {
    Cursor c{text};
    if (!c.eat_kw("PD")) throw PdSyntaxError("input must start with 'PD['");
    c.expect('[');
    std::vector<std::array<int, 4>> xs;
    if (!c.eat(']')) {
        do {
            if (!c.eat_kw("X")) throw PdSyntaxError("expected crossing token 'X('");
            c.expect('(');
            std::array<int, 4> x{};
            x[0] = c.integer();
            c.expect(',');
            x[1] = c.integer();
            c.expect(',');
            x[2] = c.integer();
            c.expect(',');
            x[3] = c.integer();
            c.expect(')');
            xs.push_back(x);
        } while (c.eat(','));
        c.expect(']');
    }
    if (!c.at_end()) throw PdSyntaxError("trailing input after ']'");
    return xs;
}

inline std::vector<std::array<int, 4>> parse_pd_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw PdSyntaxError(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("crossings") || !j["crossings"].is_array())
        throw PdSyntaxError("JSON form must be {\"crossings\": [[i,j,k,l], ...]}");
    std::vector<std::array<int, 4>> xs;
    for (const auto& row : j["crossings"]) {
        if (!row.is_array() || row.size() != 4)
            throw PdSyntaxError("each crossing must be a 4-element array");
        std::array<int, 4> x{};
        for (int s = 0; s < 4; ++s) {
            if (!row[s].is_number_integer() || row[s].get<long long>() <= 0)
                throw PdSyntaxError("edge labels must be positive integers");
            x[s] = row[s].get<int>();
        }
        xs.push_back(x);
    }
    return xs;
}

}  // namespace detail

// Accepts the PD-code text grammar or the JSON object form.
inline KnotDiagram parse_pd(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::vector<std::array<int, 4>> xs;
    if (i < text.size() && text[i] == '{')
        xs = detail::parse_pd_json(text);
    else
        xs = detail::parse_pd_text(text);
    KnotDiagram d = canonicalize(std::move(xs));
    validate(d);
    return d;
}

// Canonical PD string of the raw (as-parsed) code; whitespace-free.
inline std::string print_pd(const KnotDiagram& d) {
    std::string s = "PD[";
    for (std::size_t i = 0; i < d.pd_edges.size(); ++i) {
        if (i) s += ",";
        const auto& x = d.pd_edges[i];
        s += "X(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
             std::to_string(x[2]) + "," + std::to_string(x[3]) + ")";
    }
    return s + "]";
}

inline nlohmann::json diagram_to_json(const KnotDiagram& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& x : d.pd_edges) rows.push_back({x[0], x[1], x[2], x[3]});
    return nlohmann::json{{"crossings", rows}};
}

// The same knot traversed in the opposite direction: each crossing's tuple is
// rotated to start at the (new) incoming under-strand. Crossing signs are
// preserved (both strand directions flip).
inline KnotDiagram reverse_orientation(const KnotDiagram& d) {
    std::vector<std::array<int, 4>> xs;
    xs.reserve(d.pd_edges.size());
    for (const auto& x : d.pd_edges) xs.push_back({x[2], x[3], x[0], x[1]});
    KnotDiagram r = canonicalize(std::move(xs));
    validate(r);
    return r;
}

}  // namespace unknot
