#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unknot/diagram.hpp"

namespace unknot {

// Relation R_k ties the generator of the arc entering crossing k to the
// generator of the arc leaving it, conjugated by the over-arc generator:
//   Plus : R_k = g_j g_k g_j^-1 g_{k+1}^-1
//   Minus: R_k = g_j^-1 g_k g_j g_{k+1}^-1
// with k+1 wrapping to 1.
enum class Form { Plus, Minus };

struct Relation {
    int k = 0;
    int j = 0;
    Form form = Form::Plus;
    bool operator==(const Relation&) const = default;
};

struct WirtingerPresentation {
    int n = 0;
    std::vector<Relation> relations;  // relations[i] has k = i+1

    int next(int k) const { return k % n + 1; }
};

inline WirtingerPresentation build_presentation(const KnotDiagram& d) {
    WirtingerPresentation p;
    p.n = d.n;
    p.relations.reserve(d.n);
    for (int k = 1; k <= d.n; ++k) {
        const Crossing& c = d.crossings[k - 1];
        p.relations.push_back(
            Relation{k, c.arcs[1], c.sign > 0 ? Form::Plus : Form::Minus});
    }
    return p;
}

inline std::string presentation_to_text(const WirtingerPresentation& p) {
    auto g = [](int i) { return "g" + std::to_string(i); };
    auto gi = [&](int i) { return g(i) + "⁻¹"; };  // superscript -1
    std::string gens;
    for (int i = 1; i <= p.n; ++i) {
        if (i > 1) gens += ",";
        gens += g(i);
    }
    std::string rels;
    for (const Relation& r : p.relations) {
        if (!rels.empty()) rels += ", ";
        int next = p.next(r.k);
        if (r.form == Form::Plus)
            rels += g(r.j) + " " + g(r.k) + " " + gi(r.j) + " " + gi(next);
        else
            rels += gi(r.j) + " " + g(r.k) + " " + g(r.j) + " " + gi(next);
    }
    return "⟨" + gens + " | " + rels + "⟩";
}

inline nlohmann::json presentation_to_json(const WirtingerPresentation& p) {
    nlohmann::json rels = nlohmann::json::array();
    for (const Relation& r : p.relations)
        rels.push_back({{"k", r.k},
                        {"j", r.j},
                        {"form", r.form == Form::Plus ? "+" : "-"}});
    return nlohmann::json{{"n", p.n}, {"relations", rels}};
}

}  // namespace unknot
