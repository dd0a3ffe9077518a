#include "lattice_export.hpp"

#include <json.hpp>

#include "error.hpp"

namespace smf {

namespace {

nlohmann::json one_based(const Matching& mu) {
    auto j = nlohmann::json::array();
    for (int w : mu.partners_of_men()) j.push_back(w + 1);
    return j;
}

std::string matching_label(const Matching& mu) {
    std::string s = "(";
    const auto& partners = mu.partners_of_men();
    for (std::size_t i = 0; i < partners.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(partners[i] + 1);
    }
    return s + ")";
}

}  // namespace

LatticeReport analyse_lattice(const PreferenceProfile& profile, StableLattice lattice,
                              std::uint64_t max_downset_states) {
    LatticeReport report;
    if (!lattice.has_hasse) compute_hasse(profile, lattice);
    report.stats.size = lattice.size();
    report.stats.censored = !lattice.complete;
    if (lattice.complete) {
        RotationPoset poset = build_rotation_poset(profile, lattice);
        const int r = static_cast<int>(poset.r());
        const int h = poset.height();
        report.stats.r = r;
        report.stats.h = h;
        report.stats.width = poset.width();
        try {
            report.stats.max_downsets_bound = max_downsets_bound(r, h);
        } catch (const Error&) {
            // Bound does not fit in 64 bits.
        }
        try {
            report.stats.downsets = count_downsets(poset.order, max_downset_states);
            report.stats.downset_check = *report.stats.downsets == report.stats.size;
        } catch (const BudgetExceeded&) {
        }
        report.poset = std::move(poset);
    }
    report.lattice = std::move(lattice);
    return report;
}

std::string lattice_to_json(const LatticeReport& report) {
    const StableLattice& lat = report.lattice;
    nlohmann::ordered_json j;
    j["n"] = lat.n;
    j["complete"] = lat.complete;
    j["top"] = lat.top;
    if (lat.bottom != kNoIndex) {
        j["bottom"] = lat.bottom;
    } else {
        j["bottom"] = nullptr;
    }

    auto matchings = nlohmann::json::array();
    for (const auto& mu : lat.matchings) matchings.push_back(one_based(mu));
    j["matchings"] = std::move(matchings);

    auto edges = nlohmann::json::array();
    auto labels = nlohmann::json::array();
    for (const auto& e : lat.hasse_edges) {
        edges.push_back({e.from, e.to});
        labels.push_back(e.rotation);
    }
    j["hasse_edges"] = std::move(edges);
    j["edge_rotations"] = std::move(labels);

    auto rotations = nlohmann::json::array();
    for (const auto& rho : lat.rotations) {
        auto pairs = nlohmann::json::array();
        for (const auto& p : rho.pairs) pairs.push_back({p.man + 1, p.woman + 1});
        rotations.push_back(std::move(pairs));
    }
    j["rotations"] = std::move(rotations);

    auto poset_edges = nlohmann::json::array();
    if (report.poset) {
        for (const auto& [a, b] : report.poset->order.cover_edges()) poset_edges.push_back({a, b});
    }
    j["poset_edges"] = std::move(poset_edges);

    const LatticeStats& s = report.stats;
    nlohmann::ordered_json stats;
    stats["size"] = s.size;
    stats["censored"] = s.censored;
    auto opt = [](const auto& v) -> nlohmann::ordered_json {
        if (v) return *v;
        return nullptr;
    };
    stats["r"] = opt(s.r);
    stats["h"] = opt(s.h);
    stats["width"] = opt(s.width);
    stats["downset_check"] = s.downset_check;
    stats["downsets"] = opt(s.downsets);
    stats["max_downsets_bound"] = opt(s.max_downsets_bound);
    j["stats"] = std::move(stats);
    return j.dump(2) + "\n";
}

std::string lattice_to_dot(const LatticeReport& report) {
    const StableLattice& lat = report.lattice;
    std::string out = "digraph stable_lattice {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
        std::string label = matching_label(lat.matchings[i]);
        if (i == lat.top) label += "\\nmen-optimal";
        if (i == lat.bottom) label += "\\nwomen-optimal";
        out += "  m" + std::to_string(i) + " [label=\"" + label + "\"];\n";
    }
    for (const auto& e : lat.hasse_edges) {
        out += "  m" + std::to_string(e.from) + " -> m" + std::to_string(e.to) + " [label=\"rho" +
               std::to_string(e.rotation + 1) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace smf
