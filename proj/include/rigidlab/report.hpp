#pragma once

#include <sstream>
#include <string>

#include "rigidlab/certificate.hpp"
#include "rigidlab/instance.hpp"
#include "rigidlab/purecond.hpp"
#include "rigidlab/rigidmatrix.hpp"

namespace rigidlab {

inline json subsets_to_json(const WeightedHypergraph& h,
                            const std::vector<std::vector<int>>& subsets) {
    json out = json::array();
    for (const auto& subset : subsets) {
        json ids = json::array();
        for (int v : subset) ids.push_back(h.vertex_ids[static_cast<std::size_t>(v)]);
        out.push_back(std::move(ids));
    }
    return out;
}

inline json counts_to_json(const WeightedHypergraph& h, const CountCheck& cc) {
    json j;
    j["rows"] = cc.total;
    j["capacity"] = cc.capacity;
    j["tight"] = cc.tight;
    j["sparse"] = cc.sparse;
    json viol = json::array();
    for (const SubgraphViolation& v : cc.violating_subgraphs) {
        json jv;
        json ids = json::array();
        for (int u : v.vertices) ids.push_back(h.vertex_ids[static_cast<std::size_t>(u)]);
        jv["vertices"] = std::move(ids);
        jv["rows"] = v.copies;
        jv["capacity"] = v.capacity;
        viol.push_back(std::move(jv));
    }
    j["violating_subgraphs"] = std::move(viol);
    return j;
}

inline json certificate_to_json(const WeightedHypergraph& h, const Certificate& cert) {
    const MultiHypergraph mh = expand(h);
    const int k_maps = h.dim - 1;
    json maps = json::array();
    for (int m = 0; m < k_maps; ++m) {
        json jm;
        jm["column_group"] = cert.column_group_of_map[static_cast<std::size_t>(m)];
        json copies = json::array();
        for (int c = 0; c < mh.n_copies(); ++c) {
            if (cert.decomposition.map_of[static_cast<std::size_t>(c)] != m) continue;
            json jc;
            jc["edge"] = mh.copies[static_cast<std::size_t>(c)].edge + 1;
            jc["t"] = cert.labeling.label[static_cast<std::size_t>(c)].first;
            jc["l"] = cert.labeling.label[static_cast<std::size_t>(c)].second;
            jc["tail"] = h.vertex_ids[static_cast<std::size_t>(
                cert.decomposition.tail[static_cast<std::size_t>(c)])];
            copies.push_back(std::move(jc));
        }
        jm["copies"] = std::move(copies);
        maps.push_back(std::move(jm));
    }
    json j;
    j["maps"] = std::move(maps);
    return j;
}

// Reconstructs a Certificate from its JSON form; inverse of
// certificate_to_json for certificates over the same hypergraph.
inline Certificate certificate_from_json(const WeightedHypergraph& h, const json& j) {
    const MultiHypergraph mh = expand(h);
    Certificate cert;
    const int k_maps = h.dim - 1;
    cert.column_group_of_map.assign(static_cast<std::size_t>(k_maps), 0);
    cert.decomposition.map_of.assign(static_cast<std::size_t>(mh.n_copies()), -1);
    cert.decomposition.tail.assign(static_cast<std::size_t>(mh.n_copies()), -1);
    cert.labeling.label.assign(static_cast<std::size_t>(mh.n_copies()), {0, 0});
    int m = 0;
    for (const auto& jm : j.at("maps")) {
        cert.column_group_of_map[static_cast<std::size_t>(m)] = jm.at("column_group").get<int>();
        for (const auto& jc : jm.at("copies")) {
            int edge = jc.at("edge").get<int>() - 1;
            int t = jc.at("t").get<int>();
            int l = jc.at("l").get<int>();
            // locate the unused copy of this edge
            int copy = -1;
            for (int c = 0; c < mh.n_copies(); ++c) {
                if (mh.copies[static_cast<std::size_t>(c)].edge == edge &&
                    cert.decomposition.map_of[static_cast<std::size_t>(c)] == -1) {
                    copy = c;
                    break;
                }
            }
            if (copy == -1) throw std::invalid_argument("certificate lists too many copies");
            cert.decomposition.map_of[static_cast<std::size_t>(copy)] = m;
            cert.decomposition.tail[static_cast<std::size_t>(copy)] =
                h.vertex_index(jc.at("tail").get<std::string>());
            cert.labeling.label[static_cast<std::size_t>(copy)] = {t, l};
        }
        ++m;
    }
    return cert;
}

inline json rank_to_json(const RankReport& r) {
    json j;
    j["rank"] = r.rank;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["full_rank"] = r.full_rank;
    j["flex_dim"] = r.flex_dim;
    j["trials"] = r.trials;
    j["per_trial_error_bound"] = r.per_trial_error_bound;
    return j;
}

inline json verdict_to_json(const WeightedHypergraph& h, const RigidityVerdict& verdict) {
    json j;
    j["verdict"] = to_string(verdict.status);
    j["counts"] = counts_to_json(h, verdict.counts);
    j["overpinned_subgraphs"] = subsets_to_json(h, verdict.flagged_subsets);
    if (verdict.certificate) j["certificate"] = certificate_to_json(h, *verdict.certificate);
    j["search_nodes"] = verdict.search_nodes;
    j["exhaustive"] = verdict.exhaustive;
    return j;
}

// Renders a report as aligned text: keys padded per nesting level, arrays of
// scalars inline.
inline void render_text(const json& j, std::ostream& os, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        os << pad << it.key() << std::string(width - it.key().size(), ' ');
        if (v.is_object()) {
            os << " :\n";
            render_text(v, os, indent + 1);
        } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
            os << " :\n";
            int i = 0;
            for (const auto& item : v) {
                if (item.is_object()) {
                    os << pad << "  [" << i++ << "]\n";
                    render_text(item, os, indent + 2);
                } else {
                    os << pad << "  " << item.dump() << "\n";
                }
            }
        } else {
            os << " : " << v.dump() << "\n";
        }
    }
}

inline std::string render_text(const json& j) {
    std::ostringstream os;
    render_text(j, os);
    return os.str();
}

} // namespace rigidlab
