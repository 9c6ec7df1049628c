#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidlab/hypergraph.hpp"
#include "rigidlab/mapdecomp.hpp"

namespace rigidlab {

// Assignment of (t, l) labels to the copies of each edge; within an edge the
// labels are distinct and cover {1..d-s_k} x {1..m_k}.
struct Labeling {
    std::vector<std::pair<int, int>> label; // copy -> (t, l)
};

// A checkable witness of generic minimal rigidity: a decomposition of the
// expanded multi-hypergraph into d-1 maps, a labeling, and the pairing of
// maps with column groups, jointly satisfying
//   - compatibility: a copy of edge k in the map of column group j may carry
//     any t when j <= s_k - 1 and must carry t = j - s_k + 1 when j >= s_k;
//   - same-l copies of an edge sit in different maps;
//   - same-t copies of an edge have different tail vertices.
struct Certificate {
    MapDecomposition decomposition;
    Labeling labeling;
    std::vector<int> column_group_of_map; // map index -> column group in 1..d-1
};

// Column groups in which a copy with equation index t of an edge of size s
// has a non-vanishing row block: all of 1..s-1 plus s-1+t.
inline bool group_compatible(int edge_size, int t, int group) {
    return group <= edge_size - 1 || group == edge_size - 1 + t;
}

// Pure verification of a certificate against the hypergraph's expansion.
// Independent of how the certificate was produced. Optionally reports every
// failed condition.
inline bool check_certificate(const WeightedHypergraph& h, const Certificate& cert,
                              std::vector<std::string>* reasons = nullptr) {
    bool ok = true;
    auto fail = [&](const std::string& why) {
        ok = false;
        if (reasons) reasons->push_back(why);
    };
    const MultiHypergraph mh = expand(h);
    const int k_maps = h.dim - 1;
    const int nc = mh.n_copies();
    if (static_cast<int>(cert.decomposition.map_of.size()) != nc ||
        static_cast<int>(cert.decomposition.tail.size()) != nc ||
        static_cast<int>(cert.labeling.label.size()) != nc ||
        static_cast<int>(cert.column_group_of_map.size()) != k_maps) {
        if (reasons) reasons->push_back("certificate does not index this hypergraph's expansion");
        return false;
    }

    if (!decomposition_is_valid(mh, cert.decomposition, k_maps))
        fail("decomposition is not a partition into spanning maps");

    // column_group_of_map must be a bijection onto 1..d-1
    {
        std::vector<char> seen(static_cast<std::size_t>(k_maps), 0);
        for (int g : cert.column_group_of_map) {
            if (g < 1 || g > k_maps || seen[static_cast<std::size_t>(g - 1)]) {
                fail("map/column-group pairing is not a bijection");
                break;
            }
            seen[static_cast<std::size_t>(g - 1)] = 1;
        }
    }

    // per-edge label coverage and conditions
    for (int k = 0; k < h.n_edges(); ++k) {
        const HyperEdge& e = h.edges[static_cast<std::size_t>(k)];
        const int nt = h.dim - e.size();
        const int nl = e.pin_dim;
        std::vector<char> used(static_cast<std::size_t>(nt * nl), 0);
        std::vector<int> copies;
        for (int c = 0; c < nc; ++c)
            if (mh.copies[static_cast<std::size_t>(c)].edge == k) copies.push_back(c);
        for (int c : copies) {
            auto [t, l] = cert.labeling.label[static_cast<std::size_t>(c)];
            if (t < 1 || t > nt || l < 1 || l > nl) {
                fail("edge " + std::to_string(k + 1) + ": label out of range");
                continue;
            }
            std::size_t slot = static_cast<std::size_t>((t - 1) * nl + (l - 1));
            if (used[slot]) fail("edge " + std::to_string(k + 1) + ": duplicate label");
            used[slot] = 1;
        }
        for (std::size_t a = 0; a < copies.size(); ++a) {
            for (std::size_t b = a + 1; b < copies.size(); ++b) {
                int ca = copies[a], cb = copies[b];
                auto [ta, la] = cert.labeling.label[static_cast<std::size_t>(ca)];
                auto [tb, lb] = cert.labeling.label[static_cast<std::size_t>(cb)];
                int ma = cert.decomposition.map_of[static_cast<std::size_t>(ca)];
                int mb = cert.decomposition.map_of[static_cast<std::size_t>(cb)];
                if (la == lb && ma == mb)
                    fail("edge " + std::to_string(k + 1) +
                         ": copies with equal l share a map");
                if (ta == tb &&
                    cert.decomposition.tail[static_cast<std::size_t>(ca)] ==
                        cert.decomposition.tail[static_cast<std::size_t>(cb)])
                    fail("edge " + std::to_string(k + 1) +
                         ": copies with equal t share a tail");
            }
        }
        // compatibility with the column group of each copy's map
        for (int c : copies) {
            int m = cert.decomposition.map_of[static_cast<std::size_t>(c)];
            if (m < 0 || m >= k_maps) continue; // already reported
            int g = cert.column_group_of_map[static_cast<std::size_t>(m)];
            int t = cert.labeling.label[static_cast<std::size_t>(c)].first;
            if (!group_compatible(e.size(), t, g))
                fail("edge " + std::to_string(k + 1) +
                     ": copy with t=" + std::to_string(t) +
                     " placed in column group " + std::to_string(g));
        }
    }
    return ok;
}

enum class RigidityStatus { MinimallyRigid, NotTight, NoCertificate, ScreenFailed };

inline const char* to_string(RigidityStatus s) {
    switch (s) {
        case RigidityStatus::MinimallyRigid: return "MinimallyRigid";
        case RigidityStatus::NotTight: return "NotTight";
        case RigidityStatus::NoCertificate: return "NoCertificate";
        case RigidityStatus::ScreenFailed: return "ScreenFailed";
    }
    return "?";
}

struct SearchOptions {
    std::uint64_t node_budget = 5000000;
    int brute_bound = 12; // forwarded to count_check
};

struct RigidityVerdict {
    RigidityStatus status = RigidityStatus::NoCertificate;
    std::optional<Certificate> certificate;
    CountCheck counts;
    std::vector<std::vector<int>> flagged_subsets; // overpinned screen hits
    std::uint64_t search_nodes = 0;
    bool exhaustive = true; // false when the node budget cut the search short
};

namespace detail {

// Backtracking search for a map-decomposition plus compatible labeling.
// Copies are interchangeable within an edge, so the labeling is fixed to the
// provisional (t,l) of the expansion and the search assigns each copy a
// (column group, tail) slot. Slots are used at most once per group/vertex
// pair, which makes every group's copies a spanning map. Values are tried
// with the column group descending, so the forced placements (j >= s_k) bind
// first.
class CertificateSearch {
public:
    CertificateSearch(const MultiHypergraph& mh, std::uint64_t budget)
        : mh_(&mh),
          h_(&mh.base),
          n_(mh.base.n_vertices()),
          groups_(mh.base.dim - 1),
          budget_(budget) {}

    bool run() {
        const int nc = mh_->n_copies();
        slot_used_.assign(static_cast<std::size_t>(groups_ * n_), 0);
        group_of_.assign(static_cast<std::size_t>(nc), -1);
        tail_of_.assign(static_cast<std::size_t>(nc), -1);
        // same-l / same-t partners within each edge, for conditions 2(a)/2(b)
        same_l_.assign(static_cast<std::size_t>(nc), {});
        same_t_.assign(static_cast<std::size_t>(nc), {});
        for (int a = 0; a < nc; ++a) {
            for (int b = 0; b < nc; ++b) {
                if (a == b) continue;
                const EdgeCopy& ca = mh_->copies[static_cast<std::size_t>(a)];
                const EdgeCopy& cb = mh_->copies[static_cast<std::size_t>(b)];
                if (ca.edge != cb.edge) continue;
                if (ca.l == cb.l) same_l_[static_cast<std::size_t>(a)].push_back(b);
                if (ca.t == cb.t) same_t_[static_cast<std::size_t>(a)].push_back(b);
            }
        }
        exhausted_ = true;
        return dfs(0);
    }

    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }
    const std::vector<int>& groups() const { return group_of_; }
    const std::vector<int>& tails() const { return tail_of_; }

private:
    struct Value {
        int group;
        int vertex;
    };

    std::vector<Value> domain(int c) const {
        const EdgeCopy& copy = mh_->copies[static_cast<std::size_t>(c)];
        const HyperEdge& e = h_->edges[static_cast<std::size_t>(copy.edge)];
        std::vector<Value> values;
        for (int g = groups_; g >= 1; --g) {
            if (!group_compatible(e.size(), copy.t, g)) continue;
            // condition 2(a): partners with the same l must avoid this group
            bool group_ok = true;
            for (int b : same_l_[static_cast<std::size_t>(c)])
                if (group_of_[static_cast<std::size_t>(b)] == g) {
                    group_ok = false;
                    break;
                }
            if (!group_ok) continue;
            std::vector<int> verts = e.vertices;
            std::sort(verts.begin(), verts.end());
            for (int v : verts) {
                if (slot_used_[slot(g, v)]) continue;
                bool tail_ok = true; // condition 2(b)
                for (int b : same_t_[static_cast<std::size_t>(c)])
                    if (group_of_[static_cast<std::size_t>(b)] != -1 &&
                        tail_of_[static_cast<std::size_t>(b)] == v) {
                        tail_ok = false;
                        break;
                    }
                if (tail_ok) values.push_back(Value{g, v});
            }
        }
        return values;
    }

    bool dfs(int assigned) {
        if (assigned == mh_->n_copies()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = false;
            return false;
        }
        // most-constrained copy next; ties to the lowest copy index
        int best = -1;
        std::vector<Value> best_domain;
        for (int c = 0; c < mh_->n_copies(); ++c) {
            if (group_of_[static_cast<std::size_t>(c)] != -1) continue;
            std::vector<Value> dom = domain(c);
            if (best == -1 || dom.size() < best_domain.size()) {
                best = c;
                best_domain = std::move(dom);
                if (best_domain.empty()) return false;
            }
        }
        for (const Value& val : best_domain) {
            group_of_[static_cast<std::size_t>(best)] = val.group;
            tail_of_[static_cast<std::size_t>(best)] = val.vertex;
            slot_used_[slot(val.group, val.vertex)] = 1;
            if (dfs(assigned + 1)) return true;
            slot_used_[slot(val.group, val.vertex)] = 0;
            group_of_[static_cast<std::size_t>(best)] = -1;
            tail_of_[static_cast<std::size_t>(best)] = -1;
            if (!exhausted_) return false; // budget hit below; unwind
        }
        return false;
    }

    std::size_t slot(int group, int vertex) const {
        return static_cast<std::size_t>((group - 1) * n_ + vertex);
    }

    const MultiHypergraph* mh_;
    const WeightedHypergraph* h_;
    int n_;
    int groups_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = true;
    std::vector<char> slot_used_;
    std::vector<int> group_of_, tail_of_;
    std::vector<std::vector<int>> same_l_, same_t_;
};

// Renumbers maps so they are ordered by their lowest copy index, recording
// the column group each renumbered map serves.
inline Certificate build_certificate(const MultiHypergraph& mh, const std::vector<int>& group_of,
                                     const std::vector<int>& tail_of) {
    const int k_maps = mh.base.dim - 1;
    std::vector<int> first_copy(static_cast<std::size_t>(k_maps), -1);
    for (int c = 0; c < mh.n_copies(); ++c) {
        int g = group_of[static_cast<std::size_t>(c)];
        if (first_copy[static_cast<std::size_t>(g - 1)] == -1)
            first_copy[static_cast<std::size_t>(g - 1)] = c;
    }
    std::vector<int> order(static_cast<std::size_t>(k_maps));
    for (int g = 0; g < k_maps; ++g) order[static_cast<std::size_t>(g)] = g;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return first_copy[static_cast<std::size_t>(a)] < first_copy[static_cast<std::size_t>(b)];
    });
    std::vector<int> map_of_group(static_cast<std::size_t>(k_maps));
    for (int m = 0; m < k_maps; ++m)
        map_of_group[static_cast<std::size_t>(order[static_cast<std::size_t>(m)])] = m;

    Certificate cert;
    cert.column_group_of_map.assign(static_cast<std::size_t>(k_maps), 0);
    for (int m = 0; m < k_maps; ++m)
        cert.column_group_of_map[static_cast<std::size_t>(m)] =
            order[static_cast<std::size_t>(m)] + 1;
    cert.decomposition.map_of.resize(static_cast<std::size_t>(mh.n_copies()));
    cert.decomposition.tail = tail_of;
    cert.labeling.label.resize(static_cast<std::size_t>(mh.n_copies()));
    for (int c = 0; c < mh.n_copies(); ++c) {
        cert.decomposition.map_of[static_cast<std::size_t>(c)] =
            map_of_group[static_cast<std::size_t>(group_of[static_cast<std::size_t>(c)] - 1)];
        cert.labeling.label[static_cast<std::size_t>(c)] = {
            mh.copies[static_cast<std::size_t>(c)].t, mh.copies[static_cast<std::size_t>(c)].l};
    }
    return cert;
}

} // namespace detail

// Decides generic minimal rigidity combinatorially. Order of verdicts:
// counting failure wins (NotTight), then the overpinned screen (ScreenFailed,
// with any certificate found reported alongside, since a certificate may
// exist and still not imply rigidity in that case), then the backtracking
// search (MinimallyRigid or NoCertificate). `exhaustive` is false only when
// the node budget cut the search short, in which case NoCertificate is
// inconclusive.
inline RigidityVerdict find_certificate(const WeightedHypergraph& h,
                                        const SearchOptions& opts = {}) {
    if (!validate(h).valid())
        throw std::invalid_argument("find_certificate: invalid hypergraph");
    RigidityVerdict verdict;
    verdict.counts = count_check(h, opts.brute_bound);
    verdict.flagged_subsets = overpinned_screen(h);
    if (!verdict.counts.tight) {
        verdict.status = RigidityStatus::NotTight;
        return verdict;
    }
    const MultiHypergraph mh = expand(h);
    detail::CertificateSearch search(mh, opts.node_budget);
    bool found = search.run();
    verdict.search_nodes = search.nodes();
    verdict.exhaustive = search.exhausted() || found;
    if (found)
        verdict.certificate = detail::build_certificate(mh, search.groups(), search.tails());
    if (!verdict.flagged_subsets.empty())
        verdict.status = RigidityStatus::ScreenFailed;
    else
        verdict.status = found ? RigidityStatus::MinimallyRigid : RigidityStatus::NoCertificate;
    return verdict;
}

} // namespace rigidlab
