#pragma once

// Maximum weight matching in general graphs, primal-dual with blossom
// shrinking, O(V^3). Port of the classic Galil-style algorithm in the
// arrangement popularized by van Rantwijk's reference implementation.
// Works with real weights; with integer weights all duals stay exactly
// representable (internal values live on the doubled scale).

#include <cassert>
#include <limits>
#include <vector>

namespace decmatch {

struct WeightedEdgeIn {
    int u;
    int v;
    double w;
};

class MaxWeightMatcher {
public:
    MaxWeightMatcher(int nvertex, const std::vector<WeightedEdgeIn>& edges_in)
        : nv_(nvertex), edges_(edges_in) {
        run();
    }

    // mate[v] = matched partner vertex, or -1.
    const std::vector<int>& mate() const { return mate_vertex_; }

    double matched_weight() const {
        double s = 0.0;
        for (const auto& e : edges_)
            if (e.u != e.v && mate_vertex_[static_cast<size_t>(e.u)] == e.v &&
                mate_vertex_[static_cast<size_t>(e.v)] == e.u)
                s += e.w;
        return s;
    }

private:
    int nv_ = 0;
    std::vector<WeightedEdgeIn> edges_;

    int ne_ = 0;
    double maxweight_ = 0.0;
    std::vector<int> endpoint_;               // endpoint[p] = edges_[p/2] side p%2
    std::vector<std::vector<int>> neighbend_; // remote endpoints per vertex
    std::vector<int> mate_;                   // vertex -> remote endpoint or -1
    std::vector<int> label_;                  // per (top-level) blossom: 0 free, 1 S, 2 T
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;

    std::vector<int> mate_vertex_;

    double slack(int k) const {
        const auto& e = edges_[static_cast<size_t>(k)];
        return dualvar_[static_cast<size_t>(e.u)] + dualvar_[static_cast<size_t>(e.v)] - 2.0 * e.w;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < nv_) {
            out.push_back(b);
        } else {
            for (int t : blossomchilds_[static_cast<size_t>(b)]) blossom_leaves(t, out);
        }
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[static_cast<size_t>(w)];
        assert(label_[static_cast<size_t>(w)] == 0 && label_[static_cast<size_t>(b)] == 0);
        label_[static_cast<size_t>(w)] = label_[static_cast<size_t>(b)] = t;
        labelend_[static_cast<size_t>(w)] = labelend_[static_cast<size_t>(b)] = p;
        bestedge_[static_cast<size_t>(w)] = bestedge_[static_cast<size_t>(b)] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue_.insert(queue_.end(), leaves.begin(), leaves.end());
        } else if (t == 2) {
            int base = blossombase_[static_cast<size_t>(b)];
            assert(mate_[static_cast<size_t>(base)] >= 0);
            assign_label(endpoint_[static_cast<size_t>(mate_[static_cast<size_t>(base)])], 1,
                         mate_[static_cast<size_t>(base)] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[static_cast<size_t>(v)];
            if (label_[static_cast<size_t>(b)] & 4) {
                base = blossombase_[static_cast<size_t>(b)];
                break;
            }
            assert(label_[static_cast<size_t>(b)] == 1);
            path.push_back(b);
            label_[static_cast<size_t>(b)] = 5;
            assert(labelend_[static_cast<size_t>(b)] ==
                   mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(b)])]);
            if (labelend_[static_cast<size_t>(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)])];
                b = inblossom_[static_cast<size_t>(v)];
                assert(label_[static_cast<size_t>(b)] == 2);
                assert(labelend_[static_cast<size_t>(b)] >= 0);
                v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[static_cast<size_t>(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[static_cast<size_t>(k)].u;
        int w = edges_[static_cast<size_t>(k)].v;
        int bb = inblossom_[static_cast<size_t>(base)];
        int bv = inblossom_[static_cast<size_t>(v)];
        int bw = inblossom_[static_cast<size_t>(w)];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[static_cast<size_t>(b)] = base;
        blossomparent_[static_cast<size_t>(b)] = -1;
        blossomparent_[static_cast<size_t>(bb)] = b;
        std::vector<int> path;
        std::vector<int> endps;
        while (bv != bb) {
            blossomparent_[static_cast<size_t>(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[static_cast<size_t>(bv)]);
            assert(label_[static_cast<size_t>(bv)] == 2 ||
                   (label_[static_cast<size_t>(bv)] == 1 &&
                    labelend_[static_cast<size_t>(bv)] ==
                        mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(bv)])]));
            assert(labelend_[static_cast<size_t>(bv)] >= 0);
            v = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bv)])];
            bv = inblossom_[static_cast<size_t>(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[static_cast<size_t>(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[static_cast<size_t>(bw)] ^ 1);
            assert(label_[static_cast<size_t>(bw)] == 2 ||
                   (label_[static_cast<size_t>(bw)] == 1 &&
                    labelend_[static_cast<size_t>(bw)] ==
                        mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(bw)])]));
            assert(labelend_[static_cast<size_t>(bw)] >= 0);
            w = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bw)])];
            bw = inblossom_[static_cast<size_t>(w)];
        }
        assert(label_[static_cast<size_t>(bb)] == 1);
        blossomchilds_[static_cast<size_t>(b)] = std::move(path);
        blossomendps_[static_cast<size_t>(b)] = std::move(endps);
        label_[static_cast<size_t>(b)] = 1;
        labelend_[static_cast<size_t>(b)] = labelend_[static_cast<size_t>(bb)];
        dualvar_[static_cast<size_t>(b)] = 0.0;
        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int lv : leaves) {
            if (label_[static_cast<size_t>(inblossom_[static_cast<size_t>(lv)])] == 2)
                queue_.push_back(lv);
            inblossom_[static_cast<size_t>(lv)] = b;
        }

        // merge least-slack edge lists of the sub-blossoms
        std::vector<int> bestedgeto(static_cast<size_t>(2 * nv_), -1);
        for (int bv2 : blossomchilds_[static_cast<size_t>(b)]) {
            std::vector<std::vector<int>> nblists;
            if (blossombestedges_[static_cast<size_t>(bv2)].empty()) {
                std::vector<int> sub_leaves;
                blossom_leaves(bv2, sub_leaves);
                for (int lv : sub_leaves) {
                    std::vector<int> lst;
                    lst.reserve(neighbend_[static_cast<size_t>(lv)].size());
                    for (int p : neighbend_[static_cast<size_t>(lv)]) lst.push_back(p / 2);
                    nblists.push_back(std::move(lst));
                }
            } else {
                nblists.push_back(blossombestedges_[static_cast<size_t>(bv2)]);
            }
            for (const auto& nblist : nblists) {
                for (int k2 : nblist) {
                    int i = edges_[static_cast<size_t>(k2)].u;
                    int j = edges_[static_cast<size_t>(k2)].v;
                    if (inblossom_[static_cast<size_t>(j)] == b) std::swap(i, j);
                    int bj = inblossom_[static_cast<size_t>(j)];
                    if (bj != b && label_[static_cast<size_t>(bj)] == 1 &&
                        (bestedgeto[static_cast<size_t>(bj)] == -1 ||
                         slack(k2) < slack(bestedgeto[static_cast<size_t>(bj)])))
                        bestedgeto[static_cast<size_t>(bj)] = k2;
                }
            }
            blossombestedges_[static_cast<size_t>(bv2)].clear();
            bestedge_[static_cast<size_t>(bv2)] = -1;
        }
        auto& mybest = blossombestedges_[static_cast<size_t>(b)];
        mybest.clear();
        for (int k2 : bestedgeto)
            if (k2 != -1) mybest.push_back(k2);
        int be = -1;
        for (int k2 : mybest)
            if (be == -1 || slack(k2) < slack(be)) be = k2;
        bestedge_[static_cast<size_t>(b)] = be;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[static_cast<size_t>(b)]) {
            blossomparent_[static_cast<size_t>(s)] = -1;
            if (s < nv_) {
                inblossom_[static_cast<size_t>(s)] = s;
            } else if (endstage && dualvar_[static_cast<size_t>(s)] == 0.0) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int lv : leaves) inblossom_[static_cast<size_t>(lv)] = s;
            }
        }
        if (!endstage && label_[static_cast<size_t>(b)] == 2) {
            assert(labelend_[static_cast<size_t>(b)] >= 0);
            int entrychild = inblossom_[static_cast<size_t>(
                endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(b)] ^ 1)])];
            auto& childs = blossomchilds_[static_cast<size_t>(b)];
            auto& endps = blossomendps_[static_cast<size_t>(b)];
            int nchild = static_cast<int>(childs.size());
            int j = 0;
            while (childs[static_cast<size_t>(j)] != entrychild) ++j;
            int jstep, endptrick;
            if (j & 1) {
                j -= nchild;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto at = [&](int idx) -> int {
                int m = idx % nchild;
                if (m < 0) m += nchild;
                return m;
            };
            int p = labelend_[static_cast<size_t>(b)];
            while (j != 0) {
                label_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] = 0;
                int q = endps[static_cast<size_t>(at(j - endptrick))] ^ endptrick ^ 1;
                label_[static_cast<size_t>(endpoint_[static_cast<size_t>(q)])] = 0;
                assign_label(endpoint_[static_cast<size_t>(p ^ 1)], 2, p);
                allowedge_[static_cast<size_t>(endps[static_cast<size_t>(at(j - endptrick))] / 2)] = 1;
                j += jstep;
                p = endps[static_cast<size_t>(at(j - endptrick))] ^ endptrick;
                allowedge_[static_cast<size_t>(p / 2)] = 1;
                j += jstep;
            }
            int bv = childs[static_cast<size_t>(at(j))];
            label_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] =
                label_[static_cast<size_t>(bv)] = 2;
            labelend_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] =
                labelend_[static_cast<size_t>(bv)] = p;
            bestedge_[static_cast<size_t>(bv)] = -1;
            j += jstep;
            while (childs[static_cast<size_t>(at(j))] != entrychild) {
                bv = childs[static_cast<size_t>(at(j))];
                if (label_[static_cast<size_t>(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bv, leaves);
                int lv = -1;
                for (int cand : leaves) {
                    if (label_[static_cast<size_t>(cand)] != 0) {
                        lv = cand;
                        break;
                    }
                }
                if (lv >= 0) {
                    assert(label_[static_cast<size_t>(lv)] == 2);
                    assert(inblossom_[static_cast<size_t>(lv)] == bv);
                    label_[static_cast<size_t>(lv)] = 0;
                    label_[static_cast<size_t>(endpoint_[static_cast<size_t>(
                        mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(bv)])])])] = 0;
                    assign_label(lv, 2, labelend_[static_cast<size_t>(lv)]);
                }
                j += jstep;
            }
        }
        label_[static_cast<size_t>(b)] = -1;
        labelend_[static_cast<size_t>(b)] = -1;
        blossomchilds_[static_cast<size_t>(b)].clear();
        blossomendps_[static_cast<size_t>(b)].clear();
        blossombase_[static_cast<size_t>(b)] = -1;
        blossombestedges_[static_cast<size_t>(b)].clear();
        bestedge_[static_cast<size_t>(b)] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[static_cast<size_t>(t)] != b) t = blossomparent_[static_cast<size_t>(t)];
        if (t >= nv_) augment_blossom(t, v);
        auto& childs = blossomchilds_[static_cast<size_t>(b)];
        auto& endps = blossomendps_[static_cast<size_t>(b)];
        int nchild = static_cast<int>(childs.size());
        int i = 0;
        while (childs[static_cast<size_t>(i)] != t) ++i;
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= nchild;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto at = [&](int idx) -> int {
            int m = idx % nchild;
            if (m < 0) m += nchild;
            return m;
        };
        while (j != 0) {
            j += jstep;
            t = childs[static_cast<size_t>(at(j))];
            int p = endps[static_cast<size_t>(at(j - endptrick))] ^ endptrick;
            if (t >= nv_) augment_blossom(t, endpoint_[static_cast<size_t>(p)]);
            j += jstep;
            t = childs[static_cast<size_t>(at(j))];
            if (t >= nv_) augment_blossom(t, endpoint_[static_cast<size_t>(p ^ 1)]);
            mate_[static_cast<size_t>(endpoint_[static_cast<size_t>(p)])] = p ^ 1;
            mate_[static_cast<size_t>(endpoint_[static_cast<size_t>(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[static_cast<size_t>(b)] =
            blossombase_[static_cast<size_t>(childs[0])];
        assert(blossombase_[static_cast<size_t>(b)] == v);
    }

    void augment_matching(int k) {
        int v = edges_[static_cast<size_t>(k)].u;
        int w = edges_[static_cast<size_t>(k)].v;
        const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (const auto& sp : starts) {
            int s = sp[0];
            int p = sp[1];
            for (;;) {
                int bs = inblossom_[static_cast<size_t>(s)];
                assert(label_[static_cast<size_t>(bs)] == 1);
                assert(labelend_[static_cast<size_t>(bs)] ==
                       mate_[static_cast<size_t>(blossombase_[static_cast<size_t>(bs)])]);
                if (bs >= nv_) augment_blossom(bs, s);
                mate_[static_cast<size_t>(s)] = p;
                if (labelend_[static_cast<size_t>(bs)] == -1) break;
                int t = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bs)])];
                int bt = inblossom_[static_cast<size_t>(t)];
                assert(label_[static_cast<size_t>(bt)] == 2);
                assert(labelend_[static_cast<size_t>(bt)] >= 0);
                s = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bt)])];
                int j = endpoint_[static_cast<size_t>(labelend_[static_cast<size_t>(bt)] ^ 1)];
                assert(blossombase_[static_cast<size_t>(bt)] == t);
                if (bt >= nv_) augment_blossom(bt, j);
                mate_[static_cast<size_t>(j)] = labelend_[static_cast<size_t>(bt)];
                p = labelend_[static_cast<size_t>(bt)] ^ 1;
            }
        }
    }

    void run() {
        mate_vertex_.assign(static_cast<size_t>(nv_), -1);
        // drop self-loops and non-positive weights; they never help a matching
        std::vector<WeightedEdgeIn> filtered;
        filtered.reserve(edges_.size());
        for (const auto& e : edges_)
            if (e.u != e.v && e.w > 0.0) filtered.push_back(e);
        std::vector<WeightedEdgeIn> all_edges = edges_;
        edges_ = std::move(filtered);
        ne_ = static_cast<int>(edges_.size());
        if (nv_ == 0 || ne_ == 0) {
            edges_ = std::move(all_edges);
            return;
        }
        maxweight_ = 0.0;
        for (const auto& e : edges_) maxweight_ = std::max(maxweight_, e.w);

        endpoint_.resize(static_cast<size_t>(2 * ne_));
        for (int p = 0; p < 2 * ne_; ++p)
            endpoint_[static_cast<size_t>(p)] =
                (p % 2 == 0) ? edges_[static_cast<size_t>(p / 2)].u : edges_[static_cast<size_t>(p / 2)].v;
        neighbend_.assign(static_cast<size_t>(nv_), {});
        for (int k = 0; k < ne_; ++k) {
            neighbend_[static_cast<size_t>(edges_[static_cast<size_t>(k)].u)].push_back(2 * k + 1);
            neighbend_[static_cast<size_t>(edges_[static_cast<size_t>(k)].v)].push_back(2 * k);
        }

        mate_.assign(static_cast<size_t>(nv_), -1);
        label_.assign(static_cast<size_t>(2 * nv_), 0);
        labelend_.assign(static_cast<size_t>(2 * nv_), -1);
        inblossom_.resize(static_cast<size_t>(nv_));
        for (int v = 0; v < nv_; ++v) inblossom_[static_cast<size_t>(v)] = v;
        blossomparent_.assign(static_cast<size_t>(2 * nv_), -1);
        blossomchilds_.assign(static_cast<size_t>(2 * nv_), {});
        blossombase_.resize(static_cast<size_t>(2 * nv_));
        for (int v = 0; v < nv_; ++v) blossombase_[static_cast<size_t>(v)] = v;
        for (int b = nv_; b < 2 * nv_; ++b) blossombase_[static_cast<size_t>(b)] = -1;
        blossomendps_.assign(static_cast<size_t>(2 * nv_), {});
        bestedge_.assign(static_cast<size_t>(2 * nv_), -1);
        blossombestedges_.assign(static_cast<size_t>(2 * nv_), {});
        unusedblossoms_.clear();
        for (int b = nv_; b < 2 * nv_; ++b) unusedblossoms_.push_back(b);
        dualvar_.assign(static_cast<size_t>(2 * nv_), 0.0);
        for (int v = 0; v < nv_; ++v) dualvar_[static_cast<size_t>(v)] = maxweight_;
        allowedge_.assign(static_cast<size_t>(ne_), 0);

        for (int iter = 0; iter < nv_; ++iter) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv_; b < 2 * nv_; ++b) blossombestedges_[static_cast<size_t>(b)].clear();
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < nv_; ++v)
                if (mate_[static_cast<size_t>(v)] == -1 &&
                    label_[static_cast<size_t>(inblossom_[static_cast<size_t>(v)])] == 0)
                    assign_label(v, 1, -1);
            bool augmented = false;
            for (;;) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[static_cast<size_t>(inblossom_[static_cast<size_t>(v)])] == 1);
                    for (int p : neighbend_[static_cast<size_t>(v)]) {
                        int k = p / 2;
                        int w = endpoint_[static_cast<size_t>(p)];
                        if (inblossom_[static_cast<size_t>(v)] == inblossom_[static_cast<size_t>(w)])
                            continue;
                        double kslack = 0.0;
                        if (!allowedge_[static_cast<size_t>(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0.0) allowedge_[static_cast<size_t>(k)] = 1;
                        }
                        if (allowedge_[static_cast<size_t>(k)]) {
                            if (label_[static_cast<size_t>(inblossom_[static_cast<size_t>(w)])] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[static_cast<size_t>(
                                           inblossom_[static_cast<size_t>(w)])] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[static_cast<size_t>(w)] == 0) {
                                label_[static_cast<size_t>(w)] = 2;
                                labelend_[static_cast<size_t>(w)] = p ^ 1;
                            }
                        } else if (label_[static_cast<size_t>(inblossom_[static_cast<size_t>(w)])] ==
                                   1) {
                            int b = inblossom_[static_cast<size_t>(v)];
                            if (bestedge_[static_cast<size_t>(b)] == -1 ||
                                kslack < slack(bestedge_[static_cast<size_t>(b)]))
                                bestedge_[static_cast<size_t>(b)] = k;
                        } else if (label_[static_cast<size_t>(w)] == 0) {
                            if (bestedge_[static_cast<size_t>(w)] == -1 ||
                                kslack < slack(bestedge_[static_cast<size_t>(w)]))
                                bestedge_[static_cast<size_t>(w)] = k;
                        }
                    }
                }
                if (augmented) break;

                int deltatype = -1;
                double delta = 0.0;
                int deltaedge = -1;
                int deltablossom = -1;
                deltatype = 1;
                delta = std::numeric_limits<double>::infinity();
                for (int v = 0; v < nv_; ++v) delta = std::min(delta, dualvar_[static_cast<size_t>(v)]);
                for (int v = 0; v < nv_; ++v) {
                    if (label_[static_cast<size_t>(inblossom_[static_cast<size_t>(v)])] == 0 &&
                        bestedge_[static_cast<size_t>(v)] != -1) {
                        double d = slack(bestedge_[static_cast<size_t>(v)]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[static_cast<size_t>(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * nv_; ++b) {
                    if (blossomparent_[static_cast<size_t>(b)] == -1 &&
                        label_[static_cast<size_t>(b)] == 1 &&
                        bestedge_[static_cast<size_t>(b)] != -1) {
                        double d = slack(bestedge_[static_cast<size_t>(b)]) / 2.0;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[static_cast<size_t>(b)];
                        }
                    }
                }
                for (int b = nv_; b < 2 * nv_; ++b) {
                    if (blossombase_[static_cast<size_t>(b)] >= 0 &&
                        blossomparent_[static_cast<size_t>(b)] == -1 &&
                        label_[static_cast<size_t>(b)] == 2 &&
                        (deltatype == -1 || dualvar_[static_cast<size_t>(b)] < delta)) {
                        delta = dualvar_[static_cast<size_t>(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < nv_; ++v) {
                    int lbl = label_[static_cast<size_t>(inblossom_[static_cast<size_t>(v)])];
                    if (lbl == 1)
                        dualvar_[static_cast<size_t>(v)] -= delta;
                    else if (lbl == 2)
                        dualvar_[static_cast<size_t>(v)] += delta;
                }
                for (int b = nv_; b < 2 * nv_; ++b) {
                    if (blossombase_[static_cast<size_t>(b)] >= 0 &&
                        blossomparent_[static_cast<size_t>(b)] == -1) {
                        if (label_[static_cast<size_t>(b)] == 1)
                            dualvar_[static_cast<size_t>(b)] += delta;
                        else if (label_[static_cast<size_t>(b)] == 2)
                            dualvar_[static_cast<size_t>(b)] -= delta;
                    }
                }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[static_cast<size_t>(deltaedge)] = 1;
                    int i = edges_[static_cast<size_t>(deltaedge)].u;
                    if (label_[static_cast<size_t>(inblossom_[static_cast<size_t>(i)])] == 0)
                        i = edges_[static_cast<size_t>(deltaedge)].v;
                    assert(label_[static_cast<size_t>(inblossom_[static_cast<size_t>(i)])] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[static_cast<size_t>(deltaedge)] = 1;
                    int i = edges_[static_cast<size_t>(deltaedge)].u;
                    assert(label_[static_cast<size_t>(inblossom_[static_cast<size_t>(i)])] == 1);
                    queue_.push_back(i);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = nv_; b < 2 * nv_; ++b)
                if (blossomparent_[static_cast<size_t>(b)] == -1 &&
                    blossombase_[static_cast<size_t>(b)] >= 0 &&
                    label_[static_cast<size_t>(b)] == 2 && dualvar_[static_cast<size_t>(b)] == 0.0)
                    expand_blossom(b, true);
        }

        for (int v = 0; v < nv_; ++v)
            if (mate_[static_cast<size_t>(v)] >= 0)
                mate_vertex_[static_cast<size_t>(v)] =
                    endpoint_[static_cast<size_t>(mate_[static_cast<size_t>(v)])];
        edges_ = std::move(all_edges);
    }
};

// Convenience front end: returns mate vector (partner or -1).
inline std::vector<int> max_weight_matching(int n, const std::vector<WeightedEdgeIn>& edges) {
    return MaxWeightMatcher(n, edges).mate();
}

}  // namespace decmatch
