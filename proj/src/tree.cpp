#include "opal/tree.hpp"

#include <algorithm>
#include <tuple>
#include <sstream>

namespace opal {

namespace {

// Consumes one subtree code starting at pos; returns position after it.
size_t scan(const std::vector<int>& code, size_t pos) {
    check(pos < code.size(), errc::validation, "truncated tree code");
    int a = code[pos++];
    if (a == 0) return pos;
    check(a >= 1, errc::validation, "bad arity in tree code");
    for (int i = 0; i < a; ++i) pos = scan(code, pos);
    return pos;
}

} // namespace

PlanarTree::PlanarTree(std::vector<int> code) : code_(std::move(code)) {
    check(!code_.empty() && code_[0] >= 1, errc::validation, "tree root must be a vertex");
    check(scan(code_, 0) == code_.size(), errc::validation, "trailing data in tree code");
}

PlanarTree PlanarTree::corolla(int arity) {
    check(arity >= 1, errc::validation, "corolla arity must be positive");
    std::vector<int> code{arity};
    code.insert(code.end(), arity, 0);
    return PlanarTree(std::move(code));
}

int PlanarTree::arity() const {
    int n = 0;
    for (int x : code_)
        if (x == 0) ++n;
    return n;
}

int PlanarTree::weight() const {
    int n = 0;
    for (int x : code_)
        if (x != 0) ++n;
    return n;
}

void PlanarTree::decode() const {
    if (decoded_) return;
    verts_.clear();
    edges_.clear();
    int leaf_no = 0;
    // Recursive descent over the code.
    struct Walker {
        const std::vector<int>& code;
        std::vector<Vertex>& verts;
        std::vector<Edge>& edges;
        int& leaf_no;
        size_t pos = 0;
        int walk(int parent, int slot) {
            int a = code[pos++];
            int me = (int)verts.size();
            verts.push_back({a, parent, slot, {}, leaf_no, 0});
            if (parent >= 0) edges.push_back({parent, me, slot});
            for (int s = 1; s <= a; ++s) {
                if (code[pos] == 0) {
                    ++pos;
                    verts[me].slots.push_back(leaf_no++);
                } else {
                    int child = walk(me, s);
                    verts[me].slots.push_back(~child);
                }
            }
            verts[me].n_leaves = leaf_no - verts[me].first_leaf;
            return me;
        }
    };
    Walker w{code_, verts_, edges_, leaf_no};
    w.walk(-1, 0);
    // Edges were recorded when first entering a child, i.e. in preorder of the
    // child vertex; canonical order = order of first encounter on the walk.
    decoded_ = true;
}

const std::vector<PlanarTree::Vertex>& PlanarTree::vertices() const {
    decode();
    return verts_;
}

const std::vector<PlanarTree::Edge>& PlanarTree::internal_edges() const {
    decode();
    return edges_;
}

std::string PlanarTree::str() const {
    std::ostringstream os;
    size_t pos = 0;
    struct P {
        const std::vector<int>& code;
        std::ostringstream& os;
        size_t& pos;
        void go() {
            int a = code[pos++];
            if (a == 0) {
                os << "*";
                return;
            }
            os << "(" << a;
            for (int i = 0; i < a; ++i) {
                os << " ";
                go();
            }
            os << ")";
        }
    };
    P p{code_, os, pos};
    p.go();
    return os.str();
}

namespace {

// Rebuilds a code from a decoded view, with vertex `drop_child` merged into
// its parent (slots spliced in place).
void rebuild(const std::vector<PlanarTree::Vertex>& verts, int v, int drop_child,
             std::vector<int>& out) {
    std::vector<int> flat;
    auto emit = [&](auto&& self, int vert) -> void {
        // gather effective slots (splicing the dropped child's slots)
        std::vector<int> eff;
        for (int s : verts[vert].slots) {
            if (s < 0 && ~s == drop_child) {
                for (int t : verts[drop_child].slots) eff.push_back(t);
            } else {
                eff.push_back(s);
            }
        }
        flat.push_back((int)eff.size());
        for (int s : eff) {
            if (s >= 0)
                flat.push_back(0);
            else
                self(self, ~s);
        }
    };
    emit(emit, v);
    out = flat;
}

} // namespace

std::pair<PlanarTree, int> PlanarTree::contract_edge(int idx) const {
    decode();
    check(idx >= 0 && idx < (int)edges_.size(), errc::external_edge,
          "edge index out of range (external edges cannot be contracted)");
    int child = edges_[idx].child;
    std::vector<int> code;
    rebuild(verts_, 0, child, code);
    int sign = idx % 2 == 0 ? 1 : -1;
    return {PlanarTree(std::move(code)), sign};
}

PlanarTree PlanarTree::graft(int leaf, const PlanarTree& inner) const {
    decode();
    check(leaf >= 0 && leaf < arity(), errc::validation, "graft leaf out of range");
    // Walk the code; replace the leaf-th 0 with inner's code.
    std::vector<int> out;
    int seen = 0;
    for (int x : code_) {
        if (x == 0) {
            if (seen++ == leaf) {
                out.insert(out.end(), inner.code().begin(), inner.code().end());
                continue;
            }
        }
        out.push_back(x);
    }
    return PlanarTree(std::move(out));
}

int PlanarTree::graft_pos(int leaf) const {
    check(leaf >= 0 && leaf < arity(), errc::validation, "graft leaf out of range");
    int seen = 0, entered = 0;
    for (int x : code_) {
        if (x == 0) {
            if (seen == leaf) break;
            ++seen;
        } else {
            ++entered;
        }
    }
    return entered;
}

std::pair<PlanarTree, std::vector<std::pair<int, int>>> substitute_vertex(const PlanarTree& t,
                                                                          int v,
                                                                          const PlanarTree& u) {
    const auto& tv = t.vertices();
    const auto& uv = u.vertices();
    check(v >= 0 && v < (int)tv.size(), errc::validation, "vertex out of range");
    check(u.arity() == tv[v].arity, errc::validation, "substitution arity mismatch");
    std::vector<int> code;
    std::vector<std::pair<int, int>> trace;
    auto emit_t = [&](auto&& self, auto&& emit_u_ref, int tvert) -> void {
        if (tvert == v) {
            emit_u_ref(emit_u_ref, self, 0);
            return;
        }
        code.push_back(tv[tvert].arity);
        trace.push_back({0, tvert});
        for (int s : tv[tvert].slots) {
            if (s >= 0)
                code.push_back(0);
            else
                self(self, emit_u_ref, ~s);
        }
    };
    auto emit_u = [&](auto&& self, auto&& emit_t_ref, int uvert) -> void {
        code.push_back(uv[uvert].arity);
        trace.push_back({1, uvert});
        for (int s : uv[uvert].slots) {
            if (s >= 0) {
                // u-leaf #s corresponds to slot #s of vertex v in t
                int tslot = tv[v].slots[s];
                if (tslot >= 0)
                    code.push_back(0);
                else
                    emit_t_ref(emit_t_ref, self, ~tslot);
            } else {
                self(self, emit_t_ref, ~s);
            }
        }
    };
    emit_t(emit_t, emit_u, 0);
    return {PlanarTree(std::move(code)), std::move(trace)};
}

namespace {

using Codes = std::vector<std::vector<int>>;

struct TreeGen {
    int min_arity;
    std::map<std::pair<int, int>, Codes> trees_memo;
    std::map<std::tuple<int, int, int>, Codes> forest_memo;

    const Codes& trees(int leaves, int verts) {
        auto key = std::make_pair(leaves, verts);
        auto it = trees_memo.find(key);
        if (it != trees_memo.end()) return it->second;
        Codes out;
        if (leaves >= 1 && verts >= 1) {
            for (int a = min_arity; a <= leaves; ++a) {
                for (const auto& k : forest(a, leaves, verts - 1)) {
                    std::vector<int> v{a};
                    v.insert(v.end(), k.begin(), k.end());
                    out.push_back(std::move(v));
                }
            }
        }
        return trees_memo.emplace(key, std::move(out)).first->second;
    }

    // All sequences of `slots` slots (leaf or subtree) with the given totals.
    const Codes& forest(int slots, int leaves, int verts) {
        auto key = std::make_tuple(slots, leaves, verts);
        auto it = forest_memo.find(key);
        if (it != forest_memo.end()) return it->second;
        Codes out;
        if (slots == 0) {
            if (leaves == 0 && verts == 0) out.push_back({});
        } else {
            if (leaves >= 1)
                for (const auto& r : forest(slots - 1, leaves - 1, verts)) {
                    std::vector<int> v{0};
                    v.insert(v.end(), r.begin(), r.end());
                    out.push_back(std::move(v));
                }
            for (int l = 1; l <= leaves; ++l)
                for (int w = 1; w <= verts; ++w) {
                    const Codes& heads = trees(l, w);
                    if (heads.empty()) continue;
                    const Codes& rest = forest(slots - 1, leaves - l, verts - w);
                    for (const auto& h : heads)
                        for (const auto& r : rest) {
                            std::vector<int> v = h;
                            v.insert(v.end(), r.begin(), r.end());
                            out.push_back(std::move(v));
                        }
                }
        }
        return forest_memo.emplace(key, std::move(out)).first->second;
    }
};

} // namespace

std::vector<PlanarTree> enumerate_trees(int n_leaves, int n_vertices, int min_arity) {
    check(n_leaves >= 1, errc::validation, "need at least one leaf");
    TreeGen gen{min_arity, {}, {}};
    Codes codes = gen.trees(n_leaves, n_vertices);
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<PlanarTree> out;
    out.reserve(codes.size());
    for (auto& c : codes) out.emplace_back(std::move(c));
    return out;
}

std::vector<PlanarTree> enumerate_trees_up_to(int max_leaves, int max_vertices, int min_arity) {
    std::vector<PlanarTree> out;
    for (int l = 1; l <= max_leaves; ++l)
        for (int w = 1; w <= max_vertices; ++w) {
            auto t = enumerate_trees(l, w, min_arity);
            out.insert(out.end(), t.begin(), t.end());
        }
    return out;
}

ComplexPtr det_complex(const PlanarTree& t, const Field& f) {
    int ne = (int)t.internal_edges().size();
    std::map<int, std::vector<Label>> basis;
    std::map<Label, LinComb> d;
    for (long mask = 0; mask < (1L << ne); ++mask) {
        std::vector<long> nums;
        for (int e = 0; e < ne; ++e)
            if (mask & (1L << e)) nums.push_back(e);
        basis[-(int)nums.size()].push_back(Label(Tag::subset, nums));
    }
    for (auto& [deg, labels] : basis) std::sort(labels.begin(), labels.end());
    for (const auto& [deg, labels] : basis) {
        for (const Label& l : labels) {
            const auto& s = l.nums();
            LinComb img(f);
            for (size_t j = 0; j < s.size(); ++j) {
                std::vector<long> rest;
                for (size_t k = 0; k < s.size(); ++k)
                    if (k != j) rest.push_back(s[k]);
                Scalar sgn = j % 2 == 0 ? Scalar::one(f) : -Scalar::one(f);
                img.add(Label(Tag::subset, rest), sgn);
            }
            if (!img.is_zero()) d.emplace(l, std::move(img));
        }
    }
    return Complex::make(f, std::move(basis), std::move(d));
}

} // namespace opal
