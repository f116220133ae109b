#include "opal/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace opal {

TwoCatShape TwoCatShape::one_point(const std::vector<std::string>& colors) {
    TwoCatShape s(1);
    for (const auto& c : colors) s.add_cell(0, 0, c);
    return s;
}

int TwoCatShape::add_cell(int src, int tgt, std::string name, bool unit) {
    check(src >= 0 && src < n_objects_ && tgt >= 0 && tgt < n_objects_, errc::validation,
          "1-cell endpoints out of range");
    check(!unit || src == tgt, errc::validation, "unit 1-cell must be an endomorphism");
    if (unit)
        for (const auto& c : cells_)
            check(!(c.unit && c.src == src), errc::validation, "duplicate unit at object");
    cells_.push_back({src, tgt, std::move(name), unit});
    return (int)cells_.size() - 1;
}

int TwoCatShape::unit_at(int obj) const {
    for (size_t e = 0; e < cells_.size(); ++e)
        if (cells_[e].unit && cells_[e].src == obj) return (int)e;
    return -1;
}

int TwoCatShape::find(const std::string& name) const {
    for (size_t e = 0; e < cells_.size(); ++e)
        if (cells_[e].name == name) return (int)e;
    fail(errc::unknown_name, "no 1-cell named " + name);
}

bool TwoCatShape::composable(const std::vector<int>& path) const {
    for (size_t i = 0; i < path.size(); ++i) {
        if (path[i] < 0 || path[i] >= (int)cells_.size()) return false;
        if (i + 1 < path.size() && tgt(path[i]) != src(path[i + 1])) return false;
    }
    return true;
}

bool TwoCatShape::operator==(const TwoCatShape& o) const {
    if (n_objects_ != o.n_objects_ || cells_.size() != o.cells_.size()) return false;
    for (size_t i = 0; i < cells_.size(); ++i) {
        const auto& a = cells_[i];
        const auto& b = o.cells_[i];
        if (a.src != b.src || a.tgt != b.tgt || a.name != b.name || a.unit != b.unit) return false;
    }
    return true;
}

std::string Cell::str(const TwoCatShape& s) const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < top.size(); ++i) os << (i ? "," : "") << s.cell(top[i]).name;
    os << ";" << s.cell(bot).name << ")";
    return os.str();
}

void validate_cell(const TwoCatShape& s, const Cell& c) {
    check(!c.top.empty(), errc::validation, "cell needs a nonempty top path");
    check(s.composable(c.top), errc::inconsistent_labels, "top path is not composable");
    check(c.bot >= 0 && c.bot < s.n_cells(), errc::inconsistent_labels, "bot out of range");
    check(s.src(c.top.front()) == s.src(c.bot) && s.tgt(c.top.back()) == s.tgt(c.bot),
          errc::inconsistent_labels, "top and bot endpoints differ");
}

std::vector<std::vector<int>> enumerate_paths(const TwoCatShape& s, int n, int i, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int at, int left) -> void {
        if (left == 0) {
            if (at == j) out.push_back(cur);
            return;
        }
        for (int e = 0; e < s.n_cells(); ++e) {
            if (s.src(e) != at) continue;
            cur.push_back(e);
            self(self, s.tgt(e), left - 1);
            cur.pop_back();
        }
    };
    rec(rec, i, n);
    return out;
}

std::vector<Cell> enumerate_cells(const TwoCatShape& s, int n) {
    std::vector<Cell> out;
    for (int i = 0; i < s.n_objects(); ++i)
        for (int j = 0; j < s.n_objects(); ++j)
            for (const auto& p : enumerate_paths(s, n, i, j))
                for (int e = 0; e < s.n_cells(); ++e)
                    if (s.src(e) == i && s.tgt(e) == j) out.push_back({p, e});
    std::sort(out.begin(), out.end());
    return out;
}

Cell glue_cells(const Cell& outer, const Cell& inner, int k) {
    check(k >= 1 && k <= (int)outer.top.size(), errc::mismatched_edge, "slot out of range");
    check(outer.top[k - 1] == inner.bot, errc::mismatched_edge,
          "slot edge does not match bot of inner cell");
    Cell out;
    out.bot = outer.bot;
    out.top.insert(out.top.end(), outer.top.begin(), outer.top.begin() + (k - 1));
    out.top.insert(out.top.end(), inner.top.begin(), inner.top.end());
    out.top.insert(out.top.end(), outer.top.begin() + k, outer.top.end());
    return out;
}

ChordDiagram::ChordDiagram(const TwoCatShape* shape, PlanarTree tree, std::vector<int> leaf_labels,
                           int root_label, std::vector<int> chord_labels)
    : shape_(shape),
      tree_(std::move(tree)),
      leaf_labels_(std::move(leaf_labels)),
      root_label_(root_label),
      chord_labels_(std::move(chord_labels)) {
    check((int)leaf_labels_.size() == tree_.arity(), errc::inconsistent_labels,
          "one label per leaf required");
    check((int)chord_labels_.size() == (int)tree_.internal_edges().size(),
          errc::inconsistent_labels, "one label per internal edge required");
    for (int v = 0; v < tree_.weight(); ++v) validate_cell(*shape_, cell_at(v));
}

ChordDiagram ChordDiagram::single(const TwoCatShape* shape, const Cell& c) {
    validate_cell(*shape, c);
    return ChordDiagram(shape, PlanarTree::corolla((int)c.top.size()), c.top, c.bot, {});
}

Cell ChordDiagram::cell_at(int vertex) const {
    const auto& verts = tree_.vertices();
    const auto& edges = tree_.internal_edges();
    check(vertex >= 0 && vertex < (int)verts.size(), errc::validation, "vertex out of range");
    Cell c;
    // output edge label
    if (vertex == 0) {
        c.bot = root_label_;
    } else {
        for (size_t e = 0; e < edges.size(); ++e)
            if (edges[e].child == vertex) c.bot = chord_labels_[e];
    }
    for (int s : verts[vertex].slots) {
        if (s >= 0) {
            c.top.push_back(leaf_labels_[s]);
        } else {
            int child = ~s;
            for (size_t e = 0; e < edges.size(); ++e)
                if (edges[e].child == child) c.top.push_back(chord_labels_[e]);
        }
    }
    return c;
}

std::vector<Cell> ChordDiagram::cells() const {
    std::vector<Cell> out;
    for (int v = 0; v < tree_.weight(); ++v) out.push_back(cell_at(v));
    return out;
}

std::vector<int> ChordDiagram::corners() const {
    int n = (int)leaf_labels_.size();
    std::vector<int> c(n + 1);
    for (int i = 0; i < n; ++i) c[i] = shape_->src(leaf_labels_[i]);
    c[n] = shape_->tgt(leaf_labels_[n - 1]);
    return c;
}

std::vector<ChordDiagram::Chord> ChordDiagram::chords() const {
    const auto& verts = tree_.vertices();
    const auto& edges = tree_.internal_edges();
    std::vector<Chord> out;
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& v = verts[edges[e].child];
        int a = v.first_leaf;
        int b = v.first_leaf + v.n_leaves;
        out.push_back({a, b, 0, chord_labels_[e]});
    }
    // nesting level among chords with equal endpoints: an edge deeper in the
    // tree is closer to the top path; level 0 = closest to bot.
    for (size_t e = 0; e < edges.size(); ++e) {
        int depth = 0;
        int at = edges[e].child;
        while (verts[at].parent >= 0) {
            int p = verts[at].parent;
            for (size_t e2 = 0; e2 < edges.size(); ++e2)
                if (edges[e2].child == p && out[e2].a == out[e].a && out[e2].b == out[e].b)
                    ++depth;
            at = p;
        }
        out[e].level = depth;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<ChordDiagram, int> ChordDiagram::contract(int edge_idx) const {
    check(edge_idx >= 0 && edge_idx < (int)chord_labels_.size(), errc::external_edge,
          "chord index out of range");
    auto [t, sign] = tree_.contract_edge(edge_idx);
    std::vector<int> labels = chord_labels_;
    labels.erase(labels.begin() + edge_idx);
    return {ChordDiagram(shape_, std::move(t), leaf_labels_, root_label_, std::move(labels)), sign};
}

ChordDiagram ChordDiagram::graft(int leaf, const ChordDiagram& inner) const {
    check(leaf >= 0 && leaf < (int)leaf_labels_.size(), errc::validation, "leaf out of range");
    check(leaf_labels_[leaf] == inner.root_label_, errc::mismatched_edge,
          "gluing edge labels do not match");
    PlanarTree t = tree_.graft(leaf, inner.tree_);
    std::vector<int> leaves;
    leaves.insert(leaves.end(), leaf_labels_.begin(), leaf_labels_.begin() + leaf);
    leaves.insert(leaves.end(), inner.leaf_labels_.begin(), inner.leaf_labels_.end());
    leaves.insert(leaves.end(), leaf_labels_.begin() + leaf + 1, leaf_labels_.end());
    // Rebuild chord labels in the canonical edge order of the grafted tree:
    // old edges keep identity; the gluing edge + inner edges slot in.
    std::map<std::pair<int, int>, int> by_span_outer, by_span_inner;
    // identify edges by (child first_leaf, depth counter) — simpler: recompute
    // by walking both trees' edges in order and matching spans.
    const auto& new_edges = t.internal_edges();
    std::vector<int> labels(new_edges.size(), -1);
    // Map: edges of the result tree correspond to: edges of outer (same
    // relative order), then the gluing edge, then edges of inner — but the
    // canonical order interleaves them. Match by walking result edges and
    // classifying each child vertex: outer vertices keep preorder rank among
    // outer vertices; inner vertices likewise.
    int pos = 0; // preorder index that inner's root receives
    {
        int seen = 0;
        const auto& code = tree_.code();
        int entered = 0;
        for (int x : code) {
            if (x == 0) {
                if (seen == leaf) break;
                ++seen;
            } else {
                ++entered;
            }
        }
        pos = entered;
    }
    int wi = inner.tree_.weight();
    auto old_outer_index = [&](int v) { return v < pos ? v : v - wi; };
    auto inner_index = [&](int v) { return v - pos; };
    auto is_inner = [&](int v) { return v >= pos && v < pos + wi; };
    // Precompute outer/inner edge lookup child->edge idx.
    std::map<int, int> outer_edge_of_child, inner_edge_of_child;
    for (size_t e = 0; e < tree_.internal_edges().size(); ++e)
        outer_edge_of_child[tree_.internal_edges()[e].child] = (int)e;
    for (size_t e = 0; e < inner.tree_.internal_edges().size(); ++e)
        inner_edge_of_child[inner.tree_.internal_edges()[e].child] = (int)e;
    for (size_t e = 0; e < new_edges.size(); ++e) {
        int child = new_edges[e].child;
        if (is_inner(child)) {
            int ic = inner_index(child);
            if (ic == 0)
                labels[e] = inner.root_label_; // the gluing edge
            else
                labels[e] = inner.chord_labels_[inner_edge_of_child.at(ic)];
        } else {
            labels[e] = chord_labels_[outer_edge_of_child.at(old_outer_index(child))];
        }
    }
    return ChordDiagram(shape_, std::move(t), std::move(leaves), root_label_, std::move(labels));
}

bool ChordDiagram::operator<(const ChordDiagram& o) const {
    if (!(tree_ == o.tree_)) return tree_ < o.tree_;
    if (leaf_labels_ != o.leaf_labels_) return leaf_labels_ < o.leaf_labels_;
    if (root_label_ != o.root_label_) return root_label_ < o.root_label_;
    return chord_labels_ < o.chord_labels_;
}

std::string ChordDiagram::str() const {
    std::ostringstream os;
    os << outer_cell().str(*shape_) << " chords{";
    auto cs = chords();
    for (size_t i = 0; i < cs.size(); ++i)
        os << (i ? " " : "") << cs[i].a << "-" << cs[i].b << ":" << shape_->cell(cs[i].label).name
           << "/" << cs[i].level;
    os << "}";
    return os.str();
}

ChordDiagram diagram_from_polygon(const TwoCatShape& shape, const std::vector<int>& top, int bot,
                                  std::vector<ChordDiagram::Chord> chords) {
    int n = (int)top.size();
    check(n >= 1, errc::inconsistent_labels, "empty top path");
    // Sort chords so that enclosing chords come first; equal spans by level
    // descending (outermost = lowest level encloses higher levels? level 0 is
    // closest to bot, i.e. outermost towards the root).
    std::sort(chords.begin(), chords.end(), [](const auto& x, const auto& y) {
        int sx = x.b - x.a, sy = y.b - y.a;
        if (x.a != y.a || x.b != y.b) {
            if (x.a <= y.a && y.b <= x.b) return true;  // x encloses y
            if (y.a <= x.a && x.b <= y.b) return false; // y encloses x
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        }
        (void)sx;
        (void)sy;
        return x.level < y.level;
    });
    // Build nested structure greedily: start from the single outer cell and
    // repeatedly graft; simpler: recursive construction over the laminar
    // family. Verify non-crossing.
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j) {
            const auto& x = chords[i];
            const auto& y = chords[j];
            bool disjoint = y.a >= x.b || x.a >= y.b;
            bool nested = (x.a <= y.a && y.b <= x.b) || (y.a <= x.a && x.b <= y.b);
            check(disjoint || nested, errc::inconsistent_labels, "crossing chords");
        }
    // Recursive assembly: chords sorted outermost-first; take the outermost
    // "layer" covering disjoint spans directly visible from the bot.
    struct Builder {
        const TwoCatShape& shape;
        const std::vector<int>& top;
        // Build the diagram for the interval [lo, hi) of top edges with the
        // given output label, using the chords fully inside.
        ChordDiagram build(int lo, int hi, int out_label,
                           std::vector<ChordDiagram::Chord> inside) {
            // find the outermost layer: chords not contained in any other
            std::vector<int> order; // indices into inside, the direct children
            std::vector<char> covered(inside.size(), 0);
            for (size_t i = 0; i < inside.size(); ++i)
                for (size_t j = 0; j < inside.size(); ++j) {
                    if (i == j) continue;
                    const auto& x = inside[j];
                    const auto& y = inside[i];
                    bool strict = (x.a < y.a && y.b <= x.b) || (x.a <= y.a && y.b < x.b) ||
                                  (x.a == y.a && x.b == y.b && x.level < y.level);
                    if (strict) {
                        covered[i] = 1;
                        break;
                    }
                }
            for (size_t i = 0; i < inside.size(); ++i)
                if (!covered[i]) order.push_back((int)i);
            // sort direct children by position
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return std::tie(inside[x].a, inside[x].b) < std::tie(inside[y].a, inside[y].b);
            });
            // the root cell: slots = leaves outside child spans + child chords
            std::vector<int> cell_top;
            std::vector<ChordDiagram> kids;
            std::vector<int> kid_slots; // slot position (1-based) of each child
            int at = lo;
            for (int ci : order) {
                const auto& ch = inside[ci];
                for (int p = at; p < ch.a; ++p) cell_top.push_back(top[p]);
                // child diagram: chords strictly inside ch
                std::vector<ChordDiagram::Chord> sub;
                for (size_t j = 0; j < inside.size(); ++j) {
                    if ((int)j == ci) continue;
                    const auto& x = inside[j];
                    bool within = (ch.a <= x.a && x.b <= ch.b);
                    if (x.a == ch.a && x.b == ch.b) within = x.level > ch.level;
                    if (within) sub.push_back(x);
                }
                kids.push_back(build(ch.a, ch.b, ch.label, std::move(sub)));
                cell_top.push_back(ch.label);
                kid_slots.push_back((int)cell_top.size());
                at = ch.b;
            }
            for (int p = at; p < hi; ++p) cell_top.push_back(top[p]);
            ChordDiagram d = ChordDiagram::single(&shape, Cell{cell_top, out_label});
            // graft children (rightmost first keeps earlier leaf indices stable)
            for (int i = (int)kids.size() - 1; i >= 0; --i) {
                d = d.graft(kid_slots[i] - 1, kids[i]);
            }
            return d;
        }
    };
    Builder b{shape, top};
    ChordDiagram d = b.build(0, n, bot, std::move(chords));
    return d;
}

std::vector<ChordDiagram> enumerate_decompositions(const TwoCatShape& shape, const Cell& c,
                                                   int max_cells) {
    validate_cell(shape, c);
    int n = (int)c.top.size();
    std::vector<ChordDiagram> out;
    for (int w = 1; w <= max_cells; ++w) {
        for (const auto& t : enumerate_trees(n, w, 1)) {
            // all labelings of internal edges consistent with the corners
            const auto& edges = t.internal_edges();
            const auto& verts = t.vertices();
            std::vector<int> corner(n + 1);
            for (int i = 0; i < n; ++i) corner[i] = shape.src(c.top[i]);
            corner[n] = shape.tgt(c.top[n - 1]);
            std::vector<std::vector<int>> choices(edges.size());
            bool dead = false;
            for (size_t e = 0; e < edges.size() && !dead; ++e) {
                const auto& v = verts[edges[e].child];
                int a = corner[v.first_leaf];
                int b = corner[v.first_leaf + v.n_leaves];
                for (int e1 = 0; e1 < shape.n_cells(); ++e1)
                    if (shape.src(e1) == a && shape.tgt(e1) == b) choices[e].push_back(e1);
                if (choices[e].empty()) dead = true;
            }
            if (dead) continue;
            std::vector<int> pick(edges.size(), 0);
            while (true) {
                std::vector<int> labels(edges.size());
                for (size_t e = 0; e < edges.size(); ++e) labels[e] = choices[e][pick[e]];
                out.emplace_back(&shape, t, c.top, c.bot, labels);
                // advance
                size_t k = 0;
                while (k < edges.size() && ++pick[k] == (int)choices[k].size()) pick[k++] = 0;
                if (k == edges.size()) break;
                if (edges.empty()) break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool decomposition_ge(const ChordDiagram& d, const ChordDiagram& dprime) {
    int ne = (int)d.chord_labels().size();
    int ne2 = (int)dprime.chord_labels().size();
    if (ne2 > ne) return false;
    // contract every subset of edges of d and compare
    for (long mask = 0; mask < (1L << ne); ++mask) {
        if (__builtin_popcountl(mask) != ne - ne2) continue;
        ChordDiagram cur = d;
        // contract marked edges from highest original index to lowest so that
        // remaining indices stay valid
        bool ok = true;
        std::vector<int> idx;
        for (int e = ne - 1; e >= 0; --e)
            if (mask & (1L << e)) idx.push_back(e);
        for (int e : idx) cur = cur.contract(e).first;
        (void)ok;
        if (cur == dprime) return true;
    }
    return false;
}

} // namespace opal
