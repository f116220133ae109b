#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opal/scalar.hpp"

namespace opal {

// Structural tags for basis labels. Labels are immutable trees
// (tag, integer payload, child labels) with a total order, so matrix
// row/column orderings and therefore homology and signs are deterministic.
enum class Tag : uint8_t {
    atom,     // named generator / color / 1-cell: nums = {id}
    unit,     // operad unit at a color: nums = {color}
    pair,     // kids = {a, b}
    list,     // kids = arbitrary
    word,     // free-category word: kids = letters
    tree,     // decorated tree: nums = shape code, kids = vertex decorations (dfs order)
    susp,     // suspension wrapper: nums = {k}, kids = {x}
    cone_src, // cone label from the shifted source
    cone_tgt, // cone label from the target
    subset,   // nums = sorted subset
    omap,     // monotone map: nums = {tag', n, m, images...}
    cell,     // (top path; bot): nums = {bot, top...}
    diagram,  // decorated chord diagram: nums = tree shape + edge labels, kids = decorations
    opaque,   // nums/kids free-form
};

class Label {
public:
    Label() = default;
    Label(Tag tag, std::vector<long> nums, std::vector<Label> kids = {});

    static Label atom(long id) { return Label(Tag::atom, {id}); }
    static Label unit(long color) { return Label(Tag::unit, {color}); }
    static Label pair(const Label& a, const Label& b) { return Label(Tag::pair, {}, {a, b}); }
    static Label list(std::vector<Label> kids) { return Label(Tag::list, {}, std::move(kids)); }

    bool valid() const { return n_ != nullptr; }
    Tag tag() const { return n_->tag; }
    const std::vector<long>& nums() const { return n_->nums; }
    const std::vector<Label>& kids() const { return n_->kids; }
    size_t hash() const { return n_->hash; }

    bool operator==(const Label& o) const;
    bool operator!=(const Label& o) const { return !(*this == o); }
    bool operator<(const Label& o) const;

    std::string str() const; // compact deterministic rendering

private:
    struct Node {
        Tag tag;
        std::vector<long> nums;
        std::vector<Label> kids;
        size_t hash;
    };
    std::shared_ptr<const Node> n_;
};

// Finitely supported linear combination of labels; no zero coefficients stored.
class LinComb {
public:
    explicit LinComb(const Field& f) : field_(f) {}
    static LinComb single(const Label& l, const Scalar& c);
    static LinComb zero(const Field& f) { return LinComb(f); }

    const Field& field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Label, Scalar>& terms() const { return terms_; }
    Scalar coeff(const Label& l) const;

    void add(const Label& l, const Scalar& c);
    LinComb& operator+=(const LinComb& o);
    LinComb& operator-=(const LinComb& o);
    LinComb& operator*=(const Scalar& c);
    LinComb operator+(const LinComb& o) const { LinComb r = *this; r += o; return r; }
    LinComb operator-(const LinComb& o) const { LinComb r = *this; r -= o; return r; }
    LinComb operator*(const Scalar& c) const { LinComb r = *this; r *= c; return r; }
    LinComb operator-() const;

    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

    // Applies f to every label, summing (linear extension).
    template <class F>
    LinComb map(F&& f) const {
        LinComb out(field_);
        for (const auto& [l, c] : terms_) {
            LinComb img = f(l);
            img *= c;
            out += img;
        }
        return out;
    }

    std::string str() const;

private:
    Field field_;
    std::map<Label, Scalar> terms_;
};

} // namespace opal
