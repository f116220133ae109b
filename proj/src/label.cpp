#include "opal/label.hpp"

#include <sstream>

namespace opal {

Label::Label(Tag tag, std::vector<long> nums, std::vector<Label> kids) {
    size_t h = std::hash<int>()((int)tag);
    auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (long x : nums) mix(std::hash<long>()(x));
    for (const Label& k : kids) mix(k.hash());
    n_ = std::make_shared<Node>(Node{tag, std::move(nums), std::move(kids), h});
}

bool Label::operator==(const Label& o) const {
    if (n_ == o.n_) return true;
    if (!n_ || !o.n_) return false;
    if (n_->hash != o.n_->hash || n_->tag != o.n_->tag || n_->nums != o.n_->nums ||
        n_->kids.size() != o.n_->kids.size())
        return false;
    for (size_t i = 0; i < n_->kids.size(); ++i)
        if (!(n_->kids[i] == o.n_->kids[i])) return false;
    return true;
}

bool Label::operator<(const Label& o) const {
    if (n_ == o.n_) return false;
    if (!n_) return o.n_ != nullptr;
    if (!o.n_) return false;
    if (n_->tag != o.n_->tag) return n_->tag < o.n_->tag;
    if (n_->nums != o.n_->nums) return n_->nums < o.n_->nums;
    if (n_->kids.size() != o.n_->kids.size()) return n_->kids.size() < o.n_->kids.size();
    for (size_t i = 0; i < n_->kids.size(); ++i) {
        if (n_->kids[i] < o.n_->kids[i]) return true;
        if (o.n_->kids[i] < n_->kids[i]) return false;
    }
    return false;
}

std::string Label::str() const {
    if (!n_) return "<null>";
    static const char* names[] = {"a",  "u",    "p",   "l",   "w",   "t",    "s",
                                  "cs", "ct",   "sub", "m",   "c",   "d",    "o"};
    std::ostringstream os;
    os << names[(int)n_->tag];
    if (!n_->nums.empty()) {
        os << "[";
        for (size_t i = 0; i < n_->nums.size(); ++i) os << (i ? "," : "") << n_->nums[i];
        os << "]";
    }
    if (!n_->kids.empty()) {
        os << "(";
        for (size_t i = 0; i < n_->kids.size(); ++i) os << (i ? "," : "") << n_->kids[i].str();
        os << ")";
    }
    return os.str();
}

LinComb LinComb::single(const Label& l, const Scalar& c) {
    LinComb r(c.field());
    r.add(l, c);
    return r;
}

Scalar LinComb::coeff(const Label& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void LinComb::add(const Label& l, const Scalar& c) {
    check(c.field() == field_, errc::validation, "coefficient from wrong field");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(l, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LinComb& LinComb::operator+=(const LinComb& o) {
    for (const auto& [l, c] : o.terms_) add(l, c);
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
    for (const auto& [l, c] : o.terms_) add(l, -c);
    return *this;
}

LinComb& LinComb::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [l, v] : terms_) v *= c;
    return *this;
}

LinComb LinComb::operator-() const {
    LinComb r = *this;
    for (auto& [l, v] : r.terms_) v = -v;
    return r;
}

std::string LinComb::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : terms_) {
        os << (first ? "" : " + ") << c.str() << "*" << l.str();
        first = false;
    }
    return os.str();
}

} // namespace opal
