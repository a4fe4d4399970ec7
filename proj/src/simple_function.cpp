#include "odo/simple_function.hpp"

#include <stdexcept>

namespace odo {

namespace {

constexpr unsigned kMaxTableBits = 26;

Integer checked_beta(const BaseSeq& base, std::size_t d) {
    Integer beta = base.beta(d);
    if (bit_length(beta) > kMaxTableBits) throw std::length_error("simple function table too large");
    return beta;
}

}  // namespace

SimpleFunction::SimpleFunction(BaseSeq base, std::size_t depth, std::map<Integer, Rational> coefs)
    : base_(std::move(base)), depth_(depth), coefs_(std::move(coefs)) {
    const Integer beta = base_.beta(depth_);
    for (auto it = coefs_.begin(); it != coefs_.end();) {
        if (it->first < 0 || it->first >= beta) throw std::invalid_argument("cylinder value outside [0, beta_D)");
        if (it->second == 0)
            it = coefs_.erase(it);
        else
            ++it;
    }
    canonicalize();
}

SimpleFunction SimpleFunction::constant(const BaseSeq& base, const Rational& c) {
    return {base, 0, {{Integer(0), c}}};
}

SimpleFunction SimpleFunction::indicator(const Cylinder& c, const Rational& coef) {
    return {c.base(), c.depth(), {{c.value(), coef}}};
}

SimpleFunction SimpleFunction::indicator(const CylinderUnion& u, const Rational& coef) {
    std::map<Integer, Rational> m;
    for (const auto& v : u.values()) m.emplace(v, coef);
    return {u.base(), u.depth(), std::move(m)};
}

SimpleFunction SimpleFunction::from_table(const BaseSeq& base, std::size_t depth, const std::vector<Rational>& table) {
    if (Integer(table.size()) != base.beta(depth)) throw std::invalid_argument("table size must equal beta_D");
    std::map<Integer, Rational> m;
    for (std::size_t v = 0; v < table.size(); ++v)
        if (table[v] != 0) m.emplace(Integer(static_cast<unsigned long>(v)), table[v]);
    return {base, depth, std::move(m)};
}

// Drops the deepest coordinate while the function does not depend on it.
void SimpleFunction::canonicalize() {
    while (depth_ > 0) {
        const Integer lower = base_.beta(depth_ - 1);
        const unsigned alpha = base_.alpha(depth_);
        std::map<Integer, std::pair<Rational, unsigned>> groups;
        for (const auto& [v, c] : coefs_) {
            const Integer r = v % lower;
            auto [it, fresh] = groups.try_emplace(r, c, 0u);
            if (!fresh && it->second.first != c) return;
            ++it->second.second;
        }
        for (const auto& [r, g] : groups)
            if (g.second != alpha) return;
        std::map<Integer, Rational> reduced;
        for (auto& [r, g] : groups) reduced.emplace(r, std::move(g.first));
        coefs_ = std::move(reduced);
        --depth_;
    }
}

std::vector<Term> SimpleFunction::terms() const {
    std::vector<Term> out;
    out.reserve(coefs_.size());
    for (const auto& [v, c] : coefs_) out.push_back({c, Prefix::from_value(base_, depth_, v)});
    return out;
}

Rational SimpleFunction::value(const Integer& v, std::size_t d) const {
    if (d < depth_) throw std::invalid_argument("value: depth below the function's depth");
    const auto it = coefs_.find(Integer(v % base_.beta(depth_)));
    return it == coefs_.end() ? Rational(0) : it->second;
}

std::vector<Rational> SimpleFunction::table(std::size_t d) const {
    if (d < depth_) throw std::invalid_argument("table: depth below the function's depth");
    const Integer beta = checked_beta(base_, d);
    const unsigned long n = beta.get_ui();
    const unsigned long period = base_.beta(depth_).get_ui();
    std::vector<Rational> out(n);
    for (const auto& [v, c] : coefs_)
        for (unsigned long w = v.get_ui(); w < n; w += period) out[w] = c;
    return out;
}

CylinderUnion SimpleFunction::level_set(const std::function<bool(const Rational&)>& pred, std::size_t d) const {
    const auto tab = table(d);
    std::vector<Integer> vals;
    for (std::size_t v = 0; v < tab.size(); ++v)
        if (pred(tab[v])) vals.emplace_back(static_cast<unsigned long>(v));
    return {base_, d, std::move(vals)};
}

namespace {

SimpleFunction combine(const SimpleFunction& a, const SimpleFunction& b, const Rational& sb) {
    if (!(a.base() == b.base())) throw std::invalid_argument("simple functions on different bases");
    const std::size_t d = std::max(a.depth(), b.depth());
    const auto ta = a.table(d);
    const auto tb = b.table(d);
    std::vector<Rational> out(ta.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = ta[v] + sb * tb[v];
    return SimpleFunction::from_table(a.base(), d, out);
}

}  // namespace

SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) { return combine(a, b, Rational(1)); }
SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) { return combine(a, b, Rational(-1)); }

SimpleFunction operator*(const Rational& s, const SimpleFunction& a) {
    std::map<Integer, Rational> m;
    for (const auto& [v, c] : a.coefs_) m.emplace(v, s * c);
    return {a.base_, a.depth_, std::move(m)};
}

}  // namespace odo
