#pragma once

// Finite linear combinations of disjoint same-depth cylinder indicators.

#include "odo/pattern.hpp"

#include <functional>
#include <map>
#include <vector>

namespace odo {

struct Term {
    Rational coef;
    Cylinder cylinder;
};

class SimpleFunction {
public:
    // coefficients keyed by depth-D prefix value; zero entries are dropped.
    SimpleFunction(BaseSeq base, std::size_t depth, std::map<Integer, Rational> coefs);
    static SimpleFunction constant(const BaseSeq& base, const Rational& c);
    static SimpleFunction indicator(const Cylinder& c, const Rational& coef = Rational(1));
    static SimpleFunction indicator(const CylinderUnion& u, const Rational& coef = Rational(1));
    // table[v] is the value on the cylinder with prefix value v; size beta_D.
    static SimpleFunction from_table(const BaseSeq& base, std::size_t depth, const std::vector<Rational>& table);

    const BaseSeq& base() const { return base_; }
    // Canonical (minimal) depth.
    std::size_t depth() const { return depth_; }
    // Sorted by prefix value.
    std::vector<Term> terms() const;
    const std::map<Integer, Rational>& coefficients() const { return coefs_; }
    bool is_zero() const { return coefs_.empty(); }
    // Value on the depth-d cylinder with prefix value v, d >= depth().
    Rational value(const Integer& v, std::size_t d) const;
    // Values on all depth-d cylinders, d >= depth().
    std::vector<Rational> table(std::size_t d) const;
    // {x : pred(phi(x))} as a depth-d cylinder union.
    CylinderUnion level_set(const std::function<bool(const Rational&)>& pred, std::size_t d) const;

    friend SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction operator*(const Rational& s, const SimpleFunction& a);
    bool operator==(const SimpleFunction& other) const = default;

private:
    void canonicalize();
    BaseSeq base_;
    std::size_t depth_;
    std::map<Integer, Rational> coefs_;
};

}  // namespace odo
