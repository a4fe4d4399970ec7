#pragma once

// Positional arithmetic over a mixed-radix base sequence alpha_1, alpha_2, ...
// Positions are 1-based throughout. A point of the odometer space is a digit
// sequence x_i in {0, ..., alpha_i - 1}; the odometer adds one with carry.

#include "odo/rational.hpp"

#include <cstddef>
#include <vector>

namespace odo {

class BaseSeq {
public:
    // alpha_n = alpha for every n.
    static BaseSeq constant(unsigned alpha);
    // alpha_1..alpha_H given explicitly, default_alpha afterwards.
    static BaseSeq with_prefix(std::vector<unsigned> prefix, unsigned default_alpha);

    unsigned alpha(std::size_t n) const;
    // beta_d = alpha_1 * ... * alpha_d, beta_0 = 1.
    Integer beta(std::size_t d) const;

    const std::vector<unsigned>& explicit_prefix() const { return prefix_; }
    unsigned default_alpha() const { return default_; }

    bool operator==(const BaseSeq& other) const = default;

private:
    BaseSeq(std::vector<unsigned> prefix, unsigned default_alpha);
    std::vector<unsigned> prefix_;
    unsigned default_;
};

enum class DigitsKind { FiniteSupport, CofiniteMax };

// Digit sequence of +k (finite support) or -k (eventually alpha_i - 1).
// The explicit window is kept minimal, so == compares group elements.
class MixedRadixDigits {
public:
    MixedRadixDigits(BaseSeq base, DigitsKind kind, std::vector<unsigned> window);

    const BaseSeq& base() const { return base_; }
    DigitsKind kind() const { return kind_; }
    // Length of the normalized explicit window.
    std::size_t window_length() const { return window_.size(); }
    const std::vector<unsigned>& window() const { return window_; }
    unsigned digit(std::size_t i) const;

    // The integer this element represents (negative for CofiniteMax).
    Integer signed_value() const;

    bool operator==(const MixedRadixDigits& other) const = default;

private:
    BaseSeq base_;
    DigitsKind kind_;
    std::vector<unsigned> window_;
};

// The first D coordinates of a point, with digit and integer views kept in sync.
class Prefix {
public:
    static Prefix from_digits(const BaseSeq& base, std::vector<unsigned> digits);
    static Prefix from_value(const BaseSeq& base, std::size_t depth, const Integer& value);
    static Prefix zero(const BaseSeq& base, std::size_t depth);

    const BaseSeq& base() const { return base_; }
    std::size_t depth() const { return digits_.size(); }
    const std::vector<unsigned>& digits() const { return digits_; }
    unsigned digit(std::size_t i) const { return digits_.at(i - 1); }
    const Integer& value() const { return value_; }

    bool operator==(const Prefix& other) const { return base_ == other.base_ && digits_ == other.digits_; }

private:
    Prefix(BaseSeq base, std::vector<unsigned> digits, Integer value);
    BaseSeq base_;
    std::vector<unsigned> digits_;
    Integer value_;
};

MixedRadixDigits to_digits(const Integer& k, const BaseSeq& base);
// Representation of -k; rejects k <= 0.
MixedRadixDigits neg_digits(const Integer& k, const BaseSeq& base);

// Digits of n as a group element: to_digits for n >= 0, neg_digits otherwise.
MixedRadixDigits group_digits(const Integer& n, const BaseSeq& base);

struct StepResult {
    Prefix prefix;
    bool carry_out;
};
StepResult odometer_step(const Prefix& x);

struct AddResult {
    Prefix sum;
    unsigned carry_out;
};
// Coordinate-wise x_i + t_i + c_{i-1} over positions 1..x.depth().
AddResult add_with_carry(const Prefix& x, const MixedRadixDigits& t, unsigned carry_in = 0);

struct TranslateResult {
    Integer value;
    // v + (n mod beta_D) >= beta_D
    bool wrapped;
};
// Action of f^n on depth-D prefix values: v -> (v + n) mod beta_D.
TranslateResult prefix_translate(const Integer& v, const Integer& n, std::size_t depth, const BaseSeq& base);

}  // namespace odo
