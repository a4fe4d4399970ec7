#pragma once

// The dyadic marker system: alpha_n = 2, markers m_k = 4^k, p_n = 2^-n off
// markers and p_{m_k} = 2^-k, with the sets B_k, the index blocks I_k, the
// carry classes D(n, c), and verifiers for the distributional-chaos claims.

#include "odo/claim_report.hpp"
#include "odo/pattern.hpp"
#include "odo/witness.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace odo {

struct MarkerSystem {
    static constexpr unsigned kMarkerBase = 4;
    // m_k = 4^k, k >= 1.
    static std::size_t marker(unsigned k);
    // k with m_k == n, if any.
    static std::optional<unsigned> marker_index(std::size_t n);
    // mu_n(1)
    static Rational p(std::size_t n);
    static MeasureSeq measure();
};

// {x : x(m_k) = 1, x(n) = 0 for n > m_k off the markers}.
PatternSet B_set(unsigned k);

// n(i) = 0 for i > m_{k+1} - 3 and n(i) = 1 for some i in [m_k + 3, m_{k+1} - 3].
bool I_membership(const Integer& n, unsigned k);
// n in I_l for some l.
bool in_I(const Integer& n);
// The block [2^{m_k + 2}, 2^{m_{k+1} - 3} - 1] that I_k fills exactly.
struct IBlock {
    Integer first, last;
};
IBlock I_block(unsigned k);
// 2^{m_{k+1} - 3} - 2^{m_k + 2}
Integer I_count(unsigned k);
// |I ∩ [1, n]| by summing the clipped blocks.
Integer I_count_upto(const Integer& n);

ClaimReport claim1_verify(unsigned k);
// Ratio |I ∩ [1, N]| / N; N defaults to 2^{m_{k+1} - 3}.
ClaimReport claim2_density(unsigned k, std::optional<Integer> window = std::nullopt);
// mu(B_k) < 1/k for k = 1..kmax and the strict decrease mu(B_{k+1}) < mu(B_k).
ClaimReport bk_measure_chain(unsigned kmax, const Rational& tol = default_tolerance());

struct ScanOptions {
    std::size_t samples = 1000;
    std::size_t smallest = 10;
    std::uint64_t seed = 1;
    Rational tol = default_tolerance();
    unsigned jobs = 1;
    std::size_t cap = kDefaultDepthCap;
};

// One evaluated translate, for tabular export.
struct ScanRow {
    Integer n;
    RatInterval enclosure;  // of mu(f^-n(B_k))
    bool cap_reached = false;
    std::optional<std::size_t> forced;  // forced coordinate i' + 1, when one exists
};

// mu(f^-n(B_k)) < 1/l for the smallest and seeded random n in I_l, l > k.
ClaimReport dc1_scan(unsigned k, unsigned l, const ScanOptions& opts = {}, std::vector<ScanRow>* rows = nullptr);

// The largest i' in [m_l + 2, m_{l+1} - 3] with -n(i') = 0 and -n(i'+1) = 1.
std::optional<std::size_t> forced_coordinate(const Integer& n, unsigned l);

struct CarryClass {
    unsigned c;       // class with mass >= 1/2, ties toward 0
    Rational mass0;   // mu(D(n, 0))
    Rational mass1;   // mu(D(n, 1))
};
// Carry into coordinate m_k - 1 of x + (-n) over the first m_k - 2 coordinates.
CarryClass carry_class(const Integer& n, unsigned k);

enum class Dc2Window { Statement, Proof };
std::string_view to_string(Dc2Window w);

// Counts n in the window with certified mu(f^-n(B_k)) > 1/16, enumerating
// when the window has at most 2^17 elements and sampling otherwise. The proof
// window also rebuilds the index set J from the carry classes.
ClaimReport dc2_count(unsigned k, Dc2Window window, const ScanOptions& opts = {},
                      std::vector<ScanRow>* rows = nullptr);

// Provider for witnesses built on B_k.
WitnessProvider marker_witness_provider(unsigned k = 1);

}  // namespace odo
