#include "specs.hpp"

#include "odo/example_d.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace odo::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

unsigned parse_unsigned(const std::string& text, const char* what) {
    const Integer z = parse_integer(text);
    if (z < 0 || !z.fits_uint_p()) throw std::invalid_argument(std::string("bad ") + what + ": " + text);
    return static_cast<unsigned>(z.get_ui());
}

TailRule parse_tail(const std::string& spec, unsigned& default_alpha) {
    const auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "uniform") {
        default_alpha = parse_unsigned(parts[1], "alphabet size");
        return UniformRule{};
    }
    if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "dyadic") {
        default_alpha = 2;
        return DyadicRule{parse_unsigned(parts[1], "geometric base"),
                          parts.size() == 3 ? parse_unsigned(parts[2], "marker base") : 0u};
    }
    throw std::invalid_argument("bad tail rule: " + spec);
}

// One line per coordinate with the probabilities of 0..alpha_n - 1; an
// optional final "tail uniform:A" or "tail dyadic:B[:Q]" line (default
// uniform:2). Blank lines and lines starting with '#' are ignored.
MeasureSeq read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open measure table: " + path);
    std::vector<std::vector<Rational>> vectors;
    std::vector<unsigned> alphas;
    TailRule rule = UniformRule{};
    unsigned default_alpha = 2;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        if (first == "tail") {
            std::string spec;
            ls >> spec;
            rule = parse_tail(spec, default_alpha);
            continue;
        }
        std::vector<Rational> v{parse_rational(first)};
        for (std::string tok; ls >> tok;) v.push_back(parse_rational(tok));
        alphas.push_back(static_cast<unsigned>(v.size()));
        vectors.push_back(std::move(v));
    }
    return {BaseSeq::with_prefix(alphas, default_alpha), std::move(vectors), rule};
}

}  // namespace

MeasureSeq parse_system(const std::string& spec) {
    if (spec == "example-d") return MarkerSystem::measure();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "uniform" && !rest.empty()) {
        const unsigned alpha = parse_unsigned(rest, "alphabet size");
        if (alpha < 2) throw std::invalid_argument("alphabet size must be >= 2");
        return MeasureSeq::uniform(BaseSeq::constant(alpha));
    }
    if (kind == "dyadic" && !rest.empty()) {
        const auto parts = split(rest, ':');
        if (parts.size() > 2) throw std::invalid_argument("bad system: " + spec);
        return MeasureSeq::dyadic(parse_unsigned(parts[0], "geometric base"),
                                  parts.size() == 2 ? parse_unsigned(parts[1], "marker base") : 0u);
    }
    if (kind == "table" && !rest.empty()) return read_table(rest);
    throw std::invalid_argument("unknown system: " + spec);
}

std::vector<unsigned> parse_digits(const std::string& text) {
    if (text.empty()) return {};
    std::vector<unsigned> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_unsigned(part, "digit"));
    return out;
}

PatternSet parse_set(const std::string& spec, const MeasureSeq& ms, bool marker_system) {
    if (spec == "full") return PatternSet::full(ms);
    if (spec.size() > 1 && spec[0] == 'B') {
        if (!marker_system) throw std::invalid_argument("B_k sets need --system example-d");
        return B_set(parse_unsigned(spec.substr(1), "k"));
    }
    return PatternSet::cylinder(ms, Prefix::from_digits(ms.base(), parse_digits(spec)));
}

SimpleFunction parse_phi(const std::string& spec, const BaseSeq& base) {
    std::vector<Rational> table;
    for (const auto& part : split(spec, ',')) table.push_back(parse_rational(part));
    for (std::size_t d = 0; d <= 32; ++d) {
        const Integer beta = base.beta(d);
        if (beta == Integer(static_cast<unsigned long>(table.size())))
            return SimpleFunction::from_table(base, d, table);
        if (beta > Integer(static_cast<unsigned long>(table.size()))) break;
    }
    throw std::invalid_argument("function table length must equal beta_D for some depth D");
}

}  // namespace odo::cli
