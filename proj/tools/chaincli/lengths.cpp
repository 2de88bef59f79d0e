#include "lengths.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

#include "ringchain/chain_spec.hpp"

namespace chaincli {

namespace {

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

Length parse_length(const std::string& text) {
    static const std::regex pi_form(R"(\s*([+-]?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        std::string ps = m[1].str();
        if (ps.empty() || ps == "+") ps = "1";
        if (ps == "-") ps = "-1";
        const std::string qs = m[2].matched ? m[2].str() : "1";
        const auto r = ringchain::parse_rational(ps + "/" + qs);
        return {ringchain::kPi * static_cast<double>(r.p) / static_cast<double>(r.q), r};
    }
    return {parse_double(text), std::nullopt};
}

double Range::at(std::size_t i) const {
    if (n == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

Range parse_range(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("range must be lo:hi:n, got '" + text + "'");
    Range r;
    r.lo = parse_length(text.substr(0, a)).value;
    r.hi = parse_length(text.substr(a + 1, b - a - 1)).value;
    const std::string ns = text.substr(b + 1);
    std::size_t used = 0;
    long long n = 0;
    try {
        n = std::stoll(ns, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != ns.size() || n < 1) throw std::invalid_argument("range sample count must be a positive integer");
    if (!(r.hi >= r.lo) || (n > 1 && r.hi == r.lo)) throw std::invalid_argument("range must be nonempty");
    r.n = static_cast<std::size_t>(n);
    return r;
}

}  // namespace chaincli
