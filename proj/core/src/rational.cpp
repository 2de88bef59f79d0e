#include "ringchain/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ringchain {

std::string Rational::str() const {
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

Rational make_rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    return {p / (g == 0 ? 1 : g), q / (g == 0 ? 1 : g)};
}

std::optional<Rational> recognize_rational(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // convergents h/k of the continued fraction of x
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(r);
        if (std::fabs(fl) > 9.0e15) break;
        const auto a = static_cast<std::int64_t>(fl);
        const std::int64_t h2 = a * h1 + h0;
        const std::int64_t k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (std::fabs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol)
            return make_rational(h1, k1);
        const double frac = r - fl;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long p = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return make_rational(p, 1);
        }
        const std::string ps = text.substr(0, slash), qs = text.substr(slash + 1);
        const long long p = std::stoll(ps, &used);
        if (used != ps.size()) throw std::invalid_argument(text);
        const long long q = std::stoll(qs, &used);
        if (used != qs.size()) throw std::invalid_argument(text);
        return make_rational(p, q);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

}  // namespace ringchain
