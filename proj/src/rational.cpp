#include "logfano/rational.hpp"

#include <cctype>
#include <charconv>

namespace logfano {

Rational Rational::parse(std::string_view s) {
    auto fail = [&] { throw ValidationError("invalid rational string '" + std::string(s) + "' (expected p or p/q)"); };
    size_t slash = s.find('/');
    auto parse_ll = [&](std::string_view t) -> long long {
        if (t.empty()) fail();
        long long v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) fail();
        return v;
    };
    if (slash == std::string_view::npos) return Rational(parse_ll(s));
    long long n = parse_ll(s.substr(0, slash));
    long long d = parse_ll(s.substr(slash + 1));
    if (d == 0) fail();
    return Rational(n, d);
}

} // namespace logfano
