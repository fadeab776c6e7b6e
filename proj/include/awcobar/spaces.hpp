#pragma once

// Registry of builtin spaces:
//   sphere:n  delta:n  delta-bar:n (0-skeleton quotient)  quotient:n:r  product:A,B
// Anything else is read as a path to a simplicial-set JSON document.

#include "awcobar/json_io.hpp"

#include <cctype>
#include <fstream>
#include <string>
#include <string_view>

namespace awcobar {

namespace detail {

struct SpaceParser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& what) const
    {
        throw PreconditionError("space spec '" + std::string(s) + "': " + what);
    }

    bool accept(std::string_view tok)
    {
        if (s.substr(pos, tok.size()) != tok) return false;
        pos += tok.size();
        return true;
    }

    int number()
    {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) error("expected a number at position " + std::to_string(start));
        return std::stoi(std::string(s.substr(start, pos - start)));
    }

    SSetPtr space()
    {
        if (accept("sphere:")) return sphere(number());
        if (accept("delta-bar:")) return skeletal_quotient(*standard_simplex(number()), 0);
        if (accept("delta:")) return standard_simplex(number());
        if (accept("quotient:")) {
            const int n = number();
            if (!accept(":")) error("quotient needs n:r");
            return skeletal_quotient(*standard_simplex(n), number());
        }
        if (accept("product:")) {
            auto a = space();
            if (!accept(",")) error("product needs two factors separated by ','");
            auto b = space();
            return product(std::move(a), std::move(b))->set();
        }
        error("unknown builtin at position " + std::to_string(pos));
    }
};

inline bool is_builtin(std::string_view spec)
{
    for (std::string_view p : {"sphere:", "delta:", "delta-bar:", "quotient:", "product:"})
        if (spec.substr(0, p.size()) == p) return true;
    return false;
}

} // namespace detail

/// Builds a space from a registry name or loads it from a JSON file.
inline SSetPtr parse_space(std::string_view spec)
{
    if (detail::is_builtin(spec)) {
        detail::SpaceParser p{spec};
        auto K = p.space();
        if (p.pos != spec.size()) p.error("trailing characters");
        return K;
    }
    std::ifstream in{std::string(spec)};
    if (!in) throw PreconditionError("unknown builtin or unreadable file: " + std::string(spec));
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError("invalid JSON in " + std::string(spec) + ": " + e.what());
    }
    return simplicial_set_from_json(j);
}

} // namespace awcobar
