#pragma once

/// @file io.hpp
/// Text grammar for algebra elements and JSON codecs for the public
/// types.  The schemas, which every producer and consumer in this
/// repository shares:
///
///   matrix:  {"rows": r, "cols": c, "entries": [[re, im], ...]}  row-major
///   element: {"base": [...], "terms": [{"J": [...], "K": [...],
///             "re": x, "im": y}, ...]}
///   tensor:  {"left_base": [...], "right_base": [...],
///             "terms": [{"JL": [...], "KL": [...], "JR": [...],
///                        "KR": [...], "re": x, "im": y}, ...]}
///   report:  {"check": s, "passed": b, "instances": n,
///             "failures": [s, ...], "rank": r?, "full_dim": f?}
///
/// Element grammar: "E:j,k" names a one-site matrix unit and
/// "E;J=j1,j2;K=k1,k2" a multi-site one.  A term is "coeff*unit" with the
/// coefficient written "re", "re+imi" or "re-imi"; a bare unit means
/// coefficient 1.

#include <json.hpp>

#include "uhfb/bialgebra.hpp"

namespace uhfb {

using json = nlohmann::json;

// ---------------------------------------------------------------- parsing

/// Complex literal: "1.5", "-2", "1+2i", "1-2i", "3i", "-i", "+i".
inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    require(!s.empty(), "empty complex literal");

    auto to_double = [&](const std::string& part, std::size_t at) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw error("bad number in complex literal at position " + std::to_string(at) +
                        ": '" + part + "'");
        }
        if (used != part.size())
            throw error("trailing characters in complex literal at position " +
                        std::to_string(at + used) + ": '" + part + "'");
        return v;
    };

    if (s.back() != 'i') return Complex(to_double(s, 0), 0.0);

    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not leading and not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return Complex(0.0, to_double(body, 0));
    return Complex(to_double(body.substr(0, split), 0),
                   to_double(body.substr(split), split));
}

namespace detail {

inline Digits parse_digit_list(const std::string& s, std::size_t at) {
    std::vector<uint32_t> out;
    try {
        out = parse_uint_list(s, "digit list");
    } catch (const error& e) {
        throw error(std::string(e.what()) + " at position " + std::to_string(at));
    }
    return out;
}

} // namespace detail

/// One matrix unit from the grammar; the level is read off the string.
inline AlgebraElement::Key parse_unit_spec(const std::string& s) {
    require(!s.empty() && s[0] == 'E', "unit spec must start with 'E' at position 0");
    if (s.size() > 1 && s[1] == ':') {
        auto jk = detail::parse_digit_list(s.substr(2), 2);
        require(jk.size() == 2, "'E:j,k' takes exactly two digits");
        return {{jk[0]}, {jk[1]}};
    }
    require(s.size() > 1 && s[1] == ';',
            "unit spec needs ':' or ';' after 'E' at position 1");
    Digits J, K;
    std::size_t pos = 1;
    while (pos < s.size()) {
        require(s[pos] == ';', "expected ';' at position " + std::to_string(pos));
        std::size_t next = s.find(';', pos + 1);
        std::string field = s.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
        require(field.size() > 2 && (field[0] == 'J' || field[0] == 'K') && field[1] == '=',
                "expected 'J=' or 'K=' at position " + std::to_string(pos + 1));
        auto& side = field[0] == 'J' ? J : K;
        require(side.empty(), std::string("duplicate '") + field[0] + "=' at position " +
                                  std::to_string(pos + 1));
        side = detail::parse_digit_list(field.substr(2), pos + 3);
        pos = next == std::string::npos ? s.size() : next;
    }
    require(!J.empty() && !K.empty(), "unit spec needs both J= and K=");
    require(J.size() == K.size(), "J and K lengths differ");
    return {J, K};
}

/// Term "coeff*unit" or bare "unit".
inline std::pair<Complex, AlgebraElement::Key> parse_term(const std::string& s) {
    const std::size_t star = s.find('*');
    if (star == std::string::npos) return {Complex(1.0), parse_unit_spec(s)};
    return {parse_complex(s.substr(0, star)), parse_unit_spec(s.substr(star + 1))};
}

/// Element over `base` from term strings; digit ranges are validated
/// against the base.
inline AlgebraElement parse_element(const SequencePrefix& base,
                                    const std::vector<std::string>& terms) {
    require(!terms.empty(), "no terms given");
    const std::size_t level = parse_term(terms[0]).second.first.size();
    AlgebraElement x(base.truncated(level));
    for (const auto& t : terms) {
        auto [c, key] = parse_term(t);
        require(key.first.size() == level, "terms have mixed levels");
        x.add_term(key.first, key.second, c);
    }
    return x;
}

// ------------------------------------------------------------ JSON codecs

inline json matrix_to_json(const Mat& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Mat matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& e = j.at("entries");
    require(rows >= 0 && cols >= 0 && e.size() == static_cast<std::size_t>(rows * cols),
            "matrix json: entry count differs from rows*cols");
    Mat m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c, ++k)
            m(i, c) = Complex(e[k].at(0).get<double>(), e[k].at(1).get<double>());
    return m;
}

inline json prefix_to_json(const SequencePrefix& p) {
    json a = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) a.push_back(p[i]);
    return a;
}

inline SequencePrefix prefix_from_json(const json& j) {
    return SequencePrefix::component(j.get<std::vector<uint32_t>>());
}

inline json element_to_json(const AlgebraElement& x) {
    json terms = json::array();
    for (const auto& [k, c] : x.terms())
        terms.push_back(
            {{"J", k.first}, {"K", k.second}, {"re", c.real()}, {"im", c.imag()}});
    return {{"base", prefix_to_json(x.base())}, {"terms", std::move(terms)}};
}

inline AlgebraElement element_from_json(const json& j) {
    AlgebraElement x(prefix_from_json(j.at("base")));
    for (const auto& t : j.at("terms"))
        x.add_term(t.at("J").get<Digits>(), t.at("K").get<Digits>(),
                   Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    return x;
}

inline json tensor_to_json(const TensorElement& t) {
    json terms = json::array();
    for (const auto& [k, c] : t.terms())
        terms.push_back({{"JL", k.first.first},
                         {"KL", k.first.second},
                         {"JR", k.second.first},
                         {"KR", k.second.second},
                         {"re", c.real()},
                         {"im", c.imag()}});
    return {{"left_base", prefix_to_json(t.left_base())},
            {"right_base", prefix_to_json(t.right_base())},
            {"terms", std::move(terms)}};
}

inline TensorElement tensor_from_json(const json& j) {
    TensorElement t(prefix_from_json(j.at("left_base")), prefix_from_json(j.at("right_base")));
    for (const auto& e : j.at("terms"))
        t.add_term(e.at("JL").get<Digits>(), e.at("KL").get<Digits>(),
                   e.at("JR").get<Digits>(), e.at("KR").get<Digits>(),
                   Complex(e.at("re").get<double>(), e.at("im").get<double>()));
    return t;
}

inline json report_to_json(const VerifyReport& r) {
    json j = {{"check", r.check},
              {"passed", r.passed()},
              {"instances", r.instances},
              {"failures", r.failures}};
    if (r.rank) j["rank"] = *r.rank;
    if (r.full_dim) j["full_dim"] = *r.full_dim;
    return j;
}

} // namespace uhfb
