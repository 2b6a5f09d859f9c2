#pragma once

/// @file sequences.hpp
/// Index sequences for the UHF family: finite base prefixes, the unit
/// prefix, eventually periodic index sequences, componentwise products,
/// factor-pair enumeration and the star product on index sequences.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "uhfb/common.hpp"

namespace uhfb {

/// Finite prefix (a_1, ..., a_n) of a sequence of matrix sizes.
///
/// A prefix names an algebra in the family only when every entry is >= 2
/// (UHF base) or every entry is 1 (the unit prefix).  Mixed prefixes are
/// rejected by base(); they still occur as components of factor pairs and
/// are obtained through component().  A size-1 site contributes a scalar
/// tensor factor, so mixed prefixes need no special handling downstream.
class SequencePrefix {
public:
    /// Standard constructor: all entries >= 2, or all entries == 1.
    static SequencePrefix base(std::vector<uint32_t> e) {
        SequencePrefix p = component(std::move(e));
        require(p.is_unit() || p.is_uhf_base(),
                "SequencePrefix: mixed entries (1s together with >=2) do not name an algebra");
        return p;
    }

    /// Relaxed constructor for factor-pair components: any entries >= 1.
    static SequencePrefix component(std::vector<uint32_t> e) {
        require(!e.empty(), "SequencePrefix: empty prefix");
        uint64_t d = 1;
        for (uint32_t v : e) {
            require(v >= 1, "SequencePrefix: entries must be >= 1");
            require(d <= UINT64_MAX / v, "SequencePrefix: dimension overflows 64 bits");
            d *= v;
        }
        SequencePrefix p;
        p.entries_ = std::move(e);
        p.dim_ = d;
        return p;
    }

    /// The unit prefix 1 = (1, ..., 1) of length n.
    static SequencePrefix unit(std::size_t n) {
        return component(std::vector<uint32_t>(n, 1u));
    }

    std::size_t size() const { return entries_.size(); }
    uint32_t operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<uint32_t>& entries() const { return entries_; }

    /// Product of the entries: the matrix dimension at this level.
    uint64_t dim() const { return dim_; }

    bool is_unit() const {
        return std::all_of(entries_.begin(), entries_.end(), [](uint32_t v) { return v == 1; });
    }
    bool is_uhf_base() const {
        return std::all_of(entries_.begin(), entries_.end(), [](uint32_t v) { return v >= 2; });
    }

    SequencePrefix truncated(std::size_t n) const {
        require(n >= 1 && n <= size(), "SequencePrefix: bad truncation length");
        return component(std::vector<uint32_t>(entries_.begin(), entries_.begin() + n));
    }

    friend bool operator==(const SequencePrefix&, const SequencePrefix&) = default;
    friend auto operator<=>(const SequencePrefix& a, const SequencePrefix& b) {
        return std::lexicographical_compare_three_way(
            a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end());
    }

    /// Text form "2,3,2".
    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) os << ',';
            os << entries_[i];
        }
        return os.str();
    }

private:
    SequencePrefix() = default;
    std::vector<uint32_t> entries_;
    uint64_t dim_ = 1;
};

namespace detail {

inline std::vector<uint32_t> parse_uint_list(const std::string& s, const char* what) {
    std::vector<uint32_t> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            throw error(std::string(what) + ": bad integer '" + tok + "'");
        }
        require(pos == tok.size() && v >= 1 && v <= UINT32_MAX,
                std::string(what) + ": bad entry '" + tok + "'");
        out.push_back(static_cast<uint32_t>(v));
    }
    require(!out.empty(), std::string(what) + ": empty list");
    return out;
}

inline std::vector<uint64_t> divisors(uint32_t v) {
    std::vector<uint64_t> out;
    for (uint64_t d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            if (d != v / d) out.push_back(v / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Parse the text form "2,3,2".  Rejects mixed prefixes (see base()).
inline SequencePrefix parse_prefix(const std::string& s) {
    return SequencePrefix::base(detail::parse_uint_list(s, "prefix"));
}

/// Componentwise product a.b of two prefixes of equal length.
inline SequencePrefix seq_product(const SequencePrefix& a, const SequencePrefix& b) {
    require(a.size() == b.size(), "seq_product: length mismatch");
    std::vector<uint32_t> e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        uint64_t p = uint64_t(a[i]) * uint64_t(b[i]);
        require(p <= UINT32_MAX, "seq_product: entry overflow");
        e[i] = static_cast<uint32_t>(p);
    }
    return SequencePrefix::component(std::move(e));
}

/// Ordered pair (left, right) with left.right equal to a parent prefix
/// componentwise.  Components may mix 1s and larger entries.
struct FactorPair {
    SequencePrefix left;
    SequencePrefix right;

    friend bool operator==(const FactorPair&, const FactorPair&) = default;

    std::string str() const { return "(" + left.str() + " | " + right.str() + ")"; }
};

/// All pairs (b, c) with b.c = a, sitewise over divisors.  The count is the
/// product over sites of the divisor counts d(a_i); ordering is
/// lexicographic on the left component with divisors ascending per site.
inline std::vector<FactorPair> enumerate_factorizations(const SequencePrefix& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<uint64_t>> divs(n);
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        divs[i] = detail::divisors(a[i]);
        count *= divs[i].size();
    }
    std::vector<FactorPair> out;
    out.reserve(count);
    std::vector<std::size_t> pos(n, 0);
    for (;;) {
        std::vector<uint32_t> l(n), r(n);
        for (std::size_t i = 0; i < n; ++i) {
            l[i] = static_cast<uint32_t>(divs[i][pos[i]]);
            r[i] = a[i] / l[i];
        }
        out.push_back(FactorPair{SequencePrefix::component(std::move(l)),
                                 SequencePrefix::component(std::move(r))});
        // odometer, last site fastest: lexicographic on the left component
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++pos[i] < divs[i].size()) break;
            pos[i] = 0;
            if (i == 0) return out;
        }
    }
}

/// Eventually periodic sequence of positive integers, held in the canonical
/// form with minimal period and then minimal preperiod.  Equality of two
/// objects is equality of the infinite sequences they denote.
class EvPeriodicSeq {
public:
    EvPeriodicSeq(std::vector<uint32_t> pre, std::vector<uint32_t> per)
        : pre_(std::move(pre)), per_(std::move(per)) {
        require(!per_.empty(), "EvPeriodicSeq: empty period");
        for (uint32_t v : pre_) require(v >= 1, "EvPeriodicSeq: entries must be >= 1");
        for (uint32_t v : per_) require(v >= 1, "EvPeriodicSeq: entries must be >= 1");
        canonicalize();
    }

    static EvPeriodicSeq constant(uint32_t v) { return EvPeriodicSeq({}, {v}); }

    const std::vector<uint32_t>& preperiod() const { return pre_; }
    const std::vector<uint32_t>& period() const { return per_; }

    /// Entry at 0-based position i of the infinite sequence.
    uint32_t at(std::size_t i) const {
        if (i < pre_.size()) return pre_[i];
        return per_[(i - pre_.size()) % per_.size()];
    }

    uint32_t max_entry() const {
        uint32_t m = 0;
        for (uint32_t v : pre_) m = std::max(m, v);
        for (uint32_t v : per_) m = std::max(m, v);
        return m;
    }

    friend bool operator==(const EvPeriodicSeq&, const EvPeriodicSeq&) = default;

    /// Text form "p1,p2|q1,q2"; empty preperiod prints as "|q1".
    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < pre_.size(); ++i) {
            if (i) os << ',';
            os << pre_[i];
        }
        os << '|';
        for (std::size_t i = 0; i < per_.size(); ++i) {
            if (i) os << ',';
            os << per_[i];
        }
        return os.str();
    }

    static EvPeriodicSeq parse(const std::string& s) {
        auto bar = s.find('|');
        require(bar != std::string::npos, "EvPeriodicSeq: missing '|' in '" + s + "'");
        std::vector<uint32_t> pre;
        if (bar > 0) pre = detail::parse_uint_list(s.substr(0, bar), "EvPeriodicSeq preperiod");
        auto per = detail::parse_uint_list(s.substr(bar + 1), "EvPeriodicSeq period");
        return EvPeriodicSeq(std::move(pre), std::move(per));
    }

private:
    void canonicalize() {
        // minimal period length divides the given one
        for (std::size_t p = 1; p < per_.size(); ++p) {
            if (per_.size() % p != 0) continue;
            bool ok = true;
            for (std::size_t i = p; i < per_.size() && ok; ++i) ok = (per_[i] == per_[i % p]);
            if (ok) {
                per_.resize(p);
                break;
            }
        }
        // absorb matching tail of the preperiod into a rotation of the period
        while (!pre_.empty() && pre_.back() == per_.back()) {
            per_.insert(per_.begin(), per_.back());
            per_.pop_back();
            pre_.pop_back();
        }
    }

    std::vector<uint32_t> pre_, per_;
};

/// Star product: entry i of the result is m*(J_i - 1) + K_i, for K with
/// entries in {1..m}.  Encodes the pair (J, K) into one sequence over the
/// composite alphabet; with J over {1..n} the result ranges in {1..n*m}.
inline EvPeriodicSeq star(const EvPeriodicSeq& J, const EvPeriodicSeq& K, uint32_t m) {
    require(m >= 2, "star: alphabet size m must be >= 2");
    require(K.max_entry() <= m, "star: K entry exceeds alphabet size m");
    const std::size_t L = std::max(J.preperiod().size(), K.preperiod().size());
    const std::size_t P = std::lcm(J.period().size(), K.period().size());
    std::vector<uint32_t> pre(L), per(P);
    for (std::size_t i = 0; i < L; ++i) {
        uint64_t v = uint64_t(m) * (J.at(i) - 1) + K.at(i);
        require(v <= UINT32_MAX, "star: entry overflow");
        pre[i] = static_cast<uint32_t>(v);
    }
    for (std::size_t i = 0; i < P; ++i) {
        uint64_t v = uint64_t(m) * (J.at(L + i) - 1) + K.at(L + i);
        require(v <= UINT32_MAX, "star: entry overflow");
        per[i] = static_cast<uint32_t>(v);
    }
    return EvPeriodicSeq(std::move(pre), std::move(per));
}

/// Exact tail equivalence: J and K agree from some position onward.
/// Beyond both preperiods the sequences are purely periodic, so agreement
/// on one lcm-length block decides the question.
inline bool tail_equiv(const EvPeriodicSeq& J, const EvPeriodicSeq& K) {
    const std::size_t N = std::max(J.preperiod().size(), K.preperiod().size());
    const std::size_t P = std::lcm(J.period().size(), K.period().size());
    for (std::size_t i = N; i < N + P; ++i)
        if (J.at(i) != K.at(i)) return false;
    return true;
}

} // namespace uhfb
