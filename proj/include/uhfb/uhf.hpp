#pragma once

/// @file uhf.hpp
/// Finite levels of the UHF family: multi-indexed matrix units, sparse
/// elements of the level-n algebra over a base prefix, the embedding that
/// adds one tensor site, and the dense codec.
///
/// Digits are 1-based.  The dense codec is big-endian mixed radix,
/// row(J) = 1 + sum_i (j_i - 1) * prod_{l>i} a_l, which makes the dense
/// image of a multi-site unit the Kronecker product of its site units.

#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "uhfb/matalg.hpp"
#include "uhfb/sequences.hpp"

namespace uhfb {

using Digits = std::vector<uint32_t>;

/// Validated multi-index J = (j_1, ..., j_n) with 1 <= j_i <= a_i.
struct MultiIndex {
    SequencePrefix base;
    Digits digits;

    MultiIndex(SequencePrefix b, Digits d) : base(std::move(b)), digits(std::move(d)) {
        require(base.size() == digits.size(), "MultiIndex: digit count differs from level");
        for (std::size_t i = 0; i < digits.size(); ++i)
            require(digits[i] >= 1 && digits[i] <= base[i], "MultiIndex: digit out of range");
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

namespace detail {

inline std::string digits_str(const Digits& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) os << ',';
        os << d[i];
    }
    return os.str();
}

inline std::string format_complex(const Complex& c) {
    std::ostringstream os;
    os << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    return os.str();
}

/// 0-based dense index of a digit vector under the big-endian codec.
inline uint64_t codec_index(const SequencePrefix& base, const Digits& d) {
    uint64_t idx = 0;
    for (std::size_t i = 0; i < d.size(); ++i) idx = idx * base[i] + (d[i] - 1);
    return idx;
}

/// Inverse of codec_index.
inline Digits codec_digits(const SequencePrefix& base, uint64_t idx) {
    Digits d(base.size());
    for (std::size_t i = base.size(); i-- > 0;) {
        d[i] = static_cast<uint32_t>(idx % base[i]) + 1;
        idx /= base[i];
    }
    return d;
}

} // namespace detail

/// Element of the level-n algebra over a base prefix, stored as a sparse
/// complex combination of matrix units E_{J,K}.  Zero coefficients are
/// pruned, so term maps compare canonically.
class AlgebraElement {
public:
    using Key = std::pair<Digits, Digits>;
    using Terms = std::map<Key, Complex>;

    explicit AlgebraElement(SequencePrefix base) : base_(std::move(base)) {}

    /// Matrix unit c * E_{J,K}.
    static AlgebraElement unit(const SequencePrefix& base, const Digits& J, const Digits& K,
                               Complex c = 1.0) {
        MultiIndex mj(base, J), mk(base, K);
        AlgebraElement x(base);
        x.add_term(J, K, c);
        return x;
    }

    static AlgebraElement identity(const SequencePrefix& base) {
        AlgebraElement x(base);
        Digits j(base.size(), 1);
        for (;;) {
            x.add_term(j, j, 1.0);
            std::size_t i = base.size();
            while (i > 0) {
                --i;
                if (++j[i] <= base[i]) break;
                j[i] = 1;
                if (i == 0) return x;
            }
        }
    }

    const SequencePrefix& base() const { return base_; }
    std::size_t level() const { return base_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Digits& J, const Digits& K, Complex c) {
        require(J.size() == level() && K.size() == level(), "AlgebraElement: digit count mismatch");
        for (std::size_t i = 0; i < level(); ++i)
            require(J[i] >= 1 && J[i] <= base_[i] && K[i] >= 1 && K[i] <= base_[i],
                    "AlgebraElement: digit out of range");
        auto it = terms_.find({J, K});
        if (it == terms_.end()) {
            if (c != 0.0) terms_.emplace(Key{J, K}, c);
        } else {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    Complex coeff(const Digits& J, const Digits& K) const {
        auto it = terms_.find({J, K});
        return it == terms_.end() ? Complex(0.0) : it->second;
    }

    AlgebraElement adjoint() const {
        AlgebraElement out(base_);
        for (const auto& [k, c] : terms_) out.add_term(k.second, k.first, std::conj(c));
        return out;
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        require(a.base_ == b.base_, "AlgebraElement: base mismatch");
        AlgebraElement out = a;
        for (const auto& [k, c] : b.terms_) out.add_term(k.first, k.second, c);
        return out;
    }

    friend AlgebraElement operator*(Complex s, const AlgebraElement& a) {
        AlgebraElement out(a.base_);
        for (const auto& [k, c] : a.terms_) out.add_term(k.first, k.second, s * c);
        return out;
    }

    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        return a + Complex(-1.0) * b;
    }

    /// Product by the sitewise delta rule E_{J,K} E_{L,M} = [K==L] E_{J,M}.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        require(a.base_ == b.base_, "AlgebraElement: base mismatch");
        AlgebraElement out(a.base_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                if (ka.second == kb.first) out.add_term(ka.first, kb.second, ca * cb);
        return out;
    }

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

    double max_coeff_dist(const AlgebraElement& other) const {
        require(base_ == other.base_, "AlgebraElement: base mismatch");
        double m = 0.0;
        for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c - other.coeff(k.first, k.second)));
        for (const auto& [k, c] : other.terms_) m = std::max(m, std::abs(c - coeff(k.first, k.second)));
        return m;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (c != Complex(1.0)) os << "(" << detail::format_complex(c) << ") * ";
            os << "E[a=" << base_.str() << "; J=" << detail::digits_str(k.first)
               << "; K=" << detail::digits_str(k.second) << "]";
        }
        return os.str();
    }

private:
    SequencePrefix base_;
    Terms terms_;
};

inline AlgebraElement unit_elem(const SequencePrefix& base, const Digits& J, const Digits& K,
                                Complex c = 1.0) {
    return AlgebraElement::unit(base, J, K, c);
}

/// Unital embedding to the next level, x -> sum_d x (x) E_{d,d}.
/// The caller passes the matrix size of the new site.
inline AlgebraElement embed_level(const AlgebraElement& x, uint32_t next_entry) {
    require(next_entry >= 1, "embed_level: next entry must be >= 1");
    std::vector<uint32_t> e = x.base().entries();
    e.push_back(next_entry);
    AlgebraElement out(SequencePrefix::component(std::move(e)));
    for (const auto& [k, c] : x.terms()) {
        for (uint32_t d = 1; d <= next_entry; ++d) {
            Digits j = k.first, l = k.second;
            j.push_back(d);
            l.push_back(d);
            out.add_term(j, l, c);
        }
    }
    return out;
}

/// Dense image under the big-endian codec.
inline Mat to_dense(const AlgebraElement& x) {
    require(x.base().dim() <= 8192, "to_dense: dimension too large");
    const auto n = static_cast<Eigen::Index>(x.base().dim());
    Mat m = Mat::Zero(n, n);
    for (const auto& [k, c] : x.terms())
        m(static_cast<Eigen::Index>(detail::codec_index(x.base(), k.first)),
          static_cast<Eigen::Index>(detail::codec_index(x.base(), k.second))) += c;
    return m;
}

inline AlgebraElement from_dense(const SequencePrefix& base, const Mat& m) {
    require(static_cast<uint64_t>(m.rows()) == base.dim() && m.rows() == m.cols(),
            "from_dense: dimension mismatch");
    require(all_finite(m), "from_dense: non-finite entries");
    AlgebraElement x(base);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0.0)
                x.add_term(detail::codec_digits(base, static_cast<uint64_t>(r)),
                           detail::codec_digits(base, static_cast<uint64_t>(c)), m(r, c));
    return x;
}

/// Element of the direct sum over the index semigroup: finitely many
/// components keyed by base prefix.  An all-ones key holds the scalar
/// summand, whose single unit E_{(1..1),(1..1)} is the number 1.
class DirectSumElement {
public:
    using Components = std::map<SequencePrefix, AlgebraElement>;

    DirectSumElement() = default;

    void set_component(const SequencePrefix& key, AlgebraElement value) {
        require(key == value.base(), "DirectSumElement: key differs from component base");
        if (value.is_zero())
            comps_.erase(key);
        else
            comps_.insert_or_assign(key, std::move(value));
    }

    static DirectSumElement scalar(Complex c, std::size_t level = 1) {
        DirectSumElement x;
        SequencePrefix one = SequencePrefix::unit(level);
        x.set_component(one, unit_elem(one, Digits(level, 1), Digits(level, 1), c));
        return x;
    }

    const Components& components() const { return comps_; }

    const AlgebraElement* component(const SequencePrefix& key) const {
        auto it = comps_.find(key);
        return it == comps_.end() ? nullptr : &it->second;
    }

    /// Coefficient of the scalar summand; 0 when absent.
    Complex scalar_part() const {
        for (const auto& [key, x] : comps_)
            if (key.is_unit() && !x.terms().empty()) return x.terms().begin()->second;
        return 0.0;
    }

    friend bool operator==(const DirectSumElement&, const DirectSumElement&) = default;

private:
    Components comps_;
};

} // namespace uhfb
