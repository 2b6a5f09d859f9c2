#pragma once

/// @file repstate.hpp
/// Product states on finite levels, their tensor product through the
/// coproduct, GNS representations at a level, tensor products of
/// representations, commutant and center dimensions, the unitary
/// intertwiner check, and the atom classes with their star semigroup.

#include <memory>

#include "uhfb/bialgebra.hpp"

namespace uhfb {

/// Product state: one density matrix per site.  Evaluation on a matrix
/// unit E_{J,K} is the product over sites of T^{(i)}_{k_i, j_i}; note the
/// transposed index order.
class ProductState {
public:
    ProductState(SequencePrefix base, std::vector<Mat> sites, double tol = 1e-10)
        : base_(std::move(base)), sites_(std::move(sites)) {
        require(base_.size() == sites_.size(), "ProductState: site count differs from level");
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            require(static_cast<uint64_t>(sites_[i].rows()) == base_[i],
                    "ProductState: site size differs from base entry");
            require(is_density(sites_[i], tol), "ProductState: site is not a density matrix");
        }
    }

    static ProductState tracial(const SequencePrefix& base) {
        std::vector<Mat> sites;
        for (std::size_t i = 0; i < base.size(); ++i)
            sites.push_back(Mat::Identity(base[i], base[i]) / double(base[i]));
        return ProductState(base, std::move(sites));
    }

    const SequencePrefix& base() const { return base_; }
    std::size_t length() const { return sites_.size(); }
    const Mat& site(std::size_t i) const { return sites_[i]; }

    Complex eval_unit(const Digits& J, const Digits& K) const {
        require(J.size() <= length() && J.size() == K.size(), "ProductState: word too long");
        Complex v = 1.0;
        for (std::size_t i = 0; i < J.size(); ++i) v *= sites_[i](K[i] - 1, J[i] - 1);
        return v;
    }

    Complex eval(const AlgebraElement& x) const {
        require(x.level() <= length() && x.base() == base_.truncated(x.level()),
                "ProductState: element base is not a truncation of the state base");
        Complex v = 0.0;
        for (const auto& [k, c] : x.terms()) v += c * eval_unit(k.first, k.second);
        return v;
    }

    /// Dense density of the first `level` sites under the codec.
    Mat dense_density(std::size_t level) const {
        require(level >= 1 && level <= length(), "ProductState: bad level");
        Mat t = sites_[0];
        for (std::size_t i = 1; i < level; ++i) t = kron(t, sites_[i]);
        return t;
    }

private:
    SequencePrefix base_;
    std::vector<Mat> sites_;
};

inline Complex state_eval(const ProductState& w, const AlgebraElement& x) { return w.eval(x); }

/// Sitewise Kronecker product of two product states.
inline ProductState boxtimes_states(const ProductState& s, const ProductState& t) {
    require(s.length() == t.length(), "boxtimes_states: length mismatch");
    std::vector<Mat> sites;
    for (std::size_t i = 0; i < s.length(); ++i) sites.push_back(kron(s.site(i), t.site(i)));
    return ProductState(seq_product(s.base(), t.base()), std::move(sites));
}

/// State on a composite base, evaluated by first applying the coproduct.
class StateFunctional {
public:
    using Fn = std::function<Complex(const AlgebraElement&)>;

    StateFunctional(SequencePrefix base, Fn fn) : base_(std::move(base)), fn_(std::move(fn)) {}

    const SequencePrefix& base() const { return base_; }
    Complex eval(const AlgebraElement& x) const {
        require(x.level() <= base_.size() && x.base() == base_.truncated(x.level()),
                "StateFunctional: element base is not a truncation of the functional base");
        return fn_(x);
    }

private:
    SequencePrefix base_;
    Fn fn_;
};

inline StateFunctional as_functional(const ProductState& w) {
    return StateFunctional(w.base(), [w](const AlgebraElement& x) { return w.eval(x); });
}

/// (w1 (x) w2)(x) = (w1 (x) w2)(phi_{a,b}(x)): the tensor product state
/// through the coproduct at the factor pair of the two bases.
inline StateFunctional state_tensor(const StateFunctional& w1, const StateFunctional& w2) {
    require(w1.base().size() == w2.base().size(), "state_tensor: length mismatch");
    const SequencePrefix ab = seq_product(w1.base(), w2.base());
    return StateFunctional(ab, [w1, w2](const AlgebraElement& x) {
        const std::size_t m = x.level();
        const TensorElement t = coproduct_phi(w1.base().truncated(m), w2.base().truncated(m), x);
        Complex v = 0.0;
        for (const auto& [k, c] : t.terms())
            v += c *
                 w1.eval(unit_elem(w1.base().truncated(m), k.first.first, k.first.second)) *
                 w2.eval(unit_elem(w2.base().truncated(m), k.second.first, k.second.second));
        return v;
    });
}

inline StateFunctional state_tensor(const ProductState& w1, const ProductState& w2) {
    return state_tensor(as_functional(w1), as_functional(w2));
}

/// Finite-level representation: matrices for the generating matrix units,
/// resolved through a unit function, plus an optional cyclic vector.
class Rep {
public:
    using UnitFn = std::function<Mat(const Digits&, const Digits&)>;

    Rep(SequencePrefix base, Eigen::Index dim, UnitFn fn, Vec cyclic = Vec())
        : base_(std::move(base)), dim_(dim), fn_(std::move(fn)), cyclic_(std::move(cyclic)) {}

    const SequencePrefix& base() const { return base_; }
    std::size_t level() const { return base_.size(); }
    Eigen::Index dim() const { return dim_; }
    const Vec& cyclic() const { return cyclic_; }

    Mat unit(const Digits& J, const Digits& K) const { return fn_(J, K); }

    Mat apply(const AlgebraElement& x) const {
        require(x.base() == base_, "Rep: element base mismatch");
        Mat m = Mat::Zero(dim_, dim_);
        for (const auto& [k, c] : x.terms()) m += c * unit(k.first, k.second);
        return m;
    }

    /// The defining representation: units act as themselves.
    static Rep defining(const SequencePrefix& base) {
        const auto d = static_cast<Eigen::Index>(base.dim());
        return Rep(base, d, [base, d](const Digits& J, const Digits& K) {
            return matrix_unit(d, static_cast<Eigen::Index>(detail::codec_index(base, J)) + 1,
                               static_cast<Eigen::Index>(detail::codec_index(base, K)) + 1);
        });
    }

private:
    SequencePrefix base_;
    Eigen::Index dim_;
    UnitFn fn_;
    Vec cyclic_;
};

/// Two images that generate the represented algebra: a diagonal unit sum
/// with distinct weights and the cyclic shift chain.  The commutant of a
/// multiplicative unital representation equals the commutant of this pair.
inline std::vector<Mat> algebra_generators(const Rep& r) {
    const uint64_t D = r.base().dim();
    Mat diag = Mat::Zero(r.dim(), r.dim()), cyc = Mat::Zero(r.dim(), r.dim());
    for (uint64_t idx = 0; idx < D; ++idx) {
        const Digits j = detail::codec_digits(r.base(), idx);
        const Digits k = detail::codec_digits(r.base(), (idx + 1) % D);
        diag += double(idx + 1) * r.unit(j, j);
        cyc += r.unit(j, k);
    }
    return {diag, cyc};
}

/// GNS representation of a product state at a level: orthonormal basis of
/// classes of matrix units via the eigendecomposition of the Gram matrix,
/// left-multiplication matrices for all units, and the class of the
/// identity as cyclic vector.
class GNSRep {
public:
    GNSRep(SequencePrefix base, Eigen::Index dim,
           std::shared_ptr<const std::map<AlgebraElement::Key, Mat>> units, Vec cyclic, Mat gram,
           Mat lambda, double state_residual)
        : base_(std::move(base)), dim_(dim), units_(std::move(units)), cyclic_(std::move(cyclic)),
          gram_(std::move(gram)), lambda_(std::move(lambda)), state_residual_(state_residual) {}

    const SequencePrefix& base() const { return base_; }
    Eigen::Index dim() const { return dim_; }
    const std::map<AlgebraElement::Key, Mat>& rep_units() const { return *units_; }
    const Vec& cyclic() const { return cyclic_; }
    const Mat& gram() const { return gram_; }
    /// dim x N matrix whose column at unit index beta holds the
    /// coordinates of the class of that unit (the GNS map on units).
    const Mat& lambda() const { return lambda_; }
    double state_residual() const { return state_residual_; }

    Mat unit(const Digits& J, const Digits& K) const {
        auto it = units_->find({J, K});
        require(it != units_->end(), "GNSRep: unknown unit");
        return it->second;
    }

    Mat apply(const AlgebraElement& x) const { return rep().apply(x); }

    Rep rep() const {
        auto units = units_;
        return Rep(base_, dim_,
                   [units](const Digits& J, const Digits& K) {
                       auto it = units->find({J, K});
                       require(it != units->end(), "GNSRep: unknown unit");
                       return it->second;
                   },
                   cyclic_);
    }

private:
    SequencePrefix base_;
    Eigen::Index dim_;
    std::shared_ptr<const std::map<AlgebraElement::Key, Mat>> units_;
    Vec cyclic_;
    Mat gram_;
    Mat lambda_;
    double state_residual_;
};

/// GNS construction at a level.  The Gram matrix over all units of the
/// truncated base is eigen-decomposed; eigenvalues above tol relative to
/// the largest give the orthonormal basis.  Unit matrices come from the
/// three-unit contraction omega(u_a^* E_{J,K} u_b), which reduces to
/// blocks of the eigenvector matrix around the dense state transpose.
inline GNSRep gns(const ProductState& w, std::size_t level, double tol = 1e-10) {
    require(level >= 1 && level <= w.length(), "gns: level exceeds state length");
    const SequencePrefix base = w.base().truncated(level);
    const uint64_t D = base.dim();
    require(D <= 64, "gns: combinatorial size cap exceeded; reduce level");
    const auto Di = static_cast<Eigen::Index>(D);
    const Eigen::Index N = Di * Di;

    // ttil(x, y) = omega(E_{X,Y}) for codec indices x, y
    Mat ttil(Di, Di);
    for (Eigen::Index x = 0; x < Di; ++x) {
        const Digits X = detail::codec_digits(base, static_cast<uint64_t>(x));
        for (Eigen::Index y = 0; y < Di; ++y) {
            const Digits Y = detail::codec_digits(base, static_cast<uint64_t>(y));
            ttil(x, y) = w.eval_unit(X, Y);
        }
    }

    // Gram over unit pairs alpha=(J,Ka): u_a^* u_b = [J_a==J_b] E_{Ka,Kb}
    Mat gram = Mat::Zero(N, N);
    for (Eigen::Index j = 0; j < Di; ++j) gram.block(j * Di, j * Di, Di, Di) = ttil;

    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    require(es.info() == Eigen::Success, "gns: Gram eigendecomposition failed");
    const auto& ev = es.eigenvalues();
    const double emax = ev(N - 1);
    require(emax > 0.0, "gns: Gram matrix vanishes");
    require(ev(0) > -tol * emax, "gns: Gram matrix not positive semidefinite within tolerance");

    Eigen::Index dim = 0;
    for (Eigen::Index i = 0; i < N; ++i)
        if (ev(i) > tol * emax) ++dim;
    require(dim >= 1, "gns: zero-dimensional GNS space");

    // columns ordered by descending eigenvalue, scaled to unit classes
    Mat q(N, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        q.col(r) = es.eigenvectors().col(N - 1 - r) / std::sqrt(ev(N - 1 - r));

    // pi(E_{J,K}) = B_J^H ttil B_K with B_J the (J,.) row block of q
    auto block = [&](Eigen::Index j) { return q.middleRows(j * Di, Di); };
    std::vector<Mat> tb(static_cast<std::size_t>(Di));
    for (Eigen::Index k = 0; k < Di; ++k) tb[static_cast<std::size_t>(k)] = ttil * block(k);
    auto units = std::make_shared<std::map<AlgebraElement::Key, Mat>>();
    for (Eigen::Index j = 0; j < Di; ++j) {
        const Digits J = detail::codec_digits(base, static_cast<uint64_t>(j));
        const Mat bjh = block(j).adjoint();
        for (Eigen::Index k = 0; k < Di; ++k) {
            const Digits K = detail::codec_digits(base, static_cast<uint64_t>(k));
            units->emplace(AlgebraElement::Key{J, K}, bjh * tb[static_cast<std::size_t>(k)]);
        }
    }

    // cyclic vector: class of the identity; g_alpha = omega(u_alpha^*)
    Vec g(N);
    for (Eigen::Index j = 0; j < Di; ++j)
        for (Eigen::Index k = 0; k < Di; ++k) g(j * Di + k) = ttil(k, j);
    Vec cyclic = q.adjoint() * g;

    // GNS map on unit classes and the defining-property residual
    Mat lambda = q.adjoint() * gram;
    double resid = 0.0;
    for (Eigen::Index j = 0; j < Di; ++j) {
        const Digits J = detail::codec_digits(base, static_cast<uint64_t>(j));
        for (Eigen::Index k = 0; k < Di; ++k) {
            const Digits K = detail::codec_digits(base, static_cast<uint64_t>(k));
            const Complex lhs = cyclic.dot(units->at({J, K}) * cyclic);
            resid = std::max(resid, std::abs(lhs - w.eval_unit(J, K)));
        }
    }
    return GNSRep(base, dim, std::move(units), std::move(cyclic), std::move(gram),
                  std::move(lambda), resid);
}

/// Tensor product of representations through the coproduct: the image of
/// a unit over a.b is the Kronecker product of the split-unit images.
inline Rep rep_tensor(const Rep& p1, const Rep& p2) {
    require(p1.level() == p2.level(), "rep_tensor: level mismatch");
    const SequencePrefix a = p1.base(), b = p2.base();
    const SequencePrefix ab = seq_product(a, b);
    Vec cyc;
    if (p1.cyclic().size() > 0 && p2.cyclic().size() > 0)
        cyc = kron_vec(p1.cyclic(), p2.cyclic());
    return Rep(ab, p1.dim() * p2.dim(),
               [p1, p2, a, b](const Digits& J, const Digits& K) {
                   detail::SplitPair js = detail::split_digits(J, a, b);
                   detail::SplitPair ks = detail::split_digits(K, a, b);
                   return kron(p1.unit(js.left, ks.left), p2.unit(js.right, ks.right));
               },
               cyc);
}

inline Rep rep_tensor(const GNSRep& p1, const GNSRep& p2) {
    return rep_tensor(p1.rep(), p2.rep());
}

namespace detail {

/// Count of singular values of the stacked rows at or below tol relative
/// to the largest, computed through the normal matrix: its eigenvalues
/// are the squared singular values.
inline Eigen::Index null_dim_and_basis(const std::vector<Mat>& rows_blocks, Eigen::Index cols,
                                       double tol, Mat* basis) {
    Mat s = Mat::Zero(cols, cols);
    for (const Mat& m : rows_blocks) s += m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    require(es.info() == Eigen::Success, "null space: eigendecomposition failed");
    const auto& ev = es.eigenvalues();
    const double emax = std::max(ev(cols - 1), 0.0);
    // sigma <= tol * sigma_max reads as lambda <= tol^2 * lambda_max on the
    // normal matrix, but rounding already perturbs zero eigenvalues to about
    // eps * lambda_max, so the cut cannot go below a noise floor
    const double cut = std::max(tol * tol, 1e-13) * emax;
    Eigen::Index nullity = 0;
    for (Eigen::Index i = 0; i < cols; ++i)
        if (ev(i) <= cut || emax == 0.0) ++nullity;
    if (basis) *basis = es.eigenvectors().leftCols(nullity);
    return nullity;
}

inline Mat sylvester(const Mat& g) {
    const Eigen::Index d = g.rows();
    return kron(g.transpose(), Mat::Identity(d, d)) - kron(Mat::Identity(d, d), g);
}

} // namespace detail

/// Dimension of {X : X g = g X for every generator g}, as the null-space
/// dimension of the stacked Sylvester system with a relative
/// singular-value threshold.  The generators must generate the
/// represented algebra for this to be the representation's commutant.
inline Eigen::Index commutant_dimension(const std::vector<Mat>& gens, double tol = 1e-10,
                                        Mat* basis = nullptr) {
    require(!gens.empty(), "commutant_dimension: no generators");
    const Eigen::Index d = gens[0].rows();
    std::vector<Mat> blocks;
    for (const Mat& g : gens) {
        require(g.rows() == d && g.cols() == d, "commutant_dimension: size mismatch");
        blocks.push_back(detail::sylvester(g));
    }
    return detail::null_dim_and_basis(blocks, d * d, tol, basis);
}

inline Eigen::Index commutant_dimension(const Rep& r, double tol = 1e-10, Mat* basis = nullptr) {
    return commutant_dimension(algebra_generators(r), tol, basis);
}

inline Eigen::Index commutant_dimension(const GNSRep& r, double tol = 1e-10,
                                        Mat* basis = nullptr) {
    return commutant_dimension(r.rep(), tol, basis);
}

namespace detail {

inline Eigen::Index rank_of_columns(const Mat& a, double tol) {
    if (a.cols() == 0) return 0;
    std::vector<Mat> one{a};
    Mat* none = nullptr;
    (void)none;
    const Eigen::Index nullity = null_dim_and_basis(one, a.cols(), tol, nullptr);
    return a.cols() - nullity;
}

} // namespace detail

/// Dimension of span(images) intersected with the commutant, through
/// dim(U) + dim(V) - dim(U + V) on vectorized matrices.
inline Eigen::Index center_dimension(const std::vector<Mat>& span_family,
                                     const std::vector<Mat>& gens, double tol = 1e-10) {
    require(!span_family.empty(), "center_dimension: empty span family");
    const Eigen::Index d = span_family[0].rows();
    Mat comm_basis;
    const Eigen::Index c = commutant_dimension(gens, tol, &comm_basis);
    Mat a(d * d, static_cast<Eigen::Index>(span_family.size()));
    for (std::size_t i = 0; i < span_family.size(); ++i) {
        require(span_family[i].rows() == d && span_family[i].cols() == d,
                "center_dimension: size mismatch");
        a.col(static_cast<Eigen::Index>(i)) = span_family[i].reshaped();
    }
    const Eigen::Index ra = detail::rank_of_columns(a, tol);
    Mat joint(d * d, a.cols() + comm_basis.cols());
    joint << a, comm_basis;
    const Eigen::Index rj = detail::rank_of_columns(joint, tol);
    return c + ra - rj;
}

/// Center of a representation: span of the unit images intersected with
/// the commutant of the generated algebra.
inline Eigen::Index center_dimension(const Rep& r, double tol = 1e-10) {
    std::vector<Mat> family;
    Digits J(r.level(), 1);
    do {
        Digits K(r.level(), 1);
        do {
            family.push_back(r.unit(J, K));
        } while (detail::next_digits(K, r.base()));
    } while (detail::next_digits(J, r.base()));
    return center_dimension(family, algebra_generators(r), tol);
}

inline Eigen::Index center_dimension(const GNSRep& r, double tol = 1e-10) {
    return center_dimension(r.rep(), tol);
}

/// Result of the unitary-equivalence check between the GNS representation
/// of the sitewise product state and the tensor product representation.
struct IntertwinerReport {
    Eigen::Index dim = 0;
    double unitarity_defect = 0.0;
    double intertwine_residual = 0.0;
    double state_residual = 0.0;
    Mat U;

    bool passed(double tol) const {
        return unitarity_defect <= tol && intertwine_residual <= tol && state_residual <= tol;
    }
};

/// Builds the unitary U with U Lambda_{T box R}(x) = (Lambda_T (x)
/// Lambda_R)(phi(x)) from the GNS maps on the spanning unit classes, then
/// verifies unitarity, the intertwining relation on all units, and the
/// state values through U.
inline IntertwinerReport intertwiner_check(const ProductState& t, const ProductState& r,
                                           std::size_t level, double tol = 1e-10) {
    require(t.length() == r.length(), "intertwiner_check: length mismatch");
    const ProductState tr = boxtimes_states(t, r);
    const GNSRep g_tr = gns(tr, level, tol);
    const GNSRep g_t = gns(t, level, tol);
    const GNSRep g_r = gns(r, level, tol);
    const SequencePrefix a = g_t.base(), b = g_r.base(), ab = g_tr.base();
    const auto D = static_cast<Eigen::Index>(ab.dim());
    const Eigen::Index N = D * D;

    require(g_tr.dim() == g_t.dim() * g_r.dim(),
            "intertwiner_check: GNS dimensions do not match the tensor product");

    // images of the spanning unit classes on both sides
    const Mat& l = g_tr.lambda();
    Mat p(g_t.dim() * g_r.dim(), N);
    Eigen::Index beta = 0;
    Digits J(level, 1);
    do {
        Digits K(level, 1);
        do {
            detail::SplitPair js = detail::split_digits(J, a, b);
            detail::SplitPair ks = detail::split_digits(K, a, b);
            p.col(beta++) = kron_vec(g_t.unit(js.left, ks.left) * g_t.cyclic(),
                                     g_r.unit(js.right, ks.right) * g_r.cyclic());
        } while (detail::next_digits(K, ab));
    } while (detail::next_digits(J, ab));

    // least squares U l = p; l has full row rank by cyclicity
    const Mat llh = l * l.adjoint();
    Eigen::FullPivLU<Mat> lu(llh);
    require(lu.isInvertible(), "intertwiner_check: GNS spanning set is rank deficient");
    IntertwinerReport rep;
    rep.dim = g_tr.dim();
    rep.U = p * l.adjoint() * lu.inverse();

    rep.unitarity_defect = operator_norm(Mat(rep.U.adjoint() * rep.U -
                                             Mat::Identity(rep.dim, rep.dim)));
    beta = 0;
    Digits J2(level, 1);
    do {
        Digits K2(level, 1);
        do {
            detail::SplitPair js = detail::split_digits(J2, a, b);
            detail::SplitPair ks = detail::split_digits(K2, a, b);
            const Mat lhs = rep.U * g_tr.unit(J2, K2);
            const Mat rhs = kron(g_t.unit(js.left, ks.left), g_r.unit(js.right, ks.right)) * rep.U;
            rep.intertwine_residual = std::max(rep.intertwine_residual, operator_norm(Mat(lhs - rhs)));
            const Vec uo = rep.U * g_tr.cyclic();
            const Complex through =
                uo.dot(kron(g_t.unit(js.left, ks.left), g_r.unit(js.right, ks.right)) * uo);
            rep.state_residual = std::max(
                rep.state_residual, std::abs(through - tr.eval_unit(J2, K2)));
        } while (detail::next_digits(K2, ab));
    } while (detail::next_digits(J2, ab));
    return rep;
}

/// Quasi-equivalence class P_n[J] of the atom state with diagonal site
/// projections picked by the index sequence J over alphabet {1..n}.
struct AtomClass {
    uint32_t alphabet;
    EvPeriodicSeq J;

    AtomClass(uint32_t n, EvPeriodicSeq j) : alphabet(n), J(std::move(j)) {
        require(alphabet >= 2, "AtomClass: alphabet must be >= 2");
        require(J.max_entry() <= alphabet, "AtomClass: index entry exceeds alphabet");
    }

    friend bool operator==(const AtomClass&, const AtomClass&) = default;

    std::string str() const { return "P" + std::to_string(alphabet) + "[" + J.str() + "]"; }
};

/// The atom's product state at a level: site i carries the diagonal unit
/// E_{j_i, j_i}.
inline ProductState atom_state(const AtomClass& cl, std::size_t level) {
    require(level >= 1, "atom_state: bad level");
    std::vector<uint32_t> e(level, cl.alphabet);
    std::vector<Mat> sites;
    for (std::size_t i = 0; i < level; ++i)
        sites.push_back(matrix_unit(cl.alphabet, cl.J.at(i), cl.J.at(i)));
    return ProductState(SequencePrefix::base(std::move(e)), std::move(sites));
}

/// Semigroup product of atom classes: alphabets multiply and the index
/// sequences combine through the star product.
inline AtomClass atom_product(const AtomClass& x, const AtomClass& y) {
    const uint64_t nm = uint64_t(x.alphabet) * uint64_t(y.alphabet);
    require(nm <= UINT32_MAX, "atom_product: alphabet overflow");
    return AtomClass(static_cast<uint32_t>(nm), star(x.J, y.J, y.alphabet));
}

/// Atoms coincide exactly when the alphabets match and the index
/// sequences are tail equivalent.
inline bool atom_equiv(const AtomClass& x, const AtomClass& y) {
    return x.alphabet == y.alphabet && tail_equiv(x.J, y.J);
}

} // namespace uhfb
