#ifndef SP6FLAGS_COMPOSITION_HPP
#define SP6FLAGS_COMPOSITION_HPP

#include <array>
#include <cstddef>

#include "sp6flags/qforms.hpp"

namespace sp6flags {

/// A Cayley–Dickson tower over its base field: 0 to 3 doubling constants
/// lambda, giving algebras of dimension 1, 2, 4, 8.  Elements are coordinate
/// vectors in the doubled basis; the unit is (1, 0, ..., 0).
struct CDTower {
    FieldCtx ctx;
    Vec lambdas;

    std::size_t levels() const { return lambdas.size(); }
    std::size_t dim() const { return std::size_t(1) << lambdas.size(); }
    /// Norm form <<lambda_1, ..., lambda_n>> = tensor of <1, -lambda_i>.
    QForm norm_form() const;
};

/// Validates: at most 3 levels, all lambdas nonzero elements of ctx.
CDTower cd_tower(const FieldCtx& ctx, const Vec& lambdas);

using CDElem = Vec;

CDElem cd_zero(const CDTower& t);
CDElem cd_one(const CDTower& t);
CDElem cd_embed_scalar(const CDTower& t, const Scalar& s);

/// Doubling product: (a,b)(c,d) = (ac + lambda d~ b, da + b c~).
CDElem cd_mul(const CDTower& t, const CDElem& x, const CDElem& y);
/// Conjugation negates every non-unit coordinate.
CDElem cd_conj(const CDTower& t, const CDElem& x);
/// N((a,b)) = N(a) - lambda N(b), with N = x^2 on the base field.
Scalar cd_norm(const CDTower& t, const CDElem& x);
/// T(x) = x + conj(x), as a scalar.
Scalar cd_trace(const CDTower& t, const CDElem& x);
/// Inverse conj(x)/N(x); throws PreconditionError when N(x) = 0.
CDElem cd_inverse(const CDTower& t, const CDElem& x);

bool cd_is_scalar(const CDTower& t, const CDElem& x);

/// Zorn vector matrices [[a, x],[y, b]] with scalar diagonal and vector
/// off-diagonal entries; the split octonion algebra over any field.
/// Coordinates are ordered (a, x1, x2, x3, y1, y2, y3, b).
struct ZornElem {
    Scalar a, b;
    std::array<Scalar, 3> x, y;
};

ZornElem zorn_from_coords(const FieldCtx& ctx, const Vec& coords);
Vec zorn_coords(const ZornElem& z);
ZornElem zorn_one(const FieldCtx& ctx);
ZornElem zorn_mul(const ZornElem& u, const ZornElem& v);
ZornElem zorn_conj(const ZornElem& u);
Scalar zorn_norm(const ZornElem& u);  ///< det-like: ab - x.y
Scalar zorn_trace(const ZornElem& u); ///< a + b
QForm zorn_norm_form(const FieldCtx& ctx); ///< hyperbolic of rank 8

/// Uniform interface over a CD tower or the Zorn algebra, used by the
/// Freudenthal construction.  Elements are plain coordinate vectors.
class CompAlgebra {
public:
    static CompAlgebra cayley_dickson(const CDTower& t);
    static CompAlgebra zorn(const FieldCtx& ctx);

    const FieldCtx& ctx() const { return ctx_; }
    std::size_t dim() const;
    bool is_zorn() const { return zorn_; }
    const CDTower& tower() const;

    Vec zero() const;
    Vec one() const;
    Vec embed_scalar(const Scalar& s) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Vec conj(const Vec& x) const;
    Scalar norm(const Vec& x) const;
    Scalar trace(const Vec& x) const;
    bool is_scalar(const Vec& x) const;
    Scalar scalar_part(const Vec& x) const; ///< T(x)/2

    /// Diagonal model of the norm form.
    QForm norm_form() const;
    /// Gram of the polar b_N(u,v) = N(u+v) - N(u) - N(v) on the coordinate
    /// basis (diagonal entries are 2 N(e_i)).
    Mat norm_polar_gram() const;

private:
    CompAlgebra(const FieldCtx& ctx, const CDTower& t, bool z)
        : ctx_(ctx), tower_(t), zorn_(z) {}
    FieldCtx ctx_;
    CDTower tower_;
    bool zorn_;
};

enum class OctClass { division, split };

/// A maximal flag of composition algebras k < K < Q < C realized as nested
/// Cayley–Dickson data: lambda_1 = -i, lambda_2 = -y1, and lambda_3 = -1 or
/// +1 according to the requested octonion class.  Over Q only.  The division
/// class requires the quaternion norm <1, i, y1, i*y1> to be definite
/// (PreconditionError otherwise); norm forms are certified against the split
/// resp. unique definite class before returning.
struct FlagTower {
    CDTower K, Q, C;
};

FlagTower build_flag_tower(const mpq_class& i, const mpq_class& y1, OctClass cls);

} // namespace sp6flags

#endif
