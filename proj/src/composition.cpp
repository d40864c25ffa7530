#include "sp6flags/composition.hpp"

namespace sp6flags {

namespace {

void check_elem(const CDTower& t, const CDElem& x, const char* who) {
    if (x.size() != t.dim())
        throw PreconditionError(std::string(who) + ": element has " +
                                std::to_string(x.size()) + " coordinates, tower needs " +
                                std::to_string(t.dim()));
}

// Recursive helpers working on [lo, lo+len) slices of the coordinate vector;
// level = number of doublings for the slice.
void conj_rec(const CDTower& t, CDElem& x, std::size_t lo, std::size_t len) {
    if (len == 1) return;
    std::size_t half = len / 2;
    conj_rec(t, x, lo, half);
    for (std::size_t k = lo + half; k < lo + len; ++k) x[k] = -x[k];
}

CDElem slice(const CDElem& x, std::size_t lo, std::size_t len) {
    return CDElem(x.begin() + lo, x.begin() + lo + len);
}

CDElem mul_rec(const CDTower& t, std::size_t level,
               const CDElem& x, const CDElem& y) {
    if (level == 0) return {x[0] * y[0]};
    std::size_t half = std::size_t(1) << (level - 1);
    const Scalar& lam = t.lambdas[level - 1];
    CDElem a = slice(x, 0, half), b = slice(x, half, half);
    CDElem c = slice(y, 0, half), d = slice(y, half, half);
    CDElem dbar = d, cbar = c;
    conj_rec(t, dbar, 0, half);
    conj_rec(t, cbar, 0, half);
    // (a,b)(c,d) = (ac + lam * d~ b, da + b c~)
    CDElem first = mul_rec(t, level - 1, a, c);
    CDElem tmp = mul_rec(t, level - 1, dbar, b);
    for (std::size_t k = 0; k < half; ++k) first[k] += lam * tmp[k];
    CDElem second = mul_rec(t, level - 1, d, a);
    tmp = mul_rec(t, level - 1, b, cbar);
    for (std::size_t k = 0; k < half; ++k) second[k] += tmp[k];
    first.insert(first.end(), second.begin(), second.end());
    return first;
}

Scalar norm_rec(const CDTower& t, std::size_t level, const CDElem& x,
                std::size_t lo, std::size_t len) {
    if (len == 1) return x[lo] * x[lo];
    std::size_t half = len / 2;
    const Scalar& lam = t.lambdas[level - 1];
    return norm_rec(t, level - 1, x, lo, half) -
           lam * norm_rec(t, level - 1, x, lo + half, half);
}

} // namespace

QForm CDTower::norm_form() const { return pfister(ctx, lambdas); }

CDTower cd_tower(const FieldCtx& ctx, const Vec& lambdas) {
    if (lambdas.size() > 3)
        throw PreconditionError("Cayley–Dickson towers stop at 3 doublings (dim 8)");
    for (const Scalar& l : lambdas) {
        if (l.is_zero())
            throw PreconditionError("doubling constant must be nonzero");
        if (l.ctx() != ctx && !(l.is_rational() && ctx.kind() != FieldKind::prime_field))
            throw FieldMismatchError("doubling constant outside the base field");
    }
    CDTower t{ctx, lambdas};
    for (Scalar& l : t.lambdas)
        if (l.ctx() != ctx) l = l + ctx.zero();
    return t;
}

CDElem cd_zero(const CDTower& t) { return CDElem(t.dim(), t.ctx.zero()); }

CDElem cd_one(const CDTower& t) {
    CDElem e = cd_zero(t);
    e[0] = t.ctx.one();
    return e;
}

CDElem cd_embed_scalar(const CDTower& t, const Scalar& s) {
    CDElem e = cd_zero(t);
    e[0] = s + t.ctx.zero();
    return e;
}

CDElem cd_mul(const CDTower& t, const CDElem& x, const CDElem& y) {
    check_elem(t, x, "cd_mul");
    check_elem(t, y, "cd_mul");
    return mul_rec(t, t.levels(), x, y);
}

CDElem cd_conj(const CDTower& t, const CDElem& x) {
    check_elem(t, x, "cd_conj");
    CDElem out = x;
    conj_rec(t, out, 0, t.dim());
    return out;
}

Scalar cd_norm(const CDTower& t, const CDElem& x) {
    check_elem(t, x, "cd_norm");
    return norm_rec(t, t.levels(), x, 0, t.dim());
}

Scalar cd_trace(const CDTower& t, const CDElem& x) {
    check_elem(t, x, "cd_trace");
    return x[0] * 2;
}

CDElem cd_inverse(const CDTower& t, const CDElem& x) {
    Scalar n = cd_norm(t, x);
    if (n.is_zero())
        throw PreconditionError("element has norm zero; no inverse");
    CDElem out = cd_conj(t, x);
    Scalar ninv = n.inverse();
    for (Scalar& c : out) c = c * ninv;
    return out;
}

bool cd_is_scalar(const CDTower& t, const CDElem& x) {
    check_elem(t, x, "cd_is_scalar");
    for (std::size_t k = 1; k < x.size(); ++k)
        if (!x[k].is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Zorn vector matrices

ZornElem zorn_from_coords(const FieldCtx& ctx, const Vec& coords) {
    if (coords.size() != 8)
        throw PreconditionError("Zorn element needs 8 coordinates");
    ZornElem z{ctx.zero(), ctx.zero(),
               {ctx.zero(), ctx.zero(), ctx.zero()},
               {ctx.zero(), ctx.zero(), ctx.zero()}};
    z.a = coords[0] + ctx.zero();
    for (int k = 0; k < 3; ++k) z.x[k] = coords[1 + k] + ctx.zero();
    for (int k = 0; k < 3; ++k) z.y[k] = coords[4 + k] + ctx.zero();
    z.b = coords[7] + ctx.zero();
    return z;
}

Vec zorn_coords(const ZornElem& z) {
    Vec v{z.a};
    for (int k = 0; k < 3; ++k) v.push_back(z.x[k]);
    for (int k = 0; k < 3; ++k) v.push_back(z.y[k]);
    v.push_back(z.b);
    return v;
}

ZornElem zorn_one(const FieldCtx& ctx) {
    return zorn_from_coords(ctx, {ctx.one(), ctx.zero(), ctx.zero(), ctx.zero(),
                                  ctx.zero(), ctx.zero(), ctx.zero(), ctx.one()});
}

namespace {

std::array<Scalar, 3> cross(const std::array<Scalar, 3>& u,
                            const std::array<Scalar, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

Scalar dot3(const std::array<Scalar, 3>& u, const std::array<Scalar, 3>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

} // namespace

ZornElem zorn_mul(const ZornElem& u, const ZornElem& v) {
    ZornElem w = u;
    w.a = u.a * v.a + dot3(u.x, v.y);
    w.b = u.b * v.b + dot3(u.y, v.x);
    std::array<Scalar, 3> yy = cross(u.y, v.y), xx = cross(u.x, v.x);
    for (int k = 0; k < 3; ++k) {
        w.x[k] = u.a * v.x[k] + v.b * u.x[k] - yy[k];
        w.y[k] = v.a * u.y[k] + u.b * v.y[k] + xx[k];
    }
    return w;
}

ZornElem zorn_conj(const ZornElem& u) {
    ZornElem w = u;
    std::swap(w.a, w.b);
    for (int k = 0; k < 3; ++k) {
        w.x[k] = -w.x[k];
        w.y[k] = -w.y[k];
    }
    return w;
}

Scalar zorn_norm(const ZornElem& u) { return u.a * u.b - dot3(u.x, u.y); }

Scalar zorn_trace(const ZornElem& u) { return u.a + u.b; }

QForm zorn_norm_form(const FieldCtx& ctx) { return qform_hyperbolic(ctx, 4); }

// ---------------------------------------------------------------------------
// uniform wrapper

CompAlgebra CompAlgebra::cayley_dickson(const CDTower& t) {
    return CompAlgebra(t.ctx, t, false);
}

CompAlgebra CompAlgebra::zorn(const FieldCtx& ctx) {
    return CompAlgebra(ctx, CDTower{ctx, {}}, true);
}

std::size_t CompAlgebra::dim() const { return zorn_ ? 8 : tower_.dim(); }

const CDTower& CompAlgebra::tower() const {
    if (zorn_) throw PreconditionError("the Zorn algebra is not a CD tower here");
    return tower_;
}

Vec CompAlgebra::zero() const { return Vec(dim(), ctx_.zero()); }

Vec CompAlgebra::one() const {
    if (zorn_) return zorn_coords(zorn_one(ctx_));
    return cd_one(tower_);
}

Vec CompAlgebra::embed_scalar(const Scalar& s) const {
    Vec e = one();
    for (Scalar& c : e) c = c * s;
    return e;
}

Vec CompAlgebra::mul(const Vec& x, const Vec& y) const {
    if (zorn_)
        return zorn_coords(zorn_mul(zorn_from_coords(ctx_, x), zorn_from_coords(ctx_, y)));
    return cd_mul(tower_, x, y);
}

Vec CompAlgebra::conj(const Vec& x) const {
    if (zorn_) return zorn_coords(zorn_conj(zorn_from_coords(ctx_, x)));
    return cd_conj(tower_, x);
}

Scalar CompAlgebra::norm(const Vec& x) const {
    if (zorn_) return zorn_norm(zorn_from_coords(ctx_, x));
    return cd_norm(tower_, x);
}

Scalar CompAlgebra::trace(const Vec& x) const {
    if (zorn_) return zorn_trace(zorn_from_coords(ctx_, x));
    return cd_trace(tower_, x);
}

bool CompAlgebra::is_scalar(const Vec& x) const {
    if (!zorn_) return cd_is_scalar(tower_, x);
    ZornElem z = zorn_from_coords(ctx_, x);
    for (int k = 0; k < 3; ++k)
        if (!z.x[k].is_zero() || !z.y[k].is_zero()) return false;
    return z.a == z.b;
}

Scalar CompAlgebra::scalar_part(const Vec& x) const { return trace(x) / 2; }

QForm CompAlgebra::norm_form() const {
    if (zorn_) return zorn_norm_form(ctx_);
    return tower_.norm_form();
}

Mat CompAlgebra::norm_polar_gram() const {
    std::size_t n = dim();
    Mat g(ctx_, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ei = zero(), ej = zero(), eij = zero();
            ei[i] = ctx_.one();
            ej[j] = ctx_.one();
            eij[i] = eij[i] + ctx_.one();
            eij[j] = eij[j] + ctx_.one();
            g.at(i, j) = norm(eij) - norm(ei) - norm(ej);
        }
    return g;
}

// ---------------------------------------------------------------------------
// the nested flag tower

FlagTower build_flag_tower(const mpq_class& i, const mpq_class& y1, OctClass cls) {
    if (i == 0 || y1 == 0)
        throw PreconditionError("flag tower needs nonzero i and y1");
    FieldCtx Q = FieldCtx::rationals();
    Scalar l1 = Scalar::rational(-i);
    Scalar l2 = Scalar::rational(-y1);

    FlagTower f{cd_tower(Q, {l1}), cd_tower(Q, {l1, l2}), CDTower{}};

    Scalar l3 = Q.one();
    if (cls == OctClass::division) {
        if (!qform_is_definite(f.Q.norm_form()))
            throw PreconditionError(
                "division octonion class requires a definite quaternion norm; "
                "<1," + i.get_str() + "," + y1.get_str() + "," +
                mpq_class(i * y1).get_str() + "> is indefinite");
        l3 = Q.from_int(-1);
    }
    f.C = cd_tower(Q, {l1, l2, l3});

    // certify the octonion norm class before handing the tower out
    bool ok = cls == OctClass::division
                  ? qform_equivalent(f.C.norm_form(), qform_from_ints(Q, {1, 1, 1, 1, 1, 1, 1, 1}))
                  : qform_equivalent(f.C.norm_form(), qform_hyperbolic(Q, 4));
    if (!ok) throw InternalError("flag tower norm certification failed");
    return f;
}

} // namespace sp6flags
