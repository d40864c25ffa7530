#include "sp6flags/freudenthal.hpp"

#include <sstream>

#include "sp6flags/errors.hpp"
#include "sp6flags/rng.hpp"

namespace sp6flags {

namespace {

void require_in_algebra(const FreudenthalAlgebra& F, const FreudenthalElement& X,
                        const char* who) {
    if (X.alpha.size() != 3)
        throw PreconditionError(std::string(who) + ": element needs 3 diagonal scalars");
    for (const Vec& slot : X.c)
        if (slot.size() != F.C.dim())
            throw PreconditionError(std::string(who) +
                                    ": off-diagonal slot has wrong coordinate length");
}

// gamma_j^{-1} gamma_i, the twist that transports entry (i,j) to (j,i).
Scalar twist(const FreudenthalAlgebra& F, int j, int i) {
    return F.gamma[std::size_t(i)] / F.gamma[std::size_t(j)];
}

FreudenthalGrid grid_mul(const CompAlgebra& A, const FreudenthalGrid& X,
                         const FreudenthalGrid& Y) {
    FreudenthalGrid Z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec acc = A.zero();
            for (int k = 0; k < 3; ++k)
                acc = vec_add(acc, A.mul(X[std::size_t(i)][std::size_t(k)],
                                         Y[std::size_t(k)][std::size_t(j)]));
            Z[std::size_t(i)][std::size_t(j)] = acc;
        }
    return Z;
}

// Shared shape check for both entry points: the diagonal must be scalar and
// the lower triangle the twisted conjugate of the upper one.  `hard` failures
// are user input (PreconditionError), otherwise a closure bug (InternalError).
FreudenthalElement element_from_grid(const FreudenthalAlgebra& F,
                                     const FreudenthalGrid& entries, bool hard) {
    auto fail = [&](const std::string& msg) -> void {
        if (hard) throw PreconditionError("make_hermitian_element: " + msg);
        throw InternalError("jordan product left the hermitian subspace: " + msg);
    };
    for (const auto& row : entries)
        for (const Vec& e : row)
            if (e.size() != F.C.dim())
                fail("entry has wrong coordinate length");
    FreudenthalElement X;
    for (int i = 0; i < 3; ++i) {
        const Vec& d = entries[std::size_t(i)][std::size_t(i)];
        if (!F.C.is_scalar(d)) {
            std::ostringstream os;
            os << "entry (" << i + 1 << "," << i + 1 << ") must be a scalar multiple of 1";
            fail(os.str());
        }
        X.alpha.push_back(F.C.scalar_part(d));
    }
    const int slot_i[3] = {1, 2, 0}, slot_j[3] = {2, 0, 1};
    for (int s = 0; s < 3; ++s) {
        const int i = slot_i[s], j = slot_j[s];
        const Vec& upper = entries[std::size_t(i)][std::size_t(j)];
        const Vec expected = vec_scale(twist(F, j, i), F.C.conj(upper));
        if (entries[std::size_t(j)][std::size_t(i)] != expected) {
            std::ostringstream os;
            os << "entry (" << j + 1 << "," << i + 1
               << ") violates the twisted hermitian symmetry against entry (" << i + 1
               << "," << j + 1 << ")";
            fail(os.str());
        }
        X.c[std::size_t(s)] = upper;
    }
    return X;
}

} // namespace

FreudenthalAlgebra freudenthal_algebra(const CompAlgebra& C, const Vec& gamma) {
    const std::uint64_t p = C.ctx().characteristic();
    if (p == 2 || p == 3)
        throw PreconditionError(
            "freudenthal_algebra: characteristic 2 and 3 are excluded (the "
            "Jordan halving and the trace formula for N need 2 and 3 invertible)");
    if (gamma.size() != 3)
        throw PreconditionError("freudenthal_algebra: Gamma needs exactly 3 entries");
    for (const Scalar& g : gamma)
        if (g.is_zero())
            throw PreconditionError("freudenthal_algebra: Gamma entries must be nonzero");
    return FreudenthalAlgebra{C, gamma};
}

FreudenthalElement freudenthal_element(const FreudenthalAlgebra& F, const Vec& alpha,
                                       const std::array<Vec, 3>& c) {
    FreudenthalElement X{alpha, c};
    require_in_algebra(F, X, "freudenthal_element");
    return X;
}

FreudenthalElement make_hermitian_element(const FreudenthalAlgebra& F,
                                          const FreudenthalGrid& entries) {
    return element_from_grid(F, entries, /*hard=*/true);
}

FreudenthalGrid element_grid(const FreudenthalAlgebra& F, const FreudenthalElement& X) {
    require_in_algebra(F, X, "element_grid");
    FreudenthalGrid g;
    for (int i = 0; i < 3; ++i)
        g[std::size_t(i)][std::size_t(i)] = F.C.embed_scalar(X.alpha[std::size_t(i)]);
    const int slot_i[3] = {1, 2, 0}, slot_j[3] = {2, 0, 1};
    for (int s = 0; s < 3; ++s) {
        const int i = slot_i[s], j = slot_j[s];
        g[std::size_t(i)][std::size_t(j)] = X.c[std::size_t(s)];
        g[std::size_t(j)][std::size_t(i)] =
            vec_scale(twist(F, j, i), F.C.conj(X.c[std::size_t(s)]));
    }
    return g;
}

FreudenthalElement freudenthal_zero(const FreudenthalAlgebra& F) {
    const FieldCtx& ctx = F.C.ctx();
    return {Vec{ctx.zero(), ctx.zero(), ctx.zero()},
            {F.C.zero(), F.C.zero(), F.C.zero()}};
}

FreudenthalElement freudenthal_identity(const FreudenthalAlgebra& F) {
    const FieldCtx& ctx = F.C.ctx();
    return {Vec{ctx.one(), ctx.one(), ctx.one()},
            {F.C.zero(), F.C.zero(), F.C.zero()}};
}

FreudenthalElement freudenthal_add(const FreudenthalAlgebra& F,
                                   const FreudenthalElement& X,
                                   const FreudenthalElement& Y) {
    require_in_algebra(F, X, "freudenthal_add");
    require_in_algebra(F, Y, "freudenthal_add");
    return {vec_add(X.alpha, Y.alpha),
            {vec_add(X.c[0], Y.c[0]), vec_add(X.c[1], Y.c[1]), vec_add(X.c[2], Y.c[2])}};
}

FreudenthalElement freudenthal_sub(const FreudenthalAlgebra& F,
                                   const FreudenthalElement& X,
                                   const FreudenthalElement& Y) {
    return freudenthal_add(F, X, freudenthal_scale(F, -F.C.ctx().one(), Y));
}

FreudenthalElement freudenthal_scale(const FreudenthalAlgebra& F, const Scalar& s,
                                     const FreudenthalElement& X) {
    require_in_algebra(F, X, "freudenthal_scale");
    return {vec_scale(s, X.alpha),
            {vec_scale(s, X.c[0]), vec_scale(s, X.c[1]), vec_scale(s, X.c[2])}};
}

bool freudenthal_is_zero(const FreudenthalElement& X) {
    if (!vec_is_zero(X.alpha)) return false;
    for (const Vec& slot : X.c)
        if (!vec_is_zero(slot)) return false;
    return true;
}

Scalar freudenthal_trace(const FreudenthalAlgebra& F, const FreudenthalElement& X) {
    require_in_algebra(F, X, "freudenthal_trace");
    return X.alpha[0] + X.alpha[1] + X.alpha[2];
}

FreudenthalElement jordan_mul(const FreudenthalAlgebra& F, const FreudenthalElement& X,
                              const FreudenthalElement& Y) {
    require_in_algebra(F, X, "jordan_mul");
    require_in_algebra(F, Y, "jordan_mul");
    const FreudenthalGrid gx = element_grid(F, X), gy = element_grid(F, Y);
    const FreudenthalGrid xy = grid_mul(F.C, gx, gy), yx = grid_mul(F.C, gy, gx);
    const Scalar half = F.C.ctx().one() / F.C.ctx().from_int(2);
    FreudenthalGrid z;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            z[std::size_t(i)][std::size_t(j)] = vec_scale(
                half,
                vec_add(xy[std::size_t(i)][std::size_t(j)], yx[std::size_t(i)][std::size_t(j)]));
    return element_from_grid(F, z, /*hard=*/false);
}

FreudenthalElement jordan_power(const FreudenthalAlgebra& F, const FreudenthalElement& X,
                                unsigned k) {
    if (k == 0)
        throw PreconditionError("jordan_power: exponent must be >= 1");
    FreudenthalElement acc = X;
    for (unsigned i = 1; i < k; ++i) acc = jordan_mul(F, acc, X);
    return acc;
}

CubicData cubic_data(const FreudenthalAlgebra& F, const FreudenthalElement& X) {
    require_in_algebra(F, X, "cubic_data");
    const FieldCtx& ctx = F.C.ctx();
    const FreudenthalElement sq = jordan_mul(F, X, X);
    const FreudenthalElement cb = jordan_mul(F, sq, X);
    const Scalar t1 = freudenthal_trace(F, X);
    const Scalar t2 = freudenthal_trace(F, sq);
    const Scalar t3 = freudenthal_trace(F, cb);
    const Scalar T = t1;
    const Scalar S = (t1 * t1 - t2) / ctx.from_int(2);
    const Scalar N =
        (t1 * t1 * t1 - ctx.from_int(3) * t1 * t2 + ctx.from_int(2) * t3) / ctx.from_int(6);

    const FreudenthalElement I = freudenthal_identity(F);
    FreudenthalElement adj = freudenthal_sub(F, sq, freudenthal_scale(F, T, X));
    adj = freudenthal_add(F, adj, freudenthal_scale(F, S, I));

    FreudenthalElement cubic = freudenthal_sub(F, cb, freudenthal_scale(F, T, sq));
    cubic = freudenthal_add(F, cubic, freudenthal_scale(F, S, X));
    cubic = freudenthal_sub(F, cubic, freudenthal_scale(F, N, I));
    if (!freudenthal_is_zero(cubic))
        throw InternalError("cubic_data: X^3 - T X^2 + S X - N I != 0");
    if (jordan_mul(F, X, adj) != freudenthal_scale(F, N, I))
        throw InternalError("cubic_data: X o X^# != N I");
    return CubicData{T, S, N, sq, cb, adj};
}

FreudenthalElement freudenthal_cross(const FreudenthalAlgebra& F,
                                     const FreudenthalElement& X,
                                     const FreudenthalElement& Y) {
    const FreudenthalElement both = cubic_data(F, freudenthal_add(F, X, Y)).adjoint;
    const FreudenthalElement ax = cubic_data(F, X).adjoint;
    const FreudenthalElement ay = cubic_data(F, Y).adjoint;
    return freudenthal_sub(F, freudenthal_sub(F, both, ax), ay);
}

QForm algebra_trace_form(const FreudenthalAlgebra& F) {
    const FieldCtx& ctx = F.C.ctx();
    const std::size_t n = F.dim();
    std::vector<FreudenthalElement> basis;
    basis.reserve(n);
    for (int i = 0; i < 3; ++i) {
        FreudenthalElement e = freudenthal_zero(F);
        e.alpha[std::size_t(i)] = ctx.one();
        basis.push_back(e);
    }
    for (int s = 0; s < 3; ++s)
        for (std::size_t k = 0; k < F.C.dim(); ++k) {
            FreudenthalElement e = freudenthal_zero(F);
            e.c[std::size_t(s)][k] = ctx.one();
            basis.push_back(e);
        }

    Mat G(ctx, n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const Scalar t = freudenthal_trace(F, jordan_mul(F, basis[a], basis[b]));
            G.at(a, b) = t;
            G.at(b, a) = t;
        }
    const QForm result = qform(ctx, diagonalize_gram(G).diag);

    if (ctx.kind() != FieldKind::quad_ext) {
        const QForm bn = qform(ctx, diagonalize_gram(F.C.norm_polar_gram()).diag);
        const QForm ratios =
            qform(ctx, {F.gamma[1] / F.gamma[2], F.gamma[2] / F.gamma[0],
                        F.gamma[0] / F.gamma[1]});
        const QForm expected = qform_direct_sum(qform_from_ints(ctx, {1, 1, 1}),
                                                qform_tensor(bn, ratios));
        if (!qform_equivalent(result, expected))
            throw InternalError(
                "algebra_trace_form: trace form disagrees with "
                "<1,1,1> perp b_N (x) <gamma ratios>");
    }
    return result;
}

namespace {

// Zero-pad the off-diagonal slots of an element of H3 over a lower tower
// level into a higher one (the doubled basis keeps old coordinates first).
FreudenthalElement pad_element(const FreudenthalElement& X, std::size_t big_dim,
                               const FieldCtx& ctx) {
    FreudenthalElement out = X;
    for (Vec& slot : out.c)
        while (slot.size() < big_dim) slot.push_back(ctx.zero());
    return out;
}

FreudenthalElement rand_element(Rng& g, const FreudenthalAlgebra& F) {
    FreudenthalElement X = freudenthal_zero(F);
    for (Scalar& a : X.alpha) a = rand_scalar(g, F.C.ctx(), -3, 3);
    for (Vec& slot : X.c)
        for (Scalar& coord : slot) coord = rand_scalar(g, F.C.ctx(), -3, 3);
    return X;
}

} // namespace

FreudenthalOrbitReport orbit_to_freudenthal(const FlagDescriptor& d, unsigned seed,
                                            int samples) {
    if (samples < 1)
        throw PreconditionError("orbit_to_freudenthal: need at least one sample");
    const FieldCtx ctx = FieldCtx::rationals();
    const FlagTower tower =
        build_flag_tower(d.h.d, d.h.entries[std::size_t(d.pattern - 1)], d.octonion_class);

    FreudenthalOrbitReport rep;
    const Scalar c = tower.Q.lambdas[0], dq = tower.Q.lambdas[1];
    rep.dim6 = qform(ctx, {ctx.one(), ctx.one(), ctx.one(), -c, -dq, c * dq});
    if (!qform_equivalent(pfister(ctx, {c, dq}), d.quaternion_norm))
        throw InternalError(
            "orbit_to_freudenthal: <<c,d>> does not match the quaternion norm");

    const Scalar b1 = tower.C.lambdas[1], c1 = tower.C.lambdas[2];
    const CompAlgebra K = CompAlgebra::cayley_dickson(tower.K);
    const QForm bnk = qform(ctx, diagonalize_gram(K.norm_polar_gram()).diag);
    rep.dim9 = qform_direct_sum(
        qform_from_ints(ctx, {1, 1, 1}),
        qform_tensor(bnk, qform(ctx, {-b1, -c1, b1 * c1})));
    if (!qform_equivalent(tower.C.norm_form(),
                          qform_tensor(tower.K.norm_form(), pfister(ctx, {b1, c1}))))
        throw InternalError(
            "orbit_to_freudenthal: N_C does not match N_K (x) <<b1,c1>>");

    const Vec ones{ctx.one(), ctx.one(), ctx.one()};
    rep.levels.push_back(
        freudenthal_algebra(CompAlgebra::cayley_dickson(cd_tower(ctx, {})), ones));
    rep.levels.push_back(
        freudenthal_algebra(CompAlgebra::cayley_dickson(tower.K), ones));
    rep.levels.push_back(
        freudenthal_algebra(CompAlgebra::cayley_dickson(tower.Q), ones));
    rep.levels.push_back(
        freudenthal_algebra(CompAlgebra::cayley_dickson(tower.C), ones));

    Rng g(seed);
    for (std::size_t lvl = 0; lvl + 1 < rep.levels.size(); ++lvl) {
        const FreudenthalAlgebra& small = rep.levels[lvl];
        const FreudenthalAlgebra& big = rep.levels[lvl + 1];
        for (int s = 0; s < samples; ++s) {
            const FreudenthalElement X = rand_element(g, small);
            const FreudenthalElement Y = rand_element(g, small);
            const FreudenthalElement eX = pad_element(X, big.C.dim(), ctx);
            const FreudenthalElement eY = pad_element(Y, big.C.dim(), ctx);
            if (jordan_mul(big, eX, eY) !=
                pad_element(jordan_mul(small, X, Y), big.C.dim(), ctx))
                throw InternalError(
                    "orbit_to_freudenthal: level inclusion is not a Jordan "
                    "homomorphism");
            const CubicData cs = cubic_data(small, X), cbg = cubic_data(big, eX);
            if (cs.T != cbg.T || cs.S != cbg.S || cs.N != cbg.N)
                throw InternalError(
                    "orbit_to_freudenthal: level inclusion does not preserve "
                    "the cubic data");
        }
    }
    rep.samples = samples;
    return rep;
}

} // namespace sp6flags
