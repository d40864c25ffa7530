#include "sp6flags/invariants.hpp"

#include <array>
#include <utility>

#include "sp6flags/errors.hpp"

namespace sp6flags {

namespace {

// sorted index pairs a<b from {1..6}, lexicographic: basis of the 2-vectors
constexpr std::size_t kPairCount = 15;

const std::array<std::array<int, 2>, kPairCount>& pair_table() {
    static const auto table = [] {
        std::array<std::array<int, 2>, kPairCount> t{};
        std::size_t n = 0;
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b) t[n++] = {a, b};
        return t;
    }();
    return table;
}

std::size_t pair_index(int a, int b) {
    const auto& table = pair_table();
    for (std::size_t n = 0; n < kPairCount; ++n)
        if (table[n][0] == a && table[n][1] == b) return n;
    throw InternalError("pair table lookup failed");
}

// sign of the permutation sorting five distinct values
int sort_sign5(std::array<int, 5> v) {
    int sign = 1;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
            if (v[j] > v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                sign = -sign;
            }
    return sign;
}

// coefficients of T ^ D for a 2-vector D, on the basis of 5-vectors indexed
// by the missing coordinate m (the 5-vector is the sorted wedge omitting m)
Vec wedge_3_2(const TriVector& T, const Vec& D) {
    const FieldCtx& ctx = T.ctx;
    Vec five(6, ctx.zero());
    const auto& triples = tri_table();
    const auto& pairs = pair_table();
    for (std::size_t n = 0; n < kTriCount; ++n) {
        const Scalar& p = T.coords[n];
        if (p.is_zero()) continue;
        const auto& t = triples[n];
        for (std::size_t q = 0; q < kPairCount; ++q) {
            const Scalar& r = D[q];
            if (r.is_zero()) continue;
            const auto& pr = pairs[q];
            if (pr[0] == t[0] || pr[0] == t[1] || pr[0] == t[2] || pr[1] == t[0] ||
                pr[1] == t[1] || pr[1] == t[2])
                continue;
            int missing = 21 - t[0] - t[1] - t[2] - pr[0] - pr[1];
            int sign = sort_sign5({t[0], t[1], t[2], pr[0], pr[1]});
            Scalar term = p * r;
            five[missing - 1] =
                sign > 0 ? five[missing - 1] + term : five[missing - 1] - term;
        }
    }
    return five;
}

} // namespace

Vec wedge_derivative(const TriVector& T, int i) {
    if (i < 1 || i > 6) throw PreconditionError("derivative slot out of range 1..6");
    const FieldCtx& ctx = T.ctx;
    Vec D(kPairCount, ctx.zero());
    const auto& triples = tri_table();
    for (std::size_t n = 0; n < kTriCount; ++n) {
        const Scalar& c = T.coords[n];
        if (c.is_zero()) continue;
        const auto& t = triples[n];
        // move e_i to the front and strike it: e_i^e_a^e_b -> e_a^e_b
        if (t[0] == i) {
            std::size_t q = pair_index(t[1], t[2]);
            D[q] = D[q] + c;
        } else if (t[1] == i) {
            std::size_t q = pair_index(t[0], t[2]);
            D[q] = D[q] - c;
        } else if (t[2] == i) {
            std::size_t q = pair_index(t[0], t[1]);
            D[q] = D[q] + c;
        }
    }
    return D;
}

PhiMatrix phi_matrix(const TriVector& T) {
    const FieldCtx& ctx = T.ctx;
    Mat phi(ctx, 6, 6);
    for (int i = 1; i <= 6; ++i) {
        Vec five = wedge_3_2(T, wedge_derivative(T, i));
        for (int j = 1; j <= 6; ++j) {
            // (5-vector omitting j) ^ e_j = (-1)^(6-j) top form
            phi.at(i - 1, j - 1) = (6 - j) % 2 == 0 ? five[j - 1] : -five[j - 1];
        }
    }
    return PhiMatrix{phi};
}

Scalar quartic_f(const TriVector& T) {
    Mat phi = phi_matrix(T).entries;
    Mat sq = phi * phi;
    Scalar value = T.ctx.zero();
    if (!sq.is_scalar_multiple_of_identity(&value))
        throw InternalError("phi squared is not a scalar matrix");
    return value;
}

Mat f2_gram(const TriVector& x_part) {
    if (!vec_is_zero(contract_psi(x_part)))
        throw PreconditionError("f2 gram needs a point in the contraction kernel");
    const FieldCtx& ctx = x_part.ctx;
    Mat B = symplectic_form_matrix(ctx) * phi_matrix(x_part).entries;
    Scalar quarter = ctx.one() / ctx.from_int(4);
    return (B + B.transpose()) * (-quarter);
}

InvariantReport f1_f2_semistable(const TriVector& T) {
    const FieldCtx& ctx = T.ctx;
    SplitParts parts = split_components(T);
    Scalar f = quartic_f(T);
    Scalar quarter = ctx.one() / ctx.from_int(4);
    Scalar f1 = -quarter * quartic_f(parts.x_part);
    Mat B = symplectic_form_matrix(ctx) * phi_matrix(parts.x_part).entries;
    Scalar half = ctx.one() / ctx.from_int(2);
    Scalar f2 = -half * vec_dot(parts.v_part, B.apply(parts.v_part));
    bool ss = !f1.is_zero() && !f2.is_zero();
    return InvariantReport{f, f1, f2, ss};
}

} // namespace sp6flags
