#ifndef SP6FLAGS_RNG_HPP
#define SP6FLAGS_RNG_HPP

#include <random>

#include "sp6flags/scalars.hpp"

namespace sp6flags {

/// All randomized code in the library and tests draws from a seeded
/// mt19937_64 through these helpers (std::uniform_int_distribution is
/// implementation-defined, so we reduce by modulo for reproducibility).
using Rng = std::mt19937_64;

inline long rand_int(Rng& g, long lo, long hi) {
    return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Uniform-ish element with small integer coordinates; for F_p, uniform.
inline Scalar rand_scalar(Rng& g, const FieldCtx& ctx, long lo = -9, long hi = 9) {
    switch (ctx.kind()) {
    case FieldKind::rationals:
        return ctx.from_int(rand_int(g, lo, hi));
    case FieldKind::quad_ext:
        return ctx.from_int(rand_int(g, lo, hi)) +
               ctx.sqrt_d() * rand_int(g, lo, hi);
    case FieldKind::prime_field:
        return Scalar::mod_p(g() % ctx.p(), ctx.p());
    }
    throw InternalError("unreachable field kind");
}

inline Scalar rand_nonzero(Rng& g, const FieldCtx& ctx, long lo = -9, long hi = 9) {
    for (;;) {
        Scalar s = rand_scalar(g, ctx, lo, hi);
        if (!s.is_zero()) return s;
    }
}

/// Rational with a small denominator (useful for exercising reduction paths).
inline Scalar rand_rational(Rng& g, long num_range = 30, long den_range = 12) {
    mpq_class q(rand_int(g, -num_range, num_range), rand_int(g, 1, den_range));
    q.canonicalize();
    return Scalar::rational(q);
}

} // namespace sp6flags

#endif
