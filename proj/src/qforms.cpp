#include "sp6flags/qforms.hpp"

#include <algorithm>
#include <set>

namespace sp6flags {

namespace {

void require_rational_ctx(const QForm& q, const char* what) {
    if (q.ctx.kind() == FieldKind::quad_ext)
        throw PreconditionError(std::string(what) +
                                " is not supported over quadratic extensions");
}

mpq_class rational_entry(const Scalar& s) { return s.rat(); }

// p-adic valuation of a nonzero rational.
long valuation(const mpq_class& q, std::uint64_t p) {
    long v = 0;
    mpz_class n = q.get_num(), d = q.get_den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++v;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
        --v;
    }
    return v;
}

// The unit part of q at p (q with all powers of p removed), as a fraction.
mpq_class unit_part(const mpq_class& q, std::uint64_t p) {
    mpz_class n = q.get_num(), d = q.get_den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), p))
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    while (mpz_divisible_ui_p(d.get_mpz_t(), p))
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    mpq_class u(n, d);
    u.canonicalize();
    return u;
}

// Legendre symbol of a p-adic unit written as a fraction, odd p.
int unit_legendre(const mpq_class& u, std::uint64_t p) {
    mpz_class n = u.get_num() % mpz_class(static_cast<unsigned long>(p));
    mpz_class d = u.get_den() % mpz_class(static_cast<unsigned long>(p));
    if (n < 0) n += static_cast<unsigned long>(p);
    if (d < 0) d += static_cast<unsigned long>(p);
    std::uint64_t r = mod_mul(n.get_ui(), mod_inv(d.get_ui(), p), p);
    return legendre_symbol(mpz_class(static_cast<unsigned long>(r)), p);
}

// Residue mod 8 of an odd rational unit (odd residues are self-inverse mod 8).
unsigned odd_unit_mod8(const mpq_class& u) {
    mpz_class n = u.get_num() % 8, d = u.get_den() % 8;
    if (n < 0) n += 8;
    if (d < 0) d += 8;
    return static_cast<unsigned>((n.get_ui() * d.get_ui()) % 8);
}

unsigned eps4(unsigned u8) { return (u8 % 4 == 3) ? 1 : 0; }       // (u-1)/2 mod 2
unsigned omega8(unsigned u8) { return (u8 == 3 || u8 == 5) ? 1 : 0; } // (u^2-1)/8 mod 2

// Distinct odd primes dividing numerator or denominator.
std::vector<std::uint64_t> odd_prime_support(const mpq_class& q) {
    mpz_class n = abs(q.get_num() * q.get_den());
    if (n == 0) throw PreconditionError("prime support of zero");
    std::vector<std::uint64_t> out;
    while (mpz_divisible_ui_p(n.get_mpz_t(), 2))
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 2);
    const unsigned long trial_limit = 1ul << 20;
    for (unsigned long dvs = 3; dvs <= trial_limit; dvs += 2) {
        if (mpz_class(dvs) * dvs > n) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), dvs)) continue;
        out.push_back(dvs);
        while (mpz_divisible_ui_p(n.get_mpz_t(), dvs))
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), dvs);
    }
    if (n != 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
            if (!n.fits_ulong_p())
                throw FactorBoundError("prime place " + n.get_str() +
                                       " exceeds the supported range");
            out.push_back(n.get_ui());
        } else {
            throw FactorBoundError("cannot resolve prime support of cofactor " +
                                   n.get_str());
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// construction and basic operations

QForm qform(const FieldCtx& ctx, const Vec& diag) {
    for (const Scalar& s : diag) {
        if (s.ctx() != ctx && !(s.is_rational() && ctx.kind() != FieldKind::prime_field))
            throw FieldMismatchError("form entry " + s.to_string() +
                                     " does not live in " + ctx.to_string());
        if (s.is_zero())
            throw PreconditionError("quadratic form entries must be nonzero");
    }
    QForm q{ctx, diag};
    // normalize entries into the context (embeds rationals into quad_ext)
    for (Scalar& s : q.diag)
        if (s.ctx() != ctx) s = s + ctx.zero();
    return q;
}

QForm qform_from_ints(const FieldCtx& ctx, const std::vector<long>& diag) {
    Vec v;
    v.reserve(diag.size());
    for (long n : diag) v.push_back(ctx.from_int(n));
    return qform(ctx, v);
}

QForm qform_direct_sum(const QForm& a, const QForm& b) {
    if (a.ctx != b.ctx) throw FieldMismatchError("direct sum across contexts");
    Vec d = a.diag;
    d.insert(d.end(), b.diag.begin(), b.diag.end());
    return QForm{a.ctx, d};
}

QForm qform_tensor(const QForm& a, const QForm& b) {
    if (a.ctx != b.ctx) throw FieldMismatchError("tensor across contexts");
    Vec d;
    d.reserve(a.dim() * b.dim());
    for (const Scalar& x : a.diag)
        for (const Scalar& y : b.diag) d.push_back(x * y);
    return QForm{a.ctx, d};
}

QForm qform_scale(const Scalar& c, const QForm& a) {
    if (c.is_zero()) throw PreconditionError("scaling a form by zero");
    Vec d = a.diag;
    for (Scalar& s : d) s = s * c;
    return QForm{a.ctx, d};
}

QForm qform_hyperbolic(const FieldCtx& ctx, std::size_t planes) {
    Vec d;
    for (std::size_t i = 0; i < planes; ++i) {
        d.push_back(ctx.one());
        d.push_back(ctx.from_int(-1));
    }
    return QForm{ctx, d};
}

Mat qform_gram(const QForm& q) { return Mat::diag(q.ctx, q.diag); }

Scalar qform_eval(const QForm& q, const Vec& v) {
    if (v.size() != q.dim()) throw PreconditionError("vector/form dimension mismatch");
    Scalar acc = q.ctx.zero();
    for (std::size_t i = 0; i < v.size(); ++i) acc += q.diag[i] * v[i] * v[i];
    return acc;
}

// ---------------------------------------------------------------------------
// local symbols

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
    if (a == 0 || b == 0)
        throw PreconditionError("Hilbert symbol of zero");
    if (v.infinite)
        return (a < 0 && b < 0) ? -1 : 1;
    std::uint64_t p = v.p;
    if (p == 2) {
        long alpha = valuation(a, 2), beta = valuation(b, 2);
        unsigned u8 = odd_unit_mod8(unit_part(a, 2));
        unsigned w8 = odd_unit_mod8(unit_part(b, 2));
        unsigned e = eps4(u8) * eps4(w8) +
                     static_cast<unsigned>(alpha & 1) * omega8(w8) +
                     static_cast<unsigned>(beta & 1) * omega8(u8);
        return (e % 2) ? -1 : 1;
    }
    long alpha = valuation(a, p), beta = valuation(b, p);
    mpq_class u = unit_part(a, p), w = unit_part(b, p);
    int sym = 1;
    if ((alpha & 1) && (beta & 1) && legendre_symbol(mpz_class(-1), p) == -1)
        sym = -sym;
    if (beta & 1 && unit_legendre(u, p) == -1) sym = -sym;
    if (alpha & 1 && unit_legendre(w, p) == -1) sym = -sym;
    return sym;
}

int hasse_symbol(const QForm& q, const Place& v) {
    require_rational_ctx(q, "Hasse symbol");
    int sym = 1;
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = i + 1; j < q.dim(); ++j)
            sym *= hilbert_symbol(rational_entry(q.diag[i]),
                                  rational_entry(q.diag[j]), v);
    return sym;
}

std::vector<Place> relevant_places(const std::vector<mpq_class>& entries) {
    std::set<Place> places{Place::finite(2), Place::real()};
    for (const mpq_class& e : entries)
        for (std::uint64_t p : odd_prime_support(e))
            places.insert(Place::finite(p));
    return {places.begin(), places.end()};
}

// ---------------------------------------------------------------------------
// invariants and equivalence

QFormInvariants qform_invariants(const QForm& q) {
    if (q.dim() == 0) throw PreconditionError("invariants of the zero form");
    QFormInvariants inv;
    inv.dim = q.dim();
    if (q.ctx.kind() == FieldKind::prime_field) {
        std::uint64_t p = q.ctx.p();
        std::uint64_t prod = 1;
        for (const Scalar& s : q.diag) prod = mod_mul(prod, s.fp_value(), p);
        if (prod == 0) throw InternalError("zero entry slipped into a form");
        inv.disc = legendre_symbol(mpz_class(static_cast<unsigned long>(prod)), p);
        return inv;
    }
    require_rational_ctx(q, "qform_invariants");
    mpq_class prod = 1;
    std::vector<mpq_class> entries;
    for (const Scalar& s : q.diag) {
        mpq_class e = rational_entry(s);
        entries.push_back(e);
        prod *= e;
        if (e > 0) ++inv.signature.first; else ++inv.signature.second;
    }
    inv.disc = squarefree_part(prod, 256);
    for (const Place& v : relevant_places(entries))
        inv.hasse.emplace_back(v, hasse_symbol(q, v));
    return inv;
}

bool qform_equivalent(const QForm& a, const QForm& b) {
    if (a.ctx != b.ctx)
        throw FieldMismatchError("comparing forms over different fields");
    if (a.dim() != b.dim()) return false;
    if (a.ctx.kind() == FieldKind::prime_field)
        return qform_invariants(a).disc == qform_invariants(b).disc;
    require_rational_ctx(a, "qform_equivalent");

    QFormInvariants ia = qform_invariants(a), ib = qform_invariants(b);
    if (ia.disc != ib.disc || ia.signature != ib.signature) return false;
    std::set<Place> places;
    for (auto& [v, s] : ia.hasse) places.insert(v);
    for (auto& [v, s] : ib.hasse) places.insert(v);
    for (const Place& v : places)
        if (hasse_symbol(a, v) != hasse_symbol(b, v)) return false;
    return true;
}

bool qform_is_definite(const QForm& q) {
    require_rational_ctx(q, "definiteness");
    if (q.ctx.kind() == FieldKind::prime_field)
        throw PreconditionError("definiteness is meaningless over F_p");
    auto sig = qform_invariants(q).signature;
    return sig.first == 0 || sig.second == 0;
}

bool qform_is_indefinite(const QForm& q) { return !qform_is_definite(q); }

// ---------------------------------------------------------------------------
// Pfister forms

QForm pfister(const FieldCtx& ctx, const Vec& slots) {
    QForm q = qform(ctx, {ctx.one()});
    for (const Scalar& s : slots) {
        if (s.is_zero()) throw PreconditionError("Pfister slot must be nonzero");
        q = qform_tensor(q, qform(ctx, {ctx.one(), -s}));
    }
    return q;
}

bool is_hyperbolic_pfister(const QForm& q) {
    require_rational_ctx(q, "Pfister hyperbolicity");
    if (q.ctx.kind() != FieldKind::rationals)
        throw PreconditionError("Pfister hyperbolicity test is implemented over Q");
    std::size_t n = q.dim();
    if (n < 4 || (n & (n - 1)) != 0)
        throw PreconditionError("expected a Pfister form of at least 2 slots");
    if (n == 4)
        return qform_equivalent(q, qform_hyperbolic(q.ctx, 2));
    // 3-fold and higher Pfister forms over Q are hyperbolic iff indefinite
    return qform_is_indefinite(q);
}

bool is_norm_of_quad_ext(const mpq_class& d, const mpq_class& t) {
    if (d == 0 || t == 0)
        throw PreconditionError("norm test needs nonzero d and t");
    if (rational_is_square(-d)) return true; // split algebra: norms are everything
    for (const Place& v : relevant_places({-d, t}))
        if (hilbert_symbol(-d, t, v) == -1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// hermitian forms

HermitianForm hermitian_form(const mpq_class& d, const std::vector<mpq_class>& entries) {
    if (d == 0) throw PreconditionError("hermitian d must be nonzero");
    for (const mpq_class& a : entries)
        if (a == 0) throw PreconditionError("hermitian entries must be nonzero");
    HermitianForm h;
    h.d = d;
    h.entries = entries;
    h.split = rational_is_square(mpq_class(-d));
    return h;
}

QForm hermitian_trace_form(const HermitianForm& h) {
    FieldCtx Q = FieldCtx::rationals();
    Vec diag;
    for (const mpq_class& a : h.entries) {
        diag.push_back(Scalar::rational(a));
        diag.push_back(Scalar::rational(h.d * a));
    }
    return qform(Q, diag);
}

bool hermitian_equivalent(const HermitianForm& a, const HermitianForm& b) {
    if (a.d != b.d)
        throw FieldMismatchError("hermitian forms over different extensions");
    if (a.dim() != b.dim()) return false;
    return qform_equivalent(hermitian_trace_form(a), hermitian_trace_form(b));
}

bool hermitian_disc_trivial(const HermitianForm& h) {
    mpq_class det = 1;
    for (const mpq_class& a : h.entries) det *= a;
    return is_norm_of_quad_ext(h.d, det);
}

} // namespace sp6flags
