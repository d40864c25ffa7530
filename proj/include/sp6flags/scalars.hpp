#ifndef SP6FLAGS_SCALARS_HPP
#define SP6FLAGS_SCALARS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "sp6flags/errors.hpp"

namespace sp6flags {

class Scalar;

enum class FieldKind { rationals, quad_ext, prime_field };

/// A ground field: Q, a quadratic extension Q(sqrt(d)) with d a rational
/// non-square, or a prime field F_p with p an odd prime.  Value type, cheap
/// to copy, compared structurally.
class FieldCtx {
public:
    FieldCtx() : kind_(FieldKind::rationals) {}

    static FieldCtx rationals();
    /// Q(sqrt(d)); throws PreconditionError if d is zero or a rational square.
    static FieldCtx quad_ext(const mpq_class& d);
    /// F_p; throws PreconditionError unless p is an odd prime.
    static FieldCtx prime_field(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    /// 0 for Q and quadratic extensions, p for F_p.
    std::uint64_t characteristic() const;
    const mpq_class& d() const; ///< radicand; quad_ext only
    std::uint64_t p() const;    ///< modulus; prime_field only

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long n) const;
    Scalar from_rational(const mpq_class& q) const; ///< reduces mod p for F_p
    /// The element sqrt(d) of a quadratic extension.
    Scalar sqrt_d() const;

    bool operator==(const FieldCtx& o) const;
    bool operator!=(const FieldCtx& o) const { return !(*this == o); }

    /// "Q", "Q(sqrt:-1)", "F:3"
    std::string to_string() const;
    static FieldCtx parse(const std::string& text);

private:
    FieldKind kind_;
    mpq_class d_;
    std::uint64_t p_ = 0;
};

/// An element of one of the supported fields.  Carries its own context;
/// mixing elements of different contexts throws FieldMismatchError, except
/// that a rational silently embeds into a quadratic extension.
class Scalar {
public:
    /// Rational zero.  Generic code should obtain zeros from a FieldCtx.
    Scalar() : kind_(FieldKind::rationals) {}

    static Scalar rational(const mpq_class& v);
    static Scalar quadratic(const mpq_class& a, const mpq_class& b, const mpq_class& d);
    static Scalar mod_p(std::uint64_t v, std::uint64_t p);

    FieldKind kind() const { return kind_; }
    FieldCtx ctx() const;

    bool is_zero() const;
    bool is_one() const;
    /// True for rational elements and for quad_ext elements with b = 0.
    bool is_rational() const;

    /// Rational value (rationals, or quad_ext with b = 0; throws otherwise).
    const mpq_class& rat() const;
    const mpq_class& quad_a() const; ///< coefficient of 1 (quad_ext)
    const mpq_class& quad_b() const; ///< coefficient of sqrt(d) (quad_ext)
    std::uint64_t fp_value() const;  ///< representative in [0, p)

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    /// Throws PreconditionError on division by zero.
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar operator*(long n) const;
    Scalar operator/(long n) const;
    friend Scalar operator*(long n, const Scalar& s) { return s * n; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    /// Galois conjugate a - b*sqrt(d) on quad_ext; identity on the base fields.
    Scalar conj() const;
    /// Norm to the base field: a^2 - d b^2 on quad_ext; x^2 otherwise.
    Scalar field_norm() const;
    /// Trace to the base field: 2a on quad_ext; 2x otherwise.
    Scalar field_trace() const;

    /// Whether a nonzero element is a square in its own field.  Exact in all
    /// three field kinds; throws PreconditionError on zero input.
    bool is_square() const;
    /// A square root if one exists in the element's own field.
    std::optional<Scalar> sqrt() const;

    std::string to_string() const;
    /// Inverse of to_string given the expected context; accepts "INT",
    /// "INT/INT", "a+b*sqrt(D)", "r mod p" with optional whitespace.
    static Scalar parse(const FieldCtx& ctx, const std::string& text);

private:
    FieldKind kind_;
    mpq_class a_;        // rational value / coefficient of 1
    mpq_class b_;        // coefficient of sqrt(d)      (quad_ext)
    mpq_class d_;        // radicand                    (quad_ext)
    std::uint64_t v_ = 0, p_ = 0; // prime_field

    static void align(Scalar& x, Scalar& y);
    friend class FieldCtx;
};

/// Norm and conjugate of alpha in the extension Q(sqrt(-d)) (the convention
/// used by hermitian forms: the extension is named by d, the radicand is -d).
/// Throws FieldMismatchError if alpha does not live in Q(sqrt(-d)).
std::pair<Scalar, Scalar> quad_norm_conj(const Scalar& d, const Scalar& alpha);

/// True iff q is the square of a rational.  Exact for any size; zero counts
/// as a square here (used by context validation, not by Scalar::is_square).
bool rational_is_square(const mpq_class& q);

/// Squarefree part of a nonzero rational, as a squarefree integer with the
/// sign of the input.  Numerator and denominator must fit in max_bits bits;
/// factorization is trial division up to 2^20 plus perfect-square / primality
/// analysis of the cofactor.  Throws FactorBoundError when the input is too
/// large or the cofactor cannot be resolved, PreconditionError on zero.
mpz_class squarefree_part(const mpq_class& q, unsigned max_bits = 64);

/// Legendre symbol (a/p) for odd prime p: +1, -1, or 0.
int legendre_symbol(const mpz_class& a, std::uint64_t p);

// Modular helpers used across the library (p need not be prime unless
// stated; all arguments reduced mod p internally).
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Inverse mod an odd prime p; throws PreconditionError on zero.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

} // namespace sp6flags

#endif
