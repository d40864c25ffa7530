#include "sp6flags/scalars.hpp"

#include <cctype>
#include <vector>

namespace sp6flags {

namespace {

mpq_class make_mpq(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

bool fits_bits(const mpz_class& n, unsigned bits) {
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= bits;
}

bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

} // namespace

// ---------------------------------------------------------------------------
// modular helpers

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    a %= p; b %= p;
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    a %= p; b %= p;
    return a >= b ? a - b : a + (p - b);
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a % p) * (b % p)) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw PreconditionError("division by zero in F_" + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

int legendre_symbol(const mpz_class& a, std::uint64_t p) {
    mpz_class r = a % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    std::uint64_t v = r.get_ui();
    if (v == 0) return 0;
    std::uint64_t e = mod_pow(v, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

namespace {

// Square root mod an odd prime via Tonelli–Shanks; nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod_p(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (mod_pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return mod_pow(a, (p + 1) / 4, p);
    // p = q * 2^s + 1 with q odd
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    std::uint64_t z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = mod_pow(z, q, p);
    std::uint64_t t = mod_pow(a, q, p);
    std::uint64_t r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) { tt = mod_mul(tt, tt, p); ++i; }
        std::uint64_t b = c;
        for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = mod_mul(b, b, p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// rational utilities

bool rational_is_square(const mpq_class& q) {
    if (q == 0) return true;
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(q.get_den().get_mpz_t());
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    if (!rational_is_square(q)) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), q.get_den().get_mpz_t());
    return make_mpq(sn, sd);
}

} // namespace

mpz_class squarefree_part(const mpq_class& q, unsigned max_bits) {
    if (q == 0) throw PreconditionError("squarefree part of zero is undefined");
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!fits_bits(num, max_bits) || !fits_bits(den, max_bits))
        throw FactorBoundError("squarefree_part: input exceeds " +
                               std::to_string(max_bits) + "-bit bound");
    mpz_class n = num * den; // same square class as num/den
    int sign = sgn(n);
    n = abs(n);
    mpz_class out = 1;
    const unsigned long trial_limit = 1ul << 20;
    for (unsigned long dvs = 2; dvs <= trial_limit; dvs += (dvs == 2 ? 1 : 2)) {
        if (mpz_class(dvs) * dvs > n) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), dvs)) continue;
        unsigned mult = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), dvs)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), dvs);
            ++mult;
        }
        if (mult % 2) out *= dvs;
    }
    if (n != 1) {
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            // even multiplicities only; contributes nothing
        } else if (is_probable_prime(n)) {
            out *= n;
        } else {
            throw FactorBoundError(
                "squarefree_part: cofactor " + n.get_str() +
                " is neither prime nor a square; raise the factor bound");
        }
    }
    return sign < 0 ? mpz_class(-out) : out;
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx FieldCtx::rationals() { return FieldCtx(); }

FieldCtx FieldCtx::quad_ext(const mpq_class& d) {
    if (d == 0) throw PreconditionError("quadratic extension radicand must be nonzero");
    if (rational_is_square(d))
        throw PreconditionError("radicand " + d.get_str() +
                                " is a rational square; not a quadratic extension");
    FieldCtx c;
    c.kind_ = FieldKind::quad_ext;
    c.d_ = d;
    return c;
}

FieldCtx FieldCtx::prime_field(std::uint64_t p) {
    if (p == 2) throw PreconditionError("characteristic 2 is not supported");
    if (p >= (1ull << 62))
        throw PreconditionError("prime modulus too large");
    if (!is_probable_prime(mpz_class(static_cast<unsigned long>(p))))
        throw PreconditionError(std::to_string(p) + " is not prime");
    FieldCtx c;
    c.kind_ = FieldKind::prime_field;
    c.p_ = p;
    return c;
}

std::uint64_t FieldCtx::characteristic() const {
    return kind_ == FieldKind::prime_field ? p_ : 0;
}

const mpq_class& FieldCtx::d() const {
    if (kind_ != FieldKind::quad_ext)
        throw PreconditionError("field context has no radicand");
    return d_;
}

std::uint64_t FieldCtx::p() const {
    if (kind_ != FieldKind::prime_field)
        throw PreconditionError("field context has no modulus");
    return p_;
}

Scalar FieldCtx::zero() const { return from_int(0); }
Scalar FieldCtx::one() const { return from_int(1); }

Scalar FieldCtx::from_int(long n) const {
    switch (kind_) {
    case FieldKind::rationals:
        return Scalar::rational(mpq_class(n));
    case FieldKind::quad_ext:
        return Scalar::quadratic(mpq_class(n), 0, d_);
    case FieldKind::prime_field: {
        long r = n % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        return Scalar::mod_p(static_cast<std::uint64_t>(r), p_);
    }
    }
    throw InternalError("unreachable field kind");
}

Scalar FieldCtx::from_rational(const mpq_class& q) const {
    switch (kind_) {
    case FieldKind::rationals:
        return Scalar::rational(q);
    case FieldKind::quad_ext:
        return Scalar::quadratic(q, 0, d_);
    case FieldKind::prime_field: {
        mpz_class pz(static_cast<unsigned long>(p_));
        mpz_class num = q.get_num() % pz, den = q.get_den() % pz;
        if (num < 0) num += pz;
        if (den < 0) den += pz;
        if (den == 0)
            throw PreconditionError("denominator of " + q.get_str() +
                                    " vanishes mod " + std::to_string(p_));
        std::uint64_t nv = num.get_ui(), dv = den.get_ui();
        return Scalar::mod_p(mod_mul(nv, mod_inv(dv, p_), p_), p_);
    }
    }
    throw InternalError("unreachable field kind");
}

Scalar FieldCtx::sqrt_d() const {
    if (kind_ != FieldKind::quad_ext)
        throw PreconditionError("sqrt_d: not a quadratic extension");
    return Scalar::quadratic(0, 1, d_);
}

bool FieldCtx::operator==(const FieldCtx& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
    case FieldKind::rationals: return true;
    case FieldKind::quad_ext: return d_ == o.d_;
    case FieldKind::prime_field: return p_ == o.p_;
    }
    return false;
}

std::string FieldCtx::to_string() const {
    switch (kind_) {
    case FieldKind::rationals: return "Q";
    case FieldKind::quad_ext: return "Q(sqrt:" + d_.get_str() + ")";
    case FieldKind::prime_field: return "F:" + std::to_string(p_);
    }
    return "?";
}

FieldCtx FieldCtx::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "Q") return rationals();
    if (s.rfind("Q(sqrt:", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(7, s.size() - 8);
        try {
            mpq_class d(body);
            d.canonicalize();
            return quad_ext(d);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad radicand in field spec: " + text);
        }
    }
    if (s.rfind("F:", 0) == 0) {
        try {
            std::size_t pos = 0;
            unsigned long long p = std::stoull(s.substr(2), &pos);
            if (pos != s.size() - 2) throw std::invalid_argument("");
            return prime_field(p);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad modulus in field spec: " + text);
        } catch (const std::out_of_range&) {
            throw ParseError("modulus out of range in field spec: " + text);
        }
    }
    throw ParseError("unrecognized field spec: " + text +
                     " (expected Q, Q(sqrt:D), or F:p)");
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::rational(const mpq_class& v) {
    Scalar s;
    s.kind_ = FieldKind::rationals;
    s.a_ = v;
    s.a_.canonicalize(); // raw mpq_class constructors do not reduce
    return s;
}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, const mpq_class& d) {
    Scalar s;
    s.kind_ = FieldKind::quad_ext;
    s.a_ = a;
    s.b_ = b;
    s.d_ = d;
    s.a_.canonicalize();
    s.b_.canonicalize();
    s.d_.canonicalize();
    return s;
}

Scalar Scalar::mod_p(std::uint64_t v, std::uint64_t p) {
    Scalar s;
    s.kind_ = FieldKind::prime_field;
    s.v_ = v % p;
    s.p_ = p;
    return s;
}

FieldCtx Scalar::ctx() const {
    switch (kind_) {
    case FieldKind::rationals: return FieldCtx::rationals();
    case FieldKind::quad_ext: return FieldCtx::quad_ext(d_);
    case FieldKind::prime_field: return FieldCtx::prime_field(p_);
    }
    throw InternalError("unreachable field kind");
}

bool Scalar::is_zero() const {
    switch (kind_) {
    case FieldKind::rationals: return a_ == 0;
    case FieldKind::quad_ext: return a_ == 0 && b_ == 0;
    case FieldKind::prime_field: return v_ == 0;
    }
    return false;
}

bool Scalar::is_one() const {
    switch (kind_) {
    case FieldKind::rationals: return a_ == 1;
    case FieldKind::quad_ext: return a_ == 1 && b_ == 0;
    case FieldKind::prime_field: return v_ == 1;
    }
    return false;
}

bool Scalar::is_rational() const {
    return kind_ == FieldKind::rationals ||
           (kind_ == FieldKind::quad_ext && b_ == 0);
}

const mpq_class& Scalar::rat() const {
    if (!is_rational())
        throw PreconditionError("scalar " + to_string() + " is not rational");
    return a_;
}

const mpq_class& Scalar::quad_a() const {
    if (kind_ != FieldKind::quad_ext)
        throw PreconditionError("not a quadratic-extension element");
    return a_;
}

const mpq_class& Scalar::quad_b() const {
    if (kind_ != FieldKind::quad_ext)
        throw PreconditionError("not a quadratic-extension element");
    return b_;
}

std::uint64_t Scalar::fp_value() const {
    if (kind_ != FieldKind::prime_field)
        throw PreconditionError("not a prime-field element");
    return v_;
}

void Scalar::align(Scalar& x, Scalar& y) {
    if (x.kind_ == y.kind_) {
        if (x.kind_ == FieldKind::quad_ext && x.d_ != y.d_)
            throw FieldMismatchError("mixing Q(sqrt:" + x.d_.get_str() +
                                     ") with Q(sqrt:" + y.d_.get_str() + ")");
        if (x.kind_ == FieldKind::prime_field && x.p_ != y.p_)
            throw FieldMismatchError("mixing F_" + std::to_string(x.p_) +
                                     " with F_" + std::to_string(y.p_));
        return;
    }
    // rationals embed into quadratic extensions; nothing else mixes
    if (x.kind_ == FieldKind::rationals && y.kind_ == FieldKind::quad_ext) {
        x = quadratic(x.a_, 0, y.d_);
        return;
    }
    if (y.kind_ == FieldKind::rationals && x.kind_ == FieldKind::quad_ext) {
        y = quadratic(y.a_, 0, x.d_);
        return;
    }
    throw FieldMismatchError("cannot combine elements of different field kinds");
}

Scalar Scalar::operator-() const {
    switch (kind_) {
    case FieldKind::rationals: return rational(-a_);
    case FieldKind::quad_ext: return quadratic(-a_, -b_, d_);
    case FieldKind::prime_field: return mod_p(v_ ? p_ - v_ : 0, p_);
    }
    throw InternalError("unreachable field kind");
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar x = *this, y = o;
    align(x, y);
    switch (x.kind_) {
    case FieldKind::rationals: return rational(x.a_ + y.a_);
    case FieldKind::quad_ext: return quadratic(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    case FieldKind::prime_field: return mod_p(mod_add(x.v_, y.v_, x.p_), x.p_);
    }
    throw InternalError("unreachable field kind");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar x = *this, y = o;
    align(x, y);
    switch (x.kind_) {
    case FieldKind::rationals: return rational(x.a_ * y.a_);
    case FieldKind::quad_ext:
        return quadratic(x.a_ * y.a_ + x.d_ * x.b_ * y.b_,
                         x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    case FieldKind::prime_field: return mod_p(mod_mul(x.v_, y.v_, x.p_), x.p_);
    }
    throw InternalError("unreachable field kind");
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero");
    switch (kind_) {
    case FieldKind::rationals: return rational(1 / a_);
    case FieldKind::quad_ext: {
        mpq_class n = a_ * a_ - d_ * b_ * b_; // field norm, nonzero since d is a non-square
        return quadratic(a_ / n, -b_ / n, d_);
    }
    case FieldKind::prime_field: return mod_p(mod_inv(v_, p_), p_);
    }
    throw InternalError("unreachable field kind");
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw PreconditionError("division by zero");
    return *this * o.inverse();
}

Scalar Scalar::operator*(long n) const { return *this * ctx().from_int(n); }

Scalar Scalar::operator/(long n) const {
    if (n == 0) throw PreconditionError("division by zero");
    return *this / ctx().from_int(n);
}

bool Scalar::operator==(const Scalar& o) const {
    Scalar x = *this, y = o;
    align(x, y);
    switch (x.kind_) {
    case FieldKind::rationals: return x.a_ == y.a_;
    case FieldKind::quad_ext: return x.a_ == y.a_ && x.b_ == y.b_;
    case FieldKind::prime_field: return x.v_ == y.v_;
    }
    return false;
}

Scalar Scalar::conj() const {
    if (kind_ == FieldKind::quad_ext) return quadratic(a_, -b_, d_);
    return *this;
}

Scalar Scalar::field_norm() const {
    if (kind_ == FieldKind::quad_ext) return rational(a_ * a_ - d_ * b_ * b_);
    return *this * *this;
}

Scalar Scalar::field_trace() const {
    if (kind_ == FieldKind::quad_ext) return rational(2 * a_);
    return *this * 2;
}

bool Scalar::is_square() const {
    if (is_zero())
        throw PreconditionError("square class of zero is undefined");
    switch (kind_) {
    case FieldKind::rationals:
        return rational_is_square(a_);
    case FieldKind::quad_ext:
        return sqrt().has_value();
    case FieldKind::prime_field:
        return mod_pow(v_, (p_ - 1) / 2, p_) == 1;
    }
    throw InternalError("unreachable field kind");
}

std::optional<Scalar> Scalar::sqrt() const {
    switch (kind_) {
    case FieldKind::rationals: {
        auto r = rational_sqrt(a_);
        if (!r) return std::nullopt;
        return rational(*r);
    }
    case FieldKind::prime_field: {
        auto r = sqrt_mod_p(v_, p_);
        if (!r) return std::nullopt;
        return mod_p(*r, p_);
    }
    case FieldKind::quad_ext:
        break;
    }
    // Solve (x + y sqrt(d))^2 = a + b sqrt(d):  x^2 + d y^2 = a, 2xy = b.
    const mpq_class &A = a_, &B = b_;
    if (B == 0) {
        if (auto r = rational_sqrt(A)) return quadratic(*r, 0, d_);
        if (auto r = rational_sqrt(A / d_)) return quadratic(0, *r, d_);
        return std::nullopt;
    }
    // x^2 is a root of t^2 - A t + d B^2/4, i.e. (A ± sqrt(A^2 - d B^2))/2.
    auto s = rational_sqrt(A * A - d_ * B * B);
    if (!s) return std::nullopt;
    for (int pick = 0; pick < 2; ++pick) {
        mpq_class x2 = (A + (pick ? -*s : *s)) / 2;
        auto x = rational_sqrt(x2);
        if (!x || *x == 0) continue;
        mpq_class y = B / (2 * *x);
        if (*x * *x + d_ * y * y == A && 2 * *x * y == B)
            return quadratic(*x, y, d_);
    }
    return std::nullopt;
}

std::pair<Scalar, Scalar> quad_norm_conj(const Scalar& d, const Scalar& alpha) {
    if (!d.is_rational())
        throw PreconditionError("quad_norm_conj: d must be rational");
    if (alpha.kind() != FieldKind::quad_ext)
        throw FieldMismatchError("quad_norm_conj: alpha is not in a quadratic extension");
    if (alpha.ctx().d() != -d.rat())
        throw FieldMismatchError("quad_norm_conj: alpha lives in Q(sqrt:" +
                                 alpha.ctx().d().get_str() + "), expected radicand " +
                                 mpq_class(-d.rat()).get_str());
    return {alpha.field_norm(), alpha.conj()};
}

// ---------------------------------------------------------------------------
// text format

std::string Scalar::to_string() const {
    switch (kind_) {
    case FieldKind::rationals:
        return a_.get_str();
    case FieldKind::prime_field:
        return std::to_string(v_) + " mod " + std::to_string(p_);
    case FieldKind::quad_ext:
        break;
    }
    std::string root = "sqrt(" + d_.get_str() + ")";
    if (b_ == 0) return a_.get_str();
    std::string bpart;
    mpq_class babs = abs(b_);
    if (babs == 1)
        bpart = root;
    else
        bpart = babs.get_str() + "*" + root;
    if (a_ == 0) return (b_ < 0 ? "-" : "") + bpart;
    return a_.get_str() + (b_ < 0 ? "-" : "+") + bpart;
}

namespace {

// Minimal recursive-descent parser for the scalar grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ['-'] ( RATIONAL | 'sqrt' '(' expr ')' | '(' expr ')' )
// plus the prime-field form "INT mod INT".
struct ScalarParser {
    const std::string& s;
    std::size_t pos = 0;
    const FieldCtx& ctx;

    ScalarParser(const std::string& text, const FieldCtx& c) : s(text), ctx(c) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    bool eat_word(const char* w) {
        skip_ws();
        std::size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            // must not be followed by an identifier character
            if (pos + n < s.size() && std::isalnum(static_cast<unsigned char>(s[pos + n])))
                return false;
            pos += n;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("scalar '" + s + "': " + why + " at position " +
                         std::to_string(pos));
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected an integer");
        return mpz_class(s.substr(start, pos - start));
    }

    Scalar factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat_word("sqrt")) {
            if (!eat('(')) fail("expected '(' after sqrt");
            Scalar inside = expr();
            if (!eat(')')) fail("expected ')'");
            if (ctx.kind() != FieldKind::quad_ext)
                fail("sqrt(..) is only meaningful in a quadratic extension context");
            if (!inside.is_rational() || inside.rat() != ctx.d())
                fail("radicand does not match field context " + ctx.to_string());
            return ctx.sqrt_d();
        }
        if (eat('(')) {
            Scalar inside = expr();
            if (!eat(')')) fail("expected ')'");
            return inside;
        }
        mpz_class n = integer();
        return ctx.from_rational(mpq_class(n));
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            skip_ws();
            if (eat('*')) { v = v * factor(); continue; }
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                Scalar f = factor();
                if (f.is_zero()) fail("division by zero");
                v = v / f;
                continue;
            }
            return v;
        }
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') { ++pos; v = v + term(); continue; }
            if (pos < s.size() && s[pos] == '-') { ++pos; v = v - term(); continue; }
            return v;
        }
    }

    Scalar parse() {
        // "mod" never occurs in the expression grammar, so its presence
        // means the prime-field literal form "r mod p"
        if (s.find("mod") != std::string::npos) {
            mpz_class r = integer();
            if (!eat_word("mod")) fail("expected 'mod'");
            mpz_class p = integer();
            if (ctx.kind() != FieldKind::prime_field)
                fail("'mod' literal outside a prime-field context");
            if (p != mpz_class(static_cast<unsigned long>(ctx.p())))
                fail("modulus does not match field context " + ctx.to_string());
            skip_ws();
            if (pos != s.size()) fail("trailing characters");
            return ctx.from_rational(mpq_class(r));
        }
        Scalar v = expr();
        skip_ws();
        if (pos != s.size()) fail("trailing characters");
        return v;
    }
};

} // namespace

Scalar Scalar::parse(const FieldCtx& ctx, const std::string& text) {
    ScalarParser p(text, ctx);
    return p.parse();
}

} // namespace sp6flags
