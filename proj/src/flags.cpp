#include "sp6flags/flags.hpp"

#include <algorithm>
#include <sstream>

#include "sp6flags/errors.hpp"

namespace sp6flags {

namespace {

// Diagonal entries of a rational form as exact rationals.
std::vector<mpq_class> rational_entries(const QForm& q) {
    std::vector<mpq_class> out;
    out.reserve(q.dim());
    for (const Scalar& a : q.diag) out.push_back(a.rat());
    return out;
}

// A definite diagonal form over Q has all entries of one sign; negative
// definite is the one composition shape cannot take (it misses 1).
bool negative_definite(const QForm& q) {
    return qform_is_definite(q) && q.diag[0].rat() < 0;
}

CompClass classify_dim2(const QForm& q) {
    const mpq_class a = q.diag[0].rat(), b = q.diag[1].rat();
    // <a, b> represents 1 over Q iff the conic z^2 = a x^2 + b y^2 has a
    // rational point, which is the defining condition (a, b)_v = 1 at every
    // place (the product formula reduces this to the relevant finite set).
    for (const Place& v : relevant_places({a, b}))
        if (hilbert_symbol(a, b, v) != 1)
            throw PreconditionError(
                "classify_composition_form: binary form does not represent 1, "
                "so it is not the norm of a quadratic etale algebra");
    CompClass c;
    c.dim = 2;
    c.disc = squarefree_part(a * b);
    c.split = (c.disc == -1);
    return c;
}

CompClass classify_dim4(const QForm& q) {
    const std::vector<mpq_class> entries = rational_entries(q);
    mpq_class disc = 1;
    for (const mpq_class& a : entries) disc *= a;
    if (!rational_is_square(disc))
        throw PreconditionError(
            "classify_composition_form: quaternary form has non-square "
            "discriminant, so it is not a quaternion norm");
    if (negative_definite(q))
        throw PreconditionError(
            "classify_composition_form: negative definite quaternary form "
            "does not represent 1, so it is not a quaternion norm");
    // With square discriminant the local classes are detected by anisotropy:
    // over Q_p the form is anisotropic iff its Hasse symbol differs from the
    // split one (-1,-1)_p, and over R iff it is definite.
    CompClass c;
    c.dim = 4;
    for (const Place& v : relevant_places(entries)) {
        if (v.infinite) continue;
        if (hasse_symbol(q, v) != hilbert_symbol(-1, -1, v))
            c.ramified.push_back(v);
    }
    if (qform_is_definite(q)) c.ramified.push_back(Place::real());
    std::sort(c.ramified.begin(), c.ramified.end());
    if (c.ramified.size() % 2 != 0)
        throw InternalError(
            "classify_composition_form: odd ramification set contradicts "
            "Hilbert reciprocity");
    c.split = c.ramified.empty();
    return c;
}

CompClass classify_dim8(const QForm& q) {
    CompClass c;
    c.dim = 8;
    // Over Q there are exactly two octonion norm classes: the hyperbolic
    // rank-8 form and the definite <1>^8.
    if (qform_equivalent(q, qform_hyperbolic(q.ctx, 4))) {
        c.oct = OctClass::split;
        c.split = true;
        return c;
    }
    std::vector<long> ones(8, 1);
    if (qform_equivalent(q, qform_from_ints(q.ctx, ones))) {
        c.oct = OctClass::division;
        c.split = false;
        return c;
    }
    throw PreconditionError(
        "classify_composition_form: rank-8 form is neither hyperbolic nor "
        "<1>^8, so it is not an octonion norm over Q");
}

} // namespace

std::string CompClass::to_string() const {
    std::ostringstream os;
    switch (dim) {
    case 2:
        if (split) os << "QxQ";
        else os << "Q(sqrt(" << mpz_class(-disc) << "))";
        break;
    case 4:
        if (split) os << "M2(Q)";
        else {
            os << "quaternion{";
            for (std::size_t i = 0; i < ramified.size(); ++i)
                os << (i ? "," : "") << ramified[i].to_string();
            os << "}";
        }
        break;
    case 8:
        os << "octonion(" << (oct == OctClass::split ? "split" : "division") << ")";
        break;
    default:
        os << "?";
    }
    return os.str();
}

CompClass classify_composition_form(const QForm& q) {
    if (q.ctx.kind() != FieldKind::rationals)
        throw PreconditionError(
            "classify_composition_form: classification is defined over Q");
    switch (q.dim()) {
    case 2: return classify_dim2(q);
    case 4: return classify_dim4(q);
    case 8: return classify_dim8(q);
    default:
        throw PreconditionError(
            "classify_composition_form: composition algebra norm forms have "
            "dimension 2, 4, or 8");
    }
}

FlagDescriptor flag_of_point(const NormalFormX& nf, int pattern) {
    if (nf.ctx.kind() != FieldKind::rationals)
        throw PreconditionError("flag_of_point: flag invariants are defined over Q");
    if (!nf.x_semistable)
        throw PreconditionError(
            "flag_of_point: f1 = 0, the kernel component is not semistable");
    // canonical_pattern_v validates the index; the full point must then be
    // semistable in both invariants.
    const Vec v = canonical_pattern_v(nf, pattern);
    const TriVector point = normal_form_point(nf, v);
    const InvariantReport inv = f1_f2_semistable(point);
    if (inv.f2.is_zero())
        throw PreconditionError(
            "flag_of_point: f2 = 0, the pattern component is not semistable "
            "over this kernel point");

    const mpq_class f1 = nf.f1.rat();
    const mpq_class y[3] = {nf.y1.rat(), nf.y2.rat(), nf.y3.rat()};
    const mpq_class ym = y[pattern - 1];

    FlagDescriptor d;
    d.i_class = squarefree_part(f1);
    d.k_split = rational_is_square(-f1);
    d.pattern = pattern;
    d.h = hermitian_form(f1, {y[0], y[1], y[2]});
    if (!hermitian_disc_trivial(d.h))
        throw InternalError(
            "flag_of_point: y1*y2*y3 = y0^2/4 + f1 failed to be a norm from K");
    d.quaternion_norm = hermitian_trace_form(hermitian_form(f1, {1, ym}));
    d.octonion_norm = hermitian_trace_form(hermitian_form(f1, {1, y[0], y[1], y[2]}));

    const CompClass qc = classify_composition_form(d.quaternion_norm);
    const CompClass oc = classify_composition_form(d.octonion_norm);
    d.quaternion_ramification = qc.ramified;
    d.octonion_class = oc.oct;

    // The flag is realizable as a nested doubling tower; its levels must
    // reproduce both norm classes, and the top level must be the quaternion
    // norm doubled by the tower's third scalar.
    const FlagTower tower = build_flag_tower(f1, ym, oc.oct);
    if (!qform_equivalent(d.quaternion_norm, tower.Q.norm_form()))
        throw InternalError(
            "flag_of_point: quaternion norm disagrees with the doubling tower");
    if (!qform_equivalent(d.octonion_norm, tower.C.norm_form()))
        throw InternalError(
            "flag_of_point: octonion norm disagrees with the doubling tower");
    const Scalar lambda3 = tower.C.lambdas[2];
    const QForm doubler = qform(nf.ctx, {nf.ctx.one(), -lambda3});
    if (!qform_equivalent(d.octonion_norm, qform_tensor(d.quaternion_norm, doubler)))
        throw InternalError(
            "flag_of_point: octonion norm is not the doubled quaternion norm");

    // Independent route to the quaternion level: the Killing form of the
    // stabilizer of the very point we classified.
    const QForm extracted =
        quaternion_norm_from_stabilizer(lie_stabilizer(point));
    if (!qform_equivalent(d.quaternion_norm, extracted))
        throw InternalError(
            "flag_of_point: stabilizer extraction disagrees with the "
            "hermitian trace form");

    return d;
}

bool flags_equal(const FlagDescriptor& a, const FlagDescriptor& b) {
    if (a.i_class != b.i_class) return false;
    if (!qform_equivalent(hermitian_trace_form(a.h), hermitian_trace_form(b.h)))
        return false;
    if (a.quaternion_ramification != b.quaternion_ramification) return false;
    return a.octonion_class == b.octonion_class;
}

std::string flag_to_string(const FlagDescriptor& d) {
    std::ostringstream os;
    os << "Q < ";
    if (d.k_split) os << "QxQ";
    else os << "Q(sqrt(" << mpz_class(-d.i_class) << "))";
    CompClass qc;
    qc.dim = 4;
    qc.ramified = d.quaternion_ramification;
    qc.split = d.quaternion_ramification.empty();
    os << " < " << qc.to_string();
    os << " < octonion("
       << (d.octonion_class == OctClass::split ? "split" : "division") << ")";
    return os.str();
}

} // namespace sp6flags
