#include "sp6flags/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sp6flags/census.hpp"
#include "sp6flags/composition.hpp"
#include "sp6flags/errors.hpp"
#include "sp6flags/flags.hpp"
#include "sp6flags/freudenthal.hpp"
#include "sp6flags/invariants.hpp"
#include "sp6flags/orbits.hpp"
#include "sp6flags/qforms.hpp"
#include "sp6flags/rng.hpp"
#include "sp6flags/verify.hpp"
#include "sp6flags/wedge.hpp"

namespace sp6flags {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// parsing helpers (all failures -> ParseError -> exit 2)

Vec parse_scalar_list(const FieldCtx& ctx, const std::string& text,
                      std::size_t expected, const char* what) {
    Vec out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(Scalar::parse(ctx, piece));
    if (expected != 0 && out.size() != expected)
        throw ParseError(std::string(what) + ": expected " +
                         std::to_string(expected) + " comma-separated scalars, got " +
                         std::to_string(out.size()));
    return out;
}

/// Square matrix from rows separated by ';', entries by ','.
Mat parse_square_matrix(const FieldCtx& ctx, const std::string& text,
                        const char* what) {
    std::vector<Vec> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';'))
        rows.push_back(parse_scalar_list(ctx, row, 0, what));
    if (rows.empty()) throw ParseError(std::string(what) + ": empty matrix");
    Mat m(ctx, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw ParseError(std::string(what) + ": matrix must be square");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

// ---------------------------------------------------------------------------
// JSON emitters; scalars keep the text grammar so output round-trips

json j_vec(const Vec& v) {
    json a = json::array();
    for (const Scalar& s : v) a.push_back(s.to_string());
    return a;
}

json j_mat(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

json j_qform(const QForm& q) {
    return json{{"field", q.ctx.to_string()}, {"diag", j_vec(q.diag)}};
}

json j_qform_with_invariants(const QForm& q) {
    json doc = j_qform(q);
    if (q.ctx.kind() == FieldKind::quad_ext) return doc;
    const QFormInvariants inv = qform_invariants(q);
    json extra{{"dim", inv.dim}, {"disc", inv.disc.get_str()}};
    if (q.ctx.kind() == FieldKind::rationals) {
        extra["signature"] = json::array({inv.signature.first, inv.signature.second});
        json hasse = json::object();
        for (const auto& [place, sign] : inv.hasse) hasse[place.to_string()] = sign;
        extra["hasse"] = hasse;
    }
    doc["invariants"] = extra;
    return doc;
}

json j_trivector(const TriVector& T) {
    json coords = json::object();
    const auto& table = tri_table();
    for (std::size_t k = 0; k < kTriCount; ++k) {
        if (T.coords[k].is_zero()) continue;
        const std::string key = std::to_string(table[k][0]) +
                                std::to_string(table[k][1]) +
                                std::to_string(table[k][2]);
        coords[key] = T.coords[k].to_string();
    }
    return json{{"text", trivector_format(T)}, {"coordinates", coords}};
}

json j_places(const std::vector<Place>& places) {
    json a = json::array();
    for (const Place& v : places) a.push_back(v.to_string());
    return a;
}

json j_hermitian(const HermitianForm& h) {
    json entries = json::array();
    for (const mpq_class& e : h.entries) entries.push_back(e.get_str());
    return json{{"d", h.d.get_str()}, {"entries", entries}, {"split", h.split}};
}

json j_flag_descriptor(const FlagDescriptor& d) {
    return json{
        {"i_class", d.i_class.get_str()},
        {"k_split", d.k_split},
        {"pattern", d.pattern},
        {"hermitian", j_hermitian(d.h)},
        {"quaternion_norm", j_qform_with_invariants(d.quaternion_norm)},
        {"octonion_norm", j_qform_with_invariants(d.octonion_norm)},
        {"quaternion_ramification", j_places(d.quaternion_ramification)},
        {"octonion_class",
         d.octonion_class == OctClass::division ? "division" : "split"},
        {"flag", flag_to_string(d)},
    };
}

json j_census(const CensusReport& rep) {
    json counts = json::object(), predictions = json::object();
    for (const CensusFiber& f : rep.fibers) {
        const std::string key = rep.level == CensusLevel::X
                                    ? std::to_string(f.f1)
                                    : std::to_string(f.f1) + "," + std::to_string(f.f2);
        counts[key] = f.count;
        predictions[key] = f.predicted;
    }
    json doc{{"p", rep.p},
             {"level", rep.level == CensusLevel::X ? "X" : "V"},
             {"workers", rep.workers},
             {"fiber_counts", counts},
             {"predictions", predictions},
             {"total", rep.total},
             {"dropped", rep.dropped},
             {"match", rep.match},
             {"elapsed_seconds", rep.elapsed_seconds}};
    if (rep.level == CensusLevel::V) {
        doc["mode"] = rep.mode == CensusMode::formula ? "formula" : "brute";
        doc["cross_checked"] = rep.cross_checked;
        doc["cross_check_failures"] = rep.cross_check_failures;
    }
    return doc;
}

// ---------------------------------------------------------------------------
// option state shared by the subcommand handlers

struct Options {
    std::string field = "Q";
    std::string trivector;
    std::string nf;
    std::string v;
    std::string y0;
    int pattern = 1;
    std::string algebra;       // "tower" | "zorn"
    std::string lambdas;       // comma list, may be empty for the base field
    std::string gamma = "1,1,1";
    int samples = 8;
    std::string witness_case;
    std::string wi, wa, wy0, wy1, wy2, wy3; // witness scalars
    std::string block;                      // witness embedding block
    std::uint64_t p = 3;
    std::string level = "X";
    std::string mode = "formula";
    int workers = 1;
    unsigned seed = 0;
    double sample_rate = 0.01;
    bool extended = false;
    std::string suite = "all";
    int trials = 200;
    std::string output;
};

NormalFormX nf_from_option(const FieldCtx& ctx, const std::string& text) {
    const Vec ys = parse_scalar_list(ctx, text, 4, "--nf");
    return normal_form_x(ys[0], ys[1], ys[2], ys[3]);
}

json handle_eval(const Options& opt) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    const TriVector T = trivector_parse(ctx, opt.trivector);
    const InvariantReport rep = f1_f2_semistable(T);
    return json{{"field", ctx.to_string()},
                {"trivector", j_trivector(T)},
                {"f", rep.f.to_string()},
                {"f1", rep.f1.to_string()},
                {"f2", rep.f2.to_string()},
                {"semistable", rep.semistable}};
}

json handle_canonicalize(const Options& opt) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    const Scalar y0 = Scalar::parse(ctx, opt.y0);
    const Vec v = parse_scalar_list(ctx, opt.v, 6, "--v");
    const CanonicalizeResult res = canonicalize_v(y0, v);
    Vec target(6, ctx.zero());
    target[0] = res.q;
    target[3] = ctx.one();
    return json{{"field", ctx.to_string()},
                {"y0", y0.to_string()},
                {"v", j_vec(v)},
                {"q", res.q.to_string()},
                {"canonical_v", j_vec(target)},
                {"g", json{{"matrix", j_mat(res.g.g)},
                           {"similitude", res.g.similitude.to_string()}}},
                {"canonical", j_trivector(res.canonical)}};
}

json handle_stabilizer(const Options& opt) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    if (opt.trivector.empty() == opt.nf.empty())
        throw ParseError("stabilizer: give exactly one of --trivector or --nf");
    json input;
    TriVector T(ctx);
    if (!opt.trivector.empty()) {
        T = trivector_parse(ctx, opt.trivector);
        input = j_trivector(T);
    } else {
        const NormalFormX nf = nf_from_option(ctx, opt.nf);
        if (!opt.v.empty() && opt.pattern != 0)
            throw ParseError("stabilizer: --v and --pattern are exclusive");
        if (!opt.v.empty())
            T = normal_form_point(nf, parse_scalar_list(ctx, opt.v, 6, "--v"));
        else if (opt.pattern != 0)
            T = normal_form_point(nf, canonical_pattern_v(nf, opt.pattern));
        else
            T = normal_form_x_part(nf);
        input = j_trivector(T);
    }
    const LieStabilizer L = lie_stabilizer(T);
    json basis = json::array();
    for (const Mat& b : L.basis) basis.push_back(j_mat(b));
    json doc{{"field", ctx.to_string()},
             {"point", input},
             {"dim", L.dim()},
             {"basis", basis},
             {"killing", j_mat(L.killing)}};
    if (L.dim() == 3)
        doc["quaternion_norm"] = j_qform_with_invariants(quaternion_norm_from_stabilizer(L));
    return doc;
}

json handle_flag(const Options& opt) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    const NormalFormX nf = nf_from_option(ctx, opt.nf);
    const FlagDescriptor d = flag_of_point(nf, opt.pattern);
    return json{{"field", ctx.to_string()},
                {"nf", j_vec({nf.y0, nf.y1, nf.y2, nf.y3})},
                {"f1", nf.f1.to_string()},
                {"descriptor", j_flag_descriptor(d)}};
}

json handle_freudenthal(const Options& opt) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    if (opt.nf.empty() == opt.algebra.empty())
        throw ParseError("freudenthal: give exactly one of --nf or --algebra");

    if (!opt.nf.empty()) {
        // orbit route: flag descriptor -> coordinatized Jordan tower
        const NormalFormX nf = nf_from_option(ctx, opt.nf);
        const FlagDescriptor d = flag_of_point(nf, opt.pattern);
        const FreudenthalOrbitReport rep =
            orbit_to_freudenthal(d, opt.seed, opt.samples);
        json levels = json::array();
        for (const FreudenthalAlgebra& F : rep.levels)
            levels.push_back(json{{"dim", F.dim()},
                                  {"coordinate_dim", F.C.dim()},
                                  {"gamma", j_vec(F.gamma)}});
        return json{{"field", ctx.to_string()},
                    {"nf", j_vec({nf.y0, nf.y1, nf.y2, nf.y3})},
                    {"pattern", opt.pattern},
                    {"flag", flag_to_string(d)},
                    {"dim6", j_qform_with_invariants(rep.dim6)},
                    {"dim9", j_qform_with_invariants(rep.dim9)},
                    {"levels", levels},
                    {"samples", rep.samples},
                    {"checks", json{{"jordan_embeddings", true},
                                    {"cubic_data_preserved", true}}}};
    }

    // direct route: build one algebra and certify its structure
    CompAlgebra C = [&] {
        if (opt.algebra == "zorn") return CompAlgebra::zorn(ctx);
        if (opt.algebra == "tower") {
            Vec lambdas;
            if (!opt.lambdas.empty())
                lambdas = parse_scalar_list(ctx, opt.lambdas, 0, "--lambdas");
            return CompAlgebra::cayley_dickson(cd_tower(ctx, lambdas));
        }
        throw ParseError("freudenthal: --algebra must be `tower` or `zorn`");
    }();
    const Vec gamma = parse_scalar_list(ctx, opt.gamma, 3, "--gamma");
    const FreudenthalAlgebra F = freudenthal_algebra(C, gamma);
    const QForm trace = algebra_trace_form(F); // certified inside over Q and F_p

    if (opt.samples < 1)
        throw PreconditionError("freudenthal: --samples must be >= 1");
    Rng g(opt.seed);
    json sample_data = json::array();
    for (int s = 0; s < opt.samples; ++s) {
        Vec alpha{rand_scalar(g, ctx, -6, 6), rand_scalar(g, ctx, -6, 6),
                  rand_scalar(g, ctx, -6, 6)};
        std::array<Vec, 3> slots;
        for (std::array<Vec, 3>::size_type i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < C.dim(); ++k)
                slots[i].push_back(rand_scalar(g, ctx, -6, 6));
        const FreudenthalElement X = freudenthal_element(F, alpha, slots);
        // certifies the cubic identity and X o X^# = N I
        const CubicData data = cubic_data(F, X);
        if (s == 0)
            sample_data.push_back(json{{"T", data.T.to_string()},
                                       {"S", data.S.to_string()},
                                       {"N", data.N.to_string()}});
    }
    json algebra = json::object();
    algebra["kind"] = C.is_zorn() ? "zorn" : "tower";
    if (!C.is_zorn()) algebra["lambdas"] = j_vec(C.tower().lambdas);
    return json{{"field", ctx.to_string()},
                {"algebra", algebra},
                {"gamma", j_vec(gamma)},
                {"dim", F.dim()},
                {"coordinate_dim", C.dim()},
                {"trace_form", j_qform_with_invariants(trace)},
                {"checks", json{{"samples", opt.samples},
                                {"cubic_identity", true},
                                {"adjoint_identity", true},
                                {"first_sample", sample_data}}}};
}

json handle_census(const Options& opt, int* exit_code) {
    const CensusLevel level = opt.level == "X" ? CensusLevel::X : CensusLevel::V;
    const CensusMode mode =
        opt.mode == "formula" ? CensusMode::formula : CensusMode::brute;
    const CensusReport rep =
        level == CensusLevel::X
            ? count_X_fibers(opt.p, opt.workers, opt.extended)
            : count_V_fibers(opt.p, mode, opt.workers, opt.seed, opt.sample_rate,
                             opt.extended);
    if (!rep.match) *exit_code = kExitCheckFailed;
    return j_census(rep);
}

json handle_verify(const Options& opt, int* exit_code) {
    const VerifyReport rep = run_verify(opt.suite, opt.seed, opt.trials);
    json suites = json::array();
    for (const SuiteResult& s : rep.suites) {
        json entry{{"name", s.name},
                   {"instances", s.instances},
                   {"failures", s.failures},
                   {"passed", s.passed},
                   {"elapsed_seconds", s.elapsed_seconds}};
        if (!s.detail.empty()) entry["detail"] = s.detail;
        suites.push_back(entry);
    }
    if (!rep.all_passed) *exit_code = kExitCheckFailed;
    return json{{"seed", rep.seed},
                {"trials", rep.trials},
                {"suites", suites},
                {"all_passed", rep.all_passed}};
}

json handle_witness(const Options& opt, int* exit_code) {
    const FieldCtx ctx = FieldCtx::parse(opt.field);
    const WitnessCase c = witness_case_from_string(opt.witness_case);
    WitnessParams params;
    auto set = [&](std::optional<Scalar>& slot, const std::string& text) {
        if (!text.empty()) slot = Scalar::parse(ctx, text);
    };
    set(params.i, opt.wi);
    set(params.a, opt.wa);
    set(params.y0, opt.wy0);
    set(params.y1, opt.wy1);
    set(params.y2, opt.wy2);
    set(params.y3, opt.wy3);
    if (!opt.block.empty())
        params.block = parse_square_matrix(ctx, opt.block, "--block");
    const WitnessReport rep = witness(ctx, c, params);
    json elements = json::array();
    for (const WitnessElement& e : rep.elements)
        elements.push_back(json{{"matrix", j_mat(e.g)},
                                {"cx", e.cx.to_string()},
                                {"cv", e.cv.to_string()}});
    if (!rep.verified) *exit_code = kExitInternal;
    return json{{"field", ctx.to_string()},
                {"case", witness_case_name(c)},
                {"elements", elements},
                {"verified", rep.verified},
                {"detail", rep.detail}};
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact invariants, orbits and flags for trivectors of a "
                 "six-dimensional symplectic space",
                 "sp6"};
    app.require_subcommand(1);
    Options opt;

    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", opt.field, "field spec: Q, Q(sqrt:D), or F:p");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", opt.output, "also write the JSON document here");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate f, f1, f2 on a trivector");
    add_field(eval);
    add_output(eval);
    eval->add_option("--trivector", opt.trivector, "e.g. \"-1*e123 - 2*e456 + 1*e156\"")
        ->required();

    CLI::App* canon = app.add_subcommand(
        "canonicalize", "move a 6-dim component to the shape (q,0,0,1,0,0)");
    add_field(canon);
    add_output(canon);
    canon->add_option("--y0", opt.y0, "two-term kernel point parameter")->required();
    canon->add_option("--v", opt.v, "six comma-separated scalars")->required();

    CLI::App* stab = app.add_subcommand(
        "stabilizer", "Lie-algebra stabilizer with structure and Killing data");
    add_field(stab);
    add_output(stab);
    stab->add_option("--trivector", opt.trivector, "explicit trivector");
    stab->add_option("--nf", opt.nf, "family point y0,y1,y2,y3");
    stab->add_option("--v", opt.v, "six comma-separated scalars (with --nf)");
    stab->add_option("--pattern", opt.pattern,
                     "canonical 6-dim pattern 1..3, or 0 for the bare kernel "
                     "point (with --nf)");

    CLI::App* flag = app.add_subcommand(
        "flag", "composition-algebra flag descriptor of a family point");
    add_field(flag);
    add_output(flag);
    flag->add_option("--nf", opt.nf, "family point y0,y1,y2,y3")->required();
    flag->add_option("--pattern", opt.pattern, "canonical pattern 1..3");

    CLI::App* freud = app.add_subcommand(
        "freudenthal", "hermitian 3x3 Jordan algebras: trace forms and checks");
    add_field(freud);
    add_output(freud);
    freud->add_option("--nf", opt.nf, "orbit route: family point y0,y1,y2,y3");
    freud->add_option("--pattern", opt.pattern, "canonical pattern (orbit route)");
    freud->add_option("--algebra", opt.algebra, "direct route: `tower` or `zorn`");
    freud->add_option("--lambdas", opt.lambdas,
                      "doubling parameters for --algebra tower");
    freud->add_option("--gamma", opt.gamma, "three twist scalars");
    freud->add_option("--samples", opt.samples, "random identity-check count");
    freud->add_option("--seed", opt.seed, "sample generator seed");

    CLI::App* census = app.add_subcommand(
        "census", "finite-field fiber counts against orbit-stabilizer predictions");
    add_output(census);
    census->add_option("--p", opt.p, "odd prime (3 default; 5 needs --extended)");
    census->add_option("--level", opt.level, "X or V")
        ->check(CLI::IsMember({"X", "V"}));
    census->add_option("--mode", opt.mode, "formula or brute (level V)")
        ->check(CLI::IsMember({"formula", "brute"}));
    census->add_option("--workers", opt.workers, "parallel range count");
    census->add_option("--seed", opt.seed, "cross-check sampling seed");
    census->add_option("--sample-rate", opt.sample_rate,
                       "brute cross-check fraction in formula mode");
    census->add_flag("--extended", opt.extended, "allow the long p = 5 run");

    CLI::App* verify = app.add_subcommand(
        "verify", "seeded property suites over every module");
    add_output(verify);
    verify->add_option("--suite", opt.suite, "suite name or `all`");
    verify->add_option("--seed", opt.seed, "base generator seed");
    verify->add_option("--trials", opt.trials, "base instance budget per suite");

    CLI::App* wit = app.add_subcommand(
        "witness", "explicit transport matrices, verified by acting");
    add_field(wit);
    add_output(wit);
    wit->add_option("--case", opt.witness_case,
                    "normal_form_transport | orbit_chain | sl2_embed | sl3_embed")
        ->required();
    wit->add_option("--i", opt.wi, "first-invariant value (orbit_chain)");
    wit->add_option("--a", opt.wa, "slot-1 source entry (orbit_chain)");
    wit->add_option("--y0", opt.wy0, "target family entry");
    wit->add_option("--y1", opt.wy1, "target family entry");
    wit->add_option("--y2", opt.wy2, "target family entry");
    wit->add_option("--y3", opt.wy3, "target family entry");
    wit->add_option("--block", opt.block,
                    "embedding block, rows `;`-separated, e.g. \"1,2;0,1\"");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return kExitParse;
    }

    int exit_code = kExitOk;
    json doc;
    try {
        if (app.got_subcommand(eval)) doc = handle_eval(opt);
        else if (app.got_subcommand(canon)) doc = handle_canonicalize(opt);
        else if (app.got_subcommand(stab)) doc = handle_stabilizer(opt);
        else if (app.got_subcommand(flag)) doc = handle_flag(opt);
        else if (app.got_subcommand(freud)) doc = handle_freudenthal(opt);
        else if (app.got_subcommand(census)) doc = handle_census(opt, &exit_code);
        else if (app.got_subcommand(verify)) doc = handle_verify(opt, &exit_code);
        else doc = handle_witness(opt, &exit_code);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        err << "rejected: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const InternalError& e) {
        err << "internal check failed: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    }

    const std::string text = doc.dump(2);
    if (!opt.output.empty()) {
        std::ofstream file(opt.output);
        if (!file) {
            err << "cannot open output file: " << opt.output << "\n";
            return kExitPrecondition;
        }
        file << text << "\n";
    }
    out << text << "\n";
    return exit_code;
}

} // namespace sp6flags
