// kmeis command-line front end.  Exit status: 0 when every check passes,
// 1 when a mathematical check fails, 2 on usage or configuration errors.

#include "kmeis/acceptance.hpp"
#include "kmeis/eisenstein.hpp"
#include "kmeis/exactalg.hpp"
#include "kmeis/oracle.hpp"
#include "kmeis/roots.hpp"
#include "kmeis/spectral.hpp"
#include "kmeis/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace kmeis;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long q = 2;
    long m = 2;
    int i = 1;
    int radius = 6;
    long degree = 12;
    std::string z0 = "1/4";
    std::string output;
    std::string format;  // empty: the command's natural format
    long count = 10;
    long vertices = 6;
    long level = 0;
    int depth = 2;
    std::string word;
    long length = -1;
    std::string chain = "negative";
    std::string kernel = "0:1,1:1";
    long vertex = 0;
    std::string tol = "1/1000";
    std::optional<uint64_t> seed;
    bool verbose = false;
    bool timings = false;
};

mpq_class parse_rational(const std::string& s, const char* what)
{
    mpq_class x;
    if (s.empty() || x.set_str(s, 10) != 0)
        throw UsageError(std::string(what) + " must be a rational \"p/q\", got \"" + s + "\"");
    if (x.get_den() == 0)
        throw UsageError(std::string(what) + " has zero denominator");
    x.canonicalize();
    return x;
}

std::string rat(const mpq_class& x) { return x.get_str(); }

void validate(const RunConfig& c)
{
    if (c.q < 2)
        throw UsageError("q must be >= 2");
    if (c.m < 2)
        throw UsageError("m must be >= 2");
    if (c.i != 1 && c.i != 2)
        throw UsageError("i must be 1 or 2");
    if (c.radius < 1)
        throw UsageError("radius must be >= 1");
    if (c.degree < 0)
        throw UsageError("degree must be >= 0");
    if (!c.format.empty() && c.format != "json" && c.format != "csv")
        throw UsageError("format must be json or csv");
}

void require_prime(long q)
{
    if (!is_prime(q))
        throw UsageError("the function-field oracle needs q prime");
}

// Output is assembled in memory and written once.
struct Output {
    std::ostringstream body;
    int status = 0;
};

json rf_json(const RationalFunc& f) { return f.str(); }

json big(const mpz_class& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

json roots_json(const std::vector<RootVector>& v)
{
    json a = json::array();
    for (const auto& r : v)
        a.push_back({big(r.a), big(r.b)});
    return a;
}

// ---- roots ----

void roots_enum(const RunConfig& c, Output& out)
{
    if (c.chain != "negative" && c.chain != "positive" && c.chain != "both")
        throw UsageError("chain must be negative, positive or both");
    CartanMatrix A(c.m);
    json j{{"m", c.m}, {"i", c.i}};
    if (c.chain != "positive")
        j["negative"] = roots_json(delta_re_stream(c.i, c.count, A, Chain::Negative));
    if (c.chain != "negative")
        j["positive"] = roots_json(delta_re_stream(c.i, c.count, A, Chain::Positive));
    out.body << j.dump(2) << '\n';
}

void roots_inversions(const RunConfig& c, Output& out)
{
    CartanMatrix A(c.m);
    std::vector<WeylWord> words;
    if (!c.word.empty()) {
        WeylWord w = WeylWord::parse(c.word);
        if (!w.is_reduced())
            throw UsageError("word " + c.word + " is not reduced");
        words.push_back(w);
    } else {
        long L = c.length < 0 ? 6 : c.length;
        for (long len = 0; len <= L; ++len)
            for (auto& w : reduced_words(static_cast<size_t>(len)))
                words.push_back(w);
    }
    json rows = json::array();
    bool ok = true;
    for (const auto& w : words) {
        auto S = inversion_set(w, A);
        bool len_ok = S.size() == w.size();
        bool rec_ok = S == inversion_set_recursive(w, A);
        bool cont_ok = check_inversion_containment(w, A);
        ok = ok && len_ok && rec_ok && cont_ok;
        rows.push_back({{"word", w.str()},
                        {"inversions", roots_json(S)},
                        {"length_ok", len_ok},
                        {"recursion_ok", rec_ok},
                        {"containment_ok", cont_ok}});
    }
    out.body << json{{"m", c.m}, {"ok", ok}, {"words", rows}}.dump(2) << '\n';
    out.status = ok ? 0 : 1;
}

void roots_haar(const RunConfig& c, Output& out)
{
    CartanMatrix A(c.m);
    const long N = c.count;
    bool ok = true;
    if (c.format == "csv") {
        out.body << "n,exponent,expected\n";
        for (long n = 0; n <= N; ++n) {
            long e = haar_index_exponent(c.i, n, A);
            ok = ok && e == 2 * n;
            out.body << n << ',' << e << ',' << 2 * n << '\n';
        }
    } else {
        json rows = json::array();
        for (long n = 0; n <= N; ++n) {
            long e = haar_index_exponent(c.i, n, A);
            ok = ok && e == 2 * n;
            rows.push_back({{"n", n}, {"exponent", e}});
        }
        out.body << json{{"m", c.m}, {"i", c.i}, {"ok", ok}, {"exponents", rows}}.dump(2) << '\n';
    }
    out.status = ok ? 0 : 1;
}

// ---- tree ----

void tree_build(const RunConfig& c, Output& out)
{
    Tree T(c.q, c.radius, c.i, c.seed);
    T.write_jsonl(out.body);
}

void tree_verify(const RunConfig& c, Output& out)
{
    Tree T(c.q, c.radius, c.i, c.seed);
    LabelReport r = verify_bruhat_iwasawa(T);
    out.body << json{{"q", c.q}, {"radius", c.radius}, {"i", c.i}, {"ok", r.ok}, {"checked", r.checked},
                     {"failures", r.failures}}
                    .dump(2)
             << '\n';
    out.status = r.ok ? 0 : 1;
}

// ---- spectral ----

void spectral_eigen(const RunConfig& c, Output& out)
{
    Tree T(c.q, c.radius, c.i, c.seed);
    EigenReport r = eigen_check(T);
    out.body << json{{"q", c.q},
                     {"radius", c.radius},
                     {"i", c.i},
                     {"eigenvalue", eigenvalue(c.q).str()},
                     {"ok", r.ok},
                     {"checked", r.checked},
                     {"exceptional", r.exceptional}}
                    .dump(2)
             << '\n';
    out.status = r.ok ? 0 : 1;
}

RadialKernel parse_kernel(const std::string& s)
{
    RadialKernel K;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("kernel entries are n:c, got \"" + item + "\"");
        long n;
        try {
            n = std::stol(item.substr(0, colon));
        } catch (const std::exception&) {
            throw UsageError("bad kernel distance in \"" + item + "\"");
        }
        if (n < 0)
            throw UsageError("kernel distances must be >= 0");
        K[n] += parse_rational(item.substr(colon + 1), "kernel coefficient");
    }
    if (K.empty())
        throw UsageError("empty kernel");
    return K;
}

void spectral_radial(const RunConfig& c, Output& out)
{
    RadialKernel K = parse_kernel(c.kernel);
    Tree T(c.q, c.radius, c.i, c.seed);
    auto f = psi(T);
    std::vector<char> valid;
    auto Kf = radial_apply(K, T, f, &valid);
    LaurentPoly mu = radial_eigenvalue(K, c.q);
    size_t checked = 0;
    std::vector<int> bad;
    for (int v = 0; v < static_cast<int>(T.size()); ++v) {
        if (!valid[v])
            continue;
        ++checked;
        if (Kf[v] != mu * f[v])
            bad.push_back(v);
    }
    out.body << json{{"q", c.q},
                     {"kernel", c.kernel},
                     {"eigenvalue", mu.str()},
                     {"ok", bad.empty()},
                     {"checked", checked},
                     {"exceptional", bad}}
                    .dump(2)
             << '\n';
    out.status = bad.empty() ? 0 : 1;
}

void spectral_constant_term(const RunConfig& c, Output& out)
{
    Tree T(c.q, c.radius, c.i, c.seed);
    Horosphere h = horosphere(T, c.level, c.depth);
    LaurentPoly ct = constant_term(T, psi(T), c.level, c.depth);
    LaurentPoly expect = LaurentPoly::monomial(c.level);
    bool ok = ct == expect;
    out.body << json{{"q", c.q},
                     {"level", c.level},
                     {"depth", c.depth},
                     {"members", h.members.size()},
                     {"constant_term", ct.str()},
                     {"ok", ok}}
                    .dump(2)
             << '\n';
    out.status = ok ? 0 : 1;
}

// ---- eisenstein ----

json eisenstein_json(const EisensteinData& E)
{
    return {{"q", E.q},
            {"lambda", E.lambda.str()},
            {"c1", rf_json(E.c1)},
            {"c2", rf_json(E.c2)},
            {"locus", E.locus.str()},
            {"normalization", normalization_name(E.normalization)}};
}

void eisenstein_solve(const RunConfig& c, Output& out)
{
    EisensteinData E = eisenstein_ray(c.q);
    bool ok = boundary_ok(E) && recurrence_ok(E, 30);
    json j = eisenstein_json(E);
    j["ok"] = ok;
    out.body << j.dump(2) << '\n';
    out.status = ok ? 0 : 1;
}

void eisenstein_values_cmd(const RunConfig& c, Output& out, bool z0_given)
{
    EisensteinData E = eisenstein_ray(c.q);
    const long N = c.count;
    if (N < 1)
        throw UsageError("count must be >= 1");
    const bool csv = c.format == "csv";
    if (z0_given) {
        mpq_class z0 = parse_rational(c.z0, "z0");
        auto f = eisenstein_values(E, N, z0);
        bool ok = satisfies_ray_equations(c.q, E.lambda.eval(z0), f);
        if (csv) {
            out.body << "n,value,decimal\n";
            for (long n = 0; n <= N; ++n)
                out.body << n << ',' << rat(f[n]) << ',' << to_decimal(f[n]) << '\n';
        } else {
            json vals = json::array();
            for (const auto& x : f)
                vals.push_back(rat(x));
            out.body << json{{"q", c.q}, {"z0", rat(z0)}, {"ok", ok}, {"values", vals}}.dump(2) << '\n';
        }
        out.status = ok ? 0 : 1;
        return;
    }
    auto f = eisenstein_values(E, N);
    bool ok = satisfies_ray_equations(c.q, E.lambda, f);
    if (csv) {
        out.body << "n,value\n";
        for (long n = 0; n <= N; ++n)
            out.body << n << ",\"" << f[n].str() << "\"\n";
    } else {
        json vals = json::array();
        for (const auto& x : f)
            vals.push_back(x.str());
        out.body << json{{"q", c.q}, {"ok", ok}, {"values", vals}}.dump(2) << '\n';
    }
    out.status = ok ? 0 : 1;
}

void eisenstein_functional(const RunConfig& c, Output& out)
{
    EisensteinData E = eisenstein_ray(c.q);
    RationalFunc dual = dual_substitute(E.c2, c.q);
    bool ok = functional_equation_check(E);
    out.body << json{{"q", c.q}, {"c2", rf_json(E.c2)}, {"c2_dual", rf_json(dual)},
                     {"product", rf_json(E.c2 * dual)}, {"ok", ok}}
                    .dump(2)
             << '\n';
    out.status = ok ? 0 : 1;
}

void eisenstein_poles(const RunConfig& c, Output& out)
{
    EisensteinData E = eisenstein_ray(c.q);
    PoleReport P = poles(E, c.count);
    if (c.format == "csv") {
        out.body << "pole,decimal,denominator_at_pole\n";
        for (const auto& p : P.poles)
            out.body << rat(p) << ',' << to_decimal(p) << ',' << rat(P.denominator.eval(p)) << '\n';
    } else {
        json poles_j = json::array();
        for (const auto& p : P.poles)
            poles_j.push_back(rat(p));
        out.body << json{{"q", c.q}, {"denominator", P.denominator.str()}, {"poles", poles_j},
                         {"shared", P.shared}}
                        .dump(2)
                 << '\n';
    }
    out.status = P.shared ? 0 : 1;
}

void eisenstein_uniqueness(const RunConfig& c, Output& out)
{
    UniquenessReport U = uniqueness_system_check(c.q, std::max<long>(3, c.count));
    out.body << json{{"q", c.q},
                     {"a_s_coefficient", U.a_s_coefficient.str()},
                     {"a_1ms_coefficient", U.a_1ms_coefficient.str()},
                     {"symbolic_ok", U.symbolic_ok},
                     {"eigen_ok", U.eigen_ok},
                     {"discrete_ok", U.discrete_ok},
                     {"homogeneous_ok", U.homogeneous_ok},
                     {"ok", U.ok()}}
                    .dump(2)
             << '\n';
    out.status = U.ok() ? 0 : 1;
}

// ---- oracle ----

void oracle_enumerate(const RunConfig& c, Output& out)
{
    require_prime(c.q);
    auto cosets = enumerate_cosets(c.q, c.degree);
    std::vector<long> by(c.degree + 1, 0);
    for (const auto& k : cosets)
        ++by[k.maxdeg()];
    if (c.format == "json") {
        json rows = json::array();
        long cum = 0;
        for (long d = 0; d <= c.degree; ++d)
            rows.push_back({{"degree", d}, {"count", by[d]}, {"cumulative", cum += by[d]}});
        out.body << json{{"q", c.q}, {"degree", c.degree}, {"cosets", rows}}.dump(2) << '\n';
    } else {
        out.body << "degree,count,cumulative\n";
        long cum = 0;
        for (long d = 0; d <= c.degree; ++d)
            out.body << d << ',' << by[d] << ',' << (cum += by[d]) << '\n';
    }
}

void oracle_brute(const RunConfig& c, Output& out)
{
    require_prime(c.q);
    if (c.vertex < 0)
        throw UsageError("vertex must be >= 0");
    mpq_class z0 = parse_rational(c.z0, "z0");
    BruteResult r = brute_eisenstein(c.q, sigma(c.vertex), z0, c.degree);
    mpq_class tol = parse_rational(c.tol, "tol");
    auto st = stabilization_degree(r, tol);
    if (c.format == "csv") {
        out.body << "degree,partial,decimal\n";
        for (size_t d = 0; d < r.partial.size(); ++d)
            out.body << d << ',' << rat(r.partial[d]) << ',' << to_decimal(r.partial[d]) << '\n';
    } else {
        json partial = json::array();
        for (const auto& p : r.partial)
            partial.push_back(rat(p));
        out.body << json{{"q", c.q},
                         {"vertex", c.vertex},
                         {"z0", rat(z0)},
                         {"degree", c.degree},
                         {"value", rat(r.value)},
                         {"decimal", to_decimal(r.value)},
                         {"tail_ratio", rat(r.tail_ratio)},
                         {"tail_bound", to_decimal(r.tail_bound)},
                         {"tail_converges", r.tail_converges},
                         {"stabilized_at", st ? json(*st) : json(nullptr)},
                         {"partial", partial}}
                        .dump(2)
                 << '\n';
    }
    out.status = st ? 0 : 1;
}

void oracle_compare_cmd(const RunConfig& c, Output& out)
{
    require_prime(c.q);
    mpq_class z0 = parse_rational(c.z0, "z0");
    mpq_class tol = parse_rational(c.tol, "tol");
    CompareReport R = oracle_compare(c.q, z0, c.degree, c.vertices);
    bool ok = R.max_deviation < tol;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& row : R.rows)
            rows.push_back({{"vertex", row.n},
                            {"brute", to_decimal(row.brute)},
                            {"ray_model", to_decimal(row.ray_model)},
                            {"ratio", to_decimal(row.ratio)},
                            {"tail_bound", to_decimal(row.tail_bound)}});
        out.body << json{{"q", c.q},
                         {"z0", rat(z0)},
                         {"degree", c.degree},
                         {"scale", to_decimal(R.scale)},
                         {"max_deviation", to_decimal(R.max_deviation, 3)},
                         {"tolerance", rat(tol)},
                         {"ok", ok},
                         {"rows", rows}}
                        .dump(2)
                 << '\n';
    } else {
        write_compare_csv(out.body, R);
    }
    std::cerr << "scale " << to_decimal(R.scale) << ", max relative deviation " << to_decimal(R.max_deviation, 3)
              << " (tolerance " << rat(tol) << ")\n";
    out.status = ok ? 0 : 1;
}

void oracle_ray_check(const RunConfig& c, Output& out)
{
    require_prime(c.q);
    QuotientReport Q = quotient_ray_check(c.q, c.radius, c.degree);
    out.body << json{{"q", c.q},
                     {"radius", c.radius},
                     {"degree", c.degree},
                     {"ok", Q.ok},
                     {"insufficient_degree", Q.insufficient_degree},
                     {"classes", Q.classes},
                     {"down_multiplicity", Q.down_mult},
                     {"up_multiplicity", Q.up_mult},
                     {"message", Q.message}}
                    .dump(2)
             << '\n';
    out.status = Q.ok ? 0 : 1;
}

// ---- report ----

void report_all(const RunConfig& c, Output& out)
{
    int failed = 0;
    for (auto& run : acceptance_suite()) {
        CriterionResult r = run();
        print_result(out.body, r, c.verbose, c.timings);
        failed += !r.passed;
    }
    out.body << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria passed"))
             << '\n';
    out.status = failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact spectral computations on rank-2 Kac-Moody trees and their Eisenstein series"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with defaults; flags override it");
    app.fallthrough();

    RunConfig c;
    std::string seed_text;
    app.add_option("--q", c.q, "residue field size (>= 2; prime for the oracle)")->capture_default_str();
    app.add_option("--m", c.m, "Cartan parameter m (>= 2)")->capture_default_str();
    app.add_option("--i", c.i, "labeling 1 or 2")->capture_default_str();
    app.add_option("--radius", c.radius, "ball radius (>= 1)")->capture_default_str();
    app.add_option("--deg,--degree", c.degree, "coset degree bound")->capture_default_str();
    app.add_option("--z0", c.z0, "evaluation point as \"p/q\"")->capture_default_str();
    app.add_option("-o,--output", c.output, "write here instead of stdout");
    app.add_option("--format", c.format, "json or csv");
    app.add_option("--count,--n", c.count, "number of entries or ray vertices")->capture_default_str();
    app.add_option("--vertices", c.vertices, "ray vertices compared by the oracle")->capture_default_str();
    app.add_option("--level", c.level, "horosphere height")->capture_default_str();
    app.add_option("--depth", c.depth, "horosphere depth")->capture_default_str();
    app.add_option("--word", c.word, "Weyl word such as 1212");
    app.add_option("--length", c.length, "all reduced words up to this length");
    app.add_option("--chain", c.chain, "negative, positive or both")->capture_default_str();
    app.add_option("--kernel", c.kernel, "radial kernel n:c,n:c")->capture_default_str();
    app.add_option("--vertex", c.vertex, "ray vertex sigma_n")->capture_default_str();
    app.add_option("--tol", c.tol, "tolerance as \"p/q\"")->capture_default_str();
    app.add_option("--seed", seed_text, "shuffle child ids in the tree");
    app.add_flag("-v,--verbose", c.verbose, "print details for passing checks too");
    app.add_flag("--timings", c.timings, "print run times in the report");

    using Handler = std::function<void(const RunConfig&, Output&)>;
    Handler handler;
    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto leaf = [&](CLI::App* g, const std::string& name, const std::string& help, Handler h) {
        g->add_subcommand(name, help)->fallthrough()->callback([&handler, h] { handler = h; });
    };

    auto* roots = group("roots", "real roots and inversion sets");
    leaf(roots, "enum", "list the chains of delta_re_i", roots_enum);
    leaf(roots, "inversions", "inversion sets and their checks", roots_inversions);
    leaf(roots, "haar-index", "Haar index exponents", roots_haar);
    auto* tree = group("tree", "the truncated tree");
    leaf(tree, "build", "write the ball as JSON lines", tree_build);
    leaf(tree, "verify-labels", "labels against Bruhat data", tree_verify);
    auto* spectral = group("spectral", "operators on the tree");
    leaf(spectral, "eigen-check", "adjacency eigenvalue of Psi", spectral_eigen);
    leaf(spectral, "radial", "radial operator eigenvalue of Psi", spectral_radial);
    leaf(spectral, "constant-term", "horosphere average of Psi", spectral_constant_term);
    auto* eis = group("eisenstein", "Eisenstein series on the ray");
    leaf(eis, "solve", "solve for c1, c2", eisenstein_solve);
    bool z0_given = false;
    eis->add_subcommand("values", "ray values, symbolic or at --z0")
        ->fallthrough()
        ->callback([&] {
            z0_given = app.count("--z0") > 0;
            handler = [&z0_given](const RunConfig& cfg, Output& o) { eisenstein_values_cmd(cfg, o, z0_given); };
        });
    leaf(eis, "functional-eq", "c2(z) c2(1/(qz)) = 1", eisenstein_functional);
    leaf(eis, "poles", "denominator and rational poles", eisenstein_poles);
    leaf(eis, "uniqueness", "uniqueness system", eisenstein_uniqueness);
    auto* oracle = group("oracle", "function-field oracle, affine case");
    leaf(oracle, "enumerate", "coset counts by degree", oracle_enumerate);
    leaf(oracle, "brute", "partial sums at sigma_n", oracle_brute);
    leaf(oracle, "compare", "oracle against the ray model", oracle_compare_cmd);
    leaf(oracle, "ray-check", "quotient of a ball is the ray", oracle_ray_check);
    auto* report = group("report", "acceptance suite");
    leaf(report, "all", "run every acceptance criterion", report_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.get_formatter()->make_help(&app, app.get_name(), CLI::AppFormatMode::Normal);
        return 2;
    }

    Output out;
    try {
        if (!seed_text.empty()) {
            try {
                c.seed = std::stoull(seed_text);
            } catch (const std::exception&) {
                throw UsageError("seed must be a non-negative integer");
            }
        }
        validate(c);
        if (!handler)
            throw UsageError("missing subcommand");
        handler(c, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (c.output.empty()) {
        std::cout << out.body.str();
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << c.output << '\n';
            return 2;
        }
        f << out.body.str();
    }
    return out.status;
}
