#include "kmeis/acceptance.hpp"
#include "kmeis/eisenstein.hpp"
#include "kmeis/exactalg.hpp"
#include "kmeis/oracle.hpp"
#include "kmeis/roots.hpp"
#include "kmeis/spectral.hpp"
#include "kmeis/tree.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kmeis;

namespace {

// Rationals cross the boundary as fractions.Fraction; ints, Fractions and
// "p/q" strings are accepted on the way in.
mpq_class to_mpq(const py::handle& h)
{
    std::string s = py::str(h);
    mpq_class x;
    if (x.set_str(s, 10) != 0 || x.get_den() == 0)
        throw py::value_error("not a rational: " + s);
    x.canonicalize();
    return x;
}

py::object to_fraction(const mpq_class& x)
{
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(x.get_str());
}

py::list fractions(const std::vector<mpq_class>& v)
{
    py::list out;
    for (const auto& x : v)
        out.append(to_fraction(x));
    return out;
}

std::pair<py::object, py::object> root_tuple(const RootVector& r)
{
    return {py::int_(py::str(r.a.get_str())), py::int_(py::str(r.b.get_str()))};
}

std::vector<std::pair<py::object, py::object>> root_list(const std::vector<RootVector>& v)
{
    std::vector<std::pair<py::object, py::object>> out;
    for (const auto& r : v)
        out.push_back(root_tuple(r));
    return out;
}

RationalFunc to_rf(const py::handle& h)
{
    if (py::isinstance<RationalFunc>(h))
        return h.cast<RationalFunc>();
    return RationalFunc::parse(py::str(h));
}

py::dict eisenstein_dict(const EisensteinData& E)
{
    py::dict d;
    d["q"] = E.q;
    d["lambda"] = E.lambda.str();
    d["c1"] = E.c1.str();
    d["c2"] = E.c2.str();
    d["locus"] = E.locus.str();
    d["normalization"] = normalization_name(E.normalization);
    return d;
}

py::dict brute_dict(const BruteResult& r)
{
    py::dict d;
    d["partial"] = fractions(r.partial);
    d["value"] = to_fraction(r.value);
    d["tail_ratio"] = to_fraction(r.tail_ratio);
    d["tail_bound"] = to_fraction(r.tail_bound);
    d["tail_converges"] = r.tail_converges;
    d["terms"] = r.terms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kmeis, m)
{
    m.doc() = "Exact spectral computations on rank-2 Kac-Moody trees";

    py::register_exception<PoleError>(m, "PoleError", PyExc_ZeroDivisionError);
    py::register_exception<NoSolution>(m, "NoSolution", PyExc_ValueError);
    py::register_exception<InsufficientPrecision>(m, "InsufficientPrecision", PyExc_ArithmeticError);

    // ---- exact algebra ----
    py::class_<RationalFunc>(m, "RationalFunc")
        .def(py::init([](const py::object& s) { return to_rf(s); }), py::arg("text"))
        .def_static("z", &RationalFunc::z, py::arg("e") = 1)
        .def("__str__", &RationalFunc::str)
        .def("__repr__", [](const RationalFunc& f) { return "RationalFunc('" + f.str() + "')"; })
        .def("__eq__", [](const RationalFunc& a, const py::object& b) { return a == to_rf(b); })
        .def("__hash__", [](const RationalFunc& f) { return py::hash(py::str(f.str())); })
        .def("__add__", [](const RationalFunc& a, const py::object& b) { return a + to_rf(b); })
        .def("__radd__", [](const RationalFunc& a, const py::object& b) { return to_rf(b) + a; })
        .def("__sub__", [](const RationalFunc& a, const py::object& b) { return a - to_rf(b); })
        .def("__rsub__", [](const RationalFunc& a, const py::object& b) { return to_rf(b) - a; })
        .def("__mul__", [](const RationalFunc& a, const py::object& b) { return a * to_rf(b); })
        .def("__rmul__", [](const RationalFunc& a, const py::object& b) { return to_rf(b) * a; })
        .def("__truediv__", [](const RationalFunc& a, const py::object& b) { return a / to_rf(b); })
        .def("__neg__", [](const RationalFunc& a) { return -a; })
        .def("__call__", [](const RationalFunc& f, const py::object& z0) { return to_fraction(f.eval(to_mpq(z0))); })
        .def("dual", &RationalFunc::dual, py::arg("q"))
        .def_property_readonly("num", [](const RationalFunc& f) { return f.num().str(); })
        .def_property_readonly("den", [](const RationalFunc& f) { return f.den().str(); })
        .def("is_laurent", &RationalFunc::is_laurent);

    m.def(
        "solve",
        [](const std::vector<std::vector<py::object>>& A, const std::vector<py::object>& b) {
            ParamSystem S;
            for (const auto& row : A) {
                std::vector<RationalFunc> r;
                for (const auto& e : row)
                    r.push_back(to_rf(e));
                S.matrix.push_back(std::move(r));
            }
            for (const auto& e : b)
                S.rhs.push_back(to_rf(e));
            ParamSolution sol = solve_param_system(S);
            py::dict d;
            d["x"] = sol.x;
            d["locus"] = sol.locus.str();
            d["rank"] = sol.rank;
            d["pivot_rows"] = sol.pivot_rows;
            d["pivot_cols"] = sol.pivot_cols;
            return d;
        },
        py::arg("matrix"), py::arg("rhs"), "Solve a linear system over Q(z); entries are RationalFunc or strings.");
    m.def(
        "rational_roots", [](const std::string& p) { return fractions(rational_roots(LaurentPoly::parse(p))); },
        py::arg("poly"));

    // ---- roots ----
    m.def(
        "reflect", [](int i, long a, long b, long mm) { return root_tuple(reflect(i, {a, b}, CartanMatrix(mm))); },
        py::arg("i"), py::arg("a"), py::arg("b"), py::arg("m") = 2);
    m.def(
        "act",
        [](const std::string& w, long a, long b, long mm) {
            return root_tuple(act(WeylWord::parse(w), {a, b}, CartanMatrix(mm)));
        },
        py::arg("word"), py::arg("a"), py::arg("b"), py::arg("m") = 2);
    m.def(
        "inversion_set", [](const std::string& w, long mm) { return root_list(inversion_set(WeylWord::parse(w), CartanMatrix(mm))); },
        py::arg("word"), py::arg("m") = 2);
    m.def(
        "delta_re_stream",
        [](int i, size_t count, long mm, bool positive) {
            return root_list(delta_re_stream(i, count, CartanMatrix(mm), positive ? Chain::Positive : Chain::Negative));
        },
        py::arg("i"), py::arg("count"), py::arg("m") = 2, py::arg("positive") = false);
    m.def(
        "haar_index_exponent", [](int i, long n, long mm) { return haar_index_exponent(i, n, CartanMatrix(mm)); },
        py::arg("i"), py::arg("n"), py::arg("m") = 2);
    m.def(
        "check_inversion_containment",
        [](const std::string& w, long mm) { return check_inversion_containment(WeylWord::parse(w), CartanMatrix(mm)); },
        py::arg("word"), py::arg("m") = 2);

    // ---- tree and spectral ----
    py::class_<Tree>(m, "Tree")
        .def(py::init<long, int, int, std::optional<uint64_t>>(), py::arg("q"), py::arg("radius"), py::arg("i") = 1,
             py::arg("seed") = py::none())
        .def("__len__", &Tree::size)
        .def_property_readonly("q", &Tree::q)
        .def_property_readonly("radius", &Tree::radius)
        .def("height", &Tree::height, py::arg("v"))
        .def("type", &Tree::type, py::arg("v"))
        .def("label", [](const Tree& T, int v) {
            const auto& L = T.label(v);
            return py::make_tuple(L.i, L.n, L.j);
        })
        .def("down", &Tree::down)
        .def("up", &Tree::up)
        .def("neighbors", &Tree::neighbors)
        .def("word", [](const Tree& T, int v) { return T.bruhat_word(v).str(); })
        .def("jsonl", [](const Tree& T) {
            std::ostringstream os;
            T.write_jsonl(os);
            return os.str();
        });
    m.def("verify_labels", [](const Tree& T) {
        LabelReport r = verify_bruhat_iwasawa(T);
        py::dict d;
        d["ok"] = r.ok;
        d["checked"] = r.checked;
        d["failures"] = r.failures;
        return d;
    });
    m.def("eigen_check", [](const Tree& T) {
        EigenReport r = eigen_check(T);
        py::dict d;
        d["ok"] = r.ok;
        d["checked"] = r.checked;
        d["exceptional"] = r.exceptional;
        return d;
    });
    m.def("eigenvalue", [](long q) { return eigenvalue(q).str(); }, py::arg("q"));
    m.def(
        "radial_eigenvalue",
        [](const std::map<long, py::object>& kernel, long q) {
            RadialKernel K;
            for (const auto& [n, c] : kernel)
                K[n] = to_mpq(c);
            return radial_eigenvalue(K, q).str();
        },
        py::arg("kernel"), py::arg("q"));

    // ---- eisenstein ----
    m.def("eisenstein_ray", [](long q) { return eisenstein_dict(eisenstein_ray(q)); }, py::arg("q"));
    m.def(
        "eisenstein_values",
        [](long q, long N, const py::object& z0) -> py::list {
            EisensteinData E = eisenstein_ray(q);
            if (z0.is_none()) {
                py::list out;
                for (const auto& f : eisenstein_values(E, N))
                    out.append(py::str(f.str()));
                return out;
            }
            return fractions(eisenstein_values(E, N, to_mpq(z0)));
        },
        py::arg("q"), py::arg("n"), py::arg("z0") = py::none());
    m.def("functional_equation", [](long q) { return functional_equation_check(eisenstein_ray(q)); }, py::arg("q"));
    m.def(
        "poles",
        [](long q) {
            PoleReport P = poles(eisenstein_ray(q));
            py::dict d;
            d["denominator"] = P.denominator.str();
            d["poles"] = fractions(P.poles);
            d["shared"] = P.shared;
            return d;
        },
        py::arg("q"));
    m.def(
        "uniqueness_check", [](long q, long vertices) { return uniqueness_system_check(q, vertices).ok(); },
        py::arg("q"), py::arg("vertices") = 30);

    // ---- oracle ----
    m.def(
        "brute_eisenstein",
        [](long q, long n, const py::object& z0, long D) { return brute_dict(brute_eisenstein(q, sigma(n), to_mpq(z0), D)); },
        py::arg("q"), py::arg("n"), py::arg("z0"), py::arg("degree"));
    m.def(
        "oracle_compare",
        [](long q, const py::object& z0, long D, long vertices) {
            CompareReport R = oracle_compare(q, to_mpq(z0), D, vertices);
            py::list rows;
            for (const auto& row : R.rows) {
                py::dict d;
                d["vertex"] = row.n;
                d["brute"] = to_fraction(row.brute);
                d["ray_model"] = to_fraction(row.ray_model);
                d["ratio"] = to_fraction(row.ratio);
                rows.append(d);
            }
            py::dict d;
            d["rows"] = rows;
            d["scale"] = to_fraction(R.scale);
            d["max_deviation"] = to_fraction(R.max_deviation);
            return d;
        },
        py::arg("q"), py::arg("z0"), py::arg("degree"), py::arg("vertices") = 6);
    m.def(
        "quotient_ray_check",
        [](long q, int R, long D) {
            QuotientReport Q = quotient_ray_check(q, R, D);
            py::dict d;
            d["ok"] = Q.ok;
            d["classes"] = Q.classes;
            d["down"] = Q.down_mult;
            d["up"] = Q.up_mult;
            d["message"] = Q.message;
            return d;
        },
        py::arg("q"), py::arg("radius"), py::arg("degree"));

    // ---- acceptance ----
    m.def(
        "run_criterion",
        [](int id) {
            auto suite = acceptance_suite();
            if (id < 1 || id > static_cast<int>(suite.size()))
                throw py::index_error("criterion id out of range");
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = suite[id - 1]();
            }
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["seconds"] = r.seconds;
            d["details"] = r.details;
            return d;
        },
        py::arg("id"));
}
