#include "fockidx/presets.hpp"
#include "fockidx/selftest.hpp"
#include "fockidx/subsystem.hpp"
#include "fockidx/unit_algebra.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fockidx;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

AlgebraElement element_from_array(const GridSpec& grid, const ComplexArray& samples, Complex tail) {
    const auto view = samples.unchecked<1>();
    std::vector<Complex> values(view.data(0), view.data(0) + view.shape(0));
    return {grid, std::move(values), tail};
}

ComplexArray element_samples(const AlgebraElement& a) {
    ComplexArray out(static_cast<py::ssize_t>(a.size()));
    std::copy(a.samples().begin(), a.samples().end(), out.mutable_data());
    return out;
}

py::dict membership_dict(const MembershipReport& r) {
    py::dict d;
    d["in_E"] = r.in_E;
    d["zeta_limit"] = r.zeta_limit;
    d["distance_to_one"] = r.distance_to_one;
    d["witness_kind"] = to_string(r.witness_kind);
    d["eventually_one_from"] = r.eventually_one_from ? py::cast(*r.eventually_one_from) : py::none();
    d["positive_before"] = r.positive_before;
    d["warnings"] = r.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grid model of the time-ordered Fock product system over C0[0,inf) + C1";

    py::register_exception<Error>(m, "FockError", PyExc_ValueError);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<int, int>(), py::arg("m") = 4, py::arg("S") = 40)
        .def_property_readonly("m", &GridSpec::step_denominator)
        .def_property_readonly("S", &GridSpec::domain_end)
        .def_property_readonly("sample_count", &GridSpec::sample_count)
        .def_property_readonly("dimension", &GridSpec::dimension)
        .def("point", &GridSpec::point)
        .def("points", [](const GridSpec& g) {
            std::vector<double> p;
            for (std::size_t k = 0; k < g.sample_count(); ++k) p.push_back(g.point(k));
            return p;
        })
        .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(m=" + std::to_string(g.step_denominator()) + ", S=" + std::to_string(g.domain_end()) + ")";
        });

    py::class_<AlgebraElement>(m, "AlgebraElement")
        .def(py::init(&element_from_array), py::arg("grid"), py::arg("samples"), py::arg("tail"))
        .def_static("constant", &constant, py::arg("grid"), py::arg("value"))
        .def_static("from_function", &AlgebraElement::from_function, py::arg("grid"), py::arg("f"), py::arg("tail"))
        .def_property_readonly("grid", &AlgebraElement::grid)
        .def_property_readonly("samples", &element_samples)
        .def_property_readonly("tail", &AlgebraElement::tail)
        .def("unresolved", &AlgebraElement::unresolved, py::arg("tol") = kTailTolerance)
        .def("__len__", &AlgebraElement::size)
        .def("__add__", [](const AlgebraElement& a, const AlgebraElement& b) { return a + b; })
        .def("__sub__", [](const AlgebraElement& a, const AlgebraElement& b) { return a - b; })
        .def("__mul__", [](const AlgebraElement& a, const AlgebraElement& b) { return a * b; })
        .def("__mul__", [](const AlgebraElement& a, Complex c) { return c * a; })
        .def("__rmul__", [](const AlgebraElement& a, Complex c) { return c * a; })
        .def("__neg__", [](const AlgebraElement& a) { return -a; });

    m.def("star", &star);
    m.def("shift", &shift, py::arg("b"), py::arg("t"));
    m.def("sup_norm", &sup_norm);
    m.def("sup_distance", &sup_distance);
    m.def("is_positive", &is_positive, py::arg("b"), py::arg("tol") = kPositivityTolerance);
    m.def("limit_at_infinity", &limit_at_infinity);

    m.def("exp_approach", [](const GridSpec& g, Complex c, double a, Complex offset) {
        return sample(ExpApproachPreset{c, a, offset}, g);
    }, py::arg("grid"), py::arg("c"), py::arg("a") = 1.0, py::arg("offset") = Complex{1.0});
    m.def("rational", [](const GridSpec& g, Complex c, Complex d) { return sample(RationalPreset{c, d}, g); },
          py::arg("grid"), py::arg("c"), py::arg("d") = Complex{0.0});
    m.def("piecewise_linear", [](const GridSpec& g, std::vector<std::pair<double, Complex>> knots) {
        return sample(PiecewiseLinearPreset{std::move(knots)}, g);
    }, py::arg("grid"), py::arg("knots"));

    py::class_<FockUnit>(m, "FockUnit")
        .def(py::init<AlgebraElement, AlgebraElement>(), py::arg("zeta"), py::arg("beta"))
        .def_static("omega", &FockUnit::omega)
        .def_static("xi", &FockUnit::xi)
        .def_property_readonly("zeta", &FockUnit::zeta)
        .def_property_readonly("beta", &FockUnit::beta)
        .def_property_readonly("grid", &FockUnit::grid);

    py::class_<KernelOperator>(m, "KernelOperator")
        .def_property_readonly("matrix", &KernelOperator::matrix)
        .def_property_readonly("grid", &KernelOperator::grid)
        .def("__call__", [](const KernelOperator& k, const AlgebraElement& b) { return apply(k, b); })
        .def("__sub__", [](const KernelOperator& a, const KernelOperator& b) { return a - b; })
        .def("__matmul__", [](const KernelOperator& a, const KernelOperator& b) { return compose(a, b); });

    m.def("kernel", &kernel, py::arg("u"), py::arg("v"));
    m.def("semigroup", &semigroup, py::arg("u"), py::arg("v"), py::arg("t"), py::arg("rel_tol") = kExpTolerance);
    m.def("apply", &apply);
    m.def("operator_norm", &operator_norm);
    m.def("matrix_exponential", &matrix_exponential, py::arg("a"), py::arg("rel_tol") = kExpTolerance);

    m.def("gram_psd_check", [](const std::vector<FockUnit>& units, double t, const AlgebraElement& b, double tol) {
        const GramReport r = gram_psd_check(gram_matrix(units, t, b), tol);
        return py::make_tuple(r.psd, r.min_eigenvalue);
    }, py::arg("units"), py::arg("t"), py::arg("b"), py::arg("tol") = kPositivityTolerance,
       "Returns (psd, min_eigenvalue) for the Gram matrix [K_t^{u_i,u_j}(b)].");

    py::class_<ReferencedUnit>(m, "ReferencedUnit")
        .def(py::init<FockUnit, FockUnit>(), py::arg("unit"), py::arg("reference"))
        .def_property_readonly("candidate", &ReferencedUnit::candidate)
        .def_property_readonly("reference", &ReferencedUnit::reference)
        .def_property_readonly("op", [](const ReferencedUnit& x) { return to_string(x.op()); });

    m.def("power_beta", &power_beta);
    m.def("boxplus_left", py::overload_cast<const std::vector<AlgebraElement>&, const std::vector<ReferencedUnit>&>(&boxplus_left));
    m.def("boxplus_right", py::overload_cast<const std::vector<ReferencedUnit>&, const std::vector<AlgebraElement>&>(&boxplus_right));
    m.def("add", &add);
    m.def("left_mul", &left_mul);
    m.def("right_mul", &right_mul);
    m.def("scale", &scale);
    m.def("subtract", &subtract);
    m.def("formula_kernel", py::overload_cast<const ReferencedUnit&, const FockUnit&>(&formula_kernel));
    m.def("dual_path_residual", &dual_path_residual);
    m.def("semi_inner", &semi_inner, py::arg("x"), py::arg("y"), py::arg("b"));
    m.def("index_norm", &index_norm);
    m.def("default_probe_units", &default_probe_units);

    m.def("membership", [](const FockUnit& u, double tol) { return membership_dict(membership(u, tol)); },
          py::arg("u"), py::arg("tol") = kMembershipTolerance);
    m.def("witness_step1", [](const AlgebraElement& zeta, int n) {
        const Step1Witness w = witness_step1(zeta, n);
        return py::make_tuple(w.b0, w.b1, w.max_identity_residual);
    }, "Returns (b0, b1, max_identity_residual).");
    m.def("convexify", [](const AlgebraElement& zeta, int n, double delta) {
        const Convexification c = convexify(zeta, n, delta);
        return py::make_tuple(c.alpha, c.zeta_prime);
    }, py::arg("zeta"), py::arg("n"), py::arg("delta") = 0.25);
    m.def("theta_check", [](const AlgebraElement& zeta, int n, const std::vector<FockUnit>& probes, double delta) {
        const ThetaCheck t = theta_check(zeta, n, probes, delta);
        py::dict d;
        d["alpha"] = t.alpha;
        d["step1_residual"] = t.step1_residual;
        d["max_kernel_residual"] = t.max_kernel_residual;
        return d;
    }, py::arg("zeta"), py::arg("n"), py::arg("probes"), py::arg("delta") = 0.25);
    m.def("approximate", &approximate);
    m.def("convergence_report", [](const AlgebraElement& zeta, double t, const std::vector<int>& ns, const FockUnit& probe) {
        const ConvergenceReport r = convergence_report(zeta, t, ns, probe);
        py::list rows;
        for (const auto& row : r.rows) {
            py::dict d;
            d["n"] = row.n;
            d["sup_dist"] = row.sup_dist;
            d["index_dist"] = row.index_dist;
            d["kernel_dist"] = row.kernel_dist;
            d["semigroup_dist"] = row.semigroup_dist;
            d["probe_kernel_dist"] = row.probe_kernel_dist;
            rows.append(d);
        }
        py::dict d;
        d["monotone"] = r.monotone;
        d["max_index_gap"] = r.max_index_gap;
        d["rows"] = rows;
        return d;
    });
    m.def("index_representative", &index_representative, py::arg("u"), py::arg("tol") = kMembershipTolerance);
    m.def("centrality_check", &centrality_check, py::arg("u"), py::arg("probes"), py::arg("tol") = 1e-10);
    m.def("default_centrality_probes", &default_centrality_probes);

    m.def("run_selftest", [](int m_, int S, std::uint64_t seed, int cases) {
        SelftestOptions o;
        o.grid = GridSpec(m_, S);
        o.seed = seed;
        o.random_cases = cases;
        py::list out;
        for (const auto& c : run_selftest(o)) {
            py::dict d;
            d["module"] = c.module;
            d["name"] = c.name;
            d["value"] = c.value;
            d["tolerance"] = c.tolerance;
            d["passed"] = c.passed;
            out.append(d);
        }
        return out;
    }, py::arg("m") = 4, py::arg("S") = 40, py::arg("seed") = 20240601, py::arg("cases") = 5);
}
