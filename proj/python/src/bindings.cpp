#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swipt/analytic.hpp"
#include "swipt/errors.hpp"
#include "swipt/mcsim.hpp"
#include "swipt/model.hpp"
#include "swipt/specfun.hpp"

namespace py = pybind11;
using namespace swipt;

namespace {

MeijerGSpec spec_of(int m, int n, std::vector<double> a, std::vector<double> b) {
    return MeijerGSpec::make(m, n, std::move(a), std::move(b));
}

// Elementwise pdf over an array of z; scalars come back as 0-d arrays.
py::array_t<double> map_pdf(double (*pdf)(const DerivedConstants&, double), const DerivedConstants& c,
                            py::array_t<double, py::array::c_style | py::array::forcecast> z) {
    py::array_t<double> out(z.request().shape);
    const auto n = z.size();
    const double* in = z.data();
    double* o = out.mutable_data();
    {
        py::gil_scoped_release release;
        for (py::ssize_t i = 0; i < n; ++i) o[i] = pdf(c, in[i]);
    }
    return out;
}

std::string repr_result(const McResult& r) {
    return "McResult(ber=" + std::to_string(r.ber) + ", errors=" + std::to_string(r.errors) +
           ", bits=" + std::to_string(r.bits) + ", ci95=" + std::to_string(r.ci95_halfwidth) + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bit-error analysis and simulation of a power-splitting SWIPT relay with differential AF";

    auto base = py::register_exception<Error>(m, "SwiptError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DegenerateConfigError>(m, "DegenerateConfigError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def(py::init([](py::kwargs kw) {
            SystemParams p;
            py::object self = py::cast(&p, py::return_value_policy::reference);
            for (auto item : kw) {
                const auto key = item.first.cast<std::string>();
                if (!py::hasattr(self, key.c_str())) throw py::type_error("unknown parameter: " + key);
                py::setattr(self, key.c_str(), item.second);
            }
            return p;
        }))
        .def_readwrite("p0", &SystemParams::p0)
        .def_readwrite("eta", &SystemParams::eta)
        .def_readwrite("theta", &SystemParams::theta)
        .def_readwrite("alpha", &SystemParams::alpha)
        .def_readwrite("d0", &SystemParams::d0)
        .def_readwrite("d1", &SystemParams::d1)
        .def_readwrite("d2", &SystemParams::d2)
        .def_readwrite("n0a", &SystemParams::n0a)
        .def_readwrite("n0c", &SystemParams::n0c)
        .def_readwrite("n1a", &SystemParams::n1a)
        .def_readwrite("n1c", &SystemParams::n1c)
        .def_readwrite("n2a", &SystemParams::n2a)
        .def_readwrite("n2c", &SystemParams::n2c)
        .def(py::self == py::self)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(p0=" + std::to_string(p.p0) + ", theta=" + std::to_string(p.theta) +
                   ", d1=" + std::to_string(p.d1) + ", d2=" + std::to_string(p.d2) + ")";
        });

    py::class_<DerivedConstants>(m, "DerivedConstants")
        .def_readonly("params", &DerivedConstants::params)
        .def_readonly("phi", &DerivedConstants::phi)
        .def_readonly("n_tot0", &DerivedConstants::n_tot0)
        .def_readonly("n_tot1", &DerivedConstants::n_tot1)
        .def_readonly("n_tot2", &DerivedConstants::n_tot2)
        .def_readonly("k1", &DerivedConstants::k1)
        .def_readonly("k2", &DerivedConstants::k2)
        .def_readonly("k3", &DerivedConstants::k3)
        .def_readonly("j1", &DerivedConstants::j1)
        .def_readonly("j2", &DerivedConstants::j2)
        .def_readonly("gbar0", &DerivedConstants::gbar0)
        .def_readonly("nc_av", &DerivedConstants::nc_av)
        .def_property_readonly("decay_rate", &DerivedConstants::decay_rate);

    m.def("validate", py::overload_cast<const SystemParams&>(&validate), py::arg("params"));
    m.def("derive_constants", &derive_constants, py::arg("params"));
    m.def("two_hop_snr", &two_hop_snr, py::arg("constants"), py::arg("x"), py::arg("y"));
    m.def("db_to_linear", &db_to_linear);
    m.def("linear_to_db", &linear_to_db);

    py::enum_<Scheme>(m, "Scheme").value("TH", Scheme::TH).value("LC", Scheme::LC).value("DIRECT_ONLY",
                                                                                        Scheme::DirectOnly);
    py::enum_<Method>(m, "Method")
        .value("EXACT_QUAD", Method::ExactQuad)
        .value("ASYMPTOTIC_CLOSED", Method::AsymptoticClosed)
        .value("ASYMPTOTIC_QUAD", Method::AsymptoticQuad);

    py::class_<AberPoint>(m, "AberPoint")
        .def_readonly("params", &AberPoint::params)
        .def_readonly("scheme", &AberPoint::scheme)
        .def_readonly("method", &AberPoint::method)
        .def_readonly("value", &AberPoint::value)
        .def_readonly("err_estimate", &AberPoint::err_estimate)
        .def("__float__", [](const AberPoint& a) { return a.value; })
        .def("__repr__", [](const AberPoint& a) {
            return "AberPoint(" + std::string(to_string(a.scheme)) + ", " + std::string(to_string(a.method)) +
                   ", value=" + std::to_string(a.value) + ")";
        });

    m.def(
        "pdf_two_hop_exact", [](const DerivedConstants& c, py::array_t<double> z) {
            return map_pdf(&pdf_two_hop_exact, c, z);
        },
        py::arg("constants"), py::arg("z"));
    m.def(
        "pdf_two_hop_asymptotic", [](const DerivedConstants& c, py::array_t<double> z) {
            return map_pdf(&pdf_two_hop_asymptotic, c, z);
        },
        py::arg("constants"), py::arg("z"));
    m.def(
        "pdf_two_hop_asymptotic_quad", [](const DerivedConstants& c, py::array_t<double> z) {
            return map_pdf(&pdf_two_hop_asymptotic_quad, c, z);
        },
        py::arg("constants"), py::arg("z"));

    m.def("aber", &aber, py::arg("constants"), py::arg("scheme"), py::arg("method") = Method::ExactQuad,
          py::call_guard<py::gil_scoped_release>());
    m.def("aber_direct", &aber_direct, py::arg("constants"));
    m.def("aber_th_exact", &aber_th_exact, py::arg("constants"), py::call_guard<py::gil_scoped_release>());
    m.def("aber_lc_exact", &aber_lc_exact, py::arg("constants"), py::call_guard<py::gil_scoped_release>());
    m.def("aber_th_asymptotic", &aber_th_asymptotic, py::arg("constants"));
    m.def("aber_lc_asymptotic", &aber_lc_asymptotic, py::arg("constants"));

    m.def(
        "meijer_g",
        [](int mm, int n, std::vector<double> a, std::vector<double> b, double x) {
            return meijer_g(spec_of(mm, n, std::move(a), std::move(b)), x);
        },
        py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"),
        "G^{m,n}_{p,q}(x | a; b) for x > 0 on the supported classes");
    m.def(
        "meijer_g_signed",
        [](int mm, int n, std::vector<double> a, std::vector<double> b, double x, bool upper) {
            return meijer_g_signed(spec_of(mm, n, std::move(a), std::move(b)), x,
                                   upper ? Branch::Upper : Branch::Lower);
        },
        py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("upper") = true,
        "negative x sits at arg +pi when upper, -pi otherwise");

    py::enum_<EhMode>(m, "EhMode").value("IEH", EhMode::IEH).value("AEH", EhMode::AEH).value("CON", EhMode::CON);
    py::enum_<LcWeights>(m, "LcWeights")
        .value("AVERAGE", LcWeights::Average)
        .value("INSTANTANEOUS", LcWeights::Instantaneous);
    py::enum_<ConPower>(m, "ConPower").value("PER_NODE", ConPower::PerNode).value("TOTAL_SPLIT",
                                                                                 ConPower::TotalSplit);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("params", &McConfig::params)
        .def_readwrite("scheme", &McConfig::scheme)
        .def_readwrite("eh_mode", &McConfig::eh_mode)
        .def_readwrite("frames", &McConfig::frames)
        .def_readwrite("symbols_per_frame", &McConfig::symbols_per_frame)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("min_errors", &McConfig::min_errors)
        .def_readwrite("lc_weights", &McConfig::lc_weights)
        .def_readwrite("con_power", &McConfig::con_power)
        .def_readwrite("threads", &McConfig::threads);

    py::class_<McResult>(m, "McResult")
        .def_readonly("ber", &McResult::ber)
        .def_readonly("errors", &McResult::errors)
        .def_readonly("bits", &McResult::bits)
        .def_readonly("ci95_halfwidth", &McResult::ci95_halfwidth)
        .def_readonly("seed", &McResult::seed)
        .def_readonly("frames_run", &McResult::frames_run)
        .def("__repr__", &repr_result);

    m.def("run_monte_carlo", &run_monte_carlo, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_monte_carlo_all", &run_monte_carlo_all, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(), "results for TH, LC and DIRECT_ONLY from the same frames");
    m.def("baseline_variants", &baseline_variants, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "sample_two_hop_snr",
        [](const DerivedConstants& c, std::uint64_t n, std::uint64_t seed, unsigned threads) {
            std::vector<double> s;
            {
                py::gil_scoped_release release;
                s = sample_two_hop_snr(c, n, seed, threads);
            }
            return py::array_t<double>(static_cast<py::ssize_t>(s.size()), s.data());
        },
        py::arg("constants"), py::arg("n"), py::arg("seed"), py::arg("threads") = 0);
}
