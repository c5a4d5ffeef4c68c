// Python bindings for the main operations: classical transforms, the
// epsilon-decimated pipeline, Hadamard probes, shrinkage, and the signal
// generators.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qndwt/hadamard_probe.hpp"
#include "qndwt/qndwt_engine.hpp"
#include "qndwt/shrinkage_channels.hpp"
#include "qndwt/signal_lab.hpp"
#include "qndwt/wavelet_core.hpp"

namespace py = pybind11;
using namespace qndwt;

namespace {

Eigen::MatrixXd table_rows(const NdwtTable& t) {
    Eigen::MatrixXd m(t.L, t.N);
    for (int j = 1; j <= t.L; ++j) m.row(j - 1) = t.d[j - 1].transpose();
    return m;
}

AttenuationSpec make_spec(const std::vector<double>& level_gains,
                          std::optional<Eigen::VectorXd> index_gains) {
    AttenuationSpec spec;
    spec.level_gains = level_gains;
    if (index_gains) spec.index_gains = std::move(*index_gains);
    return spec;
}

}  // namespace

PYBIND11_MODULE(_qndwt, m) {
    m.doc() = "Nondecimated wavelet transforms on an exact statevector simulator";

    py::class_<WaveletFilter>(m, "WaveletFilter")
        .def_readonly("name", &WaveletFilter::name)
        .def_readonly("h", &WaveletFilter::h)
        .def_readonly("g", &WaveletFilter::g)
        .def_property_readonly("support", &WaveletFilter::support);

    py::class_<WaveletMatrix>(m, "WaveletMatrix")
        .def_readonly("entries", &WaveletMatrix::entries)
        .def_readonly("N", &WaveletMatrix::N)
        .def_readonly("L", &WaveletMatrix::L);

    py::class_<DwtCoeffs>(m, "DwtCoeffs")
        .def_readonly("s", &DwtCoeffs::s)
        .def_readonly("N", &DwtCoeffs::N)
        .def_readonly("L", &DwtCoeffs::L)
        .def("detail", &DwtCoeffs::detail, py::arg("j"),
             py::return_value_policy::reference_internal)
        .def("flatten", &DwtCoeffs::flatten);

    py::class_<EpsilonLibrary>(m, "EpsilonLibrary")
        .def_readonly("rows", &EpsilonLibrary::rows)
        .def_readonly("N", &EpsilonLibrary::N)
        .def_readonly("L", &EpsilonLibrary::L);

    py::class_<NdwtTable>(m, "NdwtTable")
        .def_readonly("a", &NdwtTable::a)
        .def_readonly("N", &NdwtTable::N)
        .def_readonly("L", &NdwtTable::L)
        .def_property_readonly("d", &table_rows, "detail rows d1..dL as an L x N matrix");

    py::class_<EncodedState>(m, "EncodedState")
        .def_readonly("amplitudes", &EncodedState::amplitudes)
        .def_readonly("n_ancilla", &EncodedState::n_ancilla)
        .def_readonly("n_data", &EncodedState::n_data)
        .def_readonly("norm", &EncodedState::norm)
        .def_readonly("scale", &EncodedState::scale)
        .def_readonly("offset", &EncodedState::offset)
        .def_readonly("wavelet_applications", &EncodedState::wavelet_applications);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def_readonly("matrix", &DensityOperator::matrix)
        .def_readonly("dim_ancilla", &DensityOperator::dim_ancilla)
        .def_readonly("dim_data", &DensityOperator::dim_data);

    py::class_<KrausChannel>(m, "KrausChannel")
        .def(py::init<std::vector<Eigen::MatrixXcd>>())
        .def_property_readonly("operators", &KrausChannel::operators);

    py::class_<WaveletAtom>(m, "WaveletAtom")
        .def_readonly("j", &WaveletAtom::j)
        .def_readonly("k", &WaveletAtom::k)
        .def_readonly("values", &WaveletAtom::values);

    py::class_<HadamardEstimate>(m, "HadamardEstimate")
        .def_readonly("mean", &HadamardEstimate::mean)
        .def_readonly("shots", &HadamardEstimate::shots)
        .def_readonly("stderr_est", &HadamardEstimate::stderr_est);

    py::class_<SpectrumFit>(m, "SpectrumFit")
        .def_readonly("energies", &SpectrumFit::energies)
        .def_readonly("slope", &SpectrumFit::slope)
        .def_readonly("intercept", &SpectrumFit::intercept)
        .def_readonly("fit_lo", &SpectrumFit::fit_lo)
        .def_readonly("fit_hi", &SpectrumFit::fit_hi);

    py::class_<QndwtResult>(m, "QndwtResult")
        .def_readonly("state", &QndwtResult::state)
        .def_readonly("per_shift", &QndwtResult::per_shift)
        .def_readonly("table", &QndwtResult::table)
        .def_readonly("norm", &QndwtResult::norm)
        .def_readonly("level_energies", &QndwtResult::level_energies)
        .def_readonly("wavelet", &QndwtResult::wavelet);

    py::class_<ShrinkOutcome>(m, "ShrinkOutcome")
        .def_readonly("state", &ShrinkOutcome::state)
        .def_readonly("postselect_prob", &ShrinkOutcome::postselect_prob);

    py::class_<DenoiseReport>(m, "DenoiseReport")
        .def_readonly("denoised", &DenoiseReport::denoised)
        .def_readonly("postselect_prob", &DenoiseReport::postselect_prob)
        .def_readonly("gains", &DenoiseReport::gains)
        .def_readonly("mode", &DenoiseReport::mode);

    py::enum_<Part>(m, "Part")
        .value("real", Part::real)
        .value("imaginary", Part::imaginary);

    // wavelet_core
    m.def("make_filter", &make_filter, py::arg("name"));
    m.def("filter_names", [] { return filter_names(); });
    m.def("circular_shift", &circular_shift, py::arg("y"), py::arg("eps"));
    m.def("dwt_forward", &dwt_forward, py::arg("y"), py::arg("filter"), py::arg("levels"));
    m.def("dwt_inverse", &dwt_inverse, py::arg("coeffs"), py::arg("filter"));
    m.def("build_w_matrix", &build_W_matrix, py::arg("n"), py::arg("filter"),
          py::arg("levels"));
    m.def("epsilon_library", &epsilon_library, py::arg("y"), py::arg("filter"),
          py::arg("levels"));
    m.def("ndwt_atrous", &ndwt_atrous, py::arg("y"), py::arg("filter"), py::arg("levels"));
    m.def("align_epsilon_to_ndwt", &align_epsilon_to_ndwt, py::arg("library"));
    m.def("ndwt_inverse_average", &ndwt_inverse_average, py::arg("table"), py::arg("filter"));

    // qsim_core
    m.def("amplitude_encode", &amplitude_encode, py::arg("x"));
    m.def("amplitude_encode_direct", &amplitude_encode_direct, py::arg("x"));
    m.def("to_density", &to_density, py::arg("state"));
    m.def("partial_trace_ancilla", &partial_trace_ancilla, py::arg("rho"));
    m.def("reduced_density", &reduced_density, py::arg("state"));
    m.def("apply_kraus", &apply_kraus, py::arg("rho"), py::arg("channel"));
    m.def("expect_observable", &expect_observable, py::arg("rho"), py::arg("observable"));

    // qndwt_engine
    m.def("prepare_qndwt", &prepare_qndwt, py::arg("x"), py::arg("filter"), py::arg("levels"));
    m.def("extract_branch", &extract_branch, py::arg("state"), py::arg("eps"), py::arg("norm"));
    m.def("sample_branch", &sample_branch, py::arg("state"), py::arg("seed"));
    m.def("assemble_table", &assemble_table, py::arg("state"), py::arg("norm"),
          py::arg("filter"), py::arg("levels"));
    m.def("level_energy",
          static_cast<double (*)(const EncodedState&, int)>(&level_energy),
          py::arg("state"), py::arg("level"));
    m.def("cross_scale_correlation", &cross_scale_correlation, py::arg("table"), py::arg("j"),
          py::arg("k"), py::arg("j2"), py::arg("k2"));
    m.def("cross_scale_correlation_aggregate", &cross_scale_correlation_aggregate,
          py::arg("table"), py::arg("j"), py::arg("k"), py::arg("j2"), py::arg("k2"));
    m.def("run_qndwt", &run_qndwt, py::arg("x"), py::arg("filter"), py::arg("levels"));

    // hadamard_probe
    m.def("make_atom", &make_atom, py::arg("filter"), py::arg("n"), py::arg("j"), py::arg("k"));
    m.def(
        "hadamard_exact",
        [](const EncodedState& y, const WaveletAtom& atom, double theta, Part part) {
            return hadamard_exact(y, make_phase_unitary(atom, theta), part);
        },
        py::arg("state"), py::arg("atom"), py::arg("theta"), py::arg("part") = Part::real);
    m.def(
        "hadamard_shots",
        [](const EncodedState& y, const WaveletAtom& atom, double theta, long shots,
           std::uint64_t seed, Part part) {
            return hadamard_shots(y, make_phase_unitary(atom, theta), shots, seed, part);
        },
        py::arg("state"), py::arg("atom"), py::arg("theta"), py::arg("shots"), py::arg("seed"),
        py::arg("part") = Part::real);
    m.def("energy_from_expectation", &energy_from_expectation, py::arg("mean_z"),
          py::arg("theta"), py::arg("atom"));
    m.def(
        "reflection_expectation",
        [](const EncodedState& y, const WaveletMatrix& Wm, int k) {
            return hadamard_exact(y, reflection_unitary(Wm, k));
        },
        py::arg("state"), py::arg("w_matrix"), py::arg("k"));
    m.def("coefficient_energy", &coefficient_energy, py::arg("state"), py::arg("w_matrix"),
          py::arg("k"));
    m.def(
        "scalogram",
        [](const EncodedState& y, const WaveletFilter& f, const std::vector<int>& scales,
           double theta, long shots, std::uint64_t seed, int jobs) {
            ScalogramOptions opt;
            opt.theta = theta;
            opt.shots = shots;
            opt.seed = seed;
            opt.jobs = jobs;
            return scalogram(y, f, scales, opt);
        },
        py::arg("state"), py::arg("filter"), py::arg("scales"), py::arg("theta") = 0.05,
        py::arg("shots") = 0, py::arg("seed") = 0, py::arg("jobs") = 1);
    m.def("energy_spectrum",
          static_cast<SpectrumFit (*)(const NdwtTable&)>(&energy_spectrum), py::arg("table"));
    m.def("energy_spectrum",
          static_cast<SpectrumFit (*)(const NdwtTable&, int, int)>(&energy_spectrum),
          py::arg("table"), py::arg("fit_lo"), py::arg("fit_hi"));

    // shrinkage_channels
    m.def("phase_damping_channel", &phase_damping_channel, py::arg("lam"), py::arg("dim"));
    m.def("lift_to_ancilla", &lift_to_ancilla, py::arg("channel"), py::arg("dim_data"));
    m.def(
        "amplitude_damping_to_sink",
        [](const std::vector<double>& level_gains, int n, int levels, int sink) {
            return amplitude_damping_to_sink(make_spec(level_gains, std::nullopt),
                                             CoeffLayout{n, levels}, sink);
        },
        py::arg("level_gains"), py::arg("n"), py::arg("levels"), py::arg("sink") = 0);
    m.def(
        "dilation_shrink_postselect",
        [](const EncodedState& st, const std::vector<double>& level_gains,
           std::optional<Eigen::VectorXd> index_gains) {
            return dilation_shrink_postselect(st, make_spec(level_gains, std::move(index_gains)));
        },
        py::arg("state"), py::arg("level_gains"), py::arg("index_gains") = std::nullopt);
    m.def(
        "dilation_shrink_traceout",
        [](const EncodedState& st, const std::vector<double>& level_gains,
           std::optional<Eigen::VectorXd> index_gains) {
            return dilation_shrink_traceout(st, make_spec(level_gains, std::move(index_gains)));
        },
        py::arg("state"), py::arg("level_gains"), py::arg("index_gains") = std::nullopt);
    m.def(
        "shrink_denoise",
        [](const Eigen::VectorXd& x, const WaveletFilter& f, int levels,
           const std::vector<double>& level_gains) {
            return shrink_denoise(x, f, levels, make_spec(level_gains, std::nullopt));
        },
        py::arg("x"), py::arg("filter"), py::arg("levels"), py::arg("level_gains"));

    // signal_lab
    m.def(
        "doppler", [](int n) { return doppler(n).samples; }, py::arg("n"));
    m.def(
        "fbm",
        [](int n, double hurst, std::uint64_t seed) { return fbm(n, hurst, seed).samples; },
        py::arg("n"), py::arg("hurst"), py::arg("seed") = 0);
    m.def(
        "add_noise",
        [](const Eigen::VectorXd& samples, double sigma, std::uint64_t seed) {
            Signal s;
            s.samples = samples;
            return add_noise(s, sigma, seed).samples;
        },
        py::arg("samples"), py::arg("sigma"), py::arg("seed") = 0);
    m.def(
        "read_csv", [](const std::string& path) { return read_csv(path).samples; },
        py::arg("path"));
    m.def(
        "write_csv",
        [](const std::string& path, const Eigen::VectorXd& samples) {
            Signal s;
            s.samples = samples;
            write_csv(path, s);
        },
        py::arg("path"), py::arg("samples"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
