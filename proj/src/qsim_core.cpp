#include "qndwt/qsim_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qndwt {

namespace {

constexpr int kMaxQubits = 20;   // 2^20 amplitudes

int dyadic_log2(Eigen::Index n, const char* what) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument(std::string(what) +
                                    ": length must be a power of two, got " +
                                    std::to_string(n));
    int l = 0;
    while ((Eigen::Index{1} << l) < n) ++l;
    return l;
}

void check_registers(const EncodedState& st, const char* what) {
    if (st.amplitudes.size() != (Eigen::Index{1} << (st.n_ancilla + st.n_data)))
        throw std::invalid_argument(std::string(what) + ": amplitude count " +
                                    std::to_string(st.amplitudes.size()) +
                                    " does not match registers");
}

}  // namespace

EncodedState amplitude_encode(const Eigen::VectorXd& x) {
    const int n = dyadic_log2(x.size(), "amplitude_encode");
    const double mn = x.minCoeff();
    const double mx = x.maxCoeff();
    if (!(mx > mn))
        throw std::invalid_argument("amplitude_encode: constant signal, rescale to [-1,1] is degenerate");

    const double scale = 2.0 / (mx - mn);
    const double offset = -(mx + mn) / (mx - mn);
    Eigen::VectorXd v = scale * x.array() + offset;
    const double nrm = v.norm();
    if (nrm <= 0.0)
        throw std::invalid_argument("amplitude_encode: rescaled signal has zero norm");

    EncodedState st;
    st.n_data = n;
    st.norm = nrm;
    st.scale = scale;
    st.offset = offset;
    st.amplitudes = (v / nrm).cast<std::complex<double>>();
    return st;
}

EncodedState amplitude_encode_direct(const Eigen::VectorXd& x) {
    const int n = dyadic_log2(x.size(), "amplitude_encode_direct");
    const double nrm = x.norm();
    if (nrm <= 0.0)
        throw std::invalid_argument("amplitude_encode_direct: zero signal");
    EncodedState st;
    st.n_data = n;
    st.norm = nrm;
    st.amplitudes = (x / nrm).cast<std::complex<double>>();
    return st;
}

EncodedState with_ancilla(const EncodedState& st, int L) {
    check_registers(st, "with_ancilla");
    if (L < 0 || st.n_ancilla + st.n_data + L > kMaxQubits)
        throw std::invalid_argument("with_ancilla: register of " + std::to_string(L) +
                                    " qubits exceeds the supported state size");
    EncodedState out = st;
    out.n_ancilla = st.n_ancilla + L;
    out.amplitudes = Eigen::VectorXcd::Zero(st.amplitudes.size() << L);
    out.amplitudes.head(st.amplitudes.size()) = st.amplitudes;
    return out;
}

EncodedState hadamard_layer(const EncodedState& st) {
    check_registers(st, "hadamard_layer");
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    if (sectors == 1) return st;

    double tail = 0.0;
    for (Eigen::Index eps = 1; eps < sectors; ++eps)
        tail += st.amplitudes.segment(eps * N, N).squaredNorm();
    if (tail > 1e-24)
        throw std::invalid_argument("hadamard_layer: ancilla register is not in the ground state");

    EncodedState out = st;
    const double w = 1.0 / std::sqrt(static_cast<double>(sectors));
    for (Eigen::Index eps = 0; eps < sectors; ++eps)
        out.amplitudes.segment(eps * N, N) = w * st.amplitudes.head(N);
    return out;
}

EncodedState controlled_shift(const EncodedState& st) {
    check_registers(st, "controlled_shift");
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    EncodedState out = st;
    for (Eigen::Index eps = 0; eps < sectors; ++eps) {
        const Eigen::Index e = eps % N;
        for (Eigen::Index k = 0; k < N; ++k)
            out.amplitudes[eps * N + k] = st.amplitudes[eps * N + ((k - e + N) % N)];
    }
    return out;
}

EncodedState controlled_shift_inverse(const EncodedState& st) {
    check_registers(st, "controlled_shift_inverse");
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    EncodedState out = st;
    for (Eigen::Index eps = 0; eps < sectors; ++eps)
        for (Eigen::Index k = 0; k < N; ++k)
            out.amplitudes[eps * N + k] = st.amplitudes[eps * N + ((k + eps) % N)];
    return out;
}

namespace {

EncodedState apply_per_sector(const EncodedState& st, const Eigen::MatrixXd& m) {
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    if (m.rows() != N || m.cols() != N)
        throw std::invalid_argument("wavelet_unitary: matrix is " + std::to_string(m.rows()) +
                                    "x" + std::to_string(m.cols()) + ", data register has dim " +
                                    std::to_string(N));
    EncodedState out = st;
    for (Eigen::Index eps = 0; eps < sectors; ++eps) {
        const auto seg = st.amplitudes.segment(eps * N, N);
        out.amplitudes.segment(eps * N, N) =
            (m * seg.real()).cast<std::complex<double>>() +
            std::complex<double>(0.0, 1.0) * (m * seg.imag()).cast<std::complex<double>>();
    }
    return out;
}

}  // namespace

EncodedState wavelet_unitary(const EncodedState& st, const WaveletMatrix& Wm) {
    check_registers(st, "wavelet_unitary");
    EncodedState out = apply_per_sector(st, Wm.entries);
    out.wavelet_applications = st.wavelet_applications + 1;
    return out;
}

EncodedState wavelet_unitary_inverse(const EncodedState& st, const WaveletMatrix& Wm) {
    check_registers(st, "wavelet_unitary_inverse");
    EncodedState out = apply_per_sector(st, Wm.entries.transpose());
    out.wavelet_applications = st.wavelet_applications + 1;
    return out;
}

Eigen::VectorXcd ancilla_uniform_average(const EncodedState& st) {
    check_registers(st, "ancilla_uniform_average");
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(N);
    for (Eigen::Index eps = 0; eps < sectors; ++eps)
        acc += st.amplitudes.segment(eps * N, N);
    return acc / std::sqrt(static_cast<double>(sectors));
}

DensityOperator to_density(const EncodedState& st) {
    check_registers(st, "to_density");
    DensityOperator rho;
    rho.dim_ancilla = st.ancilla_dim();
    rho.dim_data = st.data_dim();
    rho.matrix = st.amplitudes * st.amplitudes.adjoint();
    return rho;
}

DensityOperator partial_trace_ancilla(const DensityOperator& rho) {
    const Eigen::Index dA = rho.dim_ancilla;
    const Eigen::Index dD = rho.dim_data;
    if (rho.matrix.rows() != dA * dD || rho.matrix.cols() != dA * dD)
        throw std::invalid_argument("partial_trace_ancilla: dimension mismatch");
    DensityOperator out;
    out.dim_ancilla = 1;
    out.dim_data = dD;
    out.matrix = Eigen::MatrixXcd::Zero(dD, dD);
    for (Eigen::Index eps = 0; eps < dA; ++eps)
        out.matrix += rho.matrix.block(eps * dD, eps * dD, dD, dD);
    return out;
}

DensityOperator reduced_density(const EncodedState& st) {
    check_registers(st, "reduced_density");
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    DensityOperator out;
    out.dim_ancilla = 1;
    out.dim_data = N;
    out.matrix = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index eps = 0; eps < sectors; ++eps) {
        const auto seg = st.amplitudes.segment(eps * N, N);
        out.matrix.noalias() += seg * seg.adjoint();
    }
    return out;
}

KrausChannel::KrausChannel(std::vector<Eigen::MatrixXcd> ops) : ops_(std::move(ops)) {
    if (ops_.empty())
        throw std::invalid_argument("KrausChannel: no operators");
    const Eigen::Index d = ops_.front().rows();
    for (const auto& op : ops_)
        if (op.rows() != d || op.cols() != d)
            throw std::invalid_argument("KrausChannel: operators must be square with equal dims");
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& op : ops_)
        sum.noalias() += op.adjoint() * op;
    const double err = (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > 1e-10)
        throw std::invalid_argument("KrausChannel: not trace preserving, completeness defect " +
                                    std::to_string(err));
}

DensityOperator apply_kraus(const DensityOperator& rho, const KrausChannel& ch) {
    if (ch.dim() != rho.dim())
        throw std::invalid_argument("apply_kraus: channel dim " + std::to_string(ch.dim()) +
                                    " vs state dim " + std::to_string(rho.dim()));
    DensityOperator out;
    out.dim_ancilla = rho.dim_ancilla;
    out.dim_data = rho.dim_data;
    out.matrix = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (const auto& op : ch.operators())
        out.matrix.noalias() += op * rho.matrix * op.adjoint();
    return out;
}

double expect_observable(const DensityOperator& rho, const Eigen::MatrixXcd& obs) {
    if (obs.rows() != rho.dim() || obs.cols() != rho.dim())
        throw std::invalid_argument("expect_observable: dimension mismatch");
    const double herm = (obs - obs.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10)
        throw std::invalid_argument("expect_observable: observable is not Hermitian (defect " +
                                    std::to_string(herm) + ")");
    return (obs * rho.matrix).trace().real();
}

}  // namespace qndwt
