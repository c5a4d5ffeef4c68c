#include "qndwt/shrinkage_channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qndwt {

std::string to_string(ShrinkMode mode) {
    switch (mode) {
        case ShrinkMode::dephase: return "dephase";
        case ShrinkMode::damp_to_sink: return "damp-to-sink";
        case ShrinkMode::dilation_postselect: return "dilation-postselect";
    }
    return "?";
}

double AttenuationSpec::gain_for_level(int j) const {
    if (j < 1 || j > static_cast<int>(level_gains.size()))
        throw std::out_of_range("AttenuationSpec: level " + std::to_string(j) +
                                " has no gain entry");
    return level_gains[static_cast<std::size_t>(j - 1)];
}

Eigen::VectorXd AttenuationSpec::gains_by_index(const CoeffLayout& layout) const {
    if (index_gains) {
        if (index_gains->size() != layout.N)
            throw std::invalid_argument("AttenuationSpec: per-index gains have length " +
                                        std::to_string(index_gains->size()) + ", expected " +
                                        std::to_string(layout.N));
        for (Eigen::Index i = 0; i < index_gains->size(); ++i)
            if ((*index_gains)[i] < 0.0 || (*index_gains)[i] > 1.0)
                throw std::invalid_argument("AttenuationSpec: per-index gain out of [0,1]");
        return *index_gains;
    }
    if (static_cast<int>(level_gains.size()) != layout.L)
        throw std::invalid_argument("AttenuationSpec: " + std::to_string(level_gains.size()) +
                                    " level gains for depth " + std::to_string(layout.L));
    if ((layout.N >> layout.L) < 1)
        throw std::invalid_argument("AttenuationSpec: depth " + std::to_string(layout.L) +
                                    " too deep for N = " + std::to_string(layout.N));
    for (double g : level_gains)
        if (g < 0.0 || g > 1.0)
            throw std::invalid_argument("AttenuationSpec: level gain out of [0,1]");
    Eigen::VectorXd gains = Eigen::VectorXd::Ones(layout.N);
    for (int j = 1; j <= layout.L; ++j)
        gains.segment(layout.detail_offset(j), layout.detail_size(j))
            .setConstant(gain_for_level(j));
    return gains;
}

KrausChannel phase_damping_channel(double lambda, Eigen::Index dim) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("phase_damping_channel: lambda out of [0,1]");
    if (dim < 1)
        throw std::invalid_argument("phase_damping_channel: empty system");
    std::vector<Eigen::MatrixXcd> ops;
    if (lambda < 1.0)
        ops.push_back(std::sqrt(1.0 - lambda) * Eigen::MatrixXcd::Identity(dim, dim));
    if (lambda > 0.0) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            Eigen::MatrixXcd pk = Eigen::MatrixXcd::Zero(dim, dim);
            pk(k, k) = std::sqrt(lambda);
            ops.push_back(std::move(pk));
        }
    }
    return KrausChannel(std::move(ops));
}

KrausChannel lift_to_ancilla(const KrausChannel& ch, Eigen::Index dim_data) {
    if (dim_data < 1)
        throw std::invalid_argument("lift_to_ancilla: empty data register");
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& op : ch.operators()) {
        const Eigen::Index dA = op.rows();
        Eigen::MatrixXcd lifted = Eigen::MatrixXcd::Zero(dA * dim_data, dA * dim_data);
        for (Eigen::Index r = 0; r < dA; ++r)
            for (Eigen::Index c = 0; c < dA; ++c)
                if (op(r, c) != std::complex<double>(0.0, 0.0))
                    lifted.block(r * dim_data, c * dim_data, dim_data, dim_data) =
                        op(r, c) * Eigen::MatrixXcd::Identity(dim_data, dim_data);
        ops.push_back(std::move(lifted));
    }
    return KrausChannel(std::move(ops));
}

KrausChannel amplitude_damping_to_sink(const AttenuationSpec& spec, const CoeffLayout& layout,
                                       int sink_index) {
    const Eigen::VectorXd gains = spec.gains_by_index(layout);
    if (sink_index < 0 || sink_index >= layout.N)
        throw std::invalid_argument("amplitude_damping_to_sink: sink index out of range");
    if (gains[sink_index] < 1.0)
        throw std::invalid_argument("amplitude_damping_to_sink: sink lies inside an attenuated block");

    std::vector<Eigen::MatrixXcd> ops;
    ops.push_back(gains.cast<std::complex<double>>().asDiagonal());
    for (Eigen::Index k = 0; k < layout.N; ++k) {
        if (gains[k] >= 1.0) continue;
        Eigen::MatrixXcd jump = Eigen::MatrixXcd::Zero(layout.N, layout.N);
        jump(sink_index, k) = std::sqrt(1.0 - gains[k] * gains[k]);
        ops.push_back(std::move(jump));
    }
    return KrausChannel(std::move(ops));
}

namespace {

// Keep/damp branch vectors of the one-ancilla dilation: the fresh qubit
// is rotated by arccos(g_k) conditioned on the data index k, uniformly
// over shift sectors.
struct DilationBranches {
    Eigen::VectorXcd keep;
    Eigen::VectorXcd damp;
};

DilationBranches dilate(const EncodedState& st, const AttenuationSpec& spec) {
    const Eigen::Index N = st.data_dim();
    const CoeffLayout layout{static_cast<int>(N),
                             spec.index_gains ? 0 : static_cast<int>(spec.level_gains.size())};
    const Eigen::VectorXd gains = spec.gains_by_index(layout);

    DilationBranches b;
    b.keep.resize(st.amplitudes.size());
    b.damp.resize(st.amplitudes.size());
    for (Eigen::Index i = 0; i < st.amplitudes.size(); ++i) {
        const double g = gains[i % N];
        b.keep[i] = g * st.amplitudes[i];
        b.damp[i] = std::sqrt(std::max(0.0, 1.0 - g * g)) * st.amplitudes[i];
    }
    return b;
}

}  // namespace

ShrinkOutcome dilation_shrink_postselect(const EncodedState& st, const AttenuationSpec& spec) {
    const DilationBranches b = dilate(st, spec);
    const double prob = b.keep.squaredNorm();
    if (prob < 1e-12)
        throw std::runtime_error("dilation_shrink: postselection probability below 1e-12");
    ShrinkOutcome out;
    out.state = st;
    out.state.amplitudes = b.keep / std::sqrt(prob);
    out.postselect_prob = prob;
    return out;
}

DensityOperator dilation_shrink_traceout(const EncodedState& st, const AttenuationSpec& spec) {
    const DilationBranches b = dilate(st, spec);
    DensityOperator rho;
    rho.dim_ancilla = st.ancilla_dim();
    rho.dim_data = st.data_dim();
    rho.matrix = b.keep * b.keep.adjoint() + b.damp * b.damp.adjoint();
    return rho;
}

DenoiseReport shrink_denoise(const Eigen::VectorXd& x, const WaveletFilter& f, int L,
                             const AttenuationSpec& spec) {
    if (spec.mode != ShrinkMode::dilation_postselect)
        throw std::invalid_argument("shrink_denoise: signal reconstruction requires the "
                                    "dilation-postselect mode");
    EncodedState st = amplitude_encode(x);
    if (L < 1 || L > st.n_data)
        throw std::invalid_argument("shrink_denoise: depth " + std::to_string(L) +
                                    " out of range for log2 N = " + std::to_string(st.n_data));
    const WaveletMatrix Wm = build_W_matrix(static_cast<int>(st.data_dim()), f, L);

    st = with_ancilla(st, L);
    st = hadamard_layer(st);
    st = controlled_shift(st);
    st = wavelet_unitary(st, Wm);

    const ShrinkOutcome shrunk = dilation_shrink_postselect(st, spec);

    EncodedState back = wavelet_unitary_inverse(shrunk.state, Wm);
    back = controlled_shift_inverse(back);

    // Uniform sector average = cycle-spinning mean of the shifted
    // inverses; undo the postselection renormalization, then the affine
    // encode.
    const Eigen::VectorXcd avg = ancilla_uniform_average(back);
    const Eigen::VectorXd v =
        avg.real() * (back.norm * std::sqrt(shrunk.postselect_prob));

    DenoiseReport report;
    report.denoised = (v.array() - back.offset) / back.scale;
    report.postselect_prob = shrunk.postselect_prob;
    report.gains = spec.level_gains;
    report.mode = to_string(spec.mode);
    return report;
}

nlohmann::json shrink_report_json(const DenoiseReport& r, std::optional<double> mse_noisy,
                                  std::optional<double> mse_denoised) {
    nlohmann::json out;
    out["gains"] = r.gains;
    out["mode"] = r.mode;
    out["postselect_prob"] = r.postselect_prob;
    out["mse_noisy"] = mse_noisy ? nlohmann::json(*mse_noisy) : nlohmann::json(nullptr);
    out["mse_denoised"] = mse_denoised ? nlohmann::json(*mse_denoised) : nlohmann::json(nullptr);
    return out;
}

}  // namespace qndwt
