#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qndwt/qsim_core.hpp"
#include "qndwt/wavelet_core.hpp"

namespace qndwt {

enum class ShrinkMode { dephase, damp_to_sink, dilation_postselect };

std::string to_string(ShrinkMode mode);

/// Wavelet-domain attenuation schedule.  level_gains[j-1] scales detail
/// level j (1 = finest); the scaling block always keeps gain 1.  An
/// explicit per-index schedule (e.g. a classical soft-threshold profile)
/// overrides the level map when present.
struct AttenuationSpec {
    std::vector<double> level_gains;
    std::optional<Eigen::VectorXd> index_gains;
    ShrinkMode mode = ShrinkMode::dilation_postselect;

    double gain_for_level(int j) const;
    /// Per-coefficient gains in the [s_L | w_L | ... | w_1] layout.
    Eigen::VectorXd gains_by_index(const CoeffLayout& layout) const;
};

/// Kraus set {sqrt(1-lambda) I} ∪ {sqrt(lambda) |k⟩⟨k|}: diagonals kept,
/// off-diagonals scaled by 1-lambda.
KrausChannel phase_damping_channel(double lambda, Eigen::Index dim);

/// Tensors every operator with the identity on a data register of the
/// given dimension (channel acting on the ancilla of a joint state).
KrausChannel lift_to_ancilla(const KrausChannel& ch, Eigen::Index dim_data);

/// {A_0 = diag(g)} ∪ {sqrt(1-g_k²) |sink⟩⟨k|}: level-j diagonal mass is
/// scaled by g_j², the removed mass accumulates at the sink index.
KrausChannel amplitude_damping_to_sink(const AttenuationSpec& spec, const CoeffLayout& layout,
                                       int sink_index = 0);

struct ShrinkOutcome {
    EncodedState state;
    double postselect_prob = 1.0;
};

/// Stinespring dilation with one fresh ancilla qubit rotated by
/// arccos(g_k) conditioned on the data index, then projected onto the
/// keep branch and renormalized: amplitudes scale linearly by g_k.
/// Applied uniformly across all shift sectors of a joint state.
ShrinkOutcome dilation_shrink_postselect(const EncodedState& st, const AttenuationSpec& spec);

/// Same dilation without postselection: the shrink ancilla is traced
/// out, leaving the mixed state K0 rho K0† + K1 rho K1†.
DensityOperator dilation_shrink_traceout(const EncodedState& st, const AttenuationSpec& spec);

struct DenoiseReport {
    Eigen::VectorXd denoised;
    double postselect_prob = 1.0;
    std::vector<double> gains;
    std::string mode;
};

/// Forward pipeline, postselected dilation shrink, inverse pipeline,
/// uniform sector average, de-rescale to signal units.
DenoiseReport shrink_denoise(const Eigen::VectorXd& x, const WaveletFilter& f, int L,
                             const AttenuationSpec& spec);

/// JSON: { "gains", "mode", "postselect_prob", "mse_noisy",
/// "mse_denoised" } (MSE fields null without a clean reference).
nlohmann::json shrink_report_json(const DenoiseReport& r, std::optional<double> mse_noisy,
                                  std::optional<double> mse_denoised);

}  // namespace qndwt
