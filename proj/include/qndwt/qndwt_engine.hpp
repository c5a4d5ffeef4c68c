#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qndwt/qsim_core.hpp"
#include "qndwt/wavelet_core.hpp"

namespace qndwt {

/// Everything the epsilon-decimated pipeline produces for one input:
/// the joint state, the per-shift coefficient table recovered from it
/// (in rescaled signal units), the aligned stationary table, and the
/// levelwise energies of the reduced data state.
struct QndwtResult {
    EncodedState state;
    EpsilonLibrary per_shift;
    NdwtTable table;
    double norm = 1.0;
    std::vector<double> level_energies;   // levels 1..L, then the scaling block
    std::string wavelet;
};

/// Prepares 2^{-L/2} Σ_eps |eps⟩ ⊗ W S^eps |y⟩ from the raw signal:
/// encode, attach L ancilla qubits, Hadamard layer, controlled shift,
/// one wavelet unitary.
EncodedState prepare_qndwt(const Eigen::VectorXd& x, const WaveletFilter& f, int L);

/// Sector eps of the state, scaled back to rescaled-signal units
/// (amplitudes × 2^{L/2} × norm); equals W S^eps v classically.
Eigen::VectorXd extract_branch(const EncodedState& st, int eps, double norm);

/// Projectively measures the ancilla: eps is drawn from the ancilla
/// marginal, the returned branch from extract_branch.
std::pair<int, Eigen::VectorXd> sample_branch(const EncodedState& st, std::uint64_t seed);

/// Recovers the stationary table from the full statevector (simulator
/// privilege): every branch is read out, aligned, and interleaved.
NdwtTable assemble_table(const EncodedState& st, double norm, const WaveletFilter& f, int L);

/// Tr(P_j rho) for the level-j block projector; j = 1..L are the detail
/// levels, j = L+1 the scaling block.
double level_energy(const DensityOperator& rho_data, const CoeffLayout& layout, int j);

/// Same, computed from the reduced data state of a QNDWT joint state.
double level_energy(const EncodedState& st, int j);

/// Product statistic d_j[k] * d_j'[k'] of a stationary table.
double cross_scale_correlation(const NdwtTable& t, int j, int k, int j2, int k2);

/// Aggregate mode: the average of the product over all N circularly
/// aligned positions.
double cross_scale_correlation_aggregate(const NdwtTable& t, int j, int k, int j2, int k2);

/// Runs the full pipeline and packages all outputs.
QndwtResult run_qndwt(const Eigen::VectorXd& x, const WaveletFilter& f, int L);

/// JSON record: { "N", "L", "wavelet", "per_shift", "d", "a",
/// "level_energies" }.
nlohmann::json qndwt_result_json(const QndwtResult& r);

}  // namespace qndwt
