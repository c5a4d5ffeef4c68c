#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qndwt/wavelet_core.hpp"

namespace qndwt {

/// Joint (ancilla ⊗ data) statevector.  The ancilla occupies the
/// high-order index bits: global index = eps * 2^n_data + k.  `norm`,
/// `scale` and `offset` remember the classical units of the encoded
/// signal (v = scale*x + offset, amplitudes = v/norm), so coefficients
/// can be reported in signal units after extraction.
struct EncodedState {
    Eigen::VectorXcd amplitudes;
    int n_ancilla = 0;
    int n_data = 0;
    double norm = 1.0;
    double scale = 1.0;
    double offset = 0.0;
    int wavelet_applications = 0;

    Eigen::Index ancilla_dim() const { return Eigen::Index{1} << n_ancilla; }
    Eigen::Index data_dim() const { return Eigen::Index{1} << n_data; }
};

/// Affine encoding: v = 2(x-min)/(max-min) - 1, amplitudes = v/‖v‖.
/// Throws on constant input (degenerate rescale).
EncodedState amplitude_encode(const Eigen::VectorXd& x);

/// Plain encoding y = x/‖x‖ with no affine rescale (the convention used
/// by the Hadamard-test probes).  Throws on zero input.
EncodedState amplitude_encode_direct(const Eigen::VectorXd& x);

/// Attaches L fresh ancilla qubits in |0...0⟩ above the data register.
EncodedState with_ancilla(const EncodedState& st, int L);

/// H^{⊗L} on the ancilla register.  Requires the ancilla in the ground
/// state; produces the uniform superposition over shift sectors.
EncodedState hadamard_layer(const EncodedState& st);

/// Controlled circular shift: within sector eps the data amplitudes are
/// permuted a[k] <- a[(k-eps) mod 2^n].
EncodedState controlled_shift(const EncodedState& st);
EncodedState controlled_shift_inverse(const EncodedState& st);

/// Applies W to the data block of every ancilla sector (I ⊗ W).  Counts
/// one application regardless of the number of sectors.
EncodedState wavelet_unitary(const EncodedState& st, const WaveletMatrix& Wm);

/// Applies Wᵀ (the inverse analysis block) to every sector.
EncodedState wavelet_unitary_inverse(const EncodedState& st, const WaveletMatrix& Wm);

/// Uniform sector average 2^{-L/2} Σ_eps a[eps,·]; this is the ancilla
/// |0...0⟩ component after a second Hadamard layer.
Eigen::VectorXcd ancilla_uniform_average(const EncodedState& st);

/// Dense density operator with a remembered (ancilla, data) split.
struct DensityOperator {
    Eigen::MatrixXcd matrix;
    Eigen::Index dim_ancilla = 1;
    Eigen::Index dim_data = 1;

    Eigen::Index dim() const { return matrix.rows(); }
};

DensityOperator to_density(const EncodedState& st);

/// Tr_A: sums the diagonal ancilla blocks, leaving a 2^n x 2^n operator.
DensityOperator partial_trace_ancilla(const DensityOperator& rho);

/// Convenience: Tr_A(|st⟩⟨st|) computed directly from the sectors.
DensityOperator reduced_density(const EncodedState& st);

/// Completeness-checked set of Kraus operators (Σ E†E = I within 1e-10).
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<Eigen::MatrixXcd> ops);

    const std::vector<Eigen::MatrixXcd>& operators() const { return ops_; }
    Eigen::Index dim() const { return ops_.empty() ? 0 : ops_.front().rows(); }

  private:
    std::vector<Eigen::MatrixXcd> ops_;
};

/// rho ↦ Σ E rho E†.
DensityOperator apply_kraus(const DensityOperator& rho, const KrausChannel& ch);

/// Tr(O rho) for Hermitian O (checked within 1e-10).
double expect_observable(const DensityOperator& rho, const Eigen::MatrixXcd& obs);

}  // namespace qndwt
