#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qndwt/qsim_core.hpp"
#include "qndwt/wavelet_core.hpp"

namespace qndwt {

/// Unit-norm discrete nondecimated wavelet at scale j, circular shift k.
/// Atoms are the level-j analysis rows of Wᵀ: the mother atom is the
/// first detail row of the depth-j transform, shifted circularly by k.
struct WaveletAtom {
    int j = 0;
    int k = 0;
    Eigen::VectorXd values;
};

WaveletAtom make_atom(const WaveletFilter& f, int N, int j, int k);

/// diag(e^{i theta psi[n]}) stored by its phase vector.
struct PhaseUnitary {
    Eigen::VectorXd phases;   // theta * psi
    double theta = 0.0;
};

PhaseUnitary make_phase_unitary(const WaveletAtom& atom, double theta);

/// Wᵀ (I - 2|k⟩⟨k|) W; its expectation encodes the coefficient energy.
struct ReflectionUnitary {
    Eigen::MatrixXd basis;   // W entries
    int k = 0;
};

ReflectionUnitary reflection_unitary(const WaveletMatrix& Wm, int k);

/// Which Hadamard-test variant is measured.  `imaginary` is the S-gate
/// circuit, whose outcome is -Im⟨y|U|y⟩.
enum class Part { real, imaginary };

/// Exact expectation of the Hadamard-test outcome, from amplitudes.
double hadamard_exact(const EncodedState& y, const PhaseUnitary& u, Part part = Part::real);
double hadamard_exact(const EncodedState& y, const ReflectionUnitary& u, Part part = Part::real);

/// One shot-based Hadamard query: mean of `shots` ±1 outcomes with
/// P(+1) = (1+target)/2, plus the empirical standard error
/// sqrt((1-mean²)/shots).
struct HadamardEstimate {
    double mean = 0.0;
    long shots = 0;
    double stderr_est = 0.0;
    Part part = Part::real;
};

HadamardEstimate hadamard_shots(const EncodedState& y, const PhaseUnitary& u, long shots,
                                std::uint64_t seed, Part part = Part::real);
HadamardEstimate hadamard_shots(const EncodedState& y, const ReflectionUnitary& u, long shots,
                                std::uint64_t seed, Part part = Part::real);

/// Small-angle inversion of Eq-style readout: 2(1-meanZ)/theta², the
/// estimate of Σ |y_n|² psi[n]².  Warns when theta*max|psi| > 0.3.
double energy_from_expectation(double mean_z, double theta, const WaveletAtom& atom);

/// (1 - ⟨y|U_k|y⟩)/2 = |(W y)_k|².
double coefficient_energy(const EncodedState& y, const WaveletMatrix& Wm, int k);

struct ScalogramOptions {
    double theta = 0.05;
    long shots = 0;        // 0 = exact expectations
    std::uint64_t seed = 0;
    int jobs = 1;
};

/// scales.size() x N matrix of small-angle energy estimates.  Shot mode
/// derives one stream per (seed, j, k) cell, so results do not depend on
/// the evaluation schedule.
Eigen::MatrixXd scalogram(const EncodedState& y, const WaveletFilter& f,
                          const std::vector<int>& scales, const ScalogramOptions& opt);

/// CSV: header row of shift indices, then one row per scale.
std::string scalogram_csv(const Eigen::MatrixXd& m, const std::vector<int>& scales);

/// Least-squares fit of log2 E_j against j over [fit_lo, fit_hi].
struct SpectrumFit {
    std::vector<double> energies;   // E_1 .. E_L
    double slope = 0.0;
    double intercept = 0.0;
    int fit_lo = 1;
    int fit_hi = 1;
};

/// Default fit range: all detail levels except the two coarsest
/// (clamped so at least two levels remain).  Requires L >= 2.
SpectrumFit energy_spectrum(const NdwtTable& t);
SpectrumFit energy_spectrum(const NdwtTable& t, int fit_lo, int fit_hi);

/// JSON: { "E", "slope", "intercept", "fit_range" }.
nlohmann::json spectrum_json(const SpectrumFit& s);

}  // namespace qndwt
