#include "qndwt/hadamard_probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "qndwt/log.hpp"
#include "qndwt/rng.hpp"

namespace qndwt {

namespace {

int dyadic_log2(Eigen::Index n, const char* what) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument(std::string(what) +
                                    ": size must be a power of two, got " + std::to_string(n));
    int l = 0;
    while ((Eigen::Index{1} << l) < n) ++l;
    return l;
}

void check_probe_state(const EncodedState& y, Eigen::Index dim, const char* what) {
    if (y.n_ancilla != 0)
        throw std::invalid_argument(std::string(what) + ": expected a bare data register");
    if (y.amplitudes.size() != dim)
        throw std::invalid_argument(std::string(what) + ": state dim " +
                                    std::to_string(y.amplitudes.size()) + " vs operator dim " +
                                    std::to_string(dim));
}

}  // namespace

WaveletAtom make_atom(const WaveletFilter& f, int N, int j, int k) {
    const int n = dyadic_log2(N, "make_atom");
    if (j < 1 || j > n)
        throw std::invalid_argument("make_atom: scale " + std::to_string(j) +
                                    " out of range 1.." + std::to_string(n));
    if (k < 0 || k >= N)
        throw std::invalid_argument("make_atom: shift " + std::to_string(k) +
                                    " out of range 0.." + std::to_string(N - 1));
    // First detail row of the depth-j transform; its translates by 2^j are
    // the remaining rows, so a circular shift generates every position.
    const WaveletMatrix Wm = build_W_matrix(N, f, j);
    WaveletAtom atom;
    atom.j = j;
    atom.k = k;
    atom.values = circular_shift(Wm.entries.row(N >> j).transpose(), k);
    return atom;
}

PhaseUnitary make_phase_unitary(const WaveletAtom& atom, double theta) {
    PhaseUnitary u;
    u.theta = theta;
    u.phases = theta * atom.values;
    return u;
}

ReflectionUnitary reflection_unitary(const WaveletMatrix& Wm, int k) {
    if (k < 0 || k >= Wm.N)
        throw std::out_of_range("reflection_unitary: index " + std::to_string(k) +
                                " out of range 0.." + std::to_string(Wm.N - 1));
    return ReflectionUnitary{Wm.entries, k};
}

double hadamard_exact(const EncodedState& y, const PhaseUnitary& u, Part part) {
    check_probe_state(y, u.phases.size(), "hadamard_exact");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < u.phases.size(); ++i) {
        const double p = std::norm(y.amplitudes[i]);
        acc += p * (part == Part::real ? std::cos(u.phases[i]) : -std::sin(u.phases[i]));
    }
    return acc;
}

double hadamard_exact(const EncodedState& y, const ReflectionUnitary& u, Part part) {
    check_probe_state(y, u.basis.rows(), "hadamard_exact");
    if (part == Part::imaginary) return 0.0;   // the reflection is real symmetric
    const auto& a = y.amplitudes;
    const std::complex<double> wk =
        (u.basis.row(u.k) * a.real())(0) +
        std::complex<double>(0.0, 1.0) * (u.basis.row(u.k) * a.imag())(0);
    return 1.0 - 2.0 * std::norm(wk);
}

namespace {

HadamardEstimate shots_from_target(double target, long shots, std::uint64_t seed, Part part) {
    if (shots < 1)
        throw std::invalid_argument("hadamard_shots: need at least one shot");
    const double p = 0.5 * (1.0 + std::clamp(target, -1.0, 1.0));
    Rng rng(derive_seed(seed));
    long plus = 0;
    for (long s = 0; s < shots; ++s)
        if (rng.uniform() < p) ++plus;
    HadamardEstimate est;
    est.shots = shots;
    est.part = part;
    est.mean = static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
    est.stderr_est = std::sqrt(std::max(0.0, 1.0 - est.mean * est.mean) /
                               static_cast<double>(shots));
    return est;
}

}  // namespace

HadamardEstimate hadamard_shots(const EncodedState& y, const PhaseUnitary& u, long shots,
                                std::uint64_t seed, Part part) {
    return shots_from_target(hadamard_exact(y, u, part), shots, seed, part);
}

HadamardEstimate hadamard_shots(const EncodedState& y, const ReflectionUnitary& u, long shots,
                                std::uint64_t seed, Part part) {
    return shots_from_target(hadamard_exact(y, u, part), shots, seed, part);
}

double energy_from_expectation(double mean_z, double theta, const WaveletAtom& atom) {
    if (theta <= 0.0)
        throw std::invalid_argument("energy_from_expectation: theta must be positive");
    const double reach = theta * atom.values.cwiseAbs().maxCoeff();
    if (reach > 0.3) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "warning: theta*max|psi| = %.3f exceeds 0.3, small-angle estimate degrades",
                      reach);
        log_line(LogLevel::info, buf);
    }
    return 2.0 * (1.0 - mean_z) / (theta * theta);
}

double coefficient_energy(const EncodedState& y, const WaveletMatrix& Wm, int k) {
    return 0.5 * (1.0 - hadamard_exact(y, reflection_unitary(Wm, k)));
}

Eigen::MatrixXd scalogram(const EncodedState& y, const WaveletFilter& f,
                          const std::vector<int>& scales, const ScalogramOptions& opt) {
    const Eigen::Index N = y.amplitudes.size();
    check_probe_state(y, N, "scalogram");
    const int n = dyadic_log2(N, "scalogram");
    if (scales.empty())
        throw std::invalid_argument("scalogram: no scales requested");
    for (int j : scales)
        if (j < 1 || j > n)
            throw std::invalid_argument("scalogram: scale " + std::to_string(j) +
                                        " out of range 1.." + std::to_string(n));

    Eigen::MatrixXd out(static_cast<Eigen::Index>(scales.size()), N);
    auto run_rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const int j = scales[r];
            WaveletAtom mother = make_atom(f, static_cast<int>(N), j, 0);
            for (Eigen::Index k = 0; k < N; ++k) {
                WaveletAtom atom;
                atom.j = j;
                atom.k = static_cast<int>(k);
                atom.values = circular_shift(mother.values, k);
                const PhaseUnitary u = make_phase_unitary(atom, opt.theta);
                double mean_z;
                if (opt.shots > 0) {
                    const std::uint64_t cell_seed =
                        derive_seed(opt.seed, static_cast<std::uint64_t>(j),
                                    static_cast<std::uint64_t>(k));
                    mean_z = shots_from_target(hadamard_exact(y, u), opt.shots, cell_seed,
                                               Part::real).mean;
                } else {
                    mean_z = hadamard_exact(y, u);
                }
                out(static_cast<Eigen::Index>(r), k) =
                    energy_from_expectation(mean_z, opt.theta, atom);
            }
        }
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || scales.size() == 1) {
        run_rows(0, scales.size());
    } else {
        // Rows are independent and write disjoint slots, so the result is
        // identical for any schedule.
        std::vector<std::thread> pool;
        const std::size_t rows = scales.size();
        const std::size_t chunk = (rows + jobs - 1) / jobs;
        for (std::size_t begin = 0; begin < rows; begin += chunk)
            pool.emplace_back(run_rows, begin, std::min(begin + chunk, rows));
        for (auto& th : pool) th.join();
    }
    return out;
}

std::string scalogram_csv(const Eigen::MatrixXd& m, const std::vector<int>& scales) {
    if (m.rows() != static_cast<Eigen::Index>(scales.size()))
        throw std::invalid_argument("scalogram_csv: row count does not match scales");
    std::string out = "scale";
    char buf[32];
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        std::snprintf(buf, sizeof(buf), ",%lld", static_cast<long long>(k));
        out += buf;
    }
    out += '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += std::to_string(scales[static_cast<std::size_t>(r)]);
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            std::snprintf(buf, sizeof(buf), ",%.17g", m(r, k));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

SpectrumFit energy_spectrum(const NdwtTable& t) {
    if (t.L < 2)
        throw std::invalid_argument("energy_spectrum: need at least two detail levels");
    const int hi = std::max(2, t.L - 2);
    return energy_spectrum(t, 1, hi);
}

SpectrumFit energy_spectrum(const NdwtTable& t, int fit_lo, int fit_hi) {
    if (fit_lo < 1 || fit_hi > t.L || fit_hi <= fit_lo)
        throw std::invalid_argument("energy_spectrum: fit range " + std::to_string(fit_lo) +
                                    ".." + std::to_string(fit_hi) + " invalid for L = " +
                                    std::to_string(t.L));
    SpectrumFit fit;
    fit.fit_lo = fit_lo;
    fit.fit_hi = fit_hi;
    for (int j = 1; j <= t.L; ++j)
        fit.energies.push_back(t.d[j - 1].squaredNorm() / t.N);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = fit_hi - fit_lo + 1;
    for (int j = fit_lo; j <= fit_hi; ++j) {
        const double e = fit.energies[static_cast<std::size_t>(j - 1)];
        if (e <= 0.0)
            throw std::runtime_error("energy_spectrum: E_" + std::to_string(j) +
                                     " vanishes inside the fit range");
        const double ly = std::log2(e);
        sx += j;
        sy += ly;
        sxx += static_cast<double>(j) * j;
        sxy += j * ly;
    }
    const double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

nlohmann::json spectrum_json(const SpectrumFit& s) {
    nlohmann::json out;
    out["E"] = s.energies;
    out["slope"] = s.slope;
    out["intercept"] = s.intercept;
    out["fit_range"] = {s.fit_lo, s.fit_hi};
    return out;
}

}  // namespace qndwt
