// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails.  Tolerances are pinned in the checks themselves.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qndwt/hadamard_probe.hpp"
#include "qndwt/qndwt_engine.hpp"
#include "qndwt/shrinkage_channels.hpp"
#include "qndwt/signal_lab.hpp"
#include "support.hpp"

using namespace qndwt;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

char detail_buf[256];

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    std::snprintf(detail_buf, sizeof(detail_buf), pattern, a, b, c);
    return detail_buf;
}

// --- 1: per-shift table reproduction ---------------------------------------
bool crit_table1(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const EncodedState st = prepare_qndwt(testsupport::example1_x(), make_filter("haar"), 2);
    const Eigen::MatrixXd expected = testsupport::example1_per_shift();
    double worst = 0.0;
    for (int eps = 0; eps < 4; ++eps) {
        const Eigen::VectorXd branch = extract_branch(st, eps, st.norm);
        worst = std::max(worst, (branch.transpose() - expected.row(eps)).cwiseAbs().maxCoeff());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = fmt("max|delta| = %.2e (tol 1e-5), %.3fs (limit 1s)", worst, secs);
    return worst < 1e-5 && secs < 1.0;
}

// --- 2: stationary table reproduction ---------------------------------------
bool crit_table2(std::string& detail) {
    const EncodedState st = prepare_qndwt(testsupport::example1_x(), make_filter("haar"), 2);
    const NdwtTable t = assemble_table(st, st.norm, make_filter("haar"), 2);
    const Eigen::MatrixXd expected = testsupport::example1_stationary();
    double worst = (t.d[0].transpose() - expected.row(0)).cwiseAbs().maxCoeff();
    worst = std::max(worst, (t.d[1].transpose() - expected.row(1)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (t.a.transpose() - expected.row(2)).cwiseAbs().maxCoeff());
    detail = fmt("max|delta| = %.2e over 24 values (tol 1e-5)", worst);
    return worst < 1e-5;
}

// --- 3: encoding golden ------------------------------------------------------
bool crit_encoding(std::string& detail) {
    const EncodedState st = amplitude_encode(testsupport::example1_x());
    const double worst =
        (st.amplitudes.real() - testsupport::example1_y()).cwiseAbs().maxCoeff();
    detail = fmt("max|delta| = %.2e per entry (tol 1e-6)", worst);
    return worst < 1e-6;
}

// --- 4: quantum/classical oracle equivalence --------------------------------
bool crit_oracle_equivalence(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(derive_seed(20260810));
    double worst_branch = 0.0, worst_table = 0.0;
    const int sizes[] = {8, 16, 32, 64};
    const char* wavelets[] = {"haar", "db2"};
    for (int trial = 0; trial < 200; ++trial) {
        const int N = sizes[trial % 4];
        const int n = static_cast<int>(std::lround(std::log2(N)));
        const int L = 1 + static_cast<int>(rng.uniform() * n) % n;
        const WaveletFilter f = make_filter(wavelets[trial % 2]);
        const Eigen::VectorXd x = testsupport::random_signal(N, 10000 + trial);

        const EncodedState st = prepare_qndwt(x, f, L);
        const Eigen::VectorXd v = st.scale * x.array() + st.offset;
        for (int eps = 0; eps < (1 << L); ++eps) {
            const Eigen::VectorXd classical =
                dwt_forward(circular_shift(v, eps), f, L).flatten();
            worst_branch = std::max(
                worst_branch,
                (extract_branch(st, eps, st.norm) - classical).cwiseAbs().maxCoeff());
        }
        const NdwtTable qt = assemble_table(st, st.norm, f, L);
        const NdwtTable ct = ndwt_atrous(v, f, L);
        for (int j = 1; j <= L; ++j)
            worst_table = std::max(worst_table,
                                   (qt.d[j - 1] - ct.d[j - 1]).cwiseAbs().maxCoeff());
        worst_table = std::max(worst_table, (qt.a - ct.a).cwiseAbs().maxCoeff());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = fmt("branches %.2e, tables %.2e (tol 1e-10), %.1fs (limit 60s)", worst_branch,
                 worst_table, secs);
    return worst_branch < 1e-10 && worst_table < 1e-10 && secs < 60.0;
}

// --- 5: unitarity and CPTP ---------------------------------------------------
bool crit_unitarity_cptp(std::string& detail) {
    double worst_norm = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        EncodedState st;
        st.n_ancilla = 1 + trial % 3;
        st.n_data = 3 + trial % 2;
        st.amplitudes = testsupport::random_unit_state(
            Eigen::Index{1} << (st.n_ancilla + st.n_data), 20000 + trial);
        const WaveletMatrix Wm = build_W_matrix(static_cast<int>(st.data_dim()),
                                                make_filter(trial % 2 ? "db2" : "haar"),
                                                std::min(st.n_ancilla, st.n_data));
        const EncodedState out = wavelet_unitary(controlled_shift(st), Wm);
        worst_norm = std::max(worst_norm, std::abs(out.amplitudes.norm() - 1.0));
    }

    Rng rng(derive_seed(31));
    const CoeffLayout layout{8, 2};
    double worst_complete = 0.0, worst_trace = 0.0, worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        KrausChannel ch = [&]() -> KrausChannel {
            switch (trial % 4) {
                case 0: return phase_damping_channel(rng.uniform(), 8);
                case 1: {
                    AttenuationSpec spec;
                    spec.level_gains = {rng.uniform(), rng.uniform()};
                    return amplitude_damping_to_sink(spec, layout);
                }
                case 2: return KrausChannel(testsupport::random_kraus_ops(8, 3, 40000 + trial));
                default: return lift_to_ancilla(phase_damping_channel(rng.uniform(), 2), 4);
            }
        }();
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(ch.dim(), ch.dim());
        for (const auto& op : ch.operators()) sum += op.adjoint() * op;
        worst_complete = std::max(worst_complete,
                                  (sum - Eigen::MatrixXcd::Identity(ch.dim(), ch.dim()))
                                      .cwiseAbs()
                                      .maxCoeff());

        const DensityOperator rho = testsupport::random_density(ch.dim(), 50000 + trial);
        const DensityOperator out = apply_kraus(rho, ch);
        worst_trace = std::max(worst_trace, std::abs(out.matrix.trace().real() - 1.0));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.matrix);
        worst_eig = std::min(worst_eig, es.eigenvalues().minCoeff());
    }
    detail = fmt("norms %.2e (1e-12), trace %.2e (1e-12), min eig %.1e (-1e-10)", worst_norm,
                 std::max(worst_trace, worst_complete), worst_eig);
    return worst_norm < 1e-12 && worst_complete < 1e-12 && worst_trace < 1e-12 &&
           worst_eig > -1e-10;
}

// --- 6: Hadamard exactness and the reflection identity -----------------------
bool crit_hadamard_exact(std::string& detail) {
    Rng rng(derive_seed(606));
    const EncodedState y64 = amplitude_encode_direct(doppler(64).samples);
    double worst_phase = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int j = 1 + static_cast<int>(rng.uniform() * 6) % 6;
        const int k = static_cast<int>(rng.uniform() * 64) % 64;
        const double theta = rng.uniform() * M_PI;
        const WaveletAtom atom =
            make_atom(make_filter(filter_names()[trial % 4]), 64, j, k);
        double direct = 0.0;
        for (int n = 0; n < 64; ++n)
            direct += std::norm(y64.amplitudes[n]) * std::cos(theta * atom.values[n]);
        const double got = hadamard_exact(y64, make_phase_unitary(atom, theta));
        worst_phase = std::max(worst_phase, std::abs(got - direct));
    }

    const EncodedState y128 = amplitude_encode_direct(doppler(128).samples);
    const WaveletMatrix Wm = build_W_matrix(128, make_filter("haar"), 3);
    const Eigen::VectorXd w = Wm.entries * y128.amplitudes.real();
    double worst_reflect = 0.0;
    for (int k = 0; k < 128; ++k)
        worst_reflect = std::max(
            worst_reflect, std::abs(coefficient_energy(y128, Wm, k) - w[k] * w[k]));
    detail = fmt("phase %.2e, reflection %.2e (tol 1e-12)", worst_phase, worst_reflect);
    return worst_phase < 1e-12 && worst_reflect < 1e-12;
}

// --- 7: small-angle residual scales as theta^4 -------------------------------
bool crit_small_angle(std::string& detail) {
    const EncodedState y = amplitude_encode_direct(doppler(64).samples);
    struct Case {
        const char* wavelet;
        int j, k;
    };
    const Case cases[] = {{"haar", 1, 3}, {"haar", 2, 5}, {"db2", 1, 10}};
    double worst_gap = 0.0;
    for (const Case& c : cases) {
        const WaveletAtom atom = make_atom(make_filter(c.wavelet), 64, c.j, c.k);
        double e2 = 0.0;
        for (int n = 0; n < 64; ++n)
            e2 += std::norm(y.amplitudes[n]) * atom.values[n] * atom.values[n];
        const double thetas[] = {0.02, 0.05, 0.1, 0.2};
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (double theta : thetas) {
            const double mean_z = hadamard_exact(y, make_phase_unitary(atom, theta));
            const double residual = std::abs(1.0 - mean_z - 0.5 * theta * theta * e2);
            const double lx = std::log(theta), ly = std::log(residual);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
        worst_gap = std::max(worst_gap, std::abs(slope - 4.0));
    }
    detail = fmt("max |exponent - 4| = %.3f (tol 0.3)", worst_gap);
    return worst_gap < 0.3;
}

// --- 8: shot scaling ----------------------------------------------------------
bool crit_shot_scaling(std::string& detail) {
    const EncodedState y = amplitude_encode_direct(Eigen::VectorXd::Ones(4));
    const PhaseUnitary u = make_phase_unitary(make_atom(make_filter("haar"), 4, 1, 0), 1.2);
    double lo = 0.0, hi = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        lo += hadamard_shots(y, u, 2000, 700 + seed).stderr_est;
        hi += hadamard_shots(y, u, 8000, 900 + seed).stderr_est;
    }
    const double ratio = lo / hi;
    detail = fmt("stderr ratio at 4x shots = %.3f (want 2 within 10%%)", ratio);
    return std::abs(ratio - 2.0) < 0.2;
}

// --- 9: spectrum scaling -------------------------------------------------------
bool crit_spectrum(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const WaveletFilter db2 = make_filter("db2");
    double mean = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
        const Signal b = fbm(512, 1.0 / 3.0, 20260800 + seed);
        mean += energy_spectrum(ndwt_atrous(b.samples, db2, 7)).slope;
    }
    mean /= 20.0;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail = fmt("mean slope = %.3f (want 5/3 +- 0.4, positive), %.1fs (limit 30s)", mean, secs);
    return mean > 5.0 / 3.0 - 0.4 && mean < 5.0 / 3.0 + 0.4 && mean > 0.0 && secs < 30.0;
}

// --- 10: dephasing invariance ---------------------------------------------------
bool crit_dephasing(std::string& detail) {
    Rng rng(derive_seed(1010));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int N = 8 << (trial % 2);
        const int L = 1 + trial % 3;
        const Eigen::VectorXd x = testsupport::random_signal(N, 60000 + trial);
        const EncodedState st =
            prepare_qndwt(x, make_filter(filter_names()[trial % 4]), L);

        const DensityOperator joint = to_density(st);
        const KrausChannel lifted = lift_to_ancilla(phase_damping_channel(1.0, 1 << L), N);
        const DensityOperator damped = apply_kraus(joint, lifted);
        const CoeffLayout layout{N, L};
        for (int j = 1; j <= L + 1; ++j) {
            const double before = level_energy(partial_trace_ancilla(joint), layout, j);
            const double after = level_energy(partial_trace_ancilla(damped), layout, j);
            worst = std::max(worst, std::abs(before - after));
        }
    }
    detail = fmt("max level-energy change = %.2e (tol 1e-12)", worst);
    return worst < 1e-12;
}

// --- 11: denoising -----------------------------------------------------------
bool crit_denoising(std::string& detail) {
    const Eigen::VectorXd clean = doppler(256).samples;
    const std::vector<double> gains = {0.1, 0.3, 1, 1, 1, 1, 1, 1};
    const double sigma = clean.norm() / std::sqrt(7.0 * 256);
    const WaveletFilter haar = make_filter("haar");

    int improved = 0;
    double worst_gap = 0.0;
    for (int seed = 0; seed < 100; ++seed) {
        Signal noisy;
        noisy.samples = clean;
        noisy = add_noise(noisy, sigma, 80000 + seed);

        AttenuationSpec spec;
        spec.level_gains = gains;
        const DenoiseReport r = shrink_denoise(noisy.samples, haar, 8, spec);

        const EncodedState enc = amplitude_encode(noisy.samples);
        const Eigen::VectorXd v = enc.scale * noisy.samples.array() + enc.offset;
        const Eigen::VectorXd deno_v = testsupport::cycle_spin_shrink(v, haar, 8, gains);
        const Eigen::VectorXd oracle = (deno_v.array() - enc.offset) / enc.scale;
        worst_gap = std::max(worst_gap, (r.denoised - oracle).cwiseAbs().maxCoeff());

        const double mse_noisy = (noisy.samples - clean).squaredNorm() / 256;
        const double mse_denoised = (r.denoised - clean).squaredNorm() / 256;
        if (mse_denoised < mse_noisy) ++improved;
    }
    detail = fmt("oracle gap %.2e (tol 1e-8), improved %g/100 (need 90)", worst_gap,
                 static_cast<double>(improved));
    return worst_gap < 1e-8 && improved >= 90;
}

// --- 12: CLI determinism --------------------------------------------------------
bool crit_cli_determinism(std::string& detail) {
#ifndef QNDWT_CLI_BIN
    detail = "CLI binary path not configured";
    return false;
#else
    const fs::path dir =
        fs::temp_directory_path() / ("qndwt_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string runs[] = {
        "transform --gen doppler --n 64 --wavelet haar --levels 3 --mode qndwt --format json "
        "--seed 7",
        "hadamard --gen doppler --n 32 --levels 2 --shots 300 --seed 9",
        "spectrum --gen fbm --hurst 0.3333 --n 256 --wavelet db2 --levels 6 --seeds 4 --seed 3 "
        "--format json",
    };
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
        const fs::path a = dir / ("a" + std::to_string(i));
        const fs::path b = dir / ("b" + std::to_string(i));
        const std::string base = std::string(QNDWT_CLI_BIN) + " " + runs[i] + " --out ";
        if (std::system((base + a.string() + " 2>/dev/null").c_str()) != 0) ok = false;
        if (std::system((base + b.string() + " 2>/dev/null").c_str()) != 0) ok = false;
        const std::string ta = slurp(a);
        if (ta.empty() || ta != slurp(b)) ok = false;
    }
    fs::remove_all(dir);
    detail = ok ? "3 invocation pairs byte-identical" : "outputs differ or a run failed";
    return ok;
#endif
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"table1-reproduction", crit_table1},
        {"table2-reproduction", crit_table2},
        {"encoding-golden", crit_encoding},
        {"oracle-equivalence", crit_oracle_equivalence},
        {"unitarity-cptp", crit_unitarity_cptp},
        {"hadamard-exactness", crit_hadamard_exact},
        {"small-angle-law", crit_small_angle},
        {"shot-scaling", crit_shot_scaling},
        {"spectrum-scaling", crit_spectrum},
        {"dephasing-invariance", crit_dephasing},
        {"denoising", crit_denoising},
        {"cli-determinism", crit_cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %02zu %-22s %s [%.2fs]\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str(), secs);
        if (!ok) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
