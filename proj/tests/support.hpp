#pragma once

// Shared fixtures: the worked two-level Haar example (signal, per-shift
// coefficient table, stationary table) plus small oracle helpers used by
// several suites.

#include <vector>

#include <Eigen/Dense>

#include "qndwt/qsim_core.hpp"
#include "qndwt/rng.hpp"
#include "qndwt/wavelet_core.hpp"

namespace testsupport {

inline Eigen::VectorXd example1_x() {
    Eigen::VectorXd x(8);
    x << 2, 1, 9, 0, 3, -10, 2, 4;
    return x;
}

// Rescale of example1_x to [-1,1]; entries are (2x+1)/19 exactly.
inline Eigen::VectorXd example1_v() {
    Eigen::VectorXd v(8);
    v << 5.0 / 19, 3.0 / 19, 1.0, 1.0 / 19, 7.0 / 19, -1.0, 5.0 / 19, 9.0 / 19;
    return v;
}

inline double example1_norm() { return std::sqrt(912.0) / 19.0; }   // 1.589439...

inline Eigen::VectorXd example1_y() {
    Eigen::VectorXd y(8);
    y << 0.165567, 0.09934, 0.629153, 0.033113, 0.231793, -0.629153, 0.165567, 0.29802;
    return y;
}

// Two-level Haar coefficients of every shift, columns
// [s21 s22 w21 w22 w11 w12 w13 w14].
inline Eigen::MatrixXd example1_per_shift() {
    Eigen::MatrixXd t(4, 8);
    t << 0.736842, 0.052632, -0.315789, -0.684211, 0.074432, 0.669891, 0.967620, -0.148865,
        0.947368, -0.157895, -0.210526, 0.578947, 0.148865, -0.595458, -0.223297, -0.893188,
        0.578947, 0.210526, 0.157895, 0.842105, -0.148865, 0.074432, 0.669891, 0.967620,
        0.000000, 0.789474, -0.736842, 0.368421, -0.893188, 0.148865, -0.595458, -0.223297;
    return t;
}

// Stationary table rows d1, d2, a2.
inline Eigen::MatrixXd example1_stationary() {
    Eigen::MatrixXd t(3, 8);
    t << 0.074432, -0.595458, 0.669891, -0.223297, 0.967620, -0.893188, -0.148865, 0.148865,
        -0.315789, 0.368421, 0.842105, 0.578947, -0.684211, -0.736842, 0.157895, -0.210526,
        0.736842, 0.789474, 0.210526, -0.157895, 0.052632, 0.000000, 0.578947, 0.947368;
    return t;
}

inline Eigen::VectorXd random_signal(int N, std::uint64_t seed) {
    qndwt::Rng rng(qndwt::derive_seed(seed, 0x7365ULL));
    Eigen::VectorXd y(N);
    for (int i = 0; i < N; ++i) y[i] = rng.normal();
    return y;
}

inline Eigen::VectorXcd random_unit_state(Eigen::Index dim, std::uint64_t seed) {
    qndwt::Rng rng(qndwt::derive_seed(seed, 0x7374ULL));
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v[i] = std::complex<double>(rng.normal(), rng.normal());
    return v / v.norm();
}

// Ginibre-sampled density operator: G G† / tr.
inline qndwt::DensityOperator random_density(Eigen::Index dim, std::uint64_t seed) {
    qndwt::Rng rng(qndwt::derive_seed(seed, 0x726855ULL));
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    qndwt::DensityOperator rho;
    rho.dim_ancilla = 1;
    rho.dim_data = dim;
    rho.matrix = g * g.adjoint();
    rho.matrix /= rho.matrix.trace().real();
    return rho;
}

// Random Kraus set from a Haar-ish isometry: QR of a (dim*branches) x dim
// Ginibre block, sliced into branch operators.
inline std::vector<Eigen::MatrixXcd> random_kraus_ops(Eigen::Index dim, int branches,
                                                      std::uint64_t seed) {
    qndwt::Rng rng(qndwt::derive_seed(seed, 0x6b72ULL));
    Eigen::MatrixXcd g(dim * branches, dim);
    for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c)
            g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g)
                                   .householderQ() *
                               Eigen::MatrixXcd::Identity(dim * branches, dim);
    std::vector<Eigen::MatrixXcd> ops;
    for (int b = 0; b < branches; ++b)
        ops.push_back(q.block(b * dim, 0, dim, dim));
    return ops;
}

// Brute-force cycle-spinning linear shrinkage: per shift, transform,
// scale each detail level, invert, unshift, average.
inline Eigen::VectorXd cycle_spin_shrink(const Eigen::VectorXd& v, const qndwt::WaveletFilter& f,
                                         int L, const std::vector<double>& gains) {
    const int N = static_cast<int>(v.size());
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(N);
    for (long eps = 0; eps < (1L << L); ++eps) {
        qndwt::DwtCoeffs c = qndwt::dwt_forward(qndwt::circular_shift(v, eps), f, L);
        for (int j = 1; j <= L; ++j)
            c.w[static_cast<std::size_t>(L - j)] *= gains[static_cast<std::size_t>(j - 1)];
        acc += qndwt::circular_shift(qndwt::dwt_inverse(c, f), -eps);
    }
    return acc / static_cast<double>(1L << L);
}

}  // namespace testsupport
