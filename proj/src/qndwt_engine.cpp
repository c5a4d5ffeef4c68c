#include "qndwt/qndwt_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qndwt/rng.hpp"

namespace qndwt {

EncodedState prepare_qndwt(const Eigen::VectorXd& x, const WaveletFilter& f, int L) {
    EncodedState st = amplitude_encode(x);
    if (L < 0 || L > st.n_data)
        throw std::invalid_argument("prepare_qndwt: depth " + std::to_string(L) +
                                    " out of range for log2 N = " + std::to_string(st.n_data));
    st = with_ancilla(st, L);
    st = hadamard_layer(st);
    st = controlled_shift(st);
    if (L > 0) {
        const WaveletMatrix Wm = build_W_matrix(static_cast<int>(st.data_dim()), f, L);
        st = wavelet_unitary(st, Wm);
    } else {
        // Depth 0: the analysis block is the identity, the state is the
        // plain decimated transform of depth 0.
        st.wavelet_applications += 1;
    }
    return st;
}

Eigen::VectorXd extract_branch(const EncodedState& st, int eps, double norm) {
    if (eps < 0 || eps >= st.ancilla_dim())
        throw std::out_of_range("extract_branch: shift " + std::to_string(eps) +
                                " out of range 0.." + std::to_string(st.ancilla_dim() - 1));
    const Eigen::Index N = st.data_dim();
    const double gain = std::sqrt(static_cast<double>(st.ancilla_dim())) * norm;
    return st.amplitudes.segment(static_cast<Eigen::Index>(eps) * N, N).real() * gain;
}

std::pair<int, Eigen::VectorXd> sample_branch(const EncodedState& st, std::uint64_t seed) {
    const Eigen::Index sectors = st.ancilla_dim();
    const Eigen::Index N = st.data_dim();
    Rng rng(derive_seed(seed));
    const double u = rng.uniform();
    double cum = 0.0;
    int eps = static_cast<int>(sectors) - 1;
    for (Eigen::Index s = 0; s < sectors; ++s) {
        cum += st.amplitudes.segment(s * N, N).squaredNorm();
        if (u < cum) {
            eps = static_cast<int>(s);
            break;
        }
    }
    return {eps, extract_branch(st, eps, st.norm)};
}

NdwtTable assemble_table(const EncodedState& st, double norm, const WaveletFilter& f, int L) {
    (void)f;   // the table depends on the prepared state only
    if (L != st.n_ancilla)
        throw std::invalid_argument("assemble_table: depth " + std::to_string(L) +
                                    " does not match the ancilla register of " +
                                    std::to_string(st.n_ancilla) + " qubits");
    EpsilonLibrary lib;
    lib.N = static_cast<int>(st.data_dim());
    lib.L = L;
    lib.rows.resize(Eigen::Index{1} << L, lib.N);
    for (int eps = 0; eps < (1 << L); ++eps)
        lib.rows.row(eps) = extract_branch(st, eps, norm);
    return align_epsilon_to_ndwt(lib);
}

namespace {

void check_level(const CoeffLayout& layout, int j) {
    if (j < 1 || j > layout.L + 1)
        throw std::out_of_range("level_energy: level " + std::to_string(j) +
                                " out of range 1.." + std::to_string(layout.L + 1));
}

}  // namespace

double level_energy(const DensityOperator& rho_data, const CoeffLayout& layout, int j) {
    check_level(layout, j);
    if (rho_data.dim() != layout.N)
        throw std::invalid_argument("level_energy: state dim " + std::to_string(rho_data.dim()) +
                                    " vs layout N = " + std::to_string(layout.N));
    const int offset = (j == layout.L + 1) ? layout.scaling_offset() : layout.detail_offset(j);
    const int size = (j == layout.L + 1) ? layout.scaling_size() : layout.detail_size(j);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(layout.N, layout.N);
    for (int k = offset; k < offset + size; ++k)
        proj(k, k) = 1.0;
    return expect_observable(rho_data, proj);
}

double level_energy(const EncodedState& st, int j) {
    const CoeffLayout layout{static_cast<int>(st.data_dim()), st.n_ancilla};
    return level_energy(reduced_density(st), layout, j);
}

namespace {

const Eigen::VectorXd& table_level(const NdwtTable& t, int j) {
    if (j < 1 || j > t.L)
        throw std::out_of_range("cross_scale_correlation: level " + std::to_string(j) +
                                " out of range 1.." + std::to_string(t.L));
    return t.d[static_cast<std::size_t>(j - 1)];
}

void check_pos(const NdwtTable& t, int k) {
    if (k < 0 || k >= t.N)
        throw std::out_of_range("cross_scale_correlation: position " + std::to_string(k) +
                                " out of range 0.." + std::to_string(t.N - 1));
}

}  // namespace

double cross_scale_correlation(const NdwtTable& t, int j, int k, int j2, int k2) {
    const Eigen::VectorXd& a = table_level(t, j);
    const Eigen::VectorXd& b = table_level(t, j2);
    check_pos(t, k);
    check_pos(t, k2);
    return a[k] * b[k2];
}

double cross_scale_correlation_aggregate(const NdwtTable& t, int j, int k, int j2, int k2) {
    const Eigen::VectorXd& a = table_level(t, j);
    const Eigen::VectorXd& b = table_level(t, j2);
    check_pos(t, k);
    check_pos(t, k2);
    double acc = 0.0;
    for (int s = 0; s < t.N; ++s)
        acc += a[(k + s) % t.N] * b[(k2 + s) % t.N];
    return acc / t.N;
}

QndwtResult run_qndwt(const Eigen::VectorXd& x, const WaveletFilter& f, int L) {
    QndwtResult r;
    r.state = prepare_qndwt(x, f, L);
    r.norm = r.state.norm;
    r.wavelet = f.name;

    r.per_shift.N = static_cast<int>(r.state.data_dim());
    r.per_shift.L = L;
    r.per_shift.rows.resize(Eigen::Index{1} << L, r.per_shift.N);
    for (int eps = 0; eps < (1 << L); ++eps)
        r.per_shift.rows.row(eps) = extract_branch(r.state, eps, r.norm);

    r.table = assemble_table(r.state, r.norm, f, L);
    for (int j = 1; j <= L + 1; ++j)
        r.level_energies.push_back(level_energy(r.state, j));
    return r;
}

nlohmann::json qndwt_result_json(const QndwtResult& r) {
    nlohmann::json out;
    out["N"] = r.per_shift.N;
    out["L"] = r.per_shift.L;
    out["wavelet"] = r.wavelet;

    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index e = 0; e < r.per_shift.rows.rows(); ++e) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < r.per_shift.rows.cols(); ++c)
            row.push_back(r.per_shift.rows(e, c));
        rows.push_back(std::move(row));
    }
    out["per_shift"] = std::move(rows);

    nlohmann::json ds = nlohmann::json::array();
    for (const auto& d : r.table.d)
        ds.push_back(std::vector<double>(d.begin(), d.end()));
    out["d"] = std::move(ds);
    out["a"] = std::vector<double>(r.table.a.begin(), r.table.a.end());
    out["level_energies"] = r.level_energies;
    return out;
}

}  // namespace qndwt
