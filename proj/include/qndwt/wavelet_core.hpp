#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qndwt {

/// Orthonormal two-channel filter pair. `h` holds the low-pass analysis
/// taps, `g` the quadrature-mirror high-pass taps g[i] = (-1)^i h[m-1-i].
struct WaveletFilter {
    std::string name;
    std::vector<double> h;
    std::vector<double> g;

    int support() const { return static_cast<int>(h.size()); }
};

/// Builds one of the supported filters: haar, db2, db3, db4.
/// Throws std::invalid_argument for names outside the catalog.
WaveletFilter make_filter(const std::string& name);

/// Names accepted by make_filter.
const std::vector<std::string>& filter_names();

/// Block structure of a depth-L coefficient vector laid out as
/// [s_L | w_L | ... | w_1].  Level 1 is the finest detail level.
struct CoeffLayout {
    int N = 0;
    int L = 0;

    int scaling_offset() const { return 0; }
    int scaling_size() const { return N >> L; }
    int detail_offset(int j) const { return N >> j; }
    int detail_size(int j) const { return N >> j; }
};

/// Decimated transform output: scaling block plus detail blocks,
/// total length N.
struct DwtCoeffs {
    Eigen::VectorXd s;                    // s_L, length N/2^L
    std::vector<Eigen::VectorXd> w;       // [w_L, ..., w_1]
    int N = 0;
    int L = 0;

    const Eigen::VectorXd& detail(int j) const;   // j = 1 (finest) .. L
    Eigen::VectorXd flatten() const;              // [s_L | w_L | ... | w_1]
};

/// Splits a flat [s_L | w_L | ... | w_1] vector back into blocks.
DwtCoeffs unflatten(const Eigen::VectorXd& coeffs, int L);

/// Dense N x N orthogonal analysis matrix of depth L.
struct WaveletMatrix {
    Eigen::MatrixXd entries;
    int N = 0;
    int L = 0;
};

/// Circular shift: out[k] = y[(k - eps) mod N].  eps may be any integer.
Eigen::VectorXd circular_shift(const Eigen::VectorXd& y, long eps);

/// Periodic orthogonal DWT of depth L.  Requires dyadic length and
/// L <= log2 N.  Haar convention: s1[k] = (y[2k]+y[2k+1])/sqrt(2),
/// w1[k] = (y[2k]-y[2k+1])/sqrt(2).
DwtCoeffs dwt_forward(const Eigen::VectorXd& y, const WaveletFilter& f, int L);

/// Exact inverse of dwt_forward.
Eigen::VectorXd dwt_inverse(const DwtCoeffs& c, const WaveletFilter& f);

/// Assembles the dense transform matrix; column i is the transform of the
/// i-th basis vector, so entries * y == dwt_forward(y).flatten().
WaveletMatrix build_W_matrix(int N, const WaveletFilter& f, int L);

/// All 2^L shifted decimated transforms, row eps = flatten(W S^eps y).
struct EpsilonLibrary {
    Eigen::MatrixXd rows;   // 2^L x N
    int N = 0;
    int L = 0;
};

EpsilonLibrary epsilon_library(const Eigen::VectorXd& y, const WaveletFilter& f, int L);

/// Stationary (nondecimated) coefficient table: L detail rows and one
/// scaling row, each of length N.
struct NdwtTable {
    std::vector<Eigen::VectorXd> d;   // d[0] = d_1 (finest) .. d[L-1] = d_L
    Eigen::VectorXd a;                // a_L
    int N = 0;
    int L = 0;
};

/// Nondecimated transform computed by the filter bank without
/// downsampling; the level-j filters are upsampled by 2^{j-1}.
NdwtTable ndwt_atrous(const Eigen::VectorXd& y, const WaveletFilter& f, int L);

/// Selects the (L+1)N stationary coefficients out of the epsilon library.
/// Position map: d_j[n] = w_j^{(eps)}[k] with eps = (-n) mod 2^j and
/// k = ((n+eps)/2^j) mod (N/2^j); same pattern for a_L.  The map follows
/// from w_j^{(eps)}[k] = d_j[(2^j k - eps) mod N] and is pinned against
/// the filter-bank transform by a golden test.
NdwtTable align_epsilon_to_ndwt(const EpsilonLibrary& lib);

/// Cycle-spinning inverse: the average of the 2^L shifted decimated
/// inverses.  Reconstructs y exactly for an unmodified table.
Eigen::VectorXd ndwt_inverse_average(const NdwtTable& t, const WaveletFilter& f);

/// CSV rendering with rows labeled d1..dL, aL.
std::string ndwt_table_csv(const NdwtTable& t);

}  // namespace qndwt
