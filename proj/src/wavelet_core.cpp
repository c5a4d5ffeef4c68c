#include "qndwt/wavelet_core.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace qndwt {

namespace {

// Scaling taps.  The db taps were obtained once by spectral factorization
// of the binomial half-band polynomial (extremal-phase root choice, the
// usual literature ordering) and are pinned by the defining-equation
// invariants in the test suite.
const double kHaar[] = {0.70710678118654752440, 0.70710678118654752440};

const double kDb2[] = {
    0.48296291314453415611, 0.83651630373780794236,
    0.22414386804201338888, -0.12940952255126036970,
};

const double kDb3[] = {
    0.33267055295008263194, 0.80689150931109254739, 0.45987750211849154347,
    -0.13501102001025458432, -0.08544127388202665818, 0.03522629188570953335,
};

const double kDb4[] = {
    0.23037781330889650651, 0.71484657055291567218,
    0.63088076792985892105, -0.02798376941685985428,
    -0.18703481171909308589, 0.03084138183556076399,
    0.03288301166688519656, -0.01059740178506903170,
};

WaveletFilter from_taps(const std::string& name, const double* taps, int m) {
    WaveletFilter f;
    f.name = name;
    f.h.assign(taps, taps + m);
    f.g.resize(m);
    for (int i = 0; i < m; ++i)
        f.g[i] = (i % 2 == 0 ? 1.0 : -1.0) * f.h[m - 1 - i];
    return f;
}

int dyadic_log2(Eigen::Index n, const char* what) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument(std::string(what) +
                                    ": length must be a power of two, got " +
                                    std::to_string(n));
    int l = 0;
    while ((Eigen::Index{1} << l) < n) ++l;
    return l;
}

void check_depth(int L, int n, const char* what) {
    if (L < 0 || L > n)
        throw std::invalid_argument(std::string(what) + ": depth " +
                                    std::to_string(L) + " out of range for log2 N = " +
                                    std::to_string(n));
}

}  // namespace

WaveletFilter make_filter(const std::string& name) {
    if (name == "haar") return from_taps(name, kHaar, 2);
    if (name == "db2") return from_taps(name, kDb2, 4);
    if (name == "db3") return from_taps(name, kDb3, 6);
    if (name == "db4") return from_taps(name, kDb4, 8);
    throw std::invalid_argument("unknown wavelet '" + name +
                                "' (supported: haar, db2, db3, db4)");
}

const std::vector<std::string>& filter_names() {
    static const std::vector<std::string> names = {"haar", "db2", "db3", "db4"};
    return names;
}

const Eigen::VectorXd& DwtCoeffs::detail(int j) const {
    if (j < 1 || j > L)
        throw std::out_of_range("detail level " + std::to_string(j) +
                                " out of range 1.." + std::to_string(L));
    return w[static_cast<std::size_t>(L - j)];
}

Eigen::VectorXd DwtCoeffs::flatten() const {
    Eigen::VectorXd out(N);
    Eigen::Index pos = 0;
    out.segment(pos, s.size()) = s;
    pos += s.size();
    for (const auto& block : w) {
        out.segment(pos, block.size()) = block;
        pos += block.size();
    }
    return out;
}

DwtCoeffs unflatten(const Eigen::VectorXd& coeffs, int L) {
    const int n = dyadic_log2(coeffs.size(), "unflatten");
    check_depth(L, n, "unflatten");
    const int N = static_cast<int>(coeffs.size());
    DwtCoeffs c;
    c.N = N;
    c.L = L;
    c.s = coeffs.head(N >> L);
    for (int j = L; j >= 1; --j)
        c.w.push_back(coeffs.segment(N >> j, N >> j));
    return c;
}

Eigen::VectorXd circular_shift(const Eigen::VectorXd& y, long eps) {
    const Eigen::Index N = y.size();
    if (N == 0) return y;
    const long e = ((eps % N) + N) % N;
    Eigen::VectorXd out(N);
    for (Eigen::Index k = 0; k < N; ++k)
        out[k] = y[(k - e + N) % N];
    return out;
}

DwtCoeffs dwt_forward(const Eigen::VectorXd& y, const WaveletFilter& f, int L) {
    const int n = dyadic_log2(y.size(), "dwt_forward");
    check_depth(L, n, "dwt_forward");
    const int taps = f.support();

    DwtCoeffs out;
    out.N = static_cast<int>(y.size());
    out.L = L;

    Eigen::VectorXd cur = y;
    std::vector<Eigen::VectorXd> fine_first;
    for (int level = 1; level <= L; ++level) {
        const Eigen::Index len = cur.size();
        const Eigen::Index half = len / 2;
        Eigen::VectorXd s(half), w(half);
        for (Eigen::Index k = 0; k < half; ++k) {
            double sv = 0.0, wv = 0.0;
            for (int i = 0; i < taps; ++i) {
                const double v = cur[(2 * k + i) % len];
                sv += f.h[i] * v;
                wv += f.g[i] * v;
            }
            s[k] = sv;
            w[k] = wv;
        }
        fine_first.push_back(std::move(w));
        cur = std::move(s);
    }
    out.s = std::move(cur);
    out.w.assign(fine_first.rbegin(), fine_first.rend());
    return out;
}

Eigen::VectorXd dwt_inverse(const DwtCoeffs& c, const WaveletFilter& f) {
    if (static_cast<int>(c.w.size()) != c.L)
        throw std::invalid_argument("dwt_inverse: expected " + std::to_string(c.L) +
                                    " detail blocks, got " + std::to_string(c.w.size()));
    if (c.s.size() != (c.N >> c.L))
        throw std::invalid_argument("dwt_inverse: scaling block has length " +
                                    std::to_string(c.s.size()) + ", expected " +
                                    std::to_string(c.N >> c.L));
    const int taps = f.support();
    Eigen::VectorXd cur = c.s;
    for (int j = c.L; j >= 1; --j) {
        const Eigen::VectorXd& w = c.detail(j);
        if (w.size() != cur.size())
            throw std::invalid_argument("dwt_inverse: detail level " + std::to_string(j) +
                                        " has length " + std::to_string(w.size()) +
                                        ", expected " + std::to_string(cur.size()));
        const Eigen::Index half = cur.size();
        const Eigen::Index len = 2 * half;
        Eigen::VectorXd prev = Eigen::VectorXd::Zero(len);
        for (Eigen::Index k = 0; k < half; ++k)
            for (int i = 0; i < taps; ++i)
                prev[(2 * k + i) % len] += f.h[i] * cur[k] + f.g[i] * w[k];
        cur = std::move(prev);
    }
    return cur;
}

WaveletMatrix build_W_matrix(int N, const WaveletFilter& f, int L) {
    const int n = dyadic_log2(N, "build_W_matrix");
    check_depth(L, n, "build_W_matrix");
    WaveletMatrix Wm;
    Wm.N = N;
    Wm.L = L;
    Wm.entries.resize(N, N);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    for (int i = 0; i < N; ++i) {
        e[i] = 1.0;
        Wm.entries.col(i) = dwt_forward(e, f, L).flatten();
        e[i] = 0.0;
    }
    return Wm;
}

EpsilonLibrary epsilon_library(const Eigen::VectorXd& y, const WaveletFilter& f, int L) {
    const int n = dyadic_log2(y.size(), "epsilon_library");
    check_depth(L, n, "epsilon_library");
    EpsilonLibrary lib;
    lib.N = static_cast<int>(y.size());
    lib.L = L;
    lib.rows.resize(1 << L, lib.N);
    for (long eps = 0; eps < (1L << L); ++eps)
        lib.rows.row(eps) = dwt_forward(circular_shift(y, eps), f, L).flatten();
    return lib;
}

NdwtTable ndwt_atrous(const Eigen::VectorXd& y, const WaveletFilter& f, int L) {
    const int n = dyadic_log2(y.size(), "ndwt_atrous");
    check_depth(L, n, "ndwt_atrous");
    const Eigen::Index N = y.size();
    const int taps = f.support();

    NdwtTable t;
    t.N = static_cast<int>(N);
    t.L = L;

    Eigen::VectorXd a = y;
    for (int j = 1; j <= L; ++j) {
        const Eigen::Index step = Eigen::Index{1} << (j - 1);
        Eigen::VectorXd d(N), an(N);
        for (Eigen::Index m = 0; m < N; ++m) {
            double dv = 0.0, av = 0.0;
            for (int i = 0; i < taps; ++i) {
                const double v = a[(m + step * i) % N];
                dv += f.g[i] * v;
                av += f.h[i] * v;
            }
            d[m] = dv;
            an[m] = av;
        }
        t.d.push_back(std::move(d));
        a = std::move(an);
    }
    t.a = std::move(a);
    return t;
}

NdwtTable align_epsilon_to_ndwt(const EpsilonLibrary& lib) {
    const int N = lib.N;
    const int L = lib.L;
    if (lib.rows.rows() != (1 << L) || lib.rows.cols() != N)
        throw std::invalid_argument("align_epsilon_to_ndwt: library is " +
                                    std::to_string(lib.rows.rows()) + "x" +
                                    std::to_string(lib.rows.cols()) + ", expected " +
                                    std::to_string(1 << L) + "x" + std::to_string(N));
    dyadic_log2(N, "align_epsilon_to_ndwt");

    const CoeffLayout layout{N, L};
    NdwtTable t;
    t.N = N;
    t.L = L;
    for (int j = 1; j <= L; ++j) {
        const int period = 1 << j;
        const int block = layout.detail_size(j);
        Eigen::VectorXd d(N);
        for (int pos = 0; pos < N; ++pos) {
            const int eps = (period - pos % period) % period;
            const int k = ((pos + eps) >> j) % block;
            d[pos] = lib.rows(eps, layout.detail_offset(j) + k);
        }
        t.d.push_back(std::move(d));
    }
    const int period = 1 << L;
    const int block = layout.scaling_size();
    t.a.resize(N);
    for (int pos = 0; pos < N; ++pos) {
        const int eps = (period - pos % period) % period;
        const int k = ((pos + eps) >> L) % block;
        t.a[pos] = lib.rows(eps, k);
    }
    return t;
}

Eigen::VectorXd ndwt_inverse_average(const NdwtTable& t, const WaveletFilter& f) {
    if (static_cast<int>(t.d.size()) != t.L || t.a.size() != t.N)
        throw std::invalid_argument("ndwt_inverse_average: inconsistent table");
    for (int j = 1; j <= t.L; ++j)
        if (t.d[j - 1].size() != t.N)
            throw std::invalid_argument("ndwt_inverse_average: d" + std::to_string(j) +
                                        " has length " + std::to_string(t.d[j - 1].size()) +
                                        ", expected " + std::to_string(t.N));
    const Eigen::Index N = t.N;
    const int taps = f.support();

    // Each level halves the redundancy, hence the factor 1/2: the even- and
    // odd-phase synthesis results are averaged.
    Eigen::VectorXd a = t.a;
    for (int j = t.L; j >= 1; --j) {
        const Eigen::Index step = Eigen::Index{1} << (j - 1);
        const Eigen::VectorXd& d = t.d[j - 1];
        Eigen::VectorXd prev(N);
        for (Eigen::Index m = 0; m < N; ++m) {
            double acc = 0.0;
            for (int i = 0; i < taps; ++i) {
                const Eigen::Index src = ((m - step * i) % N + N) % N;
                acc += f.h[i] * a[src] + f.g[i] * d[src];
            }
            prev[m] = 0.5 * acc;
        }
        a = std::move(prev);
    }
    return a;
}

std::string ndwt_table_csv(const NdwtTable& t) {
    std::string out;
    char buf[32];
    auto append_row = [&](const std::string& label, const Eigen::VectorXd& v) {
        out += label;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v[i]);
            out += buf;
        }
        out += '\n';
    };
    for (int j = 1; j <= t.L; ++j)
        append_row("d" + std::to_string(j), t.d[j - 1]);
    append_row("a" + std::to_string(t.L), t.a);
    return out;
}

}  // namespace qndwt
