#include "qndwt/signal_lab.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qndwt/rng.hpp"

namespace qndwt {

Signal doppler(int N) {
    if (N < 2)
        throw std::invalid_argument("doppler: need at least two samples");
    Signal s;
    s.name = "doppler";
    s.samples.resize(N);
    for (int i = 0; i < N; ++i) {
        const double t = (i + 0.5) / N;
        s.samples[i] = std::sqrt(t * (1.0 - t)) *
                       std::sin(2.0 * M_PI * 1.05 / (t + 0.05));
    }
    return s;
}

namespace {

// Autocovariance of unit-variance fractional Gaussian noise.
double fgn_gamma(long k, double hurst) {
    const double a = std::abs(static_cast<double>(k));
    return 0.5 * (std::pow(a + 1.0, 2.0 * hurst) - 2.0 * std::pow(a, 2.0 * hurst) +
                  std::pow(std::abs(a - 1.0), 2.0 * hurst));
}

}  // namespace

Signal fbm(int N, double hurst, std::uint64_t seed) {
    if (N < 1)
        throw std::invalid_argument("fbm: empty signal");
    if (!(hurst > 0.0) || !(hurst < 1.0))
        throw std::invalid_argument("fbm: Hurst exponent must lie in (0,1)");

    // Davies-Harte: embed the fGn covariance in a circulant of size 2m and
    // grow m until the eigenvalues are nonnegative.
    long m = 1;
    while (m < N) m <<= 1;
    Eigen::FFT<double> fft;
    std::vector<double> lambda;
    for (;;) {
        const long M = 2 * m;
        std::vector<std::complex<double>> row(M);
        for (long j = 0; j <= m; ++j) row[j] = fgn_gamma(j, hurst);
        for (long j = 1; j < m; ++j) row[M - j] = row[j];
        std::vector<std::complex<double>> freq;
        fft.fwd(freq, row);
        double mn = 0.0, mx = 0.0;
        lambda.assign(M, 0.0);
        for (long j = 0; j < M; ++j) {
            lambda[j] = freq[j].real();
            mn = std::min(mn, lambda[j]);
            mx = std::max(mx, lambda[j]);
        }
        if (mn >= -1e-8 * mx) {
            for (auto& l : lambda) l = std::max(l, 0.0);
            break;
        }
        m <<= 1;
    }

    const long M = 2 * m;
    Rng rng(derive_seed(seed, 0x66626dULL));
    std::vector<std::complex<double>> v(M);
    v[0] = rng.normal() * std::sqrt(static_cast<double>(M));
    v[m] = rng.normal() * std::sqrt(static_cast<double>(M));
    for (long j = 1; j < m; ++j) {
        const double a = rng.normal();
        const double b = rng.normal();
        v[j] = std::complex<double>(a, b) * std::sqrt(M / 2.0);
        v[M - j] = std::conj(v[j]);
    }
    for (long j = 0; j < M; ++j) v[j] *= std::sqrt(lambda[j]) / M;

    std::vector<std::complex<double>> out;
    fft.fwd(out, v);

    Signal s;
    s.name = "fbm";
    s.samples.resize(N);
    double cum = 0.0;
    const double unit = std::pow(static_cast<double>(N), -hurst);
    for (int i = 0; i < N; ++i) {
        cum += out[i].real();
        s.samples[i] = cum * unit;
    }
    return s;
}

Signal gaussian_noise(int N, double sigma, std::uint64_t seed) {
    if (N < 1)
        throw std::invalid_argument("gaussian_noise: empty signal");
    if (sigma < 0.0)
        throw std::invalid_argument("gaussian_noise: negative sigma");
    Rng rng(derive_seed(seed, 0x6e6f697365ULL));
    Signal s;
    s.name = "noise";
    s.samples.resize(N);
    for (int i = 0; i < N; ++i) s.samples[i] = sigma * rng.normal();
    return s;
}

Signal add_noise(const Signal& s, double sigma, std::uint64_t seed) {
    if (sigma < 0.0)
        throw std::invalid_argument("add_noise: negative sigma");
    Signal out = s;
    if (sigma == 0.0) return out;
    Rng rng(derive_seed(seed, 0x6e6f697365ULL));
    for (Eigen::Index i = 0; i < out.samples.size(); ++i)
        out.samples[i] += sigma * rng.normal();
    return out;
}

Signal read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_csv: cannot open '" + path + "'");
    Signal s;
    s.name = path;
    std::vector<double> vals;
    std::string line;
    long lineno = 0;
    bool saw_value = false;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        const std::string tok = line.substr(start);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            if (!saw_value && vals.empty()) continue;   // optional header line
            throw std::runtime_error("read_csv: '" + path + "' line " +
                                     std::to_string(lineno) + ": not a number: '" + tok + "'");
        }
        if (!std::isfinite(v))
            throw std::runtime_error("read_csv: '" + path + "' line " +
                                     std::to_string(lineno) + ": non-finite value");
        vals.push_back(v);
        saw_value = true;
    }
    if (vals.empty())
        throw std::runtime_error("read_csv: '" + path + "' holds no samples");
    s.samples = Eigen::Map<const Eigen::VectorXd>(vals.data(),
                                                  static_cast<Eigen::Index>(vals.size()));
    return s;
}

std::string signal_csv(const Eigen::VectorXd& samples) {
    std::string out;
    char buf[32];
    for (Eigen::Index i = 0; i < samples.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", samples[i]);
        out += buf;
    }
    return out;
}

void write_csv(const std::string& path, const Signal& s) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_csv: cannot open '" + path + "' for writing");
    out << signal_csv(s.samples);
    if (!out)
        throw std::runtime_error("write_csv: write to '" + path + "' failed");
}

}  // namespace qndwt
