#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace qndwt {

struct Signal {
    Eigen::VectorXd samples;
    std::string name;
    std::optional<double> rate_hz;
};

/// Doppler benchmark s(t) = sqrt(t(1-t)) sin(2*pi*1.05/(t+0.05)) on the
/// midpoint grid t = (i+0.5)/N.
Signal doppler(int N);

/// Fractional Brownian motion with Hurst exponent H in (0,1): exact
/// circulant embedding of fractional Gaussian noise followed by a
/// cumulative sum.  Deterministic per seed.
Signal fbm(int N, double hurst, std::uint64_t seed);

/// Gaussian white noise, mean zero, standard deviation sigma.
Signal gaussian_noise(int N, double sigma, std::uint64_t seed);

/// Adds seeded Gaussian noise to a signal.
Signal add_noise(const Signal& s, double sigma, std::uint64_t seed);

/// One value per line; '#' lines are comments, an optional leading
/// non-numeric line is treated as a header.  Round-trips exactly.
Signal read_csv(const std::string& path);
void write_csv(const std::string& path, const Signal& s);

/// CSV body of a raw sample vector (17 significant digits per line).
std::string signal_csv(const Eigen::VectorXd& samples);

}  // namespace qndwt
