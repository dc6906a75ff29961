#ifndef CESREDUCE_NUMERIC_HPP
#define CESREDUCE_NUMERIC_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace cesreduce {

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

/// Central-difference gradient of a scalar function of (K, L), with steps
/// rel_step * K and rel_step * L.
template <typename Fn>
std::array<double, 2> central_gradient(const Fn& fn, double K, double L, double rel_step = 1e-6)
{
    const double hK = rel_step * K;
    const double hL = rel_step * L;
    return {(fn(K + hK, L) - fn(K - hK, L)) / (2.0 * hK),
            (fn(K, L + hL) - fn(K, L - hL)) / (2.0 * hL)};
}

/// Central-difference Hessian entries (d2/dK2, d2/dL2, d2/dKdL).
template <typename Fn>
std::array<double, 3> central_hessian(const Fn& fn, double K, double L, double rel_step = 1e-4)
{
    const double hK = rel_step * K;
    const double hL = rel_step * L;
    const double f0 = fn(K, L);
    const double kk = (fn(K + hK, L) - 2.0 * f0 + fn(K - hK, L)) / (hK * hK);
    const double ll = (fn(K, L + hL) - 2.0 * f0 + fn(K, L - hL)) / (hL * hL);
    const double kl = (fn(K + hK, L + hL) - fn(K + hK, L - hL) - fn(K - hK, L + hL) + fn(K - hK, L - hL)) /
                      (4.0 * hK * hL);
    return {kk, ll, kl};
}

} // namespace cesreduce

#endif // CESREDUCE_NUMERIC_HPP
