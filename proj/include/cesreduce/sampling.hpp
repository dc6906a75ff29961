#ifndef CESREDUCE_SAMPLING_HPP
#define CESREDUCE_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cesreduce {

/// splitmix64; also used to derive per-index streams from one seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0 so -log(u) is finite.
    double uniform_open0()
    {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 a(seed);
    SplitMix64 b(a.next() ^ (index * 0xd1b54a32d192ed03ULL));
    return b.next();
}

inline constexpr double kSimplexMargin = 1e-3;

/// `count` interior points of the (dim-1)-simplex: the barycenter first,
/// then Dirichlet(1) draws whose first uniform is stratified by index.
/// Every coordinate is at least `margin`. Sample i depends only on
/// (seed, i).
inline std::vector<std::vector<double>> simplex_samples(std::size_t dim, std::size_t count,
                                                        std::uint64_t seed,
                                                        double margin = kSimplexMargin)
{
    if (dim < 2) throw std::invalid_argument("simplex dimension must be at least 2");
    if (margin * static_cast<double>(dim) >= 1.0) throw std::invalid_argument("simplex margin too large");
    std::vector<std::vector<double>> out;
    out.reserve(count);
    if (count == 0) return out;
    out.emplace_back(dim, 1.0 / static_cast<double>(dim));
    const std::size_t strata = count > 1 ? count - 1 : 1;
    for (std::size_t i = 1; i < count; ++i) {
        SplitMix64 rng(stream_seed(seed, i));
        std::vector<double> e(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            double u = rng.uniform_open0();
            if (j == 0) u = (static_cast<double>(i - 1) + u) / static_cast<double>(strata);
            e[j] = -std::log(u);
        }
        const double total = std::accumulate(e.begin(), e.end(), 0.0);
        const double span = 1.0 - margin * static_cast<double>(dim);
        for (auto& v : e) v = margin + span * (total > 0.0 ? v / total : 1.0 / static_cast<double>(dim));
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace cesreduce

#endif // CESREDUCE_SAMPLING_HPP
