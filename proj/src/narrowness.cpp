#include "ettkit/narrowness.hpp"

#include <algorithm>
#include <cmath>

namespace ettkit {

double exact_narrowness(const Eigen::SparseMatrix<double>& m, double d) {
    const SingularSpectrum spectrum = singular_values(m);
    const int k = spectrum.energy_rank(d);
    return 1.0 - static_cast<double>(k) / static_cast<double>(m.rows());
}

double exact_narrowness(const TextMatrix& m, double d) {
    if (!m.has_content())
        throw std::invalid_argument("exact_narrowness: matrix has no content (q = 0)");
    return exact_narrowness(m.matrix(), d);
}

int rm_default_rank(Eigen::Index p, Eigen::Index q) {
    const Eigen::Index heuristic =
        std::max<Eigen::Index>(10, (p + 9) / 10);  // max(10, ceil(p/10))
    return static_cast<int>(std::min(heuristic, std::min(p, q)));
}

double rm_narrowness(const Eigen::SparseMatrix<double>& m, RandomizedParams params,
                     std::uint64_t seed) {
    int k = params.rank > 0 ? params.rank : rm_default_rank(m.rows(), m.cols());
    k = static_cast<int>(std::min<Eigen::Index>(k, std::min(m.rows(), m.cols())));

    const std::vector<double> top =
        randomized_topk(m, k, params.oversample, params.power_iters, seed);
    double energy = 0.0;
    for (double v : top) energy += v * v;
    return energy / m.squaredNorm();
}

double rm_narrowness(const TextMatrix& m, RandomizedParams params, std::uint64_t seed) {
    if (!m.has_content())
        throw std::invalid_argument("rm_narrowness: matrix has no content (q = 0)");
    return rm_narrowness(m.matrix(), params, seed);
}

std::uint64_t user_seed(const std::string& user_id, std::uint64_t global_seed) {
    // FNV-1a over the id, then splitmix64 to spread the global seed through.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : user_id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t z = h + 0x9e3779b97f4a7c15ull * (global_seed + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace ettkit
