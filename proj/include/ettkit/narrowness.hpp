#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ettkit/svd.hpp"
#include "ettkit/text_matrix.hpp"

namespace ettkit {

enum class NarrownessMethod { exact, randomized };

struct RandomizedParams {
    int rank = 0;        // 0 = heuristic max(10, ceil(p/10)), clamped to min(p,q)
    int oversample = 10;
    int power_iters = 2;
};

struct NarrownessScore {
    std::string user_id;
    double value = 0.0;
    NarrownessMethod method = NarrownessMethod::exact;
    double energy_threshold = 0.0;  // d (exact method)
    RandomizedParams rm;            // randomized method
};

// Exact measure: smallest K whose top-K energy share reaches d, mapped to
// 1 - K/p. Nonincreasing in d, invariant under row/column permutation and
// positive scaling.
double exact_narrowness(const Eigen::SparseMatrix<double>& m, double d);
double exact_narrowness(const TextMatrix& m, double d);

// The rank heuristic for the randomized measure.
int rm_default_rank(Eigen::Index p, Eigen::Index q);

// Randomized measure: top-k estimated energy over total energy,
// sum_j<=k sigma~_j^2 / ||M||_F^2, in (0, 1].
double rm_narrowness(const Eigen::SparseMatrix<double>& m, RandomizedParams params,
                     std::uint64_t seed);
double rm_narrowness(const TextMatrix& m, RandomizedParams params, std::uint64_t seed);

// Stable per-user seed so batch scoring is independent of scheduling order.
std::uint64_t user_seed(const std::string& user_id, std::uint64_t global_seed);

}  // namespace ettkit
