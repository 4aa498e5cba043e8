#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "ettkit/text_matrix.hpp"

namespace ettkit {

struct SvdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All min(p,q) singular values, nonincreasing, with their squared-energy
// contributions c_j = sigma_j^2 / sum_i sigma_i^2.
struct SingularSpectrum {
    std::vector<double> values;
    std::vector<double> contributions;
    double energy = 0.0;  // sum of squares == squared Frobenius norm

    // Smallest k >= 1 whose cumulative contribution reaches d.
    int energy_rank(double d) const;
};

SingularSpectrum singular_values(const Eigen::SparseMatrix<double>& m);
SingularSpectrum singular_values(const TextMatrix& m);

// Top-k singular value estimates via a Gaussian sketch with oversampling and
// power iterations (Halko-style randomized range finder). Deterministic for a
// fixed seed; estimates never exceed the exact values beyond roundoff.
std::vector<double> randomized_topk(const Eigen::SparseMatrix<double>& m, int k,
                                    int oversample, int power_iters, std::uint64_t seed);
std::vector<double> randomized_topk(const TextMatrix& m, int k, int oversample,
                                    int power_iters, std::uint64_t seed);

}  // namespace ettkit
