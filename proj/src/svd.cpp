#include "ettkit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace ettkit {

int SingularSpectrum::energy_rank(double d) const {
    if (d < 0.0 || d > 1.0) throw std::invalid_argument("energy_rank: d must be in [0,1]");
    if (values.empty()) throw std::invalid_argument("energy_rank: empty spectrum");
    double cum = 0.0;
    for (std::size_t j = 0; j < contributions.size(); ++j) {
        cum += contributions[j];
        if (cum >= d - 1e-12) return static_cast<int>(j) + 1;
    }
    return static_cast<int>(contributions.size());
}

SingularSpectrum singular_values(const Eigen::SparseMatrix<double>& m) {
    if (m.rows() < 1 || m.cols() < 1)
        throw std::invalid_argument("singular_values: matrix must be at least 1x1");

    const Eigen::MatrixXd dense = Eigen::MatrixXd(m);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
    if (svd.info() != Eigen::Success)
        throw SvdError("singular_values: decomposition did not converge");

    SingularSpectrum s;
    const auto& sigma = svd.singularValues();
    s.values.assign(sigma.data(), sigma.data() + sigma.size());
    s.energy = 0.0;
    for (double v : s.values) s.energy += v * v;
    s.contributions.resize(s.values.size());
    for (std::size_t j = 0; j < s.values.size(); ++j)
        s.contributions[j] = s.energy > 0.0 ? s.values[j] * s.values[j] / s.energy : 0.0;
    return s;
}

SingularSpectrum singular_values(const TextMatrix& m) { return singular_values(m.matrix()); }

std::vector<double> randomized_topk(const Eigen::SparseMatrix<double>& m, int k,
                                    int oversample, int power_iters, std::uint64_t seed) {
    const Eigen::Index p = m.rows();
    const Eigen::Index q = m.cols();
    if (k < 1 || k > std::min(p, q))
        throw std::invalid_argument("randomized_topk: k out of range");
    if (oversample < 0 || power_iters < 0)
        throw std::invalid_argument("randomized_topk: bad oversample/power parameters");

    const Eigen::Index sketch = std::min<Eigen::Index>(k + oversample, std::min(p, q));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd omega(q, sketch);
    for (Eigen::Index j = 0; j < sketch; ++j)
        for (Eigen::Index i = 0; i < q; ++i) omega(i, j) = gauss(rng);

    // Range finder with re-orthonormalization between every half power step.
    Eigen::MatrixXd y = m * omega;  // p x sketch
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    Eigen::MatrixXd basis =
        qr.householderQ() * Eigen::MatrixXd::Identity(p, sketch);
    for (int it = 0; it < power_iters; ++it) {
        Eigen::MatrixXd z = m.transpose() * basis;  // q x sketch
        Eigen::HouseholderQR<Eigen::MatrixXd> qrz(z);
        z = qrz.householderQ() * Eigen::MatrixXd::Identity(q, sketch);
        y = m * z;
        Eigen::HouseholderQR<Eigen::MatrixXd> qry(y);
        basis = qry.householderQ() * Eigen::MatrixXd::Identity(p, sketch);
    }

    const Eigen::MatrixXd small = basis.transpose() * m;  // sketch x q
    Eigen::BDCSVD<Eigen::MatrixXd> svd(small);
    if (svd.info() != Eigen::Success)
        throw SvdError("randomized_topk: projected decomposition did not converge");

    std::vector<double> top(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) top[static_cast<std::size_t>(j)] = svd.singularValues()(j);
    return top;
}

std::vector<double> randomized_topk(const TextMatrix& m, int k, int oversample,
                                    int power_iters, std::uint64_t seed) {
    return randomized_topk(m.matrix(), k, oversample, power_iters, seed);
}

}  // namespace ettkit
