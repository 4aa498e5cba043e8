#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "ettkit/post.hpp"

namespace ettkit {

// Bag-of-words matrix of one user: rows = tweets (timestamp order), columns =
// distinct tokens (first-occurrence order). Null-text tweets contribute zero
// rows; a user with no tokens at all has cols() == 0 and no matrix.
class TextMatrix {
public:
    // posts must all belong to the same user.
    static TextMatrix build(const std::vector<TokenizedPost>& posts);

    const std::string& user_id() const { return user_id_; }
    Eigen::Index rows() const { return matrix_.rows(); }  // p
    Eigen::Index cols() const { return matrix_.cols(); }  // q
    bool has_content() const { return matrix_.cols() > 0; }

    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
    const std::unordered_map<std::string, int>& vocab() const { return vocab_; }

    double frobenius_sq() const { return frobenius_sq_; }

private:
    std::string user_id_;
    Eigen::SparseMatrix<double> matrix_;
    std::unordered_map<std::string, int> vocab_;
    double frobenius_sq_ = 0.0;
};

}  // namespace ettkit
