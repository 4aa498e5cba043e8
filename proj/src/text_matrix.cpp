#include "ettkit/text_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace ettkit {

TextMatrix TextMatrix::build(const std::vector<TokenizedPost>& posts) {
    TextMatrix tm;
    if (posts.empty()) throw std::invalid_argument("TextMatrix: no posts");
    tm.user_id_ = posts.front().user_id;
    for (const TokenizedPost& p : posts)
        if (p.user_id != tm.user_id_)
            throw std::invalid_argument("TextMatrix: posts from multiple users");

    std::vector<const TokenizedPost*> ordered;
    ordered.reserve(posts.size());
    for (const TokenizedPost& p : posts) ordered.push_back(&p);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const TokenizedPost* a, const TokenizedPost* b) {
                         return a->timestamp < b->timestamp;
                     });

    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t row = 0; row < ordered.size(); ++row) {
        for (const std::string& tok : ordered[row]->tokens) {
            auto [it, inserted] = tm.vocab_.try_emplace(tok, static_cast<int>(tm.vocab_.size()));
            triplets.emplace_back(static_cast<int>(row), it->second, 1.0);
        }
    }

    tm.matrix_.resize(static_cast<Eigen::Index>(ordered.size()),
                      static_cast<Eigen::Index>(tm.vocab_.size()));
    tm.matrix_.setFromTriplets(triplets.begin(), triplets.end());  // duplicates sum
    tm.frobenius_sq_ = tm.vocab_.empty() ? 0.0 : tm.matrix_.squaredNorm();
    return tm;
}

}  // namespace ettkit
