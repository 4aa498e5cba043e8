#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ettkit/mention_graph.hpp"
#include "ettkit/post.hpp"

namespace ettkit {

struct SynthConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Planted-anomaly corpus generator. Regular users post a little with broad
// vocabulary; diffuse extreme tweeters post heavily with near-full-rank text
// matrices; planted users post heavily from at most planted_topics fixed word
// mixes and mention each other in a full clique.
struct SynthConfig {
    std::uint64_t seed = 1;

    int n_regular = 1000;
    int n_ett_diffuse = 50;
    int n_planted = 12;

    std::int64_t window_start = 0;
    int n_mais = 6;
    std::int64_t mai_length = 604'800;  // one week

    int regular_count_min = 1;
    int regular_count_max = 4;
    int extreme_count = 200;     // tweets per diffuse/planted user
    double volume_margin = 3.0;  // extremes must clear mean + margin * std

    int planted_topics = 2;      // 1 or 2 word mixes per planted user
    double planted_noise = 0.02; // probability of a +-1 count flip per entry

    int diffuse_vocab = 500;
    int diffuse_words_per_tweet = 8;
    int regular_vocab = 300;
    int regular_words_per_tweet = 6;

    double mention_rate_diffuse = 0.05;  // per-tweet chance of a random mention
    double mention_rate_regular = 0.02;
    double hashtag_rate = 0.08;          // chance a tweet leads with a hashtag

    std::int64_t window_end() const {
        return window_start + static_cast<std::int64_t>(n_mais) * mai_length;
    }
};

struct GroundTruth {
    std::unordered_map<std::string, UserCategory> category;
    std::vector<std::string> planted;  // sorted
    int expected_k1 = 0;               // planted clique size - 1
};

struct SynthCorpus {
    std::vector<Post> posts;  // sorted by (timestamp, user_id)
    GroundTruth truth;
};

// Deterministic for a fixed config. Throws SynthConfigError when parameters
// are invalid or the generated extreme counts fail to clear
// mean + volume_margin * std of the whole population.
SynthCorpus generate(const SynthConfig& config);

void write_posts_jsonl(std::ostream& out, const std::vector<Post>& posts);
void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth);

}  // namespace ettkit
