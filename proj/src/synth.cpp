#include "ettkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include <json.hpp>

namespace ettkit {

namespace {

std::string padded_id(char prefix, int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%c%05d", prefix, i);
    return buf;
}

void validate(const SynthConfig& c) {
    if (c.n_regular < 1 || c.n_ett_diffuse < 0)
        throw SynthConfigError("synth: population sizes must be positive");
    if (c.n_planted < 3) throw SynthConfigError("synth: planted clique needs >= 3 users");
    if (c.n_mais < 1 || c.mai_length <= 0)
        throw SynthConfigError("synth: window must be non-empty");
    if (c.regular_count_min < 1 || c.regular_count_max < c.regular_count_min)
        throw SynthConfigError("synth: bad regular count range");
    if (c.extreme_count <= c.regular_count_max)
        throw SynthConfigError("synth: extreme count must exceed the regular range");
    if (c.extreme_count < c.n_planted - 1)
        throw SynthConfigError("synth: extreme count too small to wire the planted clique");
    if (c.volume_margin <= 0) throw SynthConfigError("synth: volume margin must be positive");
    if (c.planted_topics < 1 || c.planted_topics > 2)
        throw SynthConfigError("synth: planted_topics must be 1 or 2");
    if (c.planted_noise < 0 || c.planted_noise >= 1)
        throw SynthConfigError("synth: planted_noise must be in [0,1)");
    if (c.diffuse_vocab < 1 || c.diffuse_words_per_tweet < 1 || c.regular_vocab < 1 ||
        c.regular_words_per_tweet < 1)
        throw SynthConfigError("synth: vocabulary parameters must be positive");
}

// Two disjoint-support integer word mixes over a 10-word vocabulary.
constexpr int kPlantedVocab = 10;
constexpr int kTopicA[kPlantedVocab] = {3, 2, 2, 1, 1, 0, 0, 0, 0, 0};
constexpr int kTopicB[kPlantedVocab] = {0, 0, 0, 0, 0, 1, 1, 2, 2, 3};

}  // namespace

SynthCorpus generate(const SynthConfig& config) {
    validate(config);
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::int64_t> stamp(config.window_start,
                                                      config.window_end() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SynthCorpus out;
    out.truth.expected_k1 = config.n_planted - 1;

    std::vector<std::string> all_users;
    std::vector<std::string> planted, diffuse, regular;
    for (int i = 0; i < config.n_planted; ++i) planted.push_back(padded_id('a', i));
    for (int i = 0; i < config.n_ett_diffuse; ++i) diffuse.push_back(padded_id('e', i));
    for (int i = 0; i < config.n_regular; ++i) regular.push_back(padded_id('r', i));
    for (const auto& u : planted) out.truth.category[u] = UserCategory::anomalous;
    for (const auto& u : diffuse) out.truth.category[u] = UserCategory::ett;
    for (const auto& u : regular) out.truth.category[u] = UserCategory::regular;
    out.truth.planted = planted;
    all_users.insert(all_users.end(), planted.begin(), planted.end());
    all_users.insert(all_users.end(), diffuse.begin(), diffuse.end());
    all_users.insert(all_users.end(), regular.begin(), regular.end());
    std::uniform_int_distribution<std::size_t> any_user(0, all_users.size() - 1);

    // Tweet text from integer word counts; the first word may ride in as a
    // hashtag, which tokenizes to the same token either way.
    auto compose = [&](const std::vector<std::pair<std::string, int>>& words) {
        std::string text;
        bool lead = unit(rng) < config.hashtag_rate;
        for (const auto& [word, count] : words) {
            for (int c = 0; c < count; ++c) {
                if (!text.empty()) text += ' ';
                if (lead) {
                    text += '#';
                    lead = false;
                }
                text += word;
            }
        }
        return text;
    };

    // Planted users: heavy volume, texts spanning at most planted_topics word
    // mixes (numerical rank <= planted_topics before noise), full mention
    // clique wired through a deterministic co-member cycle.
    std::uniform_int_distribution<int> mix(0, 4);
    for (int ui = 0; ui < config.n_planted; ++ui) {
        std::vector<std::string> vocab;
        for (int w = 0; w < kPlantedVocab; ++w)
            vocab.push_back("q" + std::to_string(ui) + "w" + std::to_string(w));
        for (int t = 0; t < config.extreme_count; ++t) {
            static constexpr int kWeights[5][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
            const int* weights = kWeights[mix(rng)];
            const int a = weights[0];
            const int b = config.planted_topics == 2 ? weights[1] : 0;
            std::vector<std::pair<std::string, int>> words;
            for (int w = 0; w < kPlantedVocab; ++w) {
                int count = a * kTopicA[w] + b * kTopicB[w];
                if (config.planted_topics == 1 && a == 0) count = kTopicA[w];  // never empty
                if (unit(rng) < config.planted_noise)
                    count += unit(rng) < 0.5 ? 1 : (count > 0 ? -1 : 0);
                if (count > 0) words.emplace_back(vocab[static_cast<std::size_t>(w)], count);
            }
            std::string text = compose(words);
            const int co = (ui + 1 + t % (config.n_planted - 1)) % config.n_planted;
            text += " @" + planted[static_cast<std::size_t>(co)];
            out.posts.push_back(Post{planted[static_cast<std::size_t>(ui)], std::move(text),
                                     stamp(rng)});
        }
    }

    // Diffuse extreme tweeters: heavy volume, broad shared vocabulary, sparse
    // uniform mentions.
    std::uniform_int_distribution<int> dword(0, config.diffuse_vocab - 1);
    for (int ui = 0; ui < config.n_ett_diffuse; ++ui) {
        for (int t = 0; t < config.extreme_count; ++t) {
            std::vector<std::pair<std::string, int>> words;
            for (int w = 0; w < config.diffuse_words_per_tweet; ++w)
                words.emplace_back("d" + std::to_string(dword(rng)), 1);
            std::string text = compose(words);
            if (unit(rng) < config.mention_rate_diffuse)
                text += " @" + all_users[any_user(rng)];
            out.posts.push_back(Post{diffuse[static_cast<std::size_t>(ui)], std::move(text),
                                     stamp(rng)});
        }
    }

    // Regular users: light volume.
    std::uniform_int_distribution<int> rcount(config.regular_count_min,
                                              config.regular_count_max);
    std::uniform_int_distribution<int> rword(0, config.regular_vocab - 1);
    std::vector<std::int64_t> regular_counts;
    regular_counts.reserve(regular.size());
    for (int ui = 0; ui < config.n_regular; ++ui) {
        const int count = rcount(rng);
        regular_counts.push_back(count);
        for (int t = 0; t < count; ++t) {
            std::vector<std::pair<std::string, int>> words;
            for (int w = 0; w < config.regular_words_per_tweet; ++w)
                words.emplace_back("g" + std::to_string(rword(rng)), 1);
            std::string text = compose(words);
            if (unit(rng) < config.mention_rate_regular)
                text += " @" + all_users[any_user(rng)];
            out.posts.push_back(Post{regular[static_cast<std::size_t>(ui)], std::move(text),
                                     stamp(rng)});
        }
    }

    // Construction guarantee: every extreme count clears the volume rule over
    // the whole population.
    {
        const double n_extreme = static_cast<double>(config.n_planted + config.n_ett_diffuse);
        double mean = n_extreme * config.extreme_count;
        for (std::int64_t c : regular_counts) mean += static_cast<double>(c);
        const double n = n_extreme + static_cast<double>(regular_counts.size());
        mean /= n;
        double var = n_extreme * (config.extreme_count - mean) * (config.extreme_count - mean);
        for (std::int64_t c : regular_counts) {
            const double d = static_cast<double>(c) - mean;
            var += d * d;
        }
        var /= n;
        if (static_cast<double>(config.extreme_count) <
            mean + config.volume_margin * std::sqrt(var))
            throw SynthConfigError(
                "synth: extreme_count does not clear mean + volume_margin * std; "
                "raise extreme_count or shrink the regular population");
    }

    std::stable_sort(out.posts.begin(), out.posts.end(), [](const Post& a, const Post& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.user_id < b.user_id;
    });
    return out;
}

void write_posts_jsonl(std::ostream& out, const std::vector<Post>& posts) {
    for (const Post& p : posts) {
        nlohmann::json record{{"user_id", p.user_id}, {"text", p.text},
                              {"timestamp", p.timestamp}};
        out << record.dump() << '\n';
    }
}

void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth) {
    out << "user_id,category\n";
    std::vector<std::string> ids;
    ids.reserve(truth.category.size());
    for (const auto& [id, cat] : truth.category) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (const std::string& id : ids)
        out << id << ',' << category_name(truth.category.at(id)) << '\n';
}

}  // namespace ettkit
