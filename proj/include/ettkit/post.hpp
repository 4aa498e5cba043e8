#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ettkit {

// One raw social post. Timestamps are UTC epoch seconds.
struct Post {
    std::string user_id;
    std::string text;
    std::int64_t timestamp = 0;
};

// A post after tokenization: lowercase word tokens with stop words, URLs and
// mentions removed; hashtag bodies are kept as tokens and listed separately.
struct TokenizedPost {
    std::string user_id;
    std::int64_t timestamp = 0;
    std::vector<std::string> tokens;
    std::vector<std::string> mentions;   // deduplicated, order of first occurrence
    std::vector<std::string> hashtags;
    bool is_null_text = true;
};

// Observation window [window_start, window_end) tiled by consecutive MAIs of
// length mai_length; the last interval may be truncated.
struct TimePartition {
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;
    std::int64_t mai_length = 0;

    std::size_t intervals() const {
        const std::int64_t span = window_end - window_start;
        return static_cast<std::size_t>((span + mai_length - 1) / mai_length);
    }

    std::int64_t interval_start(std::size_t i) const {
        return window_start + static_cast<std::int64_t>(i) * mai_length;
    }

    std::int64_t interval_end(std::size_t i) const {
        const std::int64_t end = interval_start(i) + mai_length;
        return end < window_end ? end : window_end;
    }

    // Index of the MAI containing t, or -1 if t lies outside the window.
    std::ptrdiff_t interval_of(std::int64_t t) const {
        if (t < window_start || t >= window_end) return -1;
        return static_cast<std::ptrdiff_t>((t - window_start) / mai_length);
    }
};

}  // namespace ettkit
