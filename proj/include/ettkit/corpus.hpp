#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ettkit/post.hpp"

namespace ettkit {

using Stopwords = std::unordered_set<std::string>;

// The stop-word list shipped with the project (lowercase; includes "rt" so
// bare retweets come out as null-text). Identical to data/stopwords_en.txt.
const Stopwords& default_stopwords();

// One lowercase word per line, UTF-8. Blank lines ignored.
Stopwords load_stopwords(std::istream& in);
Stopwords load_stopwords_file(const std::string& path);

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParsedPosts {
    std::vector<Post> posts;
    std::size_t malformed = 0;  // lines skipped with a warning counter
};

// Reads line-delimited JSON records with fields user_id, text, timestamp
// (integer epoch seconds or ISO-8601 string). Malformed lines are skipped and
// counted; an unreadable stream throws IngestError.
ParsedPosts parse_posts(std::istream& in);

// Epoch seconds from "YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HHMM]".
// A missing zone designator means UTC. Throws std::invalid_argument.
std::int64_t parse_timestamp(const std::string& text);

TokenizedPost tokenize(const Post& post, const Stopwords& stopwords);

std::vector<TokenizedPost> tokenize_all(const std::vector<Post>& posts,
                                        const Stopwords& stopwords);

template <typename P>
struct Partitioned {
    TimePartition partition;
    std::vector<std::vector<P>> buckets;  // one per MAI
    std::size_t dropped = 0;              // posts outside the window
};

// Buckets posts into MAIs; posts outside [window_start, window_end) are
// dropped and counted. Throws std::invalid_argument on an inverted window or
// non-positive MAI length.
template <typename P>
Partitioned<P> partition(const std::vector<P>& posts, std::int64_t window_start,
                         std::int64_t window_end, std::int64_t mai_length) {
    if (window_start >= window_end)
        throw std::invalid_argument("partition: window_start must precede window_end");
    if (mai_length <= 0)
        throw std::invalid_argument("partition: mai_length must be positive");

    Partitioned<P> out;
    out.partition = TimePartition{window_start, window_end, mai_length};
    out.buckets.resize(out.partition.intervals());
    for (const P& p : posts) {
        const std::ptrdiff_t i = out.partition.interval_of(p.timestamp);
        if (i < 0) {
            ++out.dropped;
            continue;
        }
        out.buckets[static_cast<std::size_t>(i)].push_back(p);
    }
    return out;
}

}  // namespace ettkit
