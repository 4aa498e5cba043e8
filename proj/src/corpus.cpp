#include "ettkit/corpus.hpp"

#include <cctype>
#include <charconv>
#include <istream>

#include <json.hpp>

namespace ettkit {

namespace {

bool is_word_byte(unsigned char c) {
    // ASCII alphanumerics are word characters; so is anything outside ASCII
    // (multi-byte UTF-8 sequences pass through untouched).
    return std::isalnum(c) || c >= 0x80;
}

bool is_handle_byte(unsigned char c) {
    return std::isalnum(c) || c == '_';
}

bool starts_url(const std::string& s, std::size_t i) {
    return s.compare(i, 7, "http://") == 0 || s.compare(i, 8, "https://") == 0 ||
           s.compare(i, 4, "www.") == 0;
}

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int read_int(const std::string& s, std::size_t pos, std::size_t len) {
    int value = 0;
    if (pos + len > s.size()) throw std::invalid_argument("bad timestamp: " + s);
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("bad timestamp: " + s);
        value = value * 10 + (s[i] - '0');
    }
    return value;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text) {
    // Plain integer epoch seconds.
    {
        std::int64_t epoch = 0;
        const char* end = text.data() + text.size();
        auto [p, ec] = std::from_chars(text.data(), end, epoch);
        if (ec == std::errc() && p == end && !text.empty()) return epoch;
    }

    // YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HHMM]
    if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':')
        throw std::invalid_argument("bad timestamp: " + text);
    const int year = read_int(text, 0, 4);
    const int month = read_int(text, 5, 2);
    const int day = read_int(text, 8, 2);
    const int hour = read_int(text, 11, 2);
    const int minute = read_int(text, 14, 2);
    const int second = read_int(text, 17, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        throw std::invalid_argument("bad timestamp: " + text);

    std::size_t i = 19;
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    }

    std::int64_t offset = 0;
    if (i < text.size()) {
        if (text[i] == 'Z') {
            ++i;
        } else if (text[i] == '+' || text[i] == '-') {
            const int sign = text[i] == '+' ? 1 : -1;
            ++i;
            const int oh = read_int(text, i, 2);
            i += 2;
            if (i < text.size() && text[i] == ':') ++i;
            const int om = read_int(text, i, 2);
            i += 2;
            offset = sign * (oh * 3600 + om * 60);
        }
    }
    if (i != text.size()) throw std::invalid_argument("bad timestamp: " + text);

    return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
           hour * 3600 + minute * 60 + second - offset;
}

ParsedPosts parse_posts(std::istream& in) {
    ParsedPosts out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        const nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object() || !record.contains("user_id") ||
            !record.contains("text") || !record.contains("timestamp") ||
            !record["user_id"].is_string() || !record["text"].is_string()) {
            ++out.malformed;
            continue;
        }

        Post post;
        post.user_id = record["user_id"].get<std::string>();
        post.text = record["text"].get<std::string>();
        const auto& ts = record["timestamp"];
        try {
            if (ts.is_number_integer())
                post.timestamp = ts.get<std::int64_t>();
            else if (ts.is_string())
                post.timestamp = parse_timestamp(ts.get<std::string>());
            else
                throw std::invalid_argument("timestamp type");
        } catch (const std::invalid_argument&) {
            ++out.malformed;
            continue;
        }

        if (post.user_id.empty() || post.timestamp < 0) {
            ++out.malformed;
            continue;
        }
        out.posts.push_back(std::move(post));
    }
    if (in.bad()) throw IngestError("post stream became unreadable");
    return out;
}

TokenizedPost tokenize(const Post& post, const Stopwords& stopwords) {
    TokenizedPost out;
    out.user_id = post.user_id;
    out.timestamp = post.timestamp;

    std::string text = post.text;
    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    std::unordered_set<std::string> seen_mentions;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '@' && i + 1 < n && is_handle_byte(static_cast<unsigned char>(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < n && is_handle_byte(static_cast<unsigned char>(text[j]))) ++j;
            std::string handle = text.substr(i + 1, j - i - 1);
            if (seen_mentions.insert(handle).second) out.mentions.push_back(std::move(handle));
            i = j;
        } else if (starts_url(text, i)) {
            while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        } else if (c == '#' && i + 1 < n && is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < n && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
            std::string body = text.substr(i + 1, j - i - 1);
            out.hashtags.push_back(body);
            // Hashtag bodies are content tokens, subject to the stop list
            // like any other word (keeps tokenization idempotent).
            if (!stopwords.contains(body)) out.tokens.push_back(std::move(body));
            i = j;
        } else if (is_word_byte(c)) {
            std::size_t j = i;
            while (j < n && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
            std::string word = text.substr(i, j - i);
            if (!stopwords.contains(word)) out.tokens.push_back(std::move(word));
            i = j;
        } else {
            ++i;
        }
    }

    out.is_null_text = out.tokens.empty();
    return out;
}

std::vector<TokenizedPost> tokenize_all(const std::vector<Post>& posts,
                                        const Stopwords& stopwords) {
    std::vector<TokenizedPost> out;
    out.reserve(posts.size());
    for (const Post& p : posts) out.push_back(tokenize(p, stopwords));
    return out;
}

}  // namespace ettkit
