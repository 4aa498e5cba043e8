#include "ettkit/corpus.hpp"

#include <fstream>
#include <istream>

namespace ettkit {

// Keep in sync with data/stopwords_en.txt (test_corpus checks the two match).
// "rt" is listed so bare retweets tokenize to nothing.
static const char* const kDefaultStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "as", "at", "be", "because", "been", "before", "being", "below",
    "between", "both", "but", "by", "can", "could", "did", "do", "does", "doing",
    "down", "during", "each", "few", "for", "from", "further", "had", "has",
    "have", "having", "he", "her", "here", "hers", "herself", "him", "himself",
    "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off",
    "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "rt", "same", "she", "should", "so", "some", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under", "until",
    "up", "very", "was", "we", "were", "what", "when", "where", "which", "while",
    "who", "whom", "why", "will", "with", "would", "you", "your", "yours",
    "yourself", "yourselves",
};

const Stopwords& default_stopwords() {
    static const Stopwords words(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
    return words;
}

Stopwords load_stopwords(std::istream& in) {
    Stopwords words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

Stopwords load_stopwords_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open stop-word list: " + path);
    return load_stopwords(in);
}

}  // namespace ettkit
