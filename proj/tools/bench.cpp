// Compares the serial reference implementations against the OpenMP kernels:
// k-core decomposition on a random mention graph and batch narrowness scoring
// over synthetic users. Results are checked for equality before timing is
// reported.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ettkit/corpus.hpp"
#include "ettkit/detect.hpp"
#include "ettkit/kcore.hpp"
#include "ettkit/mention_graph.hpp"
#include "ettkit/synth.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ettkit::MentionGraph random_graph(int n, int avg_degree, std::uint64_t seed) {
    ettkit::MentionGraph g;
    for (int v = 0; v < n; ++v)
        g.add_node("u" + std::to_string(v), ettkit::UserCategory::regular);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const long long edges = static_cast<long long>(n) * avg_degree / 2;
    for (long long e = 0; e < edges; ++e) g.add_edge(pick(rng), pick(rng));
    g.finish();
    return g;
}

void bench_kcore() {
    const ettkit::MentionGraph g = random_graph(200'000, 16, 7);
    std::printf("k-core decomposition: %zu nodes, %zu edges\n", g.size(), g.edge_count());

    auto t0 = Clock::now();
    const ettkit::CorenessMap serial = ettkit::core_decomposition_serial(g);
    const double serial_s = seconds_since(t0);

    t0 = Clock::now();
    const ettkit::CorenessMap parallel = ettkit::core_decomposition_parallel(g);
    const double parallel_s = seconds_since(t0);

    if (serial.coreness != parallel.coreness || serial.degeneracy != parallel.degeneracy) {
        std::printf("  MISMATCH between serial and parallel results\n");
        std::exit(1);
    }
    std::printf("  degeneracy %d | serial %.3fs | openmp %.3fs | speedup %.2fx\n",
                serial.degeneracy, serial_s, parallel_s, serial_s / parallel_s);
}

void bench_narrowness() {
    ettkit::SynthConfig config;
    config.n_regular = 2200;
    config.n_ett_diffuse = 150;
    config.extreme_count = 300;
    config.diffuse_vocab = 800;
    const ettkit::SynthCorpus corpus = ettkit::generate(config);
    const auto posts = ettkit::tokenize_all(corpus.posts, ettkit::default_stopwords());

    ettkit::DetectConfig cfg;
    cfg.period_start = config.window_start;
    cfg.period_end = config.window_end();
    std::printf("narrowness scoring: %d extreme users, %d tweets each\n",
                config.n_ett_diffuse + config.n_planted, config.extreme_count);

    cfg.threads = 1;
    auto t0 = Clock::now();
    const ettkit::AnomalousReport serial = ettkit::detect_anomalous(posts, cfg);
    const double serial_s = seconds_since(t0);

    cfg.threads = 0;
    t0 = Clock::now();
    const ettkit::AnomalousReport parallel = ettkit::detect_anomalous(posts, cfg);
    const double parallel_s = seconds_since(t0);

    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        if (serial.rows[i].narrowness != parallel.rows[i].narrowness ||
            serial.rows[i].is_anomalous != parallel.rows[i].is_anomalous) {
            std::printf("  MISMATCH between serial and parallel scores\n");
            std::exit(1);
        }
    }
    std::printf("  method %s | serial %.3fs | openmp %.3fs | speedup %.2fx\n",
                serial.method == ettkit::NarrownessMethod::exact ? "EM" : "RM", serial_s,
                parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; comparing identical serial paths\n");
#endif
    bench_kcore();
    bench_narrowness();
    return 0;
}
