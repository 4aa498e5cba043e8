// ettkit command line: synth | ett | detect | graph | group | report.
// Every run writes its artifacts plus a manifest.json recording the effective
// parameters, seed and input digests; a rerun with the same manifest
// reproduces the outputs byte for byte. Partial outputs are removed when a
// run fails.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ettkit/corpus.hpp"
#include "ettkit/csv.hpp"
#include "ettkit/detect.hpp"
#include "ettkit/ett.hpp"
#include "ettkit/groups.hpp"
#include "ettkit/kcore.hpp"
#include "ettkit/mention_graph.hpp"
#include "ettkit/pipeline.hpp"
#include "ettkit/report.hpp"
#include "ettkit/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ettkit::IngestError("cannot open input: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ettkit::IngestError("cannot read input: " + path.string());
    return std::move(buf).str();
}

// Collects artifacts for one run; on failure everything written so far is
// removed so no partial outputs survive.
class RunOutputs {
public:
    explicit RunOutputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output: " + path.string());
        out << content;
        out.flush();
        if (!out.good()) throw std::runtime_error("cannot write output: " + path.string());
        written_.push_back(name);
    }

    void finish(json manifest) {
        manifest["outputs"] = written_;
        write("manifest.json", manifest.dump(2) + "\n");
    }

    void discard() {
        for (const std::string& name : written_) {
            std::error_code ec;
            fs::remove(dir_ / name, ec);
        }
        written_.clear();
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

struct CommonOptions {
    std::string input;
    std::string out_dir;
    std::string stopwords_path;
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;
    std::int64_t mai = 604'800;
    ettkit::DetectConfig detect;
    int periods = 1;
    double hist_bin_width = 0.05;
};

void add_detect_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--delta", opt.detect.delta, "volume selectivity (mean + delta*std)")
        ->capture_default_str();
    cmd->add_option("--lambda", opt.detect.lambda, "narrowness selectivity")
        ->capture_default_str();
    cmd->add_option("--d", opt.detect.energy_threshold,
                    "energy share for the exact measure")
        ->capture_default_str();
    cmd->add_option("--matrix-budget", opt.detect.matrix_budget,
                    "max N*D cells before switching to the randomized measure")
        ->capture_default_str();
    cmd->add_option("--seed", opt.detect.seed, "global seed")->capture_default_str();
    cmd->add_option("--rm-k", opt.detect.rm.rank,
                    "randomized rank (0 = max(10, p/10))")
        ->capture_default_str();
    cmd->add_option("--rm-oversample", opt.detect.rm.oversample, "sketch oversampling")
        ->capture_default_str();
    cmd->add_option("--rm-power", opt.detect.rm.power_iters, "power iterations")
        ->capture_default_str();
    cmd->add_option("--threads", opt.detect.threads, "worker threads (0 = default)")
        ->capture_default_str();
}

void add_window_flags(CLI::App* cmd, CommonOptions& opt, bool with_mai) {
    cmd->add_option("--window-start", opt.window_start, "window start, epoch seconds")
        ->required();
    cmd->add_option("--window-end", opt.window_end, "window end, epoch seconds (exclusive)")
        ->required();
    if (with_mai)
        cmd->add_option("--mai", opt.mai, "minimal analytic interval, seconds")
            ->capture_default_str();
}

json detect_params_json(const CommonOptions& opt) {
    return json{{"delta", opt.detect.delta},
                {"lambda", opt.detect.lambda},
                {"d", opt.detect.energy_threshold},
                {"matrix_budget", opt.detect.matrix_budget},
                {"seed", opt.detect.seed},
                {"rm_k", opt.detect.rm.rank},
                {"rm_oversample", opt.detect.rm.oversample},
                {"rm_power", opt.detect.rm.power_iters},
                {"window_start", opt.window_start},
                {"window_end", opt.window_end}};
}

struct LoadedCorpus {
    std::vector<ettkit::TokenizedPost> posts;
    std::size_t malformed = 0;
    json input_manifest;
};

LoadedCorpus load_corpus(const CommonOptions& opt) {
    const std::string bytes = read_file(opt.input);
    std::istringstream stream(bytes);
    ettkit::ParsedPosts parsed = ettkit::parse_posts(stream);
    if (parsed.malformed > 0)
        std::cerr << "warning: skipped " << parsed.malformed << " malformed line(s)\n";

    ettkit::Stopwords stopwords;
    json stop_manifest;
    if (opt.stopwords_path.empty()) {
        stopwords = ettkit::default_stopwords();
        stop_manifest = "builtin";
    } else {
        const std::string stop_bytes = read_file(opt.stopwords_path);
        std::istringstream stop_stream(stop_bytes);
        stopwords = ettkit::load_stopwords(stop_stream);
        stop_manifest = json{{"path", opt.stopwords_path},
                             {"fnv1a64", fnv1a64_hex(stop_bytes)}};
    }

    LoadedCorpus corpus;
    corpus.posts = ettkit::tokenize_all(parsed.posts, stopwords);
    corpus.malformed = parsed.malformed;
    corpus.input_manifest = json{{"path", opt.input},
                                 {"fnv1a64", fnv1a64_hex(bytes)},
                                 {"records", parsed.posts.size()},
                                 {"malformed", parsed.malformed},
                                 {"stopwords", stop_manifest}};
    return corpus;
}

std::string group_csv(const std::vector<std::pair<std::string,
                                                  std::optional<ettkit::GroupMetrics>>>& rows) {
    std::string out = "period,coreness1,coreness2,cnr,dr\n";
    for (const auto& [label, metrics] : rows) {
        if (!metrics) {
            out += ettkit::csv::join_row({label, "n/a", "n/a", "n/a", "n/a"});
            continue;
        }
        out += ettkit::csv::join_row(
            {label, ettkit::csv::number(static_cast<std::int64_t>(metrics->group.k1)),
             ettkit::csv::number(static_cast<std::int64_t>(metrics->k2)),
             metrics->cnr ? ettkit::csv::number(*metrics->cnr) : "n/a",
             metrics->dr ? ettkit::csv::number(*metrics->dr) : "n/a"});
    }
    return out;
}

int run_synth(const ettkit::SynthConfig& config, const std::string& out_dir) {
    RunOutputs outputs(out_dir);
    try {
        const ettkit::SynthCorpus corpus = ettkit::generate(config);
        std::ostringstream posts;
        ettkit::write_posts_jsonl(posts, corpus.posts);
        outputs.write("posts.jsonl", posts.str());
        std::ostringstream truth;
        ettkit::write_ground_truth_csv(truth, corpus.truth);
        outputs.write("ground_truth.csv", truth.str());
        outputs.finish(json{{"subcommand", "synth"},
                            {"parameters",
                             {{"seed", config.seed},
                              {"n_regular", config.n_regular},
                              {"n_ett_diffuse", config.n_ett_diffuse},
                              {"n_planted", config.n_planted},
                              {"window_start", config.window_start},
                              {"n_mais", config.n_mais},
                              {"mai_length", config.mai_length},
                              {"regular_count_min", config.regular_count_min},
                              {"regular_count_max", config.regular_count_max},
                              {"extreme_count", config.extreme_count},
                              {"volume_margin", config.volume_margin},
                              {"planted_topics", config.planted_topics},
                              {"planted_noise", config.planted_noise}}}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_ett(CommonOptions& opt, double delta) {
    RunOutputs outputs(opt.out_dir);
    try {
        LoadedCorpus corpus = load_corpus(opt);
        auto parts = ettkit::partition(corpus.posts, opt.window_start, opt.window_end, opt.mai);
        if (parts.dropped > 0)
            std::cerr << "notice: " << parts.dropped << " post(s) outside the window\n";
        const ettkit::ActivityMatrix activity = ettkit::activity_matrix(parts);
        const ettkit::EttClassification cls = ettkit::classify_ett(activity, delta);
        std::ostringstream csv;
        ettkit::write_ett_csv(csv, cls);
        outputs.write("ett.csv", csv.str());
        outputs.finish(json{{"subcommand", "ett"},
                            {"parameters",
                             {{"delta", delta},
                              {"window_start", opt.window_start},
                              {"window_end", opt.window_end},
                              {"mai", opt.mai}}},
                            {"input", corpus.input_manifest}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_detect(CommonOptions& opt) {
    RunOutputs outputs(opt.out_dir);
    try {
        LoadedCorpus corpus = load_corpus(opt);
        opt.detect.period_start = opt.window_start;
        opt.detect.period_end = opt.window_end;
        const ettkit::AnomalousReport report = ettkit::detect_anomalous(corpus.posts, opt.detect);
        if (!report.notice.empty()) std::cerr << "notice: " << report.notice << "\n";

        std::ostringstream csv;
        ettkit::write_report_csv(csv, report);
        outputs.write("report.csv", csv.str());
        std::ostringstream summary;
        ettkit::write_report_summary(summary, report);
        outputs.write("summary.txt", summary.str());
        outputs.finish(json{{"subcommand", "detect"},
                            {"parameters", detect_params_json(opt)},
                            {"input", corpus.input_manifest}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_graph(CommonOptions& opt) {
    RunOutputs outputs(opt.out_dir);
    try {
        LoadedCorpus corpus = load_corpus(opt);
        opt.detect.period_start = opt.window_start;
        opt.detect.period_end = opt.window_end;
        const auto analyses = ettkit::analyze_periods(corpus.posts, opt.detect,
                                                      opt.window_start, opt.window_end, 1);
        const ettkit::PeriodAnalysis& pa = analyses.front();

        std::ostringstream edges;
        ettkit::write_edge_list(edges, pa.graph);
        outputs.write("mention_edges.txt", edges.str());
        std::ostringstream labels;
        ettkit::write_node_labels_csv(labels, pa.graph);
        outputs.write("node_labels.csv", labels.str());

        for (const ettkit::PatternType type :
             {ettkit::PatternType::type1, ettkit::PatternType::type2,
              ettkit::PatternType::type3}) {
            const ettkit::PatternSubgraph sub = ettkit::extract_pattern(pa.graph, type);
            const ettkit::CorenessMap cores = ettkit::core_decomposition(sub.graph);
            std::vector<int> anomalous;
            for (int v = 0; v < static_cast<int>(sub.graph.size()); ++v)
                if (sub.graph.category(v) == ettkit::UserCategory::anomalous)
                    anomalous.push_back(v);

            const std::string tag = "pattern" + std::to_string(static_cast<int>(type));
            std::ostringstream coreness;
            ettkit::write_coreness_csv(coreness, sub.graph, cores);
            outputs.write(tag + "_coreness.csv", coreness.str());
            std::ostringstream ccdf;
            ettkit::write_ccdf_csv(ccdf, ettkit::coreness_ccdf(cores, anomalous));
            outputs.write(tag + "_ccdf.csv", ccdf.str());
        }

        outputs.finish(json{{"subcommand", "graph"},
                            {"parameters", detect_params_json(opt)},
                            {"input", corpus.input_manifest}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_group_pipeline(CommonOptions& opt) {
    RunOutputs outputs(opt.out_dir);
    try {
        LoadedCorpus corpus = load_corpus(opt);
        const auto analyses = ettkit::analyze_periods(
            corpus.posts, opt.detect, opt.window_start, opt.window_end, opt.periods);
        std::vector<std::pair<std::string, std::optional<ettkit::GroupMetrics>>> rows;
        for (const auto& pa : analyses) {
            if (!pa.metrics)
                std::cerr << "notice: no anomalous group in period " << pa.period_label << "\n";
            rows.emplace_back(pa.period_label, pa.metrics);
        }
        outputs.write("group.csv", group_csv(rows));
        json params = detect_params_json(opt);
        params["periods"] = opt.periods;
        outputs.finish(json{{"subcommand", "group"},
                            {"parameters", params},
                            {"input", corpus.input_manifest}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_group_edges(const std::string& edges_path, const std::string& labels_path,
                    const std::string& out_dir) {
    RunOutputs outputs(out_dir);
    try {
        const std::string edge_bytes = read_file(edges_path);
        const std::string label_bytes = read_file(labels_path);
        std::istringstream edges(edge_bytes), labels(label_bytes);
        const ettkit::MentionGraph graph = ettkit::read_graph_files(edges, labels);
        const auto metrics = ettkit::group_metrics(graph);
        if (!metrics) std::cerr << "notice: no anomalous group in the given graph\n";
        outputs.write("group.csv", group_csv({{"edges", metrics}}));
        outputs.finish(json{{"subcommand", "group"},
                            {"parameters", {{"mode", "edges"}}},
                            {"inputs",
                             {{"edges",
                               {{"path", edges_path}, {"fnv1a64", fnv1a64_hex(edge_bytes)}}},
                              {"labels",
                               {{"path", labels_path},
                                {"fnv1a64", fnv1a64_hex(label_bytes)}}}}}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

int run_report(CommonOptions& opt) {
    RunOutputs outputs(opt.out_dir);
    try {
        LoadedCorpus corpus = load_corpus(opt);
        const auto analyses = ettkit::analyze_periods(
            corpus.posts, opt.detect, opt.window_start, opt.window_end, opt.periods);

        std::vector<ettkit::PeriodReport> period_reports;
        std::vector<ettkit::NullTextRow> null_rows;
        std::vector<std::pair<std::string, ettkit::HashtagStats>> stats_rows;
        for (std::size_t i = 0; i < analyses.size(); ++i) {
            const ettkit::PeriodAnalysis& pa = analyses[i];
            ettkit::PeriodReport pr{pa.period_label, pa.detect};
            null_rows.push_back(ettkit::null_text_row(pr, pa.posts));
            period_reports.push_back(std::move(pr));

            if (pa.metrics) {
                const auto dists = ettkit::hashtag_distributions(
                    pa.metrics->group, pa.posts, ettkit::labels_from_report(pa.detect));
                stats_rows.emplace_back(pa.period_label, ettkit::hashtag_stats(dists));
            }

            std::vector<double> scores;
            for (const auto& row : pa.detect.rows)
                if (row.narrowness) scores.push_back(*row.narrowness);
            std::ostringstream hist;
            ettkit::write_histogram_csv(hist, ettkit::histogram(scores, opt.hist_bin_width));
            outputs.write("narrowness_hist_p" + std::to_string(i) + ".csv", hist.str());
        }

        std::ostringstream summary;
        ettkit::write_summary_csv(summary, ettkit::summary_table(period_reports));
        outputs.write("summary.csv", summary.str());
        std::ostringstream null_text;
        ettkit::write_null_text_csv(null_text, null_rows);
        outputs.write("null_text.csv", null_text.str());
        std::ostringstream stats;
        ettkit::write_hashtag_stats_csv(stats, stats_rows);
        outputs.write("hashtag_stats.csv", stats.str());

        json params = detect_params_json(opt);
        params["periods"] = opt.periods;
        params["hist_bin_width"] = opt.hist_bin_width;
        outputs.finish(json{{"subcommand", "report"},
                            {"parameters", params},
                            {"input", corpus.input_manifest}});
        return 0;
    } catch (...) {
        outputs.discard();
        throw;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratify social-media users by volume and interest narrowness, "
                 "detect anomalous users and analyze their mention network"};
    app.require_subcommand(1);

    CommonOptions opt;
    ettkit::SynthConfig synth_config;

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with planted users");
    synth->add_option("--out", opt.out_dir, "output directory")->required();
    synth->add_option("--seed", synth_config.seed, "generator seed")->capture_default_str();
    synth->add_option("--regular", synth_config.n_regular, "regular users")
        ->capture_default_str();
    synth->add_option("--diffuse", synth_config.n_ett_diffuse, "diffuse extreme tweeters")
        ->capture_default_str();
    synth->add_option("--planted", synth_config.n_planted, "planted clique size")
        ->capture_default_str();
    synth->add_option("--window-start", synth_config.window_start, "window start")
        ->capture_default_str();
    synth->add_option("--mais", synth_config.n_mais, "number of MAIs")->capture_default_str();
    synth->add_option("--mai", synth_config.mai_length, "MAI length, seconds")
        ->capture_default_str();
    synth->add_option("--regular-count-min", synth_config.regular_count_min, "")
        ->capture_default_str();
    synth->add_option("--regular-count-max", synth_config.regular_count_max, "")
        ->capture_default_str();
    synth->add_option("--extreme-count", synth_config.extreme_count,
                      "tweets per planted/diffuse user")
        ->capture_default_str();
    synth->add_option("--planted-topics", synth_config.planted_topics, "1 or 2")
        ->capture_default_str();
    synth->add_option("--planted-noise", synth_config.planted_noise, "count flip probability")
        ->capture_default_str();

    auto* ett = app.add_subcommand("ett", "per-MAI extreme-tweeter classification");
    double ett_delta = 1.5;
    ett->add_option("--input", opt.input, "posts.jsonl")->required();
    ett->add_option("--out", opt.out_dir, "output directory")->required();
    ett->add_option("--stopwords", opt.stopwords_path, "stop-word list file");
    ett->add_option("--delta", ett_delta, "volume selectivity")->capture_default_str();
    add_window_flags(ett, opt, true);

    auto* detect = app.add_subcommand("detect", "anomalous-user detection over a period");
    detect->add_option("--input", opt.input, "posts.jsonl")->required();
    detect->add_option("--out", opt.out_dir, "output directory")->required();
    detect->add_option("--stopwords", opt.stopwords_path, "stop-word list file");
    add_window_flags(detect, opt, false);
    add_detect_flags(detect, opt);

    auto* graph = app.add_subcommand("graph", "mention graph, patterns, coreness and CCDFs");
    graph->add_option("--input", opt.input, "posts.jsonl")->required();
    graph->add_option("--out", opt.out_dir, "output directory")->required();
    graph->add_option("--stopwords", opt.stopwords_path, "stop-word list file");
    add_window_flags(graph, opt, false);
    add_detect_flags(graph, opt);

    auto* group = app.add_subcommand("group", "anomalous group coreness, CNR and DR");
    std::string edges_path, labels_path;
    group->add_option("--input", opt.input, "posts.jsonl (pipeline mode)");
    group->add_option("--edges", edges_path, "edge list (precomputed-graph mode)");
    group->add_option("--labels", labels_path, "node labels CSV (with --edges)");
    group->add_option("--out", opt.out_dir, "output directory")->required();
    group->add_option("--stopwords", opt.stopwords_path, "stop-word list file");
    group->add_option("--periods", opt.periods, "split the window into N periods")
        ->capture_default_str();
    group->add_option("--window-start", opt.window_start, "window start, epoch seconds");
    group->add_option("--window-end", opt.window_end, "window end, epoch seconds");
    add_detect_flags(group, opt);

    auto* report = app.add_subcommand("report", "summary, null-text, hashtag and histogram tables");
    report->add_option("--input", opt.input, "posts.jsonl")->required();
    report->add_option("--out", opt.out_dir, "output directory")->required();
    report->add_option("--stopwords", opt.stopwords_path, "stop-word list file");
    report->add_option("--periods", opt.periods, "split the window into N periods")
        ->capture_default_str();
    report->add_option("--hist-bin-width", opt.hist_bin_width, "narrowness histogram bin")
        ->capture_default_str();
    add_window_flags(report, opt, false);
    add_detect_flags(report, opt);

    // One config file for the whole run; keys live in a [subcommand] section
    // and command-line flags win. Fallthrough lets --config follow the
    // subcommand name.
    app.set_config("--config", "", "read options from an INI file (flags win)");
    for (CLI::App* cmd : {synth, ett, detect, graph, group, report}) cmd->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(synth_config, opt.out_dir);
        if (ett->parsed()) return run_ett(opt, ett_delta);
        if (detect->parsed()) return run_detect(opt);
        if (graph->parsed()) return run_graph(opt);
        if (group->parsed()) {
            if (!edges_path.empty() || !labels_path.empty()) {
                if (edges_path.empty() || labels_path.empty())
                    throw std::invalid_argument("--edges and --labels go together");
                return run_group_edges(edges_path, labels_path, opt.out_dir);
            }
            if (opt.input.empty())
                throw std::invalid_argument("group needs --input or --edges/--labels");
            if (opt.window_start >= opt.window_end)
                throw std::invalid_argument("group needs --window-start < --window-end");
            return run_group_pipeline(opt);
        }
        if (report->parsed()) return run_report(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
