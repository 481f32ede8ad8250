// Command-line front end: train | eval | explain | discretize | mine.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pdm/common.hpp"
#include "pdm/pipeline.hpp"

using namespace pdm;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("cannot read {}", path));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError(fmt::format("cannot write {}", path));
    f << text;
}

struct Flags {
    PipelineConfig cfg;
    std::string format = "long_csv";
    std::string out;
};

void add_common(CLI::App* app, Flags& f, bool mining) {
    app->add_option("--epsilon", f.cfg.epsilon, "variation sensitivity")->capture_default_str();
    app->add_option("--jobs", f.cfg.jobs, "worker threads")->capture_default_str();
    app->add_option("--format", f.format, "input format: long_csv, json_dir or log")->capture_default_str();
    app->add_option("--out", f.out, "output path");
    if (!mining) return;
    app->add_option("--theta", f.cfg.theta, "itemset support threshold")->capture_default_str();
    app->add_option("--max-depth", f.cfg.max_depth, "decision tree depth")->capture_default_str();
    app->add_option("--split", f.cfg.train_fraction, "training fraction of class segments")->capture_default_str();
    app->add_option("--seed", f.cfg.seed, "split seed")->capture_default_str();
}

// Either a raw dataset or an already discretised log.
std::string load_log_text(const std::string& input, const Flags& f, PhaseTimings* timings) {
    if (f.format == "log") return read_file(input);
    auto t0 = std::chrono::steady_clock::now();
    auto data = load_dataset(input, parse_format(f.format));
    (*timings)["load_index"] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto log = discretize(data, f.cfg, timings);
    t0 = std::chrono::steady_clock::now();
    auto text = serialize(log);
    (*timings)["serialize"] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explainable time-series classification through polyadic declarative specifications"};
    app.require_subcommand(1);

    Flags train_f, eval_f, disc_f, mine_f;
    std::string train_in, eval_model, eval_in, explain_model, disc_in, mine_in, frame_out;

    auto* train = app.add_subcommand("train", "discretise, mine and learn; writes a model bundle");
    train->add_option("dataset", train_in, "dataset path")->required();
    add_common(train, train_f, true);
    train_f.out = "model.json";

    auto* eval = app.add_subcommand("eval", "score a model on the held-out class segments");
    eval->add_option("model", eval_model, "model bundle")->required();
    eval->add_option("dataset", eval_in, "dataset path")->required();
    add_common(eval, eval_f, true);

    auto* expl = app.add_subcommand("explain", "print the per-class formulas of a model");
    expl->add_option("model", explain_model, "model bundle")->required();

    auto* disc = app.add_subcommand("discretize", "write the polyadic log of a dataset");
    disc->add_option("dataset", disc_in, "dataset path")->required();
    add_common(disc, disc_f, false);

    auto* mine = app.add_subcommand("mine", "mine a specification from a polyadic log");
    mine->add_option("log", mine_in, "polyadic log JSON")->required();
    add_common(mine, mine_f, true);
    mine->add_option("--frame", frame_out, "also dump the embedding frame as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*train) {
            PhaseTimings timings;
            auto text = load_log_text(train_in, train_f, &timings);
            auto r = train_from_log(text, train_f.cfg, timings);
            write_file(train_f.out, dump_model(r.model));
            nlohmann::json j;
            j["model"] = train_f.out;
            j["train_metrics"] = to_json(r.train_metrics);
            j["timings"] = r.timings;
            j["mined_clauses"] = r.model.mined_clauses;
            j["tree_clauses"] = r.model.clauses.size();
            j["warnings"] = r.spec.warnings;
            std::cout << j.dump(2) << "\n";
        } else if (*eval) {
            auto model = load_model(eval_model);
            // Unless overridden, reuse the split the model was trained with.
            PipelineConfig cfg = model.config;
            cfg.jobs = eval_f.cfg.jobs;
            if (eval->count("--split")) cfg.train_fraction = eval_f.cfg.train_fraction;
            if (eval->count("--seed")) cfg.seed = eval_f.cfg.seed;
            PolyadicLog log;
            if (eval_f.format == "log") {
                log = deserialize(read_file(eval_in));
            } else {
                auto data = load_dataset(eval_in, parse_format(eval_f.format));
                log = deserialize(serialize(discretize(data, cfg)));
            }
            auto r = evaluate_model(model, log, cfg);
            nlohmann::json j = to_json(r.metrics);
            j["test_segments"] = r.test_segments;
            j["unseen_classes"] = r.unseen_classes;
            std::cout << j.dump(2) << "\n";
            if (!eval_f.out.empty()) write_file(eval_f.out, j.dump(2) + "\n");
        } else if (*expl) {
            std::cout << explain(load_model(explain_model));
        } else if (*disc) {
            disc_f.cfg.validate();
            PhaseTimings timings;
            auto text = load_log_text(disc_in, disc_f, &timings);
            if (disc_f.out.empty()) std::cout << text;
            else write_file(disc_f.out, text);
            std::cerr << nlohmann::json(timings).dump() << "\n";
        } else if (*mine) {
            auto r = train_from_log(read_file(mine_in), mine_f.cfg);
            for (const auto& w : r.spec.warnings) std::cerr << "warning: " << w << "\n";
            auto text = spec_json(r).dump(2) + "\n";
            if (mine_f.out.empty()) std::cout << text;
            else write_file(mine_f.out, text);
            if (!frame_out.empty()) write_file(frame_out, r.spec.frame.to_csv());
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
