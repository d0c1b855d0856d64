#include "robustrate/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "robustrate/evaluate.hpp"
#include "robustrate/ingest.hpp"
#include "robustrate/simulate.hpp"

namespace robustrate::cli {

namespace {

class UnknownScenario : public Error {
public:
    explicit UnknownScenario(const std::string& name) : Error("unknown scenario '" + name + "'") {}
};

struct Options {
    RunConfig config;
    std::string score_method = "weighted";
    std::string backend = "parallel";
    std::string zero_trust = "raise";
    double scale_min = std::numeric_limits<double>::quiet_NaN();
    double scale_max = std::numeric_limits<double>::quiet_NaN();
    double scale_step = 1.0;
    std::string output;
    std::string sidecar;
    bool trace = false;

    // sweep
    std::string mode = "promotion";
    std::vector<double> fractions = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    std::size_t promote_below = 3;
    std::size_t demote_above = 8;
    std::string history = "none";
    std::size_t history_lists = 10;

    // positional / per-command
    std::string input;
    std::string scenario;
};

LevelMapping mapping_for(const Options& o) {
    LevelMapping m;
    m.target_levels = o.config.levels;
    m.source_min = std::isnan(o.scale_min) ? 1.0 : o.scale_min;
    m.source_max = std::isnan(o.scale_max) ? static_cast<double>(o.config.levels) : o.scale_max;
    m.source_step = o.scale_step;
    return m;
}

EngineParams params_for(const Options& o) {
    EngineParams p = o.config.engine_params();
    p.backend = o.backend == "serial" ? kernels::Backend::serial : kernels::Backend::parallel;
    p.zero_trust = o.zero_trust == "fallback" ? ZeroTrustPolicy::fallback : ZeroTrustPolicy::raise;
    return p;
}

// Collects data in memory and writes it to --output (or `out`) in one go.
class Sink {
public:
    Sink(const std::string& path, std::ostream& out) : path_(path), out_(out) {}
    std::ostream& stream() { return buffer_; }
    void flush() {
        if (path_.empty()) {
            out_ << buffer_.str();
            out_.flush();
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw Error("cannot write " + path_);
        f << buffer_.str();
    }

private:
    std::string path_;
    std::ostream& out_;
    std::ostringstream buffer_;
};

void write_sidecars(const std::string& prefix, const LoadedVotes& votes) {
    if (prefix.empty()) return;
    std::ofstream voters(prefix + ".voters.csv", std::ios::binary);
    std::ofstream lists(prefix + ".lists.csv", std::ios::binary);
    if (!voters || !lists) throw Error("cannot write sidecar files with prefix " + prefix);
    write_sidecar(voters, votes.voter_ids);
    write_sidecar(lists, votes.list_ids);
}

void print_trace(std::ostream& err, const RunResult& r) {
    for (std::size_t k = 0; k < r.objective_trace.size(); ++k)
        err << "iteration " << k << " objective " << format_number(r.objective_trace[k]) << '\n';
}

void report_run(std::ostream& err, const RunResult& r, bool trace) {
    if (trace) print_trace(err, r);
    err << (r.converged ? "converged" : "not converged") << " after " << r.iterations << " iterations, residual "
        << format_number(r.final_residual) << ", line search activations " << r.line_search_activations << '\n';
}

int cmd_rate(const Options& o, std::ostream& out, std::ostream& err) {
    const LoadedVotes votes = load_votes(o.input, mapping_for(o));
    if (votes.graph.num_votes() == 0) {
        err << "error: no votes in " << o.input << '\n';
        return kInputError;
    }
    const EngineParams params = params_for(o);
    const RunResult result = run(votes.graph, params);
    const auto scores = rate_all(votes.graph, result.rho, params.p_exponent);

    Sink sink(o.output, out);
    auto& csv = sink.stream();
    csv << "list_id,max_credibility_level,weighted_score,average_score,majority_level,iterations,converged\n";
    for (const RatingScore& s : scores) {
        if (s.no_data) continue;
        csv << votes.list_ids[s.list] << ',' << s.max_credibility_level << ',' << format_number(s.weighted_score) << ','
            << format_number(s.average_score) << ',' << s.majority_level << ',' << result.iterations << ','
            << (result.converged ? "true" : "false") << '\n';
    }
    sink.flush();
    write_sidecars(o.sidecar, votes);
    report_run(err, result, o.trace);
    return result.converged ? kSuccess : kNotConverged;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    const LoadedVotes votes = load_votes(o.input, mapping_for(o));
    if (votes.graph.num_votes() == 0) {
        err << "error: no votes in " << o.input << '\n';
        return kInputError;
    }
    AttackPlan plan = o.mode == "demotion" ? AttackPlan::demotion() : AttackPlan::promotion(o.config.levels);
    plan.promote_below = o.promote_below;
    plan.demote_above = o.demote_above;
    plan.history = o.history == "random" ? ColluderHistory::random : ColluderHistory::none;
    plan.history_lists = o.history_lists;

    const SweepReport report =
        attack_sweep(votes.graph, plan, o.fractions, {Method::ours, Method::averaging, Method::majority},
                     params_for(o), o.config.seed, o.config.score_method);
    if (report.target_count == 0) err << "warning: no list matches the " << o.mode << " selector; nothing injected\n";

    Sink sink(o.output, out);
    auto& csv = sink.stream();
    csv << "fraction,rms_ours,rms_averaging,rms_majority,target_count\n";
    for (std::size_t k = 0; k < report.levels.size(); ++k) {
        csv << format_number(report.levels[k]) << ',' << format_number(report.rms_by_method.at("ours")[k]) << ','
            << format_number(report.rms_by_method.at("averaging")[k]) << ','
            << format_number(report.rms_by_method.at("majority")[k]) << ',' << report.target_count << '\n';
    }
    sink.flush();
    err << report.target_count << " target lists, " << report.levels.size() << " sweep points"
        << (report.all_converged ? "" : ", some engine runs did not converge") << '\n';
    return report.all_converged ? kSuccess : kNotConverged;
}

VoteGraph scenario_graph(const std::string& name, std::uint64_t seed) {
    if (name == "scenario1") return gen_scenario1();
    if (name == "scenario2") return gen_scenario2(seed);
    throw UnknownScenario(name);
}

int cmd_scenario(const Options& o, std::ostream& out, std::ostream& err) {
    const VoteGraph graph = scenario_graph(o.scenario, o.config.seed);
    const EngineParams params = params_for(o);
    const RunResult result = run(graph, params);
    const bool with_initial = o.scenario == "scenario2";
    const CredibilityState initial = initialize(graph);
    const Index last = static_cast<Index>(graph.num_lists() - 1);

    Sink sink(o.output, out);
    auto& csv = sink.stream();
    csv << "scenario," << o.scenario << '\n';
    csv << "alpha," << format_number(params.alpha) << '\n';
    csv << "epsilon," << format_number(params.epsilon) << '\n';
    csv << "iterations," << result.iterations << '\n';
    csv << "converged," << (result.converged ? "true" : "false") << '\n';
    csv << "item";
    for (std::size_t l = 0; l < graph.num_lists(); ++l) csv << ",list" << (l + 1);
    if (with_initial) csv << ",initial_list" << (last + 1);
    csv << '\n';
    std::size_t rows = 0;
    for (std::size_t l = 0; l < graph.num_lists(); ++l) rows = std::max(rows, graph.items_on(static_cast<Index>(l)));
    for (std::size_t i = 0; i < rows; ++i) {
        csv << (i + 1);
        for (Index l = 0; l < graph.num_lists(); ++l) {
            csv << ',';
            if (i < graph.items_on(l)) csv << format_number(result.rho.list(l)[i]);
        }
        if (with_initial) csv << ',' << format_number(initial.list(last)[i]);
        csv << '\n';
    }
    csv << "winner";
    for (Index l = 0; l < graph.num_lists(); ++l)
        csv << ',' << (graph.has_votes(l) ? std::to_string(max_credibility_score(result.rho.list(l))) : "");
    csv << '\n';
    csv << "majority";
    for (Index l = 0; l < graph.num_lists(); ++l)
        csv << ',' << (graph.has_votes(l) ? std::to_string(majority_baseline(graph, l)) : "");
    csv << '\n';
    sink.flush();
    report_run(err, result, o.trace);
    return result.converged ? kSuccess : kNotConverged;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream&) {
    LoadedVotes votes;
    if (!o.scenario.empty()) {
        if (o.scenario == "corpus") {
            CorpusParams cp;
            cp.levels = o.config.levels;
            votes = with_index_ids(gen_corpus(cp, o.config.seed));
        } else {
            votes = with_index_ids(scenario_graph(o.scenario, o.config.seed));
        }
    } else if (!o.input.empty()) {
        votes = load_votes(o.input, mapping_for(o));
    } else {
        throw std::invalid_argument("export needs an input file or --scenario");
    }
    Sink sink(o.output, out);
    write_votes(sink.stream(), votes);
    sink.flush();
    write_sidecars(o.sidecar, votes);
    return kSuccess;
}

}  // namespace

void RunConfig::validate() const {
    engine_params().validate();
    if (levels < 2) throw std::invalid_argument("levels must be >= 2");
}

EngineParams RunConfig::engine_params() const {
    EngineParams p;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.max_iters = max_iters;
    p.p_exponent = p_exponent;
    return p;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Collusion-resistant rating through iterative voting", "robustrate"};
    app.set_config("--config", "", "key=value configuration file (flags override it)")
        ->envname("ROBUSTRATE_CONFIG");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    app.add_option("--alpha", o.config.alpha, "discrimination exponent (>= 1)")->capture_default_str();
    app.add_option("--epsilon", o.config.epsilon, "stop when successive credibilities differ by less")
        ->capture_default_str();
    app.add_option("--max-iters", o.config.max_iters, "iteration cap")->capture_default_str();
    app.add_option("--p", o.config.p_exponent, "exponent of the credibility-weighted score")->capture_default_str();
    app.add_option("--levels", o.config.levels, "number of rating levels")->capture_default_str();
    app.add_option("--seed", o.config.seed, "random seed")->capture_default_str();
    app.add_option("--score-method", o.score_method, "score used for our method in sweeps")
        ->check(CLI::IsMember({"weighted", "max_credibility"}))
        ->capture_default_str();
    app.add_option("--backend", o.backend, "kernel backend")
        ->check(CLI::IsMember({"serial", "parallel"}))
        ->capture_default_str();
    app.add_option("--zero-trust", o.zero_trust, "handling of lists whose voters all have zero trust")
        ->check(CLI::IsMember({"raise", "fallback"}))
        ->capture_default_str();
    app.add_option("--scale-min", o.scale_min, "lowest raw rating in input files (default 1)");
    app.add_option("--scale-max", o.scale_max, "highest raw rating in input files (default --levels)");
    app.add_option("--scale-step", o.scale_step, "raw rating step")->capture_default_str();
    app.add_option("--output,-o", o.output, "write data here instead of standard output");
    app.add_option("--sidecar", o.sidecar, "write PREFIX.voters.csv and PREFIX.lists.csv identifier tables");
    app.add_flag("--trace", o.trace, "print the objective trace to the diagnostic stream");
    app.add_option("--mode", o.mode, "attack mode")
        ->check(CLI::IsMember({"promotion", "demotion"}))
        ->capture_default_str();
    app.add_option("--fractions", o.fractions, "attack sizes as multiples of existing votes")->delimiter(',');
    app.add_option("--promote-below", o.promote_below, "promotion targets have majority level below this")
        ->capture_default_str();
    app.add_option("--demote-above", o.demote_above, "demotion targets have majority level above this")
        ->capture_default_str();
    app.add_option("--history", o.history, "prior votes of injected voters")
        ->check(CLI::IsMember({"none", "random"}))
        ->capture_default_str();
    app.add_option("--history-lists", o.history_lists, "random prior votes per injected voter")
        ->capture_default_str();

    auto* rate = app.add_subcommand("rate", "rate every product in a vote file");
    rate->fallthrough();
    rate->add_option("input", o.input, "user,item,rating[,timestamp] file")->required();

    auto* sweep = app.add_subcommand("sweep", "RMS change of each method under growing collusion attacks");
    sweep->fallthrough();
    sweep->add_option("input", o.input, "user,item,rating[,timestamp] file")->required();

    auto* scenario = app.add_subcommand("scenario", "run a built-in example election");
    scenario->fallthrough();
    scenario->add_option("name", o.scenario, "scenario1 | scenario2")->required();

    auto* exp = app.add_subcommand("export", "re-emit a vote file or a built-in data set");
    exp->fallthrough();
    exp->add_option("input", o.input, "vote file");
    exp->add_option("--scenario", o.scenario, "scenario1 | scenario2 | corpus");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        o.config.score_method = o.score_method == "max_credibility" ? ScoreMethod::max_credibility : ScoreMethod::weighted;
        o.config.validate();
        if (rate->parsed()) return cmd_rate(o, out, err);
        if (sweep->parsed()) return cmd_sweep(o, out, err);
        if (scenario->parsed()) return cmd_scenario(o, out, err);
        return cmd_export(o, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace robustrate::cli
