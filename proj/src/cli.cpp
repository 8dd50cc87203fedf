#include "icd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "icd/bench.hpp"
#include "icd/generators.hpp"
#include "icd/message_sim.hpp"

namespace icd {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::string variant = "two-way-vertex";
    std::optional<double> q;
    std::string preset;
    std::string policy = "fifo";
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--variant", variant, "two-way-vertex | two-way-arc | queue-full");
        cmd->add_option("--q", q, "ranking probability, overrides --preset");
        cmd->add_option("--preset", preset, "sparse32 | balanced23 | full | msg-vertex | msg-arc");
        cmd->add_option("--policy", policy, "fifo | lifo | random");
        cmd->add_option("--seed", seed, "rank seed");
    }

    RunConfig config() const {
        RunConfig c;
        c.variant = parse_variant(variant);
        c.q = q;
        if (!preset.empty()) {
            c.preset = parse_preset(preset);
            if (!c.preset) {
                throw std::invalid_argument("unknown preset: " + preset);
            }
        }
        c.policy = parse_policy(policy);
        c.seed = seed;
        if (q && (*q < 0.0 || *q > 1.0)) {
            throw std::invalid_argument("--q must lie in [0, 1]");
        }
        return c;
    }
};

// Writes to --out when given, else to `out`.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : stream_{&fallback} {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw IoError("cannot write " + path);
            }
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

ArcSequence load(const std::string& path) {
    try {
        return read_edge_list_file(path);
    } catch (const EdgeListError& e) {
        throw IoError(e.what());
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Incremental cycle detection with recursive labels", "icd"};
    app.require_subcommand(1);

    // gen
    std::string gen_kind;
    GeneratorSpec gen;
    std::optional<std::size_t> gen_n;
    std::optional<std::size_t> gen_m;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "write a generated insertion sequence");
    gen_cmd->add_option("kind", gen_kind, "random-dag | layered | path | dense")->required();
    gen_cmd->add_option("--n", gen_n, "vertex count")->required();
    gen_cmd->add_option("--m", gen_m, "arc count (random-dag, layered)");
    gen_cmd->add_option("--layers", gen.layers, "layer count (layered)");
    gen_cmd->add_option("--max-degree", gen.max_degree, "in/out-degree bound (random-dag), 0 = none");
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_flag("--final-cycle", gen.final_cycle, "append one arc that closes a cycle");
    gen_cmd->add_option("--out", gen_out);

    // run
    std::string run_file;
    ConfigFlags run_flags;
    std::string run_out;
    std::string run_trace;
    auto* run_cmd = app.add_subcommand("run", "replay a sequence and print its run record as JSON");
    run_cmd->add_option("file", run_file)->required();
    run_flags.attach(run_cmd);
    run_cmd->add_option("--trace", run_trace, "write the message trace to this file");
    run_cmd->add_option("--out", run_out);

    // verify
    std::string verify_file;
    ConfigFlags verify_flags;
    std::size_t verify_seeds = 1;
    std::string verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "replay with oracle checks after every insertion");
    verify_cmd->add_option("file", verify_file)->required();
    verify_flags.attach(verify_cmd);
    verify_cmd->add_option("--seeds", verify_seeds, "rank seeds seed, seed+1, ...");
    verify_cmd->add_option("--out", verify_out);

    // bench
    std::vector<std::size_t> sizes;
    std::vector<std::string> variants{"two-way-vertex", "two-way-arc", "queue-full"};
    std::vector<std::string> presets;
    SweepSpec sweep;
    std::string bench_policy = "fifo";
    std::string bench_gen = "random-dag";
    bool fit = false;
    std::string fit_x = "n";
    std::string bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "sweep sizes x variants x presets x seeds, CSV out");
    bench_cmd->add_option("--sizes", sizes, "comma-separated vertex counts")->delimiter(',');
    bench_cmd->add_option("--variant", variants, "comma-separated variants")->delimiter(',');
    bench_cmd->add_option("--preset", presets, "comma-separated presets (default per variant)")->delimiter(',');
    bench_cmd->add_option("--q", sweep.q, "ranking probability, overrides presets");
    bench_cmd->add_option("--policy", bench_policy, "fifo | lifo | random");
    bench_cmd->add_option("--seed", sweep.seed, "first seed");
    bench_cmd->add_option("--seeds", sweep.seeds, "seeds per configuration");
    bench_cmd->add_option("--gen", bench_gen, "random-dag | layered | path | dense");
    bench_cmd->add_option("--arcs-per-vertex", sweep.arcs_per_vertex, "m = round(k * n)");
    bench_cmd->add_option("--layers", sweep.layers);
    bench_cmd->add_option("--max-degree", sweep.max_degree, "0 = unbounded");
    bench_cmd->add_option("--jobs", sweep.jobs, "worker threads");
    bench_cmd->add_flag("--fit", fit, "print log-log slopes of total messages to stderr");
    bench_cmd->add_option("--fit-x", fit_x, "n | m");
    bench_cmd->add_option("--out", bench_out);

    try {
        std::vector<std::string> reversed{args.rbegin(), args.rend()};
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*gen_cmd) {
            gen.kind = parse_generator_kind(gen_kind);
            gen.n = *gen_n;
            const bool needs_m = gen.kind == GeneratorKind::RandomDagOrder || gen.kind == GeneratorKind::Layered;
            if (needs_m && !gen_m) {
                throw std::invalid_argument("--m is required for " + gen_kind);
            }
            gen.m = gen_m.value_or(0);
            const ArcSequence seq = generate(gen);
            std::ostringstream comment;
            comment << generator_kind_name(gen.kind) << " n=" << gen.n << " m=" << seq.arcs.size()
                    << " seed=" << gen.seed << (gen.final_cycle ? " final-cycle" : "");
            Sink sink{gen_out, out};
            write_edge_list(sink.get(), seq, comment.str());
            return kExitOk;
        }
        if (*run_cmd) {
            const RunConfig config = run_flags.config();
            const ArcSequence seq = load(run_file);
            RunRecord record;
            if (run_trace.empty()) {
                record = run_record(seq, config);
            } else {
                std::ofstream trace{run_trace};
                if (!trace) {
                    throw IoError("cannot write " + run_trace);
                }
                record = run_record(seq, config, &trace);
            }
            Sink sink{run_out, out};
            sink.get() << to_json(record).dump(2) << '\n';
            return kExitOk;
        }
        if (*verify_cmd) {
            RunConfig config = verify_flags.config();
            const ArcSequence seq = load(verify_file);
            Sink sink{verify_out, out};
            bool all_ok = true;
            for (std::size_t s = 0; s < verify_seeds; ++s) {
                config.seed = verify_flags.seed + s;
                const VerifyReport report = verify_sequence(seq, config);
                sink.get() << "seed=" << config.seed << ' ';
                if (report.ok) {
                    sink.get() << "ok insertions=" << report.insertions_checked << '\n';
                } else {
                    all_ok = false;
                    sink.get() << "MISMATCH prefix=" << report.failing_prefix << ' ' << report.detail << '\n';
                }
            }
            return all_ok ? kExitOk : kExitMismatch;
        }
        if (*bench_cmd) {
            sweep.sizes = sizes;
            for (const auto& v : variants) {
                sweep.variants.push_back(parse_variant(v));
            }
            for (const auto& p : presets) {
                auto preset = parse_preset(p);
                if (!preset) {
                    throw std::invalid_argument("unknown preset: " + p);
                }
                sweep.presets.emplace_back(preset);
            }
            sweep.policy = parse_policy(bench_policy);
            sweep.generator = parse_generator_kind(bench_gen);
            if (fit_x != "n" && fit_x != "m") {
                throw std::invalid_argument("--fit-x must be n or m");
            }
            const auto rows = run_sweep(sweep);
            Sink sink{bench_out, out};
            sink.get() << kCsvHeader << '\n';
            for (const auto& r : rows) {
                sink.get() << csv_row(r) << '\n';
            }
            if (fit) {
                // Group by variant and preset, average total messages per size.
                std::map<std::pair<Variant, std::string>, std::map<double, std::pair<double, std::size_t>>> groups;
                for (const auto& r : rows) {
                    const std::string preset = r.preset ? std::string{preset_name(*r.preset)} : "default";
                    const double x = static_cast<double>(fit_x == "n" ? r.n : r.m);
                    auto& acc = groups[{r.variant, preset}][x];
                    acc.first += static_cast<double>(r.counters.total());
                    ++acc.second;
                }
                for (const auto& [key, points] : groups) {
                    std::vector<double> xs, ys;
                    for (const auto& [x, acc] : points) {
                        xs.push_back(x);
                        ys.push_back(acc.first / static_cast<double>(acc.second));
                    }
                    const FitResult f = fit_loglog(xs, ys);
                    err << "fit variant=" << variant_name(key.first) << " preset=" << key.second << " x=" << fit_x
                        << " slope=" << f.slope << " points=" << f.points << '\n';
                }
            }
            return kExitOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace icd
