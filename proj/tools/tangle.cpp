// Command-line front end: enumerate / merge / renorm / oracle / fit /
// conjecture / replay. Exit codes: 0 success, 1 runtime failure, 2 invalid
// flags or malformed input, 3 cache format-version mismatch, 4 nonzero
// renormalization residual, 5 insufficient table order.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tangle/asymptotics.hpp"
#include "tangle/cache.hpp"
#include "tangle/count_table.hpp"
#include "tangle/enumerate.hpp"
#include "tangle/errors.hpp"
#include "tangle/manifest.hpp"
#include "tangle/oracle.hpp"
#include "tangle/renorm.hpp"

using namespace tangle;

namespace {

// ---------------------------------------------------------------- plumbing

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout << bytes;
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + path);
    os << bytes;
    if (!os) throw Error("short write to " + path);
}

CountTable load_table(const std::string& path) {
    std::istringstream is(slurp(path));
    return CountTable::read_csv(is);
}

// Manifest written next to the data file (or to an explicit path); "-" output
// gets a manifest only when a path was given for it.
void emit_manifest(RunManifest m, const std::string& out, const std::string& manifest_path,
                   double seconds) {
    m.seconds = seconds;
    m.stamp_hash();
    std::string path = manifest_path;
    if (path.empty()) {
        if (out == "-") return;
        path = out + ".manifest.json";
    }
    spill(path, m.to_json());
    std::fprintf(stderr, "wrote manifest %s\n", path.c_str());
}

std::string flag01(bool b) { return b ? "1" : "0"; }

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- enumerate

struct EnumArgs {
    int legs = 2;
    int max_vertices = 0;
    bool tangencies = false;
    bool disconnected = false;
    int threads = 1;
    uint64_t shard_states = 500000;
    bool no_cache = false;
    std::string out = "-";
    std::string manifest_path;
};

int run_enumerate(const EnumArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const CacheKey key{a.legs, a.max_vertices, a.tangencies, a.disconnected};
    const std::string dir = cache_directory();
    std::optional<CacheEntry> hit;
    if (!a.no_cache) hit = read_cache_entry(dir, key);  // CacheVersionMismatch -> exit 3

    CountTable table;
    if (hit && hit->complete) {
        std::fprintf(stderr, "cache hit: %s\n", key.text().c_str());
        table = std::move(hit->table);
    } else {
        EnumerateOptions opt;
        opt.allow_tangencies = a.tangencies;
        opt.allow_disconnected = a.disconnected;
        opt.threads = a.threads;
        opt.final_shard_states = a.shard_states;
        CountTable resume_table;
        if (hit && !hit->frontier.empty()) {
            std::fprintf(stderr, "resuming from cached level %d\n", hit->level);
            resume_table = std::move(hit->table);
            opt.resume_level = hit->level + 1;
            opt.resume_frontier = std::move(hit->frontier);
            opt.resume_table = &resume_table;
        }
        opt.on_level = [&](const LevelCheckpoint& ck) {
            std::fprintf(stderr, "level %2d: %llu states, %.2fs\n", ck.level,
                         static_cast<unsigned long long>(ck.states), ck.seconds);
            if (!a.no_cache) {
                std::string frontier = ck.frontier();
                if (!frontier.empty())
                    write_cache_entry(dir, key,
                                      {ck.level, false, *ck.table, std::move(frontier)});
            }
        };
        table = enumerate(a.legs, a.max_vertices, opt);
        if (table.max_order() < a.max_vertices)
            throw Error("enumeration stopped early at order " +
                        std::to_string(table.max_order()) + " (out of memory?)");
        if (!a.no_cache) write_cache_entry(dir, key, {a.max_vertices, true, table, ""});
    }

    std::ostringstream csv;
    table.write_csv(csv);
    spill(a.out, csv.str());

    RunManifest m;
    m.command = "enumerate";
    m.parameters = {{"legs", std::to_string(a.legs)},
                    {"max-vertices", std::to_string(a.max_vertices)},
                    {"tangencies", flag01(a.tangencies)},
                    {"allow-disconnected", flag01(a.disconnected)},
                    {"threads", std::to_string(a.threads)},
                    {"shard-states", std::to_string(a.shard_states)},
                    {"no-cache", flag01(a.no_cache)},
                    {"out", a.out}};
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- merge

struct MergeArgs {
    std::string crossings;
    std::string mixed;
    std::string out = "-";
    std::string manifest_path;
};

int run_merge(const MergeArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const CountTable merged = merge_vertex_orders(load_table(a.crossings), load_table(a.mixed));
    std::ostringstream csv;
    merged.write_csv(csv);
    spill(a.out, csv.str());
    std::fprintf(stderr, "merged table covers order %d\n", merged.max_order());

    RunManifest m;
    m.command = "merge";
    m.parameters = {{"crossings", a.crossings}, {"mixed", a.mixed}, {"out", a.out}};
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- renorm

struct RenormArgs {
    std::string counts2;
    std::string counts4;
    std::string counts6;
    int order = 0;
    std::string class_map_path;
    std::string out = "-";
    std::string series_json;
    std::string manifest_path;
};

int run_renorm(const RenormArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const CountTable table2 = load_table(a.counts2);
    const CountTable table4 = load_table(a.counts4);
    const ClassMap cmap =
        a.class_map_path.empty() ? default_class_map() : class_map_from_json(slurp(a.class_map_path));

    const CouplingSolution sol = solve_couplings(table2, table4, a.order);
    std::map<std::string, GSeries> series = tangle_series(table4, sol, cmap);
    if (!a.counts6.empty()) {
        for (auto& [name, s] : tangle_series(load_table(a.counts6), sol, cmap))
            series.emplace(name, std::move(s));
    }

    std::ostringstream csv;
    csv << "type,p,k,count\n";
    for (const auto& [name, s] : series)
        for (int p = 0; p <= s.truncation_order(); ++p) {
            const LoopPoly& c = s.coeff(p);
            for (int k = 0; k <= c.degree(); ++k)
                if (c.coeff(k) != 0)
                    csv << name << "," << p << "," << k << "," << c.coeff(k).get_str() << "\n";
        }
    spill(a.out, csv.str());

    if (!a.series_json.empty()) {
        nlohmann::json doc;
        doc["t"] = nlohmann::json::parse(sol.t.to_json());
        doc["g1"] = nlohmann::json::parse(sol.g1.to_json());
        doc["g2"] = nlohmann::json::parse(sol.g2.to_json());
        for (const auto& [name, s] : series) doc[name] = nlohmann::json::parse(s.to_json());
        spill(a.series_json, doc.dump(2) + "\n");
    }

    RunManifest m;
    m.command = "renorm";
    m.parameters = {{"counts2", a.counts2}, {"counts4", a.counts4},
                    {"order", std::to_string(a.order)}, {"out", a.out}};
    if (!a.counts6.empty()) m.parameters["counts6"] = a.counts6;
    if (!a.class_map_path.empty()) m.parameters["class-map"] = a.class_map_path;
    if (!a.series_json.empty()) m.parameters["series-json"] = a.series_json;
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    int legs = 2;
    int vertices = 0;
    bool tangencies = false;
    bool disconnected = false;
    bool check_2pi = false;
    uint64_t node_budget = 400000000;
    std::string out = "-";
    std::string manifest_path;
};

int run_oracle(const OracleArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    OracleOptions opt;
    opt.node_budget = a.node_budget;
    opt.connected = !a.disconnected;

    std::ostringstream body;
    if (a.check_2pi) {
        if (a.legs != 2)
            throw UnsupportedLegCount("--check-2pi runs on 2 legs, got " +
                                      std::to_string(a.legs));
        body << "p,count_total,count_2pi\n";
        for (const TwoPiRow& row : two_pi_census(a.vertices, opt))
            body << row.p << "," << row.total << "," << row.two_pi << "\n";
    } else {
        CountTable merged(a.legs, a.vertices);
        for (int v = 0; v <= a.vertices; ++v)
            for (int p2 = 0; p2 <= (a.tangencies ? v : 0); ++p2) {
                const CountTable cell = oracle_enumerate(a.legs, v - p2, p2, opt);
                for (const auto& [key, poly] : cell.entries())
                    merged.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), poly);
            }
        merged.write_csv(body);
    }
    spill(a.out, body.str());

    RunManifest m;
    m.command = "oracle";
    m.parameters = {{"legs", std::to_string(a.legs)},
                    {"vertices", std::to_string(a.vertices)},
                    {"tangencies", flag01(a.tangencies)},
                    {"allow-disconnected", flag01(a.disconnected)},
                    {"check-2pi", flag01(a.check_2pi)},
                    {"node-budget", std::to_string(a.node_budget)},
                    {"out", a.out}};
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string counts;
    std::string model = "log-corrected";
    int lo = 0;
    int hi = 0;
    std::string out = "-";
    std::string manifest_path;
};

// Accepts either the bare "p,count" format or a full pattern table, which is
// reduced to its n^0 column summed over patterns and indexed by total vertex
// count.
std::vector<mpz_class> load_counts(const std::string& path) {
    const std::string text = slurp(path);
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    is.seekg(0);
    if (header == "p,count") return read_count_csv(is);
    const CountTable table = CountTable::read_csv(is);
    std::vector<mpz_class> counts(static_cast<size_t>(table.max_order()) + 1, mpz_class(0));
    for (const auto& [key, poly] : table.entries()) {
        const int p = std::get<1>(key) + std::get<2>(key);
        const mpq_class c = poly.coeff(0);
        if (c.get_den() != 1) throw ParseError("non-integer count in table");
        if (p < static_cast<int>(counts.size())) counts[p] += c.get_num();
    }
    return counts;
}

int run_fit(const FitArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const FitModel model = a.model == "pure-power" ? FitModel::PurePower : FitModel::LogCorrected;
    const AsymptoticFit fit = fit_growth(load_counts(a.counts), model, {a.lo, a.hi});
    spill(a.out, fit.to_json() + "\n");

    RunManifest m;
    m.command = "fit";
    m.parameters = {{"counts", a.counts}, {"model", a.model}, {"lo", std::to_string(a.lo)},
                    {"hi", std::to_string(a.hi)}, {"out", a.out}};
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- conjecture

struct ConjArgs {
    double n = 0.0;
    std::string out = "-";
    std::string manifest_path;
};

int run_conjecture(const ConjArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream os;
    os << conjectured_alpha(a.n) << "\n";
    spill(a.out, os.str());

    RunManifest m;
    m.command = "conjecture";
    char nbuf[32];
    std::snprintf(nbuf, sizeof nbuf, "%.17g", a.n);
    m.parameters = {{"n", nbuf}, {"out", a.out}};
    emit_manifest(m, a.out, a.manifest_path, elapsed_since(t0));
    return 0;
}

// ---------------------------------------------------------------- replay

std::string want(const std::map<std::string, std::string>& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw ParseError("manifest lacks parameter " + key);
    return it->second;
}

std::string maybe(const std::map<std::string, std::string>& params, const std::string& key,
                  const std::string& fallback = "") {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

int run_replay(const std::string& manifest_file) {
    const RunManifest m = RunManifest::from_json(slurp(manifest_file));
    const auto& p = m.parameters;
    if (m.command == "enumerate") {
        EnumArgs a;
        a.legs = std::stoi(want(p, "legs"));
        a.max_vertices = std::stoi(want(p, "max-vertices"));
        a.tangencies = want(p, "tangencies") == "1";
        a.disconnected = want(p, "allow-disconnected") == "1";
        a.threads = std::stoi(maybe(p, "threads", "1"));
        a.shard_states = std::stoull(maybe(p, "shard-states", "500000"));
        a.no_cache = maybe(p, "no-cache", "0") == "1";
        a.out = want(p, "out");
        return run_enumerate(a);
    }
    if (m.command == "merge") {
        MergeArgs a;
        a.crossings = want(p, "crossings");
        a.mixed = want(p, "mixed");
        a.out = want(p, "out");
        return run_merge(a);
    }
    if (m.command == "renorm") {
        RenormArgs a;
        a.counts2 = want(p, "counts2");
        a.counts4 = want(p, "counts4");
        a.counts6 = maybe(p, "counts6");
        a.order = std::stoi(want(p, "order"));
        a.class_map_path = maybe(p, "class-map");
        a.out = want(p, "out");
        a.series_json = maybe(p, "series-json");
        return run_renorm(a);
    }
    if (m.command == "oracle") {
        OracleArgs a;
        a.legs = std::stoi(want(p, "legs"));
        a.vertices = std::stoi(want(p, "vertices"));
        a.tangencies = maybe(p, "tangencies", "0") == "1";
        a.disconnected = maybe(p, "allow-disconnected", "0") == "1";
        a.check_2pi = maybe(p, "check-2pi", "0") == "1";
        a.node_budget = std::stoull(maybe(p, "node-budget", "400000000"));
        a.out = want(p, "out");
        return run_oracle(a);
    }
    if (m.command == "fit") {
        FitArgs a;
        a.counts = want(p, "counts");
        a.model = want(p, "model");
        a.lo = std::stoi(want(p, "lo"));
        a.hi = std::stoi(want(p, "hi"));
        a.out = want(p, "out");
        return run_fit(a);
    }
    if (m.command == "conjecture") {
        ConjArgs a;
        a.n = std::stod(want(p, "n"));
        a.out = want(p, "out");
        return run_conjecture(a);
    }
    throw ParseError("manifest names unknown command " + m.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact census of alternating tangle diagrams"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("tangle ") + kToolVersion);

    EnumArgs ea;
    CLI::App* enumerate_cmd =
        app.add_subcommand("enumerate", "Count diagrams level by level (transfer matrix)");
    enumerate_cmd->add_option("--legs", ea.legs, "Boundary legs (2, 4 or 6)")
        ->check(CLI::IsMember({2, 4, 6}));
    enumerate_cmd->add_option("--max-vertices", ea.max_vertices, "Highest vertex count")
        ->required()
        ->check(CLI::NonNegativeNumber);
    enumerate_cmd->add_flag("--tangencies", ea.tangencies, "Include tangency vertices");
    enumerate_cmd->add_flag("--allow-disconnected", ea.disconnected,
                            "Count all diagrams whose every component touches a leg");
    enumerate_cmd->add_option("--threads", ea.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--shard-states", ea.shard_states,
                              "Stream the last two levels once a frontier exceeds this");
    enumerate_cmd->add_flag("--no-cache", ea.no_cache, "Skip the persistent count cache");
    enumerate_cmd->add_option("--out", ea.out, "Output CSV path, - for stdout");
    enumerate_cmd->add_option("--manifest", ea.manifest_path, "Manifest path override");

    MergeArgs ma;
    CLI::App* merge_cmd = app.add_subcommand(
        "merge", "Stitch a crossings-only table with a mixed-vertex table");
    merge_cmd->add_option("--crossings", ma.crossings, "Crossings-only table CSV")->required();
    merge_cmd->add_option("--mixed", ma.mixed, "Mixed-vertex table CSV")->required();
    merge_cmd->add_option("--out", ma.out, "Output CSV path, - for stdout");
    merge_cmd->add_option("--manifest", ma.manifest_path, "Manifest path override");

    RenormArgs ra;
    CLI::App* renorm_cmd = app.add_subcommand(
        "renorm", "Solve the couplings and emit renormalized tangle tables");
    renorm_cmd->add_option("--counts2", ra.counts2, "Two-leg table CSV (tangencies on)")
        ->required();
    renorm_cmd->add_option("--counts4", ra.counts4, "Four-leg table CSV (tangencies on)")
        ->required();
    renorm_cmd->add_option("--counts6", ra.counts6, "Six-leg table CSV (optional)");
    renorm_cmd->add_option("--order", ra.order, "Series order")->required()
        ->check(CLI::PositiveNumber);
    renorm_cmd->add_option("--class-map", ra.class_map_path,
                           "JSON {pattern: series name} replacing the built-in map");
    renorm_cmd->add_option("--out", ra.out, "Output CSV path (type,p,k,count), - for stdout");
    renorm_cmd->add_option("--series-json", ra.series_json, "Also dump full series as JSON");
    renorm_cmd->add_option("--manifest", ra.manifest_path, "Manifest path override");

    OracleArgs oa;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Brute-force reference enumeration (small orders)");
    oracle_cmd->add_option("--legs", oa.legs, "Boundary legs (2, 4 or 6)")
        ->check(CLI::IsMember({2, 4, 6}));
    oracle_cmd->add_option("--vertices", oa.vertices, "Highest total vertex count")
        ->required()
        ->check(CLI::NonNegativeNumber);
    oracle_cmd->add_flag("--tangencies", oa.tangencies, "Include tangency vertices");
    oracle_cmd->add_flag("--allow-disconnected", oa.disconnected,
                         "Keep diagrams whose every component touches a leg");
    oracle_cmd->add_flag("--check-2pi", oa.check_2pi,
                         "Emit p,count_total,count_2pi rows (2 legs only)");
    oracle_cmd->add_option("--node-budget", oa.node_budget, "Backtracking node limit");
    oracle_cmd->add_option("--out", oa.out, "Output path, - for stdout");
    oracle_cmd->add_option("--manifest", oa.manifest_path, "Manifest path override");

    FitArgs fa;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit growth constant and exponent");
    fit_cmd->add_option("--counts", fa.counts, "Counts CSV: p,count rows or a pattern table")
        ->required();
    fit_cmd->add_option("--model", fa.model, "pure-power or log-corrected")
        ->check(CLI::IsMember({"pure-power", "log-corrected"}));
    fit_cmd->add_option("--lo", fa.lo, "First order of the fit window")->required();
    fit_cmd->add_option("--hi", fa.hi, "Last order of the fit window")->required();
    fit_cmd->add_option("--out", fa.out, "Output JSON path, - for stdout");
    fit_cmd->add_option("--manifest", fa.manifest_path, "Manifest path override");

    ConjArgs ca;
    CLI::App* conj_cmd = app.add_subcommand(
        "conjecture", "Exact conjectured exponent for loop fugacity n");
    conj_cmd->add_option("--n", ca.n, "Loop fugacity in [0,2]")->required();
    conj_cmd->add_option("--out", ca.out, "Output path, - for stdout");
    conj_cmd->add_option("--manifest", ca.manifest_path, "Manifest path override");

    std::string replay_file;
    CLI::App* replay_cmd = app.add_subcommand("replay", "Rerun a recorded manifest");
    replay_cmd->add_option("manifest", replay_file, "Manifest JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, anything else is a flag error
    }

    try {
        if (enumerate_cmd->parsed()) return run_enumerate(ea);
        if (merge_cmd->parsed()) return run_merge(ma);
        if (renorm_cmd->parsed()) return run_renorm(ra);
        if (oracle_cmd->parsed()) return run_oracle(oa);
        if (fit_cmd->parsed()) return run_fit(fa);
        if (conj_cmd->parsed()) return run_conjecture(ca);
        if (replay_cmd->parsed()) return run_replay(replay_file);
    } catch (const CacheVersionMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ResidualNonZero& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const InsufficientTableOrder& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedLegCount& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DegenerateWindow& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NonPositiveEntry& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const OutOfRange& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
