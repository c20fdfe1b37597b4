#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypk/curves.hpp"
#include "hypk/deform.hpp"
#include "hypk/errors.hpp"
#include "hypk/estimator.hpp"
#include "hypk/optsearch.hpp"
#include "hypk/parallel.hpp"
#include "hypk/report.hpp"
#include "hypk/surface_io.hpp"
#include "hypk/verify.hpp"

namespace {

using namespace hypk;

constexpr int kInputError = 2;
constexpr int kValidationError = 3;
constexpr int kUncertified = 4;

struct Options {
    std::string surface, preset, output, cache_dir, words, word, suite, n_list, trace, best;
    std::string method = "nelder-mead";
    int n = 10;
    double delta = 1.0;
    double cutoff = 8.0;
    double threshold = 1.0;
    int window = 5;
    int edge = 0;
    int workers = 0;
    int max_word_length = 0;
    int restarts = 1;
    int evaluations = 120;
    std::uint64_t seed = 1;
    bool json = false, csv = false, require_certified = false;
};

// Uncertified output is still written; the exit code reports it under --require-certified.
struct Uncertified {};

SurfaceData surface_of(const Options& o) {
    if (!o.surface.empty() && !o.preset.empty()) throw DomainError("give either --surface or --preset");
    if (!o.surface.empty()) return load_surface(o.surface);
    if (!o.preset.empty()) return preset_surface(o.preset, o.n, o.delta);
    throw DomainError("a surface is required: --surface FILE or --preset NAME");
}

std::string cache_dir(const Options& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* env = std::getenv("HYPK_CACHE_DIR")) return env;
    return {};
}

CurveTable table_for(const Holonomy& h, double cutoff, const Options& o) {
    EnumerationConfig c;
    c.max_word_length = o.max_word_length;
    c.workers = o.workers;
    const std::string dir = cache_dir(o);
    if (dir.empty()) return enumerate_classes(h, cutoff, c);
    std::filesystem::create_directories(dir);
    char name[128];
    std::snprintf(name, sizeof name, "table-%016" PRIx64 "-%a-w%d.txt", surface_hash(h.graph, h.coords), cutoff,
                  c.max_word_length > 0 ? c.max_word_length : default_word_length(h.graph));
    const std::string path = (std::filesystem::path(dir) / name).string();
    if (std::filesystem::exists(path)) return load_table(path);
    CurveTable t = enumerate_classes(h, cutoff, c);
    // Write then rename, so concurrent runs never read a partial file.
    const std::string tmp = path + ".partial";
    save_table(t, tmp);
    std::filesystem::rename(tmp, path);
    return t;
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw ParseError("cannot write " + o.output);
    out << text;
}

void require(const Options& o, bool certified) {
    if (o.require_certified && !certified) throw Uncertified{};
}

std::vector<Word> read_words(const std::string& path, const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::vector<Word> words;
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            words.push_back(parse_word(line, names));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(n) + ": " + e.what());
        }
        if (words.back().empty()) throw ParseError("line " + std::to_string(n) + ": empty word");
    }
    return words;
}

void cmd_lengths(const Options& o) {
    const SurfaceData s = surface_of(o);
    const Holonomy h = build_holonomy(s.graph, s.coords);
    const auto names = h.generator_names();
    if (!o.words.empty()) {
        CurveTable t;
        t.certified = true;
        for (const Word& w : read_words(o.words, names)) {
            CurveEntry e;
            e.word = canonical_rotation(w);
            e.length = word_length(h, w);
            e.homology = abelianize(h, w);
            e.simple = is_primitive(h, w) && self_int_count(h, w) == 0;
            e.crossings = edge_crossings(h, w);
            t.entries.push_back(std::move(e));
        }
        emit(o, o.json ? table_json(t, names) : table_csv(t, names));
        return;
    }
    const CurveTable t = table_for(h, o.cutoff, o);
    emit(o, o.json ? table_json(t, names) : table_csv(t, names));
    require(o, t.certified);
}

void cmd_estimate_k(const Options& o) {
    const SurfaceData s = surface_of(o);
    const Holonomy h = build_holonomy(s.graph, s.coords);
    const CurveTable t = table_for(h, o.cutoff, o);
    const KEstimate k = k_lower_bound(h, t, o.workers);
    emit(o, o.csv ? k_estimate_csv(k, h.generator_names()) : k_estimate_json(k, h.generator_names()));
    require(o, k.certified);
}

void cmd_predict(const Options& o) {
    const SurfaceData s = surface_of(o);
    const Holonomy h = build_holonomy(s.graph, s.coords);
    const CurveTable t = table_for(h, o.cutoff, o);
    emit(o, prediction_json(asymp_predictor(h, t, o.threshold, o.workers), h.generator_names()));
    require(o, t.certified);
}

void cmd_basis(const Options& o) {
    const SurfaceData s = surface_of(o);
    const Holonomy h = build_holonomy(s.graph, s.coords);
    const CurveTable t = table_for(h, o.cutoff, o);
    emit(o, basis_json(homology_basis_search(h, t), h.generator_names()));
    require(o, t.certified);
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> ns;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.find_first_not_of(" ") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            ns.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("bad --n-list entry '" + item + "'");
        }
    }
    return ns;
}

void cmd_asymptotics(const Options& o) {
    AsymptoticFamily family;
    if (o.preset == "fig5-example1" || o.preset == "fig5") family = AsymptoticFamily::Example1;
    else if (o.preset == "fig5-example63") family = AsymptoticFamily::Example63;
    else throw DomainError("unknown asymptotic preset '" + o.preset + "'");
    const auto rows = asymptotic_sweep(family, o.delta, parse_n_list(o.n_list), o.workers);
    emit(o, sweep_csv(rows));
    for (const auto& r : rows) require(o, r.certified);
}

int cmd_verify(const Options& o) {
    std::vector<SuiteResult> results;
    if (!o.suite.empty()) {
        if (o.suite == "all") {
            for (const auto& name : suite_names())
                if (name != "fault-determinant") results.push_back(run_suite(name, o.seed, o.workers));
        } else {
            results.push_back(run_suite(o.suite, o.seed, o.workers));
        }
    } else {
        results.push_back(verify_surface(surface_of(o), o.cutoff, o.workers));
    }
    bool ok = true;
    std::ostringstream os;
    if (o.json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            j.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"failures", r.failures}, {"notes", r.notes}});
            ok &= r.passed();
        }
        os << j.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            os << (r.passed() ? "PASS " : "FAIL ") << r.suite << '\n';
            for (const auto& f : r.failures) os << "  failure: " << f << '\n';
            for (const auto& n : r.notes) os << "  note: " << n << '\n';
            ok &= r.passed();
        }
    }
    emit(o, os.str());
    return ok ? 0 : kValidationError;
}

void cmd_aux_bounds(const Options& o) {
    const SurfaceData s = surface_of(o);
    EnumerationConfig c;
    c.max_word_length = o.max_word_length;
    c.workers = o.workers;
    const auto r = check_auxiliary_bounds(s.graph, s.coords, auxiliary_surface(s.graph, s.coords), o.cutoff, c);
    const auto names = build_holonomy(s.graph, s.coords).generator_names();
    emit(o, o.json ? deformation_json(r, names) : deformation_csv(r, names));
    require(o, r.certified);
}

void cmd_twist_orbit(const Options& o) {
    const SurfaceData s = surface_of(o);
    const Holonomy h = build_holonomy(s.graph, s.coords);
    const Word w = parse_word(o.word, h.generator_names());
    if (w.empty()) throw ParseError("empty --word");
    const TwistOrbit orbit = twist_orbit(s.graph, s.coords, w, o.edge, o.window, false, o.workers);
    if (orbit.disjoint) std::cerr << "warning: word misses edge " << o.edge << "; the orbit is constant\n";
    emit(o, twist_orbit_csv(orbit));
}

void cmd_minimize(const Options& o) {
    const SurfaceData s = surface_of(o);
    SearchConfig c;
    if (o.method == "nelder-mead") c.method = SearchMethod::NelderMead;
    else if (o.method == "coordinate") c.method = SearchMethod::CoordinateDescent;
    else throw DomainError("unknown method '" + o.method + "'");
    c.cutoff = o.cutoff;
    c.restarts = o.restarts;
    c.max_evaluations = o.evaluations;
    c.seed = o.seed;
    c.workers = o.workers;
    c.max_word_length = o.max_word_length;
    const SearchTrace t = minimize_k(s.graph, s.coords, c);
    if (!o.trace.empty()) {
        std::ofstream out(o.trace);
        if (!out) throw ParseError("cannot write " + o.trace);
        out << trace_csv(t);
    }
    if (t.best < 0) throw EmptyTable("no iterate was evaluated");
    const auto& b = t.iterates[t.best];
    SurfaceData best{s.label.empty() ? "minimizer" : s.label + " minimizer", s.graph, b.coords};
    if (!o.best.empty()) save_surface(best, o.best);
    nlohmann::ordered_json j;
    j["khat"] = b.khat;
    j["sys"] = b.sys;
    j["sys_h"] = b.sys_h;
    j["cutoff"] = b.cutoff;
    j["certified"] = t.best_certified;
    j["confirmed_khat"] = t.confirmed.khat;
    j["confirmed_cutoff"] = t.confirmed.cutoff;
    j["evaluations"] = t.iterates.size();
    j["budget_exhausted"] = t.budget_exhausted;
    j["lengths"] = b.coords.lengths;
    j["twists"] = b.coords.twists;
    emit(o, j.dump(2) + "\n");
    require(o, t.best_certified);
}

void cmd_emit(const Options& o) { emit(o, emit_surface(surface_of(o))); }

void surface_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--surface", o.surface, "surface file");
    cmd->add_option("--preset", o.preset, "named preset: theta, dumbbell, fig5-example1, fig5-example63");
    cmd->add_option("--n", o.n, "preset parameter n");
    cmd->add_option("--delta", o.delta, "preset parameter delta");
}

void common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--cutoff", o.cutoff, "length cutoff of the curve table");
    cmd->add_option("--workers", o.workers, "worker threads, 0 for all cores");
    cmd->add_option("--cache-dir", o.cache_dir, "curve-table cache directory (env HYPK_CACHE_DIR)");
    cmd->add_option("--max-word-length", o.max_word_length, "word-ball radius, 0 for the default");
    cmd->add_option("--output,-o", o.output, "write the report to a file");
    cmd->add_flag("--json", o.json, "JSON output");
    cmd->add_flag("--csv", o.csv, "CSV output");
    cmd->add_flag("--require-certified", o.require_certified, "exit 4 when the table is not certified");
    cmd->add_option("--seed", o.seed, "seed for randomized suites and restarts");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fenchel-Nielsen surfaces, intersection numbers and the algebraic intersection form"};
    app.require_subcommand(1);
    Options o;
    int status = 0;

    auto* lengths = app.add_subcommand("lengths", "curve table: lengths, homology classes, simple flags");
    surface_flags(lengths, o);
    common_flags(lengths, o);
    lengths->add_option("--words", o.words, "file with one word per line instead of a cutoff");
    lengths->callback([&] { cmd_lengths(o); });

    auto* estimate = app.add_subcommand("estimate-k", "lower bound for K with its witness pair");
    surface_flags(estimate, o);
    common_flags(estimate, o);
    estimate->callback([&] { cmd_estimate_k(o); });

    auto* predict = app.add_subcommand("predict", "asymptotic predictor over short nonseparating curves");
    surface_flags(predict, o);
    common_flags(predict, o);
    predict->add_option("--threshold", o.threshold, "length threshold of the short curves");
    predict->callback([&] { cmd_predict(o); });

    auto* basis = app.add_subcommand("basis", "greedy short homology basis of simple curves");
    surface_flags(basis, o);
    common_flags(basis, o);
    basis->callback([&] { cmd_basis(o); });

    auto* asym = app.add_subcommand("asymptotics", "sweep over n for the genus-3 example families");
    asym->add_option("--preset", o.preset, "fig5-example1 or fig5-example63")->required();
    asym->add_option("--delta", o.delta, "delta of fig5-example1");
    asym->add_option("--n-list", o.n_list, "comma-separated values of n");
    asym->add_option("--workers", o.workers, "worker threads, 0 for all cores");
    asym->add_option("--output,-o", o.output, "write the CSV to a file");
    asym->add_flag("--require-certified", o.require_certified, "exit 4 when a table is not certified");
    asym->callback([&] { cmd_asymptotics(o); });

    auto* verify = app.add_subcommand("verify", "invariant suites, or the invariants of one surface");
    surface_flags(verify, o);
    common_flags(verify, o);
    verify->add_option("--suite", o.suite, "trig, moebius, holonomy, intersection, lemma33, fault-determinant, all");
    verify->callback([&] { status = cmd_verify(o); });

    auto* aux = app.add_subcommand("aux-bounds", "length ratios against the auxiliary surface");
    surface_flags(aux, o);
    common_flags(aux, o);
    aux->callback([&] { cmd_aux_bounds(o); });

    auto* orbit = app.add_subcommand("twist-orbit", "lengths along the Dehn-twist orbit of a word");
    surface_flags(orbit, o);
    orbit->add_option("--word", o.word, "word, generator names separated by spaces")->required();
    orbit->add_option("--edge", o.edge, "pants edge of the twist");
    orbit->add_option("--window", o.window, "twist offsets in [-window, window]");
    orbit->add_option("--workers", o.workers, "worker threads, 0 for all cores");
    orbit->add_option("--output,-o", o.output, "write the CSV to a file");
    orbit->callback([&] { cmd_twist_orbit(o); });

    auto* minimize = app.add_subcommand("minimize", "derivative-free minimization of the K lower bound");
    surface_flags(minimize, o);
    common_flags(minimize, o);
    minimize->add_option("--method", o.method, "nelder-mead or coordinate");
    minimize->add_option("--restarts", o.restarts, "independent restarts");
    minimize->add_option("--evaluations", o.evaluations, "evaluation budget per restart");
    minimize->add_option("--trace", o.trace, "trace CSV file");
    minimize->add_option("--best", o.best, "surface file for the best point");
    minimize->callback([&] { cmd_minimize(o); });

    auto* emit_cmd = app.add_subcommand("emit", "print a surface in the surface file format");
    surface_flags(emit_cmd, o);
    emit_cmd->add_option("--output,-o", o.output, "write to a file");
    emit_cmd->callback([&] { cmd_emit(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    } catch (const Uncertified&) {
        std::cerr << "error: result is not certified at this cutoff\n";
        return kUncertified;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const ValidationFailed& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << '\n';
        return kUncertified;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    }
    return status;
}
