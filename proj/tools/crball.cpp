// crball: batch front end for the lemma, jet and map suites.
//
//   crball lemmas     [--seed S] [--trials T]
//   crball jet-verify [--seed S] [--trials T] [--n 2,3,4] [--mode free|huang] [--input jet.json ...]
//   crball map-verify [--seed S] [--input map.json ...]
//   crball catalog
//
// Every subcommand takes --format json|text. CRBALL_LOG=error|warn|info|debug
// sets stderr verbosity. Exit codes: 0 pass, 1 verification failure,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crball/crball.hpp"

using namespace crball;

namespace {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level log_level() {
    const char* env = std::getenv("CRBALL_LOG");
    if (!env) return Level::warn;
    std::string s(env);
    if (s == "error" || s == "0") return Level::error;
    if (s == "info" || s == "2") return Level::info;
    if (s == "debug" || s == "3") return Level::debug;
    return Level::warn;
}

void log(Level lvl, const std::string& msg) {
    static const Level threshold = log_level();
    if (lvl > threshold) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "[crball " << names[static_cast<int>(lvl)] << "] " << msg << '\n';
}

LogFn info_log() {
    return [](const std::string& m) { log(m.rfind("warning: ", 0) == 0 ? Level::warn : Level::info, m); };
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// A file holds one object or an array of objects.
std::vector<Json> json_items(const std::string& path) {
    Json j = read_json_file(path);
    if (j.is_array()) return {j.begin(), j.end()};
    return {j};
}

std::string deg(const Json& j) { return j.is_string() ? j.get<std::string>() : std::to_string(j.get<int>()); }

void print_text_lemmas(const Json& r) {
    for (const auto& s : r["suites"]) {
        std::cout << std::left << std::setw(34) << s["name"].get<std::string>() << s["passed"].get<std::size_t>() << "/"
                  << s["instances"].get<std::size_t>() << " passed";
        if (s.contains("skipped")) std::cout << " (" << s["skipped"].get<std::size_t>() << " skipped)";
        std::cout << '\n';
        if (s.contains("counterexamples")) {
            for (const auto& c : s["counterexamples"]) std::cout << "  counterexample: " << c.dump() << '\n';
        }
    }
}

void print_text_jets(const Json& r) {
    if (r.contains("seed")) std::cout << "seed  n  trial  deg_detB  deg_adjB_A  segre  bounds\n";
    for (const auto& v : r["verdicts"]) {
        if (v.contains("source")) {
            const Json& d = v["verdict"];
            std::cout << v["source"].get<std::string>() << ": (" << deg(d["deg_detB"]) << "," << deg(d["deg_adjB_A"]) << ","
                      << deg(d["deg_segre_numerator"]) << ") bounds " << (d["bounds_hold"].get<bool>() ? "hold" : "VIOLATED")
                      << '\n';
            continue;
        }
        std::cout << std::left << std::setw(6) << r["seed"].get<std::uint64_t>() << std::setw(3) << v["n"].get<int>()
                  << std::setw(7) << v["trial"].get<std::size_t>() << std::setw(10) << deg(v["deg_detB"]) << std::setw(12)
                  << deg(v["deg_adjB_A"]) << std::setw(7) << deg(v["deg_segre_numerator"])
                  << (v["bounds_hold"].get<bool>() ? "hold" : "VIOLATED") << '\n';
    }
}

void print_text_maps(const Json& r) {
    for (const auto& m : r["maps"]) {
        std::cout << std::left << std::setw(18) << m["name"].get<std::string>();
        if (m.contains("error")) {
            std::cout << "error: " << m["error"].get<std::string>() << '\n';
            continue;
        }
        if (m.contains("propriety")) {
            bool proper = m["propriety"]["proper"].get<bool>();
            std::cout << (proper ? "proper" : "NOT PROPER") << "  degree " << m["degree"].get<int>() << " ("
                      << m["reducedness"].get<std::string>() << ")  segre max " << m["segre"]["max_degree"].get<int>() << '\n';
            if (!proper) std::cout << "  remainder: " << m["propriety"]["residual_text"].get<std::string>() << '\n';
        } else {
            std::cout << "n=" << m["n"].get<int>() << " N=" << m["N"].get<int>() << "  degree " << m["degree"].get<int>()
                      << "  " << (m["certificate"]["proper"].get<bool>() ? "proper" : "NOT PROPER") << '\n';
        }
    }
}

int emit(const SuiteResult& res, const std::string& format) {
    if (format == "json") {
        std::cout << res.report.dump(2) << '\n';
    } else {
        const std::string cmd = res.report["command"].get<std::string>();
        if (cmd == "lemmas") {
            print_text_lemmas(res.report);
        } else if (cmd == "jet-verify") {
            print_text_jets(res.report);
        } else {
            print_text_maps(res.report);
        }
        std::cout << (res.pass ? "PASS" : "FAIL") << '\n';
    }
    return res.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification suites for degree bounds of proper ball maps"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    std::string format = "json";
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };

    auto* lemmas = app.add_subcommand("lemmas", "Adjugate and determinant identity suites");
    std::size_t lemma_trials = 1000;
    bool corrupt = false;
    lemmas->add_option("--seed", seed, "Seed");
    lemmas->add_option("--trials", lemma_trials, "Instances per identity");
    lemmas->add_flag("--corrupt", corrupt, "Use a wrong correction coefficient (harness self-test)")->group("");
    add_common(lemmas);

    auto* jets = app.add_subcommand("jet-verify", "Degree verdicts for normalized jets");
    std::size_t jet_trials = 100;
    std::vector<int> ns{2, 3, 4};
    std::string mode = "free";
    jets->add_option("--seed", seed, "Seed");
    jets->add_option("--trials", jet_trials, "Jets per n");
    jets->add_option("--n", ns, "Dimensions, comma separated")->delimiter(',')->check(CLI::Range(2, 5));
    jets->add_option("--mode", mode, "Jet sampling mode")->check(CLI::IsMember({"free", "huang"}));
    jets->add_option("--input", inputs, "Jet JSON files")->check(CLI::ExistingFile);
    add_common(jets);

    auto* maps = app.add_subcommand("map-verify", "Propriety, degree and Segre sweep for rational maps");
    maps->add_option("--seed", seed, "Seed");
    maps->add_option("--input", inputs, "Map JSON files; the catalog when omitted")->check(CLI::ExistingFile);
    add_common(maps);

    auto* cat = app.add_subcommand("catalog", "Built-in maps with their certificates");
    add_common(cat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SuiteResult res;
        if (*lemmas) {
            LemmaConfig cfg;
            cfg.seed = seed;
            cfg.trials = lemma_trials;
            cfg.corrupt = corrupt;
            res = lemma_suite(cfg, info_log());
        } else if (*jets) {
            if (!inputs.empty()) {
                std::vector<std::pair<std::string, NormalizedJet>> given;
                for (const auto& path : inputs) {
                    for (const auto& j : json_items(path)) given.emplace_back(path, jet_from_json(j));
                }
                res = jet_file_suite(given);
            } else {
                JetConfig cfg;
                cfg.seed = seed;
                cfg.trials = jet_trials;
                cfg.ns = ns;
                cfg.mode = mode == "huang" ? JetMode::huang : JetMode::free;
                res = jet_suite(cfg, info_log());
            }
        } else if (*maps) {
            std::vector<RationalMap> list;
            for (const auto& path : inputs) {
                for (const auto& j : json_items(path)) list.push_back(map_from_json(j));
            }
            if (inputs.empty()) list = catalog_maps();
            MapConfig cfg;
            cfg.seed = seed;
            res = map_suite(list, cfg, info_log());
        } else {
            res = catalog_suite();
        }
        return emit(res, format);
    } catch (const Error& e) {
        log(Level::error, e.what());
        return 2;
    } catch (const std::exception& e) {
        log(Level::error, e.what());
        return 2;
    }
}
