// Command-line front end. Talks to the library only through smfair.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smfair/smfair.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitEstimation = 3;
constexpr int kExitBudget = 4;

struct CommandError {
    smf_status status;
    std::string message;
};

int exit_code(smf_status status) {
    switch (status) {
        case SMF_OK: return kExitOk;
        case SMF_ERR_ESTIMATION: return kExitEstimation;
        case SMF_ERR_BUDGET_EXCEEDED: return kExitBudget;
        case SMF_ERR_INTERNAL: return kExitInternal;
        default: return kExitInput;
    }
}

void check(smf_status status) {
    if (status != SMF_OK) throw CommandError{status, smf_last_error()};
}

struct ProfileDeleter {
    void operator()(smf_profile* p) const { smf_profile_destroy(p); }
};
struct LatticeDeleter {
    void operator()(smf_lattice* l) const { smf_lattice_destroy(l); }
};
struct StringDeleter {
    void operator()(char* s) const { smf_free_string(s); }
};
using ProfilePtr = std::unique_ptr<smf_profile, ProfileDeleter>;
using LatticePtr = std::unique_ptr<smf_lattice, LatticeDeleter>;

std::string take_string(char* s) {
    std::unique_ptr<char, StringDeleter> owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

ProfilePtr load_profile(const std::string& path) {
    smf_profile* p = nullptr;
    check(smf_profile_load(path.c_str(), &p));
    return ProfilePtr(p);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) out << text;
    if (!out) throw CommandError{SMF_ERR_IO, "cannot write '" + path + "'"};
}

json matching_json(const std::vector<int32_t>& partners) { return json(partners); }

const char* side_name(smf_side side) { return side == SMF_SIDE_MEN ? "men" : "women"; }

// Budget defaults can be overridden from the environment.
template <typename T>
T env_or(const char* name, T fallback) {
    const char* value = std::getenv(name);
    if (!value || !*value) return fallback;
    std::istringstream in(value);
    T parsed{};
    if (!(in >> parsed) || !in.eof())
        throw CommandError{SMF_ERR_INVALID_ARGUMENT, std::string("invalid value for ") + name + ": '" + value + "'"};
    return parsed;
}

struct BudgetFlags {
    std::optional<uint64_t> max_matchings;
    std::optional<double> max_seconds;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--max-matchings", max_matchings, "Stop enumerating after this many matchings");
        cmd->add_option("--max-seconds", max_seconds, "Stop enumerating after this many seconds");
    }
    uint64_t matchings(uint64_t fallback) const {
        return max_matchings.value_or(env_or<uint64_t>("SMFAIR_MAX_MATCHINGS", fallback));
    }
    double seconds(double fallback) const {
        return max_seconds.value_or(env_or<double>("SMFAIR_MAX_SECONDS", fallback));
    }
};

// ---- generate ----

struct GenerateArgs {
    int n = 0;
    double phi_m = 1.0;
    double phi_w = 1.0;
    uint64_t seed = 0;
    int count = 1;
    std::string out_dir = ".";
    std::string format = "json";
};

int run_generate(const GenerateArgs& a) {
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw CommandError{SMF_ERR_IO, "cannot create '" + a.out_dir + "': " + ec.message()};
    const int digits = static_cast<int>(std::to_string(a.count).size());
    for (int i = 0; i < a.count; ++i) {
        smf_profile* raw = nullptr;
        check(smf_profile_generate(a.n, a.phi_m, a.phi_w, a.seed, static_cast<uint64_t>(i), &raw));
        ProfilePtr profile(raw);
        std::string index = std::to_string(i + 1);
        index.insert(0, static_cast<std::size_t>(digits) - index.size(), '0');
        const auto path = (std::filesystem::path(a.out_dir) / ("instance_" + index + "." + a.format)).string();
        check(smf_profile_save(profile.get(), path.c_str()));
        std::cout << path << "\n";
    }
    return kExitOk;
}

// ---- solve ----

struct SolveArgs {
    std::string in;
    std::string side = "auto";
    std::optional<double> phi_m;
    std::optional<double> phi_w;
};

int run_solve(const SolveArgs& a) {
    auto profile = load_profile(a.in);
    std::vector<int32_t> partners(static_cast<std::size_t>(smf_profile_size(profile.get())));
    smf_solve_result r{};
    if (a.side == "men" || a.side == "women") {
        check(smf_deferred_acceptance(profile.get(), a.side == "men" ? SMF_SIDE_MEN : SMF_SIDE_WOMEN,
                                      partners.data(), &r));
    } else if (a.phi_m && a.phi_w) {
        check(smf_da_star(profile.get(), *a.phi_m, *a.phi_w, partners.data(), &r));
    } else if (a.phi_m || a.phi_w) {
        throw CommandError{SMF_ERR_INVALID_ARGUMENT, "--phi-m and --phi-w must be given together"};
    } else {
        check(smf_da_star_estimated(profile.get(), partners.data(), &r));
    }
    json out;
    out["matching"] = matching_json(partners);
    out["s_m"] = r.welfare.s_m;
    out["s_w"] = r.welfare.s_w;
    out["cost"] = r.welfare.cost;
    out["proposals"] = r.proposals;
    out["side_used"] = side_name(r.side_used);
    if (a.side == "auto") {
        out["phi_m"] = r.phi_m;
        out["phi_w"] = r.phi_w;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ---- lattice ----

struct LatticeArgs {
    std::string in;
    std::string out;
    std::string dot;
    BudgetFlags budget;
};

int run_lattice(const LatticeArgs& a) {
    auto profile = load_profile(a.in);
    smf_lattice_options opts = smf_lattice_options_default();
    opts.max_matchings = a.budget.matchings(opts.max_matchings);
    opts.max_seconds = a.budget.seconds(opts.max_seconds);

    smf_lattice* raw = nullptr;
    const smf_status status = smf_lattice_enumerate(profile.get(), &opts, &raw);
    const std::string message = smf_last_error();
    if (status != SMF_OK && status != SMF_ERR_BUDGET_EXCEEDED) throw CommandError{status, message};
    LatticePtr lattice(raw);

    char* text = nullptr;
    check(smf_lattice_to_json(lattice.get(), &text));
    const std::string doc = take_string(text);
    if (a.out.empty()) {
        std::cout << doc;
    } else {
        write_text(a.out, doc);
    }
    if (!a.dot.empty()) {
        check(smf_lattice_to_dot(lattice.get(), &text));
        write_text(a.dot, take_string(text));
    }
    if (status == SMF_ERR_BUDGET_EXCEEDED) {
        std::cerr << "smfair: " << message << "; output is censored\n";
        return kExitBudget;
    }
    return kExitOk;
}

// ---- fair ----

struct FairArgs {
    std::string in;
    std::string method = "exhaustive";
    int depth = 0;
    int width = 8;
    std::optional<double> phi_m;
    std::optional<double> phi_w;
    BudgetFlags budget;
};

int run_fair(const FairArgs& a) {
    auto profile = load_profile(a.in);
    smf_fair_options opts = smf_fair_options_default();
    if (a.method == "exhaustive") {
        opts.method = SMF_FAIR_EXHAUSTIVE;
    } else if (a.method == "ibils") {
        opts.method = SMF_FAIR_IBILS;
    } else {
        opts.method = SMF_FAIR_DA_STAR;
    }
    opts.depth = a.depth;
    opts.width = a.width;
    opts.max_matchings = a.budget.matchings(opts.max_matchings);
    opts.max_seconds = a.budget.seconds(opts.max_seconds);
    if (a.phi_m.has_value() != a.phi_w.has_value())
        throw CommandError{SMF_ERR_INVALID_ARGUMENT, "--phi-m and --phi-w must be given together"};
    if (a.phi_m) {
        opts.has_phi = 1;
        opts.phi_m = *a.phi_m;
        opts.phi_w = *a.phi_w;
    }

    std::vector<int32_t> partners(static_cast<std::size_t>(smf_profile_size(profile.get())));
    smf_search_result r{};
    check(smf_fair_search(profile.get(), &opts, partners.data(), &r));
    json out;
    out["method"] = a.method;
    out["matching"] = matching_json(partners);
    out["s_m"] = r.welfare.s_m;
    out["s_w"] = r.welfare.s_w;
    out["cost"] = r.welfare.cost;
    out["optimal"] = r.optimal != 0;
    out["visited"] = r.visited;
    std::cout << out.dump(2) << "\n";
    if (opts.method == SMF_FAIR_EXHAUSTIVE && !r.optimal) {
        std::cerr << "smfair: enumeration budget exhausted; result is the best matching seen\n";
        return kExitBudget;
    }
    return kExitOk;
}

// ---- experiment ----

struct ExperimentArgs {
    std::string config;
    std::string out = "results";
    int workers = 1;
    bool plots = false;
    bool quiet = false;
};

void print_progress(uint64_t done, uint64_t total, void*) {
    std::fprintf(stderr, "\r%llu/%llu instances", static_cast<unsigned long long>(done),
                 static_cast<unsigned long long>(total));
    if (done == total) std::fputc('\n', stderr);
}

int run_experiment(const ExperimentArgs& a) {
    std::ifstream in(a.config, std::ios::binary);
    if (!in) throw CommandError{SMF_ERR_IO, "cannot open '" + a.config + "'"};
    std::ostringstream text;
    text << in.rdbuf();
    const std::string config = text.str();
    check(smf_experiment_validate(config.c_str()));

    smf_experiment_summary summary{};
    check(smf_experiment_run(config.c_str(), a.out.c_str(), a.workers, a.plots ? 1 : 0,
                             a.quiet ? nullptr : print_progress, nullptr, &summary));
    std::cout << summary.records << " records (" << summary.censored << " censored) written to " << a.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable matching fairness toolkit"};
    app.set_version_flag("--version", std::string(smf_version()));
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Sample Mallows instances");
    generate->add_option("--n", gen.n, "Agents per side")->required()->check(CLI::PositiveNumber);
    generate->add_option("--phi-m", gen.phi_m, "Men's dispersion")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--phi-w", gen.phi_w, "Women's dispersion")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--seed", gen.seed, "Master seed");
    generate->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
    generate->add_option("--out-dir", gen.out_dir, "Output directory");
    generate->add_option("--format", gen.format, "json or soc")->check(CLI::IsMember({"json", "soc"}));

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run deferred acceptance");
    solve_cmd->add_option("--in", solve.in, "Instance file")->required();
    solve_cmd->add_option("--side", solve.side, "men, women or auto")
        ->check(CLI::IsMember({"men", "women", "auto"}));
    solve_cmd->add_option("--phi-m", solve.phi_m, "Men's dispersion for --side auto");
    solve_cmd->add_option("--phi-w", solve.phi_w, "Women's dispersion for --side auto");

    LatticeArgs lat;
    auto* lattice_cmd = app.add_subcommand("lattice", "Enumerate all stable matchings");
    lattice_cmd->add_option("--in", lat.in, "Instance file")->required();
    lattice_cmd->add_option("--out", lat.out, "Lattice JSON path (default: standard output)");
    lattice_cmd->add_option("--dot", lat.dot, "Write the Hasse diagram as DOT");
    lat.budget.add_to(lattice_cmd);

    FairArgs fair;
    auto* fair_cmd = app.add_subcommand("fair", "Search for a sex-equal stable matching");
    fair_cmd->add_option("--in", fair.in, "Instance file")->required();
    fair_cmd->add_option("--method", fair.method, "exhaustive, ibils or da-star")
        ->check(CLI::IsMember({"exhaustive", "ibils", "da-star"}));
    fair_cmd->add_option("--depth", fair.depth, "Search depth, 0 for 2n")->check(CLI::NonNegativeNumber);
    fair_cmd->add_option("--width", fair.width, "Frontier width")->check(CLI::PositiveNumber);
    fair_cmd->add_option("--phi-m", fair.phi_m, "Men's dispersion for da-star");
    fair_cmd->add_option("--phi-w", fair.phi_w, "Women's dispersion for da-star");
    fair.budget.add_to(fair_cmd);

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte-Carlo experiment");
    exp_cmd->add_option("--config", exp.config, "Experiment config JSON")->required();
    exp_cmd->add_option("--out", exp.out, "Output directory");
    exp_cmd->add_option("--workers", exp.workers, "Worker threads")->check(CLI::PositiveNumber);
    exp_cmd->add_flag("--plots", exp.plots, "Also write SVG plots");
    exp_cmd->add_flag("--quiet", exp.quiet, "No progress line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*solve_cmd) return run_solve(solve);
        if (*lattice_cmd) return run_lattice(lat);
        if (*fair_cmd) return run_fair(fair);
        if (*exp_cmd) return run_experiment(exp);
    } catch (const CommandError& e) {
        std::cerr << "smfair: " << e.message << "\n";
        return exit_code(e.status);
    } catch (const std::exception& e) {
        std::cerr << "smfair: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
