// Command-line front end: certify simple surface amalgams, verify emitted
// certificates, and poke at surface covers directly (realize / enumerate /
// lift / dot).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ssa/construction.hpp"
#include "ssa/json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;      // failed verification or infeasible
constexpr int kExitBadInput = 2;  // malformed input
constexpr int kExitBudget = 3;    // search exhausted / budget exceeded

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ssa::parse_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ssa::parse_error("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

// Serialize fully before touching the file, so a failure leaves no partial
// output.
void emit(const nlohmann::json& j, const std::optional<std::string>& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path) {
        std::ofstream out(*out_path);
        if (!out) throw ssa::error("cannot write '" + *out_path + "'");
        out << text;
    } else {
        std::cout << text;
    }
}

void print_report(const ssa::VerificationReport& report) {
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.name;
        if (!c.pass && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
    std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
}

// "3;1,2" -> [[3],[1,2]]: boundary components separated by ';', parts by ','.
std::vector<std::vector<long long>> parse_partitions(const std::string& text) {
    std::vector<std::vector<long long>> out;
    std::istringstream comps(text);
    std::string comp;
    while (std::getline(comps, comp, ';')) {
        std::vector<long long> parts;
        std::istringstream ps(comp);
        std::string part;
        while (std::getline(ps, part, ',')) {
            try {
                parts.push_back(std::stoll(part));
            } catch (const std::exception&) {
                throw ssa::parse_error("bad partition part '" + part + "'");
            }
        }
        out.push_back(std::move(parts));
    }
    if (out.empty()) throw ssa::parse_error("empty partition list");
    return out;
}

std::string dot_of_cover(const ssa::AmalgamCover& cover, const std::string& name) {
    std::ostringstream out;
    out << "  subgraph cluster_" << name << " {\n"
        << "    label=\"" << name << " (degree " << cover.degree << ")\";\n";
    for (const auto& l : cover.circle_lifts)
        out << "    \"" << name << ":" << l.id << "\" [shape=ellipse, label=\"" << l.id
            << "\\nover " << l.base_circle << " deg " << l.degree << "\"];\n";
    for (const auto& p : cover.pieces) {
        out << "    \"" << name << ":" << p.id << "\" [shape=box, label=\"" << p.id
            << "\\ngenus " << p.surface.genus << ", b " << p.surface.boundary << "\"];\n";
        for (const auto& bm : p.boundary_map)
            out << "    \"" << name << ":" << p.id << "\" -- \"" << name << ":" << bm.lift
                << "\" [label=\"" << cover.find_lift(bm.lift)->degree << "\"];\n";
    }
    out << "  }\n";
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"finite-cover certificates for simple surface amalgams"};
    app.require_subcommand(1);
    long long budget_flag = 0;
    app.add_option("--budget", budget_flag,
                   "cap on search samples and enumeration size (0 = defaults)");

    auto budget = [&]() {
        ssa::SearchBudget b;
        if (budget_flag > 0) {
            b.max_samples = budget_flag;
            b.enum_cap = budget_flag;
        }
        return b;
    };

    // certify
    auto* certify = app.add_subcommand("certify", "run the full pipeline on an amalgam");
    std::string certify_input;
    ssa::CertifyOptions certify_opts;
    std::optional<std::string> certify_out;
    certify->add_option("input", certify_input, "amalgam JSON file")->required();
    certify->add_option("--d", certify_opts.d, "free parameter d (default 1)");
    certify->add_option("--seed", certify_opts.seed, "realization seed");
    certify->add_flag("--realize", certify_opts.realize,
                      "attach permutation realizations to every piece");
    certify->add_option("-o,--output", certify_out, "certificate output file");

    // verify
    auto* verify = app.add_subcommand("verify", "re-verify an emitted certificate");
    std::string verify_input;
    verify->add_option("input", verify_input, "certificate JSON file")->required();

    // realize
    auto* realize = app.add_subcommand("realize", "realize one surface cover");
    long long r_genus = 1, r_boundary = 1, r_degree = 1;
    std::uint64_t r_seed = 0;
    std::string r_partitions;
    std::optional<std::string> realize_out;
    realize->add_option("--genus", r_genus)->required();
    realize->add_option("--boundary", r_boundary)->required();
    realize->add_option("--degree", r_degree)->required();
    realize->add_option("--partitions", r_partitions, "e.g. \"3;1,2\"")->required();
    realize->add_option("--seed", r_seed);
    realize->add_option("-o,--output", realize_out, "rep output file");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "brute-force oracle table");
    long long e_genus = 1, e_boundary = 1, e_degree = 1;
    enumerate->add_option("--genus", e_genus)->required();
    enumerate->add_option("--boundary", e_boundary)->required();
    enumerate->add_option("--degree", e_degree)->required();

    // lift
    auto* lift = app.add_subcommand("lift", "covering degrees of a curve's preimages");
    std::string lift_rep, lift_word;
    lift->add_option("--rep", lift_rep, "rep JSON file")->required();
    lift->add_option("--word", lift_word, "word such as a1B1c1")->required();

    // example
    auto* example = app.add_subcommand("example", "built-in certificates");
    bool example_main = false;
    std::optional<std::string> example_out;
    example->add_flag("--main", example_main, "the three-torus main example");
    example->add_option("-o,--output", example_out, "certificate output file");

    // dot
    auto* dot = app.add_subcommand("dot", "graph description of a certificate");
    std::string dot_input;
    dot->add_option("input", dot_input, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (certify->parsed()) {
            ssa::AmalgamComplex x = load_json(certify_input).get<ssa::AmalgamComplex>();
            certify_opts.budget = budget();
            ssa::Certificate cert = ssa::certify_not_comm_cohopfian(x, certify_opts);
            emit(nlohmann::json(cert), certify_out);
            if (certify_out) print_report(cert.report);
            return cert.report.pass() ? kExitOk : kExitFail;
        }
        if (verify->parsed()) {
            ssa::Certificate cert = load_json(verify_input).get<ssa::Certificate>();
            ssa::VerificationReport report = ssa::verify_certificate(cert);
            print_report(report);
            return report.pass() ? kExitOk : kExitFail;
        }
        if (realize->parsed()) {
            ssa::Surface base{r_genus, r_boundary};
            ssa::CoverSpec spec{r_degree, parse_partitions(r_partitions)};
            ssa::SurfaceCoverRep rep =
                ssa::realize_surface_cover(base, spec, r_seed, budget());
            emit(nlohmann::json(rep), realize_out);
            return kExitOk;
        }
        if (enumerate->parsed()) {
            ssa::Surface base{e_genus, e_boundary};
            // oracle table: boundary cycle data -> (connected, disconnected) counts
            std::map<std::string, std::pair<long long, long long>> table;
            long long total = 0;
            ssa::for_each_cover(base, e_degree, budget(), [&](const ssa::SurfaceCoverRep& rep) {
                ++total;
                std::ostringstream key;
                for (size_t j = 0; j < rep.c.size(); ++j) {
                    if (j) key << " ; ";
                    auto t = rep.c[j].cycle_type();
                    for (size_t i = 0; i < t.size(); ++i) key << (i ? "," : "") << t[i];
                }
                bool conn = ssa::transitive(rep.all_generators(),
                                            static_cast<int>(rep.degree));
                auto& cell = table[key.str()];
                (conn ? cell.first : cell.second) += 1;
                return false;
            });
            std::cout << "tuples: " << total << "\n";
            std::cout << "boundary cycles | connected | disconnected\n";
            for (const auto& [key, counts] : table)
                std::cout << key << " | " << counts.first << " | " << counts.second << "\n";
            return kExitOk;
        }
        if (lift->parsed()) {
            ssa::SurfaceCoverRep rep = load_json(lift_rep).get<ssa::SurfaceCoverRep>();
            auto degrees = ssa::lift_curve(rep, lift_word);
            nlohmann::json j = {{"word", lift_word}, {"preimage_degrees", degrees}};
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (example->parsed()) {
            if (!example_main) {
                std::cerr << "error: no example selected (try --main)\n";
                return kExitBadInput;
            }
            ssa::Certificate cert = ssa::build_main_example();
            emit(nlohmann::json(cert), example_out);
            if (example_out) print_report(cert.report);
            return cert.report.pass() ? kExitOk : kExitFail;
        }
        if (dot->parsed()) {
            ssa::Certificate cert = load_json(dot_input).get<ssa::Certificate>();
            std::cout << "graph certificate {\n";
            if (cert.hat) std::cout << dot_of_cover(*cert.hat, "hat");
            std::cout << dot_of_cover(cert.x_prime, "x_prime");
            std::cout << dot_of_cover(cert.x_dprime, "x_dprime");
            std::cout << "}\n";
            return kExitOk;
        }
    } catch (const ssa::infeasible_error& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return kExitFail;
    } catch (const ssa::search_exhausted_error& e) {
        std::cerr << "error: search exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ssa::budget_exceeded_error& e) {
        std::cerr << "error: budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ssa::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ssa::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitBadInput;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
