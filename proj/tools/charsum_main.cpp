// Command-line front end: tail curves, analytic constants, random-model
// comparisons, the invariant verifier, and manifest replay.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charsum/commands.hpp"
#include "charsum/report.hpp"

namespace {

std::vector<uint32_t> parse_orders(const std::string& text) {
    // accepts "2,3,4" and ranges "2-7"
    std::vector<uint32_t> orders;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t dash = piece.find('-');
        if (dash != std::string::npos && dash > 0) {
            uint32_t lo = static_cast<uint32_t>(std::stoul(piece.substr(0, dash)));
            uint32_t hi = static_cast<uint32_t>(std::stoul(piece.substr(dash + 1)));
            for (uint32_t d = lo; d <= hi; ++d) orders.push_back(d);
        } else {
            orders.push_back(static_cast<uint32_t>(std::stoul(piece)));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return orders;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"character-sum laboratory"};
    app.set_version_flag("--version", charsum::kToolVersion);
    app.require_subcommand(1);

    charsum::TailOptions tail;
    std::string tail_orders = "2";
    std::string tail_kind = "midpoint";
    auto* tail_cmd = app.add_subcommand("tail", "empirical tail curves of |f_chi|/sqrt(p)");
    tail_cmd->add_option("--p", tail.p, "prime modulus");
    tail_cmd->add_option("--orders", tail_orders, "character orders, e.g. 2,3,4 or 2-7");
    tail_cmd->add_option("--m", tail.m, "character index (coprime to each order)");
    tail_cmd->add_option("--shift", tail.shift, "cyclic coefficient shift");
    tail_cmd->add_option("--kind", tail_kind, "midpoint or arcmax")
        ->check(CLI::IsMember({"midpoint", "arcmax"}));
    tail_cmd->add_option("--grid", tail.grid_T, "arcmax offsets per arc");
    tail_cmd->add_option("--refine-tol", tail.refine_tol, "arcmax refinement tolerance (<=0 off)");
    tail_cmd->add_option("--vstep", tail.vstep, "V grid step");
    tail_cmd->add_option("--out", tail.out, "output CSV path")->required();
    tail_cmd->add_option("--svg", tail.svg, "optional SVG plot path");
    tail_cmd->add_option("--threads", tail.threads, "worker threads (default: CHARSUM_THREADS or all)");

    charsum::ConstantsOptions constants;
    std::string constants_orders = "2-8";
    auto* constants_cmd = app.add_subcommand("constants", "analytic constants per order");
    constants_cmd->add_option("--orders", constants_orders, "orders, e.g. 2-8 or 2,4,6");
    constants_cmd->add_option("--out", constants.out, "output JSON path")->required();

    charsum::RandModelOptions randmodel;
    std::vector<double> s_values;
    auto* randmodel_cmd =
        app.add_subcommand("randmodel", "empirical / theoretical / arithmetic Laplace transforms");
    randmodel_cmd->add_option("--p", randmodel.p, "prime modulus");
    randmodel_cmd->add_option("--d", randmodel.d, "character order");
    randmodel_cmd->add_option("--s", s_values, "s values")->delimiter(',');
    randmodel_cmd->add_option("--samples", randmodel.samples, "Monte Carlo sample count");
    randmodel_cmd->add_option("--seed", randmodel.seed, "master seed");
    randmodel_cmd->add_option("--out", randmodel.out, "output JSON path")->required();
    randmodel_cmd->add_option("--threads", randmodel.threads, "worker threads");

    std::string verify_level = "quick";
    int verify_threads = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--level", verify_level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--threads", verify_threads, "worker threads");

    std::string manifest_path;
    auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded manifest");
    replay_cmd->add_option("manifest", manifest_path, "manifest JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message/help
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (tail_cmd->parsed()) {
            tail.orders = parse_orders(tail_orders);
            tail.kind = tail_kind == "arcmax" ? charsum::SpectrumKind::arcmax
                                              : charsum::SpectrumKind::midpoint;
            return charsum::run_tail(tail);
        }
        if (constants_cmd->parsed()) {
            constants.orders = parse_orders(constants_orders);
            return charsum::run_constants(constants);
        }
        if (randmodel_cmd->parsed()) {
            if (!s_values.empty()) randmodel.s_values = s_values;
            return charsum::run_randmodel(randmodel);
        }
        if (verify_cmd->parsed()) {
            return charsum::run_verify(verify_level == "full" ? charsum::VerifyLevel::full
                                                              : charsum::VerifyLevel::quick,
                                       verify_threads);
        }
        if (replay_cmd->parsed()) {
            return charsum::run_replay(manifest_path);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
