#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxskel/cli.hpp"

using namespace coxskel;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Schema, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Schema, "cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cox category skeleton of a semiprojective toric variety"};
    app.set_version_flag("--version", kVersion);
    CommandOptions opt;
    std::string input, output, frobenius, cls;
    std::uint64_t seed = 0;
    std::size_t source = 0, target = 0, face = 0, wall = 0;
    bool json = false;
    app.add_option("command", opt.command, "theta | gkz | homs | check-exceptional | transform | monad | sharpen | plot")
        ->required()
        ->check(CLI::IsMember({"theta", "gkz", "homs", "check-exceptional", "transform", "monad", "sharpen", "plot"}));
    app.add_option("sub", opt.sub, "monad: validate | restrict | strand | vanishing; plot: secondary-fan | zonotope | theta");
    app.add_option("--input", input, "input document (JSON)")->required();
    app.add_option("--output", output, "write the report (or the SVG for plot) here");
    app.add_flag("--json", json, "print the report instead of the summary");
    app.add_flag("--star", opt.star, "theta: the star variant omega + d");
    app.add_option("--frobenius", frobenius, "theta: cross-check against the grid oracle of this size");
    auto* order = app.add_option("--order", seed, "tie-break seed for the order of Theta");
    app.add_option("--char", opt.characteristic, "field characteristic (0 or a prime)");
    app.add_option("--nef-battery", opt.nef_battery, "transform: total weight of nef probes");
    auto* cls_opt = app.add_option("--class", cls, "transform: class of the line bundle, comma separated");
    auto* src = app.add_option("--source", source, "transform: source chamber");
    auto* tgt = app.add_option("--target", target, "transform: target chamber");
    auto* fc = app.add_option("--face", face, "monad restrict: face id");
    auto* wl = app.add_option("--wall", wall, "sharpen: wall face id");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (order->count()) opt.order_seed = seed;
        if (!frobenius.empty()) {
            auto v = parse_class(frobenius);
            if (v.size() != 1 || v[0] < 1) fail(ErrorKind::Precondition, "--frobenius needs a positive integer");
            opt.frobenius = v[0];
        }
        if (cls_opt->count()) opt.cls = parse_class(cls);
        if (src->count()) opt.source = source;
        if (tgt->count()) opt.target = target;
        if (fc->count()) opt.face = face;
        if (wl->count()) opt.wall = wall;
        if (opt.command == "monad" && opt.sub.empty()) fail(ErrorKind::Schema, "monad needs a subcommand");
        Report r = run_command(opt, slurp(input));
        const std::string report = serialize(r);
        if (!output.empty()) spill(output, opt.command == "plot" ? r.svg : report);
        if (json)
            std::cout << report;
        else if (opt.command == "plot" && output.empty())
            std::cout << r.svg;
        else
            for (const auto& l : r.summary) std::cout << l << "\n";
        return 0;
    } catch (const CoxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
