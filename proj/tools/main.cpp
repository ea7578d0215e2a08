// sigmalab command line: run the verification suite, print side-by-side
// honest/simulated transcripts, dump the attacker-view site, or dump
// exact distributions.
//
// Exit codes: 0 success / suite passed, 1 suite failed a check,
// 2 configuration or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sigmalab/dist.hpp"
#include "sigmalab/sheaf.hpp"
#include "sigmalab/site.hpp"
#include "sigmalab/suite.hpp"

namespace {

using namespace sigmalab;

std::optional<suite::SuiteConfig> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open config file " << path << "\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = suite::parse_config(buf.str());
    if (auto* errors = std::get_if<std::vector<suite::ConfigError>>(&parsed)) {
        for (const auto& err : *errors) {
            std::cerr << "config error";
            if (!err.key.empty()) std::cerr << " [" << err.key << "]";
            std::cerr << ": " << err.message << "\n";
        }
        return std::nullopt;
    }
    return std::get<suite::SuiteConfig>(parsed);
}

struct Instance {
    std::unique_ptr<sigma::SigmaProtocol> proto;
    dist::TranscriptLab lab;
};

Instance make_instance(const suite::SuiteConfig& config) {
    auto proto = sigma::make_protocol(config.protocol, config.params, config.h);
    group::Scalar witness = config.witness;
    if (config.random_witness) {
        suite::SeededSampler sampler(*config.seed);
        witness = sampler.below(config.params.q);
    }
    dist::Simulator sim;
    if (config.fault_constant_z) sim = dist::constant_z_simulator(*proto);
    auto lab = dist::TranscriptLab::make(*proto, witness, sim);
    return Instance{std::move(proto), std::move(lab)};
}

sigma::TranscriptRecord record_for(const Instance& inst,
                                   const sigma::Transcript& t) {
    sigma::TranscriptRecord rec;
    rec.protocol = inst.proto->name();
    rec.params = inst.proto->params();
    if (const auto* cp =
            dynamic_cast<const sigma::ChaumPedersen*>(inst.proto.get())) {
        rec.h = cp->second_generator();
    }
    rec.statement = inst.lab.statement;
    rec.transcript = t;
    return rec;
}

int cmd_suite(const std::string& config_path, const std::string& emit,
              const std::optional<std::string>& epsilon) {
    auto config = load_config(config_path);
    if (!config) return 2;
    if (epsilon) {
        try {
            config->epsilon = dist::parse_rational(*epsilon);
            if (config->epsilon < 0) throw std::invalid_argument("negative");
        } catch (const std::exception&) {
            std::cerr << "config error [epsilon]: expected a nonnegative "
                         "\"num/den\" value\n";
            return 2;
        }
    }
    const auto report = suite::run_suite(*config);
    const auto format = emit == "machine" ? suite::ReportFormat::machine
                                          : suite::ReportFormat::human;
    std::cout << suite::emit_report(report, format);
    return report.overall_pass() ? 0 : 1;
}

int cmd_demo(const std::string& config_path, std::uint64_t seed) {
    const auto config = load_config(config_path);
    if (!config) return 2;
    const auto inst = make_instance(*config);
    const auto q = inst.proto->params().q;

    suite::SeededSampler sampler(seed);
    const auto r = sampler.below(q);
    const auto e = sampler.below(q);
    const auto honest = inst.proto->honest_transcript(inst.lab.witness, r, e);
    const auto e2 = sampler.below(q);
    const auto z2 = sampler.below(q);
    const auto simulated = inst.lab.simulate(inst.lab.statement, e2, z2);

    std::cout << "honest    " << sigma::to_record(record_for(inst, honest))
              << "\n";
    std::cout << "simulated " << sigma::to_record(record_for(inst, simulated))
              << "\n";
    std::cout << "both verify: "
              << (inst.proto->verify(inst.lab.statement, honest) &&
                          inst.proto->verify(inst.lab.statement, simulated)
                      ? "yes"
                      : "no")
              << "\n";
    return 0;
}

int cmd_site(const std::string& config_path) {
    const auto config = load_config(config_path);
    if (!config) return 2;
    const auto inst = make_instance(*config);
    auto s = site::build_site(*inst.proto, inst.lab.statement);
    site::declare_standard_coverings(s);
    std::cout << site::dump_site(s);
    return 0;
}

int cmd_dist(const std::string& config_path, const std::string& shape_arg) {
    const auto config = load_config(config_path);
    if (!config) return 2;
    const auto inst = make_instance(*config);

    view::ViewShape shape{0};
    std::istringstream in(shape_arg);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part == "a") {
            shape.bits |= view::ViewShape::kA;
        } else if (part == "e") {
            shape.bits |= view::ViewShape::kE;
        } else if (part == "z") {
            shape.bits |= view::ViewShape::kZ;
        } else if (!part.empty()) {
            std::cerr << "error: unknown shape component '" << part
                      << "' (expected a, e, z)\n";
            return 2;
        }
    }
    std::cout << "real marginal on " << shape.label() << "\n";
    std::cout << dist::dump_distribution(
        dist::marginal_on_shape(inst.lab.real, shape));
    std::cout << "simulated marginal on " << shape.label() << "\n";
    std::cout << dist::dump_distribution(
        dist::marginal_on_shape(inst.lab.simulated, shape));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sigmalab: exact verification of sigma-protocol structure"};
    app.require_subcommand(1);

    std::string config_path;
    std::string emit = "human";
    std::optional<std::string> epsilon;
    auto* suite_cmd =
        app.add_subcommand("suite", "run the full verification suite");
    suite_cmd->add_option("--config", config_path, "config file (JSON)")
        ->required();
    suite_cmd->add_option("--emit", emit, "report format")
        ->check(CLI::IsMember({"machine", "human"}));
    suite_cmd->add_option("--epsilon", epsilon,
                          "override statistical-distance threshold, num/den");

    std::string demo_config;
    std::uint64_t demo_seed = 0;
    auto* demo_cmd = app.add_subcommand(
        "demo", "print one honest and one simulated transcript");
    demo_cmd->add_option("--config", demo_config, "config file (JSON)")
        ->required();
    demo_cmd->add_option("--seed", demo_seed, "sampler seed")->required();

    std::string site_config;
    auto* site_cmd =
        app.add_subcommand("site", "dump the attacker-view site");
    site_cmd->add_option("--config", site_config, "config file (JSON)")
        ->required();

    std::string dist_config;
    std::string shape = "a,e,z";
    auto* dist_cmd = app.add_subcommand("dist", "dump exact distributions");
    dist_cmd->add_option("--config", dist_config, "config file (JSON)")
        ->required();
    dist_cmd->add_option("--shape", shape,
                         "comma-separated revealed components");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (suite_cmd->parsed()) return cmd_suite(config_path, emit, epsilon);
        if (demo_cmd->parsed()) return cmd_demo(demo_config, demo_seed);
        if (site_cmd->parsed()) return cmd_site(site_config);
        if (dist_cmd->parsed()) return cmd_dist(dist_config, shape);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
