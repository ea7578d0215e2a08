// End-to-end exercise of the installed binary: exit codes, subcommands,
// and byte-identical machine reports across process runs.
//
// argv[1]: path to the sigmalab binary
// argv[2]: path to the bundled configs directory

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& cmd, std::string* output = nullptr) {
    const std::string file = "/tmp/sigmalab_e2e_out.txt";
    const int status = std::system((cmd + " > " + file + " 2>/dev/null").c_str());
    if (output) {
        std::ifstream in(file);
        std::ostringstream buf;
        buf << in.rdbuf();
        *output = buf.str();
    }
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_e2e_test <binary> <configs-dir>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const std::string configs = argv[2];

    // exit 0 and a passing report on the default config
    std::string out;
    expect(run(bin + " suite --config " + configs + "/default.json", &out) == 0,
           "suite on default config exits 0");
    expect(out.find("overall: PASS") != std::string::npos,
           "human report says overall PASS");

    // exit 1 when a check fails
    expect(run(bin + " suite --config " + configs +
               "/fault_constant_z.json") == 1,
           "suite with fault simulator exits 1");

    // exit 2 on config errors
    {
        std::ofstream bad("/tmp/sigmalab_bad_config.json");
        bad << R"({"protocol": "schnorr", "p": 23, "q": 12, "g": 2, "x": 3})";
    }
    expect(run(bin + " suite --config /tmp/sigmalab_bad_config.json") == 2,
           "suite with composite q exits 2");
    expect(run(bin + " suite --config /nonexistent.json") == 2,
           "suite with missing config exits 2");
    expect(run(bin + " suite --config " + configs +
               "/default.json --epsilon nonsense") == 2,
           "bad epsilon override exits 2");

    // byte-identical machine reports across process runs
    std::string m1, m2;
    const std::string machine_cmd =
        bin + " suite --config " + configs + "/default.json --emit machine";
    expect(run(machine_cmd, &m1) == 0, "machine emit run 1 exits 0");
    expect(run(machine_cmd, &m2) == 0, "machine emit run 2 exits 0");
    expect(!m1.empty() && m1 == m2, "machine reports are byte-identical");
    expect(m1.find("\"overall\": \"pass\"") != std::string::npos,
           "machine report carries the overall verdict");

    // demo prints honest and simulated transcripts side by side
    expect(run(bin + " demo --config " + configs + "/default.json --seed 7",
               &out) == 0,
           "demo exits 0");
    expect(out.find("honest    protocol=schnorr") != std::string::npos &&
               out.find("simulated protocol=schnorr") != std::string::npos,
           "demo shows both transcripts");
    expect(out.find("both verify: yes") != std::string::npos,
           "demo transcripts verify");
    std::string out2;
    run(bin + " demo --config " + configs + "/default.json --seed 7", &out2);
    expect(out == out2, "demo is seed-deterministic");

    // site dump
    expect(run(bin + " site --config " + configs + "/default.json", &out) == 0,
           "site exits 0");
    expect(out.find("shape {a} objects=11") != std::string::npos,
           "site dump lists commitment views");
    expect(out.find("quarantined=1210") != std::string::npos,
           "site dump lists the quarantine");

    // distribution dump
    expect(run(bin + " dist --config " + configs +
               "/default.json --shape a", &out) == 0,
           "dist exits 0");
    expect(out.find("real marginal on {a}") != std::string::npos &&
               out.find("1/11") != std::string::npos,
           "dist dump shows the commitment marginal");
    expect(run(bin + " dist --config " + configs +
               "/default.json --shape w") == 2,
           "unknown shape component exits 2");

    // chaum_pedersen config end to end
    expect(run(bin + " suite --config " + configs +
               "/chaum_pedersen.json") == 0,
           "chaum_pedersen suite exits 0");

    // the larger parameter set end to end
    expect(run(bin + " suite --config " + configs + "/p47.json") == 0,
           "q=23 suite exits 0");

    if (failures == 0) {
        std::cout << "cli_e2e: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_e2e: " << failures << " failures\n";
    return 1;
}
