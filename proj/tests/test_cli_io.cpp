// Drives the installed CLI binary end to end: exit codes, output formats
// and reproducibility. The binary path arrives as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;
std::string g_binary;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli_io <path-to-nlgames>\n";
        return 2;
    }
    g_binary = argv[1];

    {
        const RunResult r = run("bounds --game chsh --p 0.5 --q 0.5 --restarts 8");
        expect(r.exit_code == 0, "bounds exits 0");
        expect(r.output.find("0.750000") != std::string::npos, "bounds prints the classical value");
        expect(r.output.find("0.853553") != std::string::npos, "bounds prints the quantum value");
        expect(r.output.find("quantum-advantage") != std::string::npos, "bounds prints the classification");
    }
    {
        const RunResult r = run("bounds --game chsh --p 1 --q 1 --restarts 4");
        expect(r.exit_code == 0, "degenerate bounds exit 0");
        expect(r.output.find("1.000000") != std::string::npos, "all bounds are 1 at (1,1)");
    }
    {
        const RunResult r =
            run("bounds --game svetlichny --p 0.6 --q 0.6 --r 0.8 --restarts 4 --format json");
        expect(r.exit_code == 0, "tripartite json bounds exit 0");
        expect(r.output.find("\"quantum_analytic\": 0.8676955") != std::string::npos,
               "r-independent tripartite quantum bound");
    }
    {
        const RunResult r = run("bounds --game chsh --p 1.4 --q 0.5");
        expect(r.exit_code == 1, "out-of-range bias exits 1");
        const RunResult r2 = run("bounds --game chsh --p 0.5 --q 0.5 --r 0.5");
        expect(r2.exit_code == 1, "r with a bipartite game exits 1");
        const RunResult r3 = run("bounds --game nosuch");
        expect(r3.exit_code == 1, "unknown game exits 1");
    }
    {
        const RunResult r = run("scan --game chsh --resolution 11 --restarts 2 --out /tmp/nlg_scan.csv");
        expect(r.exit_code == 0, "scan exits 0");
        const std::string csv = slurp("/tmp/nlg_scan.csv");
        int lines = 0;
        for (char c : csv)
            if (c == '\n') ++lines;
        expect(lines == 122, "csv has a header plus 121 rows");
        expect(csv.rfind("p,q,r,", 0) == 0, "csv header order");
    }
    {
        const RunResult r =
            run("scan --game chsh --resolution 9 --restarts 2 --format svg --out /tmp/nlg_scan.svg");
        expect(r.exit_code == 0, "svg scan exits 0");
        const std::string svg = slurp("/tmp/nlg_scan.svg");
        expect(svg.rfind("<svg", 0) == 0, "svg document");
        expect(svg.find("<polyline") != std::string::npos, "svg carries the boundary");
    }
    {
        const RunResult a = run("scan --game chsh --resolution 5 --restarts 3 --seed 9");
        const RunResult b = run("scan --game chsh --resolution 5 --restarts 3 --seed 9");
        expect(a.output == b.output, "identical seeds give byte-identical scans");
        const RunResult c = run("scan --game chsh --resolution 5 --restarts 3 --seed 9 --jobs 3");
        expect(a.output == c.output, "worker count does not change the output");
    }
    {
        auto classifications = [](const std::string& csv) {
            std::string cols;
            std::istringstream is(csv);
            std::string line;
            while (std::getline(is, line)) {
                const size_t comma = line.rfind(',');
                if (comma != std::string::npos) cols += line.substr(comma + 1) + "\n";
            }
            return cols;
        };
        const RunResult a = run("scan --game svetlichny --resolution 5 --restarts 2 --r 0.5");
        const RunResult b = run("scan --game svetlichny --resolution 5 --restarts 2 --r 0.9");
        expect(a.exit_code == 0 && b.exit_code == 0, "fixed-r scans exit 0");
        expect(classifications(a.output) == classifications(b.output),
               "classification column is independent of the fixed r");
        const RunResult bad = run("scan --game chsh --resolution 5 --r 0.5");
        expect(bad.exit_code == 1, "fixed r with a bipartite scan exits 1");
    }
    {
        const RunResult r = run("strategy --game chsh --p 0.5 --q 0.5 --restarts 6");
        expect(r.exit_code == 0, "strategy exits 0");
        expect(r.output.find("\"value\": 0.85355339") != std::string::npos,
               "strategy reports the Tsirelson value");
        const RunResult r2 = run("strategy --game svetlichny --p 0.5 --q 0.5 --r 0.5 --restarts 6");
        expect(r2.exit_code == 0, "tripartite strategy exits 0");
        expect(r2.output.find("\"model\": \"bipartition\"") != std::string::npos,
               "tripartite strategy is the bipartition construction");
        expect(r2.output.find("charlie") != std::string::npos, "strategy lists Charlie's settings");
        const RunResult r3 = run("strategy --game chsh --p 0.95 --q 0.95 --restarts 6");
        expect(r3.exit_code == 0, "region-1 strategy exits 0");
        expect(r3.output.find("\"value\": 0.9975") != std::string::npos,
               "region-1 strategy matches the classical value");
    }
    {
        const RunResult a = run("verify --seed 7 --restarts 5 --format json");
        const RunResult b = run("verify --seed 7 --restarts 5 --format json");
        expect(a.exit_code == 0, "verify exits 0");
        expect(!a.output.empty() && a.output == b.output, "verify reports are byte-identical");
        expect(a.output.find("\"all_pass\": true") != std::string::npos, "verify passes");
    }
    {
        const RunResult r = run("");
        expect(r.exit_code == 1, "missing subcommand exits 1");
        const RunResult r2 = run("bounds --bogus-flag 3");
        expect(r2.exit_code == 1, "unknown flag exits 1");
        const RunResult r3 = run("--help");
        expect(r3.exit_code == 0, "help exits 0");
    }

    if (g_failures == 0) {
        std::cout << "cli io: all checks passed\n";
        return 0;
    }
    std::cout << "cli io: " << g_failures << " checks failed\n";
    return 1;
}
