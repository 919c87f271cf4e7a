// Golden-file checks for the CLI: runs the binary, byte-compares stdout
// against checked-in files, and checks exit codes. Also asserts that
// parallel and serial verify sweeps produce identical output.
//
// Usage: cli_golden <path-to-polytors> <golden-dir>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult res;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        std::cerr << "failed to spawn: " << cmd << "\n";
        return res;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
    return res;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int failures = 0;

void expect_golden(const std::string& bin, const std::string& args, const std::string& golden_path,
                   int expected_exit) {
    const RunResult res = run(bin + " " + args);
    const std::string want = read_file(golden_path);
    bool ok = true;
    if (res.exit_code != expected_exit) {
        std::cerr << "[FAIL] " << args << ": exit code " << res.exit_code << ", expected "
                  << expected_exit << "\n";
        ok = false;
    }
    if (want.empty()) {
        std::cerr << "[FAIL] missing or empty golden file " << golden_path << "\n";
        ok = false;
    } else if (res.out != want) {
        std::cerr << "[FAIL] " << args << ": output differs from " << golden_path << "\n";
        std::cerr << "---- got ----\n" << res.out << "---- want ----\n" << want << "----\n";
        ok = false;
    }
    if (ok) std::cout << "[ok] " << args << "\n";
    else ++failures;
}

void expect_equal_runs(const std::string& bin, const std::string& a, const std::string& b) {
    const RunResult ra = run(bin + " " + a);
    const RunResult rb = run(bin + " " + b);
    if (ra.out != rb.out || ra.exit_code != rb.exit_code) {
        std::cerr << "[FAIL] outputs differ between '" << a << "' and '" << b << "'\n";
        ++failures;
    } else {
        std::cout << "[ok] identical: '" << a << "' vs '" << b << "'\n";
    }
}

void expect_exit(const std::string& bin, const std::string& args, int expected_exit) {
    const RunResult res = run(bin + " " + args);
    if (res.exit_code != expected_exit) {
        std::cerr << "[FAIL] " << args << ": exit code " << res.exit_code << ", expected "
                  << expected_exit << "\n";
        ++failures;
    } else {
        std::cout << "[ok] exit " << expected_exit << ": " << args << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: cli_golden <polytors-binary> <golden-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string dir = argv[2];

    expect_golden(bin, "torsion --l 10 --n 2", dir + "/torsion_l10_n2.txt", 0);
    expect_golden(bin, "torsion --l 10 --n 2 --format json", dir + "/torsion_l10_n2.json", 0);
    expect_golden(bin, "torsion --l 6 --n 2 --show-omitted", dir + "/torsion_l6_n2_omitted.txt", 0);
    expect_golden(bin, "table --l 1", dir + "/table_l1.txt", 0);
    expect_golden(bin, "table --l 1 --format json", dir + "/table_l1.json", 0);
    expect_golden(bin, "table --l 3", dir + "/table_l3.txt", 0);
    expect_golden(bin, "homology --l 1 --n 2 --k 6 --max-degree 7", dir + "/homology_l1_k6.txt", 0);
    expect_golden(bin, "homology --l 1 --n 2 --k 6 --max-degree 7 --format json",
                  dir + "/homology_l1_k6.json", 0);
    expect_golden(bin, "homology --l 6 --n 2 --k inf --max-degree 16",
                  dir + "/homology_l6_winf.txt", 0);
    expect_golden(bin, "verify --l 1..60 --p 2..13", dir + "/verify_l60.txt", 0);
    expect_golden(bin, "verify --l 1..60 --p 2..13 --format json", dir + "/verify_l60.json", 0);
    expect_golden(bin, "table --l 2 --format md", dir + "/table_l2.md", 0);
    expect_golden(bin, "homology --l 2 --n 2 --k 8 --max-degree 6 --format md",
                  dir + "/homology_l2_k8.md", 0);

    // parallel and serial sweeps must render identically
    expect_equal_runs(bin, "verify --l 1..200 --p 2..13 --jobs 1",
                      "verify --l 1..200 --p 2..13 --jobs 4");
    expect_equal_runs(bin, "verify --l 1..200 --p 2..13 --jobs 1 --format json",
                      "verify --l 1..200 --p 2..13 --jobs 7 --format json");

    // exit-code contract
    expect_exit(bin, "torsion", 1);                          // missing required option
    expect_exit(bin, "torsion --l 0", 1);                    // l = 0 out of scope
    expect_exit(bin, "homology --l 2 --n 1 --k 8", 1);       // n < 2
    expect_exit(bin, "verify --l 19 --p 3 --strict", 3);     // documented open question
    expect_exit(bin, "verify --l 19 --p 3", 0);              // tolerated without --strict
    expect_exit(bin, "verify --l 2..40 --p 2", 0);

    // env var overrides the l cap
    expect_exit("POLYTORS_MAX_L=10 " + bin, "torsion --l 11", 1);
    expect_exit("POLYTORS_MAX_L=11 " + bin, "torsion --l 11", 0);

    if (failures > 0) {
        std::cerr << failures << " golden check(s) failed\n";
        return 1;
    }
    std::cout << "all golden checks passed\n";
    return 0;
}
