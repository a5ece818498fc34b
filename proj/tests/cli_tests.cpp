// End-to-end tests of the command-line binary. The binary path arrives as
// argv[1]; commands run through the shell with output captured to temp files.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "nwell/potentials.hpp"
#include "nwell/semiclassics.hpp"

namespace {

int g_failures = 0;
std::string g_bin;
std::string g_tmpdir;

void expect(bool cond, const std::string& what) {
    if (cond) {
        std::printf("ok    %s\n", what.c_str());
    } else {
        std::printf("FAIL  %s\n", what.c_str());
        ++g_failures;
    }
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = g_tmpdir + "/out.txt";
    std::string err_path = g_tmpdir + "/err.txt";
    std::string cmd = "'" + g_bin + "' " + args + " >'" + out_path + "' 2>'" +
                      err_path + "'";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::string& p) {
        std::ifstream f(p);
        std::ostringstream os;
        os << f.rdbuf();
        return os.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string slurp_file(const std::string& p) {
    std::ifstream f(p);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct Csv {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream is(text);
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            std::string k = line.substr(2, eq - 3);
            std::string v = line.substr(eq + 2);
            csv.meta.emplace_back(k, v);
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        if (!have_header) {
            while (std::getline(ls, tok, ',')) csv.columns.push_back(tok);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
        csv.rows.push_back(row);
    }
    return csv;
}

std::string meta_value(const Csv& csv, const std::string& key) {
    for (const auto& [k, v] : csv.meta)
        if (k == key) return v;
    return "";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-binary>\n");
        return 2;
    }
    g_bin = argv[1];
    const char* tmp = std::getenv("TMPDIR");
    g_tmpdir = (tmp && *tmp) ? tmp : "/tmp";

    // bands: row count, symmetry about the band center, metadata
    {
        auto r = run_cli("bands --potential cosine --q 8 --wells 4 --n 0");
        expect(r.exit_code == 0, "bands exits 0");
        auto csv = parse_csv(r.out);
        expect(csv.rows.size() == 4, "bands emits one row per well");
        expect(csv.columns.size() == 4 && csv.columns[2] == "energy",
               "bands column layout");
        double e0 = std::stod(meta_value(csv, "E_n0"));
        for (int s = 0; s < 2; ++s) {
            double sum = csv.rows[s][2] + csv.rows[3 - s][2];
            expect(std::abs(sum - 2.0 * e0) < 1e-12 * std::abs(e0),
                   "bands E(s) + E(N+1-s) = 2 E_n0");
        }
        expect(!meta_value(csv, "Delta_n").empty(), "bands reports Delta_n");
    }

    // CSV round-trip at full precision: metadata reparses to the library value
    {
        auto m = nwell::PotentialModel::cosine(8.0, 1.0, 4);
        auto ctx = nwell::SemiclassicalContext::from_model(m, 1.0, 1.0);
        double delta = nwell::hopping_delta(m, ctx, 0);
        auto r = run_cli("bands --potential cosine --q 8 --wells 4 --n 0");
        auto csv = parse_csv(r.out);
        double reparsed = std::stod(meta_value(csv, "Delta_n"));
        expect(reparsed == delta, "Delta_n round-trips bitwise through CSV");
        double e_reparsed = csv.rows[0][2];
        double e_lib = nwell::band_energies(m, ctx, 0, 4).energies[0];
        expect(e_reparsed == e_lib, "energies round-trip bitwise through CSV");
    }

    // determinism: identical invocations give byte-identical files
    {
        std::string f1 = g_tmpdir + "/det1.csv", f2 = g_tmpdir + "/det2.csv";
        run_cli("bands --potential cosine --q 25 --wells 6 --n 1 --out '" + f1 + "'");
        run_cli("bands --potential cosine --q 25 --wells 6 --n 1 --out '" + f2 + "'");
        expect(!slurp_file(f1).empty() && slurp_file(f1) == slurp_file(f2),
               "repeated runs are byte-identical");
    }

    // JSON output parses and mirrors the CSV rows
    {
        auto r = run_cli("bands --potential cosine --q 8 --wells 3 --n 0 --format json");
        expect(r.exit_code == 0, "bands --format json exits 0");
        auto j = nlohmann::json::parse(r.out, nullptr, false);
        expect(!j.is_discarded(), "json output parses");
        expect(j.contains("meta") && j.contains("rows") && j["rows"].size() == 3,
               "json has meta and one row per well");
    }

    // validation failures exit 2
    expect(run_cli("bands --potential cosine --q 8 --wells 4").exit_code == 2,
           "missing required --n exits 2");
    expect(run_cli("bands --potential cosine --q -3 --wells 4 --n 0").exit_code == 2,
           "non-positive q exits 2");
    expect(run_cli("bands --potential nosuch --wells 4 --n 0").exit_code == 2,
           "unknown potential family exits 2");
    expect(run_cli("dispersion --q 8 --n 0 --k-samples 1").exit_code == 2,
           "bad --k-samples exits 2");

    // numerical failure: deliberately tiny verify grid exits 3
    {
        auto r = run_cli("verify --potential cosine --q 8 --wells 4 --n 0 --grid 64");
        expect(r.exit_code == 3, "verify with a 64-point grid exits 3");
    }

    // verify at a production grid passes and reports the fit
    {
        auto r = run_cli("verify --potential cosine --q 8 --wells 4 --n 0 --grid 8192");
        expect(r.exit_code == 0, "verify at 8192 points exits 0");
        auto csv = parse_csv(r.out);
        double ratio = std::stod(meta_value(csv, "delta_ratio"));
        expect(ratio > 0.75 && ratio < 1.25, "verify delta ratio near 1");
        double corr = std::stod(meta_value(csv, "pattern_correlation"));
        expect(corr > 0.99, "verify pattern correlation above 0.99");
    }

    // mathieu subcommand: closed form over oracle near 1
    {
        auto r = run_cli("mathieu --q 25 --n-max 0");
        expect(r.exit_code == 0, "mathieu exits 0");
        auto csv = parse_csv(r.out);
        expect(csv.rows.size() == 1 && std::abs(csv.rows[0][3] - 1.0) < 0.1,
               "mathieu width ratio within 10%");
        expect(run_cli("mathieu --q -1").exit_code == 2, "mathieu q < 0 exits 2");
    }

    // ring subcommand: degeneracy labels and validation
    {
        auto r = run_cli("ring --wells 6 --h0 0.0 --h1 -0.5");
        expect(r.exit_code == 0, "ring exits 0");
        auto csv = parse_csv(r.out);
        expect(csv.rows.size() == 6, "ring emits one row per level");
        expect(run_cli("ring --wells 4 --couplings 1,2,3,4").exit_code == 2,
               "asymmetric ring couplings exit 2");
    }

    // scale conventions
    {
        auto r = run_cli(
            "bands --potential cosine --q 25 --wells 4 --n 0 --scale-convention mathieu");
        expect(r.exit_code == 0, "mathieu scale convention accepted");
        auto csv = parse_csv(r.out);
        expect(std::stod(meta_value(csv, "mass")) == 0.5,
               "mathieu convention fixes m = 1/(2 lc^2)");
        expect(run_cli("bands --potential parabolic-chain --wells 4 --n 0 "
                       "--scale-convention mathieu")
                       .exit_code == 2,
               "mathieu convention outside the cosine family exits 2");
    }

    // config file: flags override, unknown keys rejected
    {
        std::string cfg = g_tmpdir + "/cfg.json";
        {
            std::ofstream f(cfg);
            f << "{\"potential\": \"cosine\", \"q\": 8, \"wells\": 5, \"n\": 0}\n";
        }
        auto r = run_cli("--config '" + cfg + "' bands --n 1");
        expect(r.exit_code == 0, "config file accepted");
        auto csv = parse_csv(r.out);
        expect(csv.rows.size() == 5, "config sets wells");
        expect(meta_value(csv, "n") == "1", "flag overrides config");

        {
            std::ofstream f(cfg);
            f << "{\"q\": 8, \"walls\": 5}\n";
        }
        expect(run_cli("--config '" + cfg + "' bands --n 0").exit_code == 2,
               "unknown config key exits 2");
        expect(run_cli("--config /no/such/file.json bands --n 0").exit_code == 4,
               "missing config file exits 4");
    }

    // I/O failure exits 4
    expect(run_cli("bands --q 8 --wells 4 --n 0 --out /no/such/dir/x.csv")
                   .exit_code == 4,
           "unwritable output path exits 4");

    if (g_failures == 0) {
        std::printf("cli_tests: all checks passed\n");
        return 0;
    }
    std::printf("cli_tests: %d checks failed\n", g_failures);
    return 1;
}
