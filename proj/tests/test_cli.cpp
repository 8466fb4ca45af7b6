#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kedlab/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = kedlab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_data_rows(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int rows = 0;
    bool header_done = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_done) { header_done = true; continue; }  // column header
        ++rows;
    }
    return rows;
}

} // namespace

TEST_CASE("enumerate prints the admissible table with a config header") {
    const auto r = cli({"enumerate", "--dim", "2"});
    CHECK(r.code == 0);
    CHECK(count_data_rows(r.out) == 7);
    CHECK(r.out.rfind("# kedlab enumerate", 0) == 0);
    CHECK(r.out.find("# dim=2") != std::string::npos);
    CHECK(r.out.find("dim,exponents,total_order,ell,q_num,q_den,class") != std::string::npos);

    const auto d1 = cli({"enumerate", "--dim", "1"});
    CHECK(count_data_rows(d1.out) == 4);
    CHECK(d1.out.find("1,\"\",0,3,3,1,LocalizedAdmissible") != std::string::npos);

    const auto periodic = cli({"enumerate", "--dim", "1", "--periodic"});
    CHECK(count_data_rows(periodic.out) == 7);  // adds the three marginal terms

    const auto json = cli({"enumerate", "--dim", "3", "--format", "json"});
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["terms"].size() == 12);
    CHECK(j["config"]["command"] == "enumerate");
}

TEST_CASE("check classifies explicit terms") {
    const auto r = cli({"check", "--dim", "1", "--term", "0,0,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PeriodicMarginal") != std::string::npos);
    CHECK(r.out.find(",false") != std::string::npos);  // not finite when localized

    const auto periodic = cli({"check", "--dim", "1", "--term", "0,0,1", "--periodic"});
    CHECK(periodic.out.find(",true") != std::string::npos);

    const auto tf = cli({"check", "--dim", "3", "--term", "tf", "--format", "json"});
    const auto j = nlohmann::json::parse(tf.out);
    CHECK(j["terms"][0]["token"] == "D=3;n=;l=5;q=5/3");
    CHECK(j["terms"][0]["class"] == "LocalizedAdmissible");
}

TEST_CASE("probe agrees with theory on the hydrogenic vW term") {
    const auto r = cli({"probe", "--profile", "hydrogenic", "--term", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Decaying") != std::string::npos);
    CHECK(r.out.find(",true") != std::string::npos);

    // An unreasonably tight tolerance turns prefactor drift into a failure.
    const auto tight =
        cli({"probe", "--profile", "hydrogenic", "--term", "0,2", "--tol", "1e-6"});
    CHECK(tight.code == 2);
    CHECK(tight.out.find(",false") != std::string::npos);
}

TEST_CASE("probe on a periodic profile reports boundedness per cell") {
    const auto r = cli({"probe", "--profile", "cos:rho0=1,A=0.5,L=1", "--term", "0,0,1",
                        "--cells", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bounded") != std::string::npos);
    CHECK(r.out.find("true") != std::string::npos);
}

TEST_CASE("validate reports the derivative-order bound") {
    const auto r = cli({"validate", "--dim", "1", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["summary"]["m_measured"] == 2);
    CHECK(j["summary"]["m_predicted"] == 2);
    CHECK(j["summary"]["n_failures"] == 0);

    const auto csv = cli({"validate", "--dim", "1"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("# summary {\"dim\":1") != std::string::npos);
}

TEST_CASE("fit emits the documented json and recovers the vW coefficient") {
    const auto r = cli({"fit", "--profile", "hydrogenic", "--reference", "positive",
                        "--basis", "auto"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["fit"]["a"].size() == 3);
    CHECK(std::abs(j["fit"]["a"][1].get<double>() - 1.0) <= 1e-6);
    CHECK(std::abs(j["fit"]["T_ref"].get<double>() - 0.5) <= 1e-6);

    const auto explicit_basis = cli({"fit", "--profile", "hydrogenic", "--reference", "tf",
                                     "--basis", "tf", "--format", "csv"});
    CHECK(explicit_basis.code == 0);
    CHECK(explicit_basis.out.find("# T_ref=") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with code 1") {
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({}).code == 1);
    CHECK(cli({"enumerate"}).code == 1);  // missing --dim
    CHECK(cli({"check", "--dim", "1", "--term", "1,0"}).code == 1);
    CHECK(cli({"probe", "--profile", "unknown", "--term", "2"}).code == 1);
    CHECK(cli({"validate", "--dim", "3", "--max-order", "4"}).code == 1);
    CHECK(cli({"enumerate", "--dim", "3", "--max-order", "65"}).code == 1);

    const auto hint = cli({"check", "--dim", "1", "--term", "1,0"});
    CHECK(hint.err.find("pass \"1\" instead") != std::string::npos);

    const auto grammar = cli({"probe", "--profile", "nope", "--term", "2"});
    CHECK(grammar.err.find("grammar") != std::string::npos);
}

TEST_CASE("help is not an error") {
    const auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("enumerate") != std::string::npos);
    CHECK(r.out.find("validate") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical, regardless of threads") {
    const std::vector<std::string> args{"validate", "--dim", "2"};
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.out == b.out);

    setenv("KEDLAB_THREADS", "1", 1);
    const auto serial = cli(args);
    setenv("KEDLAB_THREADS", "3", 1);
    const auto threaded = cli(args);
    unsetenv("KEDLAB_THREADS");
    CHECK(serial.out == a.out);
    CHECK(threaded.out == a.out);
}

TEST_CASE("dump flags write the documented side files") {
    const std::string profile_path = "cli_profile_dump.csv";
    const auto p = cli({"probe", "--profile", "hydrogenic", "--term", "2", "--dump-profile",
                        profile_path});
    CHECK(p.code == 0);
    {
        std::ifstream in(profile_path);
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);
        CHECK(line == "# profile=hydrogenic");
        std::getline(in, line);
        CHECK(line == "r,rho,g1,g2,g3,g4,g5,g6");
    }
    std::remove(profile_path.c_str());

    const std::string grid_path = "cli_grid_dump.csv";
    const auto f = cli({"fit", "--profile", "hydrogenic", "--reference", "tf", "--basis", "tf",
                        "--dump-grid", grid_path});
    CHECK(f.code == 0);
    {
        std::ifstream in(grid_path);
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);
        CHECK(line.rfind("# scheme=log-trapezoid", 0) == 0);
        std::getline(in, line);
        CHECK(line == "r,w");
    }
    std::remove(grid_path.c_str());
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "cli_out_test.csv";
    const auto direct = cli({"enumerate", "--dim", "2"});
    const auto filed = cli({"enumerate", "--dim", "2", "--out", path});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());

    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    in.close();
    std::remove(path.c_str());

    // The header echoes the effective config, which includes the out path.
    std::string expected = direct.out;
    const std::string needle = "# out=-\n";
    const auto pos = expected.find(needle);
    REQUIRE(pos != std::string::npos);
    expected.replace(pos, needle.size(), "# out=" + path + "\n");
    CHECK(content.str() == expected);
}
