#include "cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "fig8");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = fig8::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        v.push_back(l);
    return v;
}

} // namespace

TEST_CASE("bad input exits with 2")
{
    CHECK(run({"jones", "--u", "1.5", "--p", "2", "--N", "10"}).code == fig8::cli::bad_input);
    CHECK(run({"jones", "--u", "0", "--N", "10"}).code == fig8::cli::bad_input);
    CHECK(run({"modularity", "--eta", "1,1,1,1"}).code == fig8::cli::bad_input);
    CHECK(run({"modularity", "--eta", "1,2,3"}).code == fig8::cli::bad_input);
    CHECK(run({"jones", "--N", "x"}).code == fig8::cli::bad_input);
    CHECK(run({"region", "--p", "2", "--m", "2"}).code == fig8::cli::bad_input);
    CHECK(run({"jones", "--format", "xml"}).code == fig8::cli::bad_input);
    CHECK(run({"nosuch"}).code == fig8::cli::bad_input);
    Result r = run({"jones", "--u", "1.5"});
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("jones over a range of N")
{
    Result r = run({"jones", "--u", "0.5", "--p", "2", "--N", "100..108"});
    REQUIRE(r.code == fig8::cli::ok);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 11);
    CHECK(ls[0].rfind("# fig8-lab/1 jones", 0) == 0);
    CHECK(ls[1] == "N,u,p,logmag,phase");
    CHECK(ls[2].rfind("100,", 0) == 0);
    CHECK(ls[10].rfind("108,", 0) == 0);
    // gcd(2, N) > 1 for even N is reported
    CHECK(r.err.find("warning: gcd") != std::string::npos);
}

TEST_CASE("json output")
{
    Result r = run({"jones", "--u", "0.5", "--p", "2", "--N", "3,101", "--format", "json"});
    REQUIRE(r.code == fig8::cli::ok);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    auto head = nlohmann::json::parse(ls[0]);
    CHECK(head["schema"] == "fig8-lab/1");
    CHECK(head["command"] == "jones");
    auto rec = nlohmann::json::parse(ls[2]);
    CHECK(rec["N"] == 101);
    CHECK(rec["logmag"].get<double>() == doctest::Approx(58.359265050077651779).epsilon(1e-12));
}

TEST_CASE("theorem table and tolerance")
{
    Result r = run({"theorem", "--u", "0.5", "--p", "2", "--N", "101,201,200", "--tol", "0.01"});
    CHECK(r.code == fig8::cli::ok);
    CHECK(r.out.find("skipped_noncoprime") != std::string::npos);
    Result tight = run({"theorem", "--u", "0.5", "--p", "2", "--N", "101,201", "--tol", "1e-4"});
    CHECK(tight.code == fig8::cli::assertion_failed);
    Result all = run({"theorem", "--u", "0.5", "--p", "2", "--N", "200", "--include-noncoprime"});
    CHECK(all.code == fig8::cli::ok);
    CHECK(all.out.find("noncoprime") != std::string::npos);
}

TEST_CASE("region header reports two components")
{
    Result r = run({"region", "--u", "0.5", "--p", "3", "--m", "2", "--res", "100"});
    CHECK(r.code == fig8::cli::ok);
    auto ls = lines(r.out);
    REQUIRE(!ls.empty());
    CHECK(ls[0].find("components=2") != std::string::npos);
    CHECK(ls[1] == "x,y,rePhi,inU,inE,inD,inRbar,inRunder");
}

TEST_CASE("lemmas are deterministic for a seed and honour --tol")
{
    Result a = run({"lemmas", "--seed", "7"});
    Result b = run({"lemmas", "--seed", "7", "--threads", "1"});
    CHECK(a.code == fig8::cli::ok);
    CHECK(a.out == b.out);
    Result c = run({"lemmas", "--seed", "8"});
    CHECK(c.out != a.out);
    Result tight = run({"lemmas", "--seed", "7", "--tol", "1e-30"});
    CHECK(tight.code == fig8::cli::assertion_failed);
    CHECK(tight.err.find("FAIL") != std::string::npos);
}

TEST_CASE("modularity for S passes, other eta only report")
{
    Result s = run({"modularity", "--u", "0.5", "--eta", "0,-1,1,0", "--N", "401,799"});
    CHECK(s.code == fig8::cli::ok);
    Result e = run({"modularity", "--u", "0.3", "--eta", "1,0,1,1", "--N", "201,401", "--zagier",
                    "--format", "json"});
    CHECK(e.code == fig8::cli::ok);
    int zagier = 0;
    for (const auto& l : lines(e.out)) {
        auto j = nlohmann::json::parse(l);
        if (j.contains("kind") && j["kind"] == "zagier")
            ++zagier;
    }
    CHECK(zagier == 6);
    Result tight = run({"modularity", "--u", "0.5", "--N", "401,799", "--tol", "1e-9"});
    CHECK(tight.code == fig8::cli::assertion_failed);
}

TEST_CASE("--out writes to a file")
{
    const std::string path = "fig8_cli_test_out.csv";
    Result r = run({"jones", "--N", "5", "--out", path});
    CHECK(r.code == fig8::cli::ok);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string first;
    std::getline(f, first);
    CHECK(first.rfind("# fig8-lab/1 jones", 0) == 0);
    f.close();
    std::remove(path.c_str());
}
