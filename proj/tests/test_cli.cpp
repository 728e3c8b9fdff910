#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "qinv/cli.hpp"
#include "qinv/common.hpp"
#include "qinv/jones.hpp"
#include "qinv/laurent.hpp"

using namespace qinv;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qinv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("dedekind") {
    const auto r = run({"dedekind", "--q", "1", "--m", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1/18") != std::string::npos);
    CHECK(r.out.find("12m·s = 2") != std::string::npos);
}

TEST_CASE("wrt-lens prints the golden polynomial") {
    const auto human = run({"wrt-lens", "--r", "5", "--m", "3", "--q", "1", "--color", "0"});
    CHECK(human.code == 0);
    CHECK(human.out == to_string(golden::w5_l31()) + "\n");
    const auto j = run({"wrt-lens", "--r", "5", "--m", "1", "--q", "1", "--json", "--ambient"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(cyc_from_json(parsed["canonical"]) == golden::eta5());
    CHECK(cyc_from_json(parsed["ambient"]) == golden::eta5());
}

TEST_CASE("skein and tv") {
    const auto sk = run({"skein", "--r", "5", "--table"});
    CHECK(sk.code == 0);
    const auto t = nlohmann::json::parse(sk.out);
    CHECK(cyc_from_json(t["eta"]) == golden::eta5());
    CHECK(t["delta"].size() == 4);

    const auto tv = run({"tv", "--r", "3", "--tri", "fixtures/triangulations/s3_boundary_4simplex.json"});
    CHECK(tv.code == 0);
    CHECK(tv.out == "1/2\n");
    const auto count = run({"tv", "--r", "3", "--tri", "fixtures/triangulations/s3_boundary_4simplex.json",
                            "--count-only"});
    CHECK(count.out == "16\n");
}

TEST_CASE("jones, arf and braid-pd") {
    const auto j = run({"jones", "--pd", "fixtures/pd/trefoil.json", "--json"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(laurent_from_json(parsed["jones"]) == jones(parse_pd(slurp("fixtures/pd/trefoil.json"))));
    const auto at1 = run({"jones", "--pd", "fixtures/pd/hopf.json", "--eval", "1:0", "--sqrt", "1:0"});
    CHECK(at1.code == 0);
    CHECK(at1.out.find("= -2\n") != std::string::npos);
    CHECK(run({"jones", "--pd", "fixtures/pd/trefoil.json", "--eval", "3:1"}).code == 1);

    CHECK(run({"arf", "--pd", "fixtures/pd/t2_3.json"}).out == "Arf = 1\n");
    CHECK(run({"arf", "--pd", "fixtures/pd/hopf.json"}).out.find("non") != std::string::npos);

    const auto b = run({"braid-pd", "--strands", "2", "--word", "1,1,1"});
    CHECK(b.code == 0);
    CHECK(pd_from_json(nlohmann::json::parse(b.out)).crossings ==
          parse_pd(slurp("fixtures/pd/t2_3.json")).crossings);
}

TEST_CASE("periodicity exit codes") {
    const auto ok = run({"periodicity", "--pd", "fixtures/pd/t2_5.json", "--quotient", "fixtures/pd/unknot.json",
                         "--prime", "5", "--all-roots"});
    CHECK(ok.code == 0);
    const auto bad = run({"periodicity", "--pd", "fixtures/pd/t2_5.json", "--quotient", "fixtures/pd/unknot.json",
                          "--prime", "7", "--root", "4:1", "--sqrt", "8:1"});
    CHECK(bad.code == 2);
    CHECK(bad.out.find("fail") != std::string::npos);
    const auto rej = run({"periodicity", "--pd", "fixtures/pd/trefoil.json", "--quotient",
                          "fixtures/pd/unknot.json", "--prime", "3", "--root", "2:1", "--sqrt", "4:1"});
    CHECK(rej.code == 0);
    CHECK(rej.out.find("precondition-rejected") != std::string::npos);
}

TEST_CASE("verify") {
    const auto r = run({"verify", "theorem3-unknot", "--r", "5", "--p", "3", "--s", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4 pass, 0 fail") != std::string::npos);

    std::string first;
    for (const char* threads : {"1", "3"}) {
        const auto all = run({"--threads", threads, "verify", "all", "--json"});
        CHECK(all.code == 0);
        const auto j = nlohmann::json::parse(all.out);
        CHECK(j["all_pass"] == true);
        CHECK(j["suites"].size() == 8);
        for (const auto& s : j["suites"])
            for (const auto& rep : s["reports"])
                if (!rep["lhs"].is_null()) CHECK(to_json(cyc_from_json(rep["lhs"])) == rep["lhs"]);
        if (first.empty())
            first = all.out;
        else
            CHECK(all.out == first);
    }
    set_num_threads(1);
    const auto timed = run({"verify", "defect-sign", "--json", "--timing"});
    CHECK(timed.out.find("seconds") != std::string::npos);
}

TEST_CASE("usage and input errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"dedekind", "--q", "1"}).code == 1);
    CHECK(run({"dedekind", "--q", "1", "--m", "3", "--frobnicate"}).code == 1);
    CHECK(run({"verify", "theorem9"}).code == 1);
    CHECK(run({"tv", "--r", "3", "--tri", "no/such/file.json"}).code == 1);
    CHECK(run({"--help"}).code == 0);

    const std::string bad = "/tmp/qinv_bad_pd.json";
    std::ofstream(bad) << R"({"crossings": [[1,2,3]]})";
    const auto r = run({"jones", "--pd", bad});
    CHECK(r.code == 1);
    CHECK(!r.err.empty());
}

TEST_CASE("thread count from the environment") {
    setenv("QINV_THREADS", "2", 1);
    CHECK(run({"dedekind", "--q", "1", "--m", "3"}).code == 0);
#ifdef QINV_HAVE_OPENMP
    CHECK(max_threads() == 2);
#endif
    unsetenv("QINV_THREADS");
    set_num_threads(1);
}
