#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "hamlie/cli.hpp"

using namespace hamlie;
namespace fs = std::filesystem;

namespace {

JobSpec job(fp_t p, std::string cmd, std::optional<Weight> w = {}) {
    JobSpec j;
    j.p = p;
    j.command = std::move(cmd);
    j.weight = w;
    return j;
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("hamlie_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const char* exe = std::getenv("HAMLIE_CLI");
    if (!exe) return {};
    std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Parse, WeightsSignedAndCanonical) {
    EXPECT_EQ(parse_weight("-1,-1", 5), (Weight{4, 4}));
    EXPECT_EQ(parse_weight("4,4", 5), (Weight{4, 4}));
    EXPECT_EQ(parse_weight("(0, -1)", 7), (Weight{0, 6}));
    EXPECT_EQ(parse_weight("12,-8", 5), (Weight{2, 2}));
    for (const char* bad : {"", "1", "1,", "a,b", "1,2,3", "1;2"}) EXPECT_THROW(parse_weight(bad, 5), UsageError) << bad;
}

TEST(Parse, JobValidation) {
    EXPECT_NO_THROW(validate(job(5, "classify")));
    EXPECT_THROW(validate(job(4, "classify")), UsageError);
    EXPECT_THROW(validate(job(3, "classify")), UsageError);
    EXPECT_THROW(validate(job(101, "classify")), UsageError);
    EXPECT_THROW(validate(job(5, "frobnicate")), UsageError);
    EXPECT_THROW(validate(job(5, "factors")), UsageError);
    EXPECT_THROW(validate(job(5, "verify", Weight{0, 0})), UsageError);
    JobSpec j = job(5, "classify");
    j.format = "xml";
    EXPECT_THROW(validate(j), UsageError);
}

TEST(Cache, RoundTripIsExact) {
    InducedModule z = build_induced(5, 0, 0);
    std::stringstream ss;
    dump_module(ss, *z.module);
    auto [status, m] = load_module(ss, 5);
    ASSERT_EQ(status, CacheStatus::hit);
    EXPECT_EQ(m->label, z.module->label);
    EXPECT_EQ(m->basis_weights, z.module->basis_weights);
    for (std::size_t g = 0; g < z.module->alg->dim(); ++g) EXPECT_EQ(m->dense(g), z.module->dense(g));
}

TEST(Cache, WrongPrimeOrVersionIsAMiss) {
    InducedModule z = build_induced(5, 1, 0);
    std::stringstream ss;
    dump_module(ss, *z.module);
    std::string text = ss.str();
    std::stringstream a(text);
    EXPECT_EQ(load_module(a, 7).first, CacheStatus::miss);
    std::string other = text;
    other.replace(other.find(kVersion), std::string(kVersion).size(), "0.0.0");
    std::stringstream b(other);
    EXPECT_EQ(load_module(b, 5).first, CacheStatus::miss);
}

TEST(Cache, TruncatedOrGarbledIsCorrupt) {
    InducedModule z = build_induced(5, 2, 0);
    std::stringstream ss;
    dump_module(ss, *z.module);
    std::string text = ss.str();
    for (std::size_t cut : {text.size() / 3, text.size() - 5}) {
        std::stringstream t(text.substr(0, cut));
        EXPECT_EQ(load_module(t, 5).first, CacheStatus::corrupt) << cut;
    }
    std::stringstream g("not a cache file");
    EXPECT_EQ(load_module(g, 5).first, CacheStatus::corrupt);
}

TEST(Cache, DirectoryUseWarnsAndRebuilds) {
    fs::path dir = fresh_dir("cache");
    std::ostringstream warn;
    InducedModule a = induced_cached(5, {0, 4}, dir.string(), warn);
    fs::path file = dir / "Z_p5_0_4.txt";
    ASSERT_TRUE(fs::exists(file));
    EXPECT_TRUE(warn.str().empty());
    InducedModule b = induced_cached(5, {0, 4}, dir.string(), warn);
    EXPECT_TRUE(warn.str().empty());
    for (std::size_t g = 0; g < a.module->alg->dim(); ++g) EXPECT_EQ(a.module->dense(g), b.module->dense(g));
    // truncate and reload
    auto size = fs::file_size(file);
    fs::resize_file(file, size / 2);
    InducedModule c = induced_cached(5, {0, 4}, dir.string(), warn);
    EXPECT_NE(warn.str().find("corrupt cache file"), std::string::npos);
    EXPECT_EQ(c.module->dense(0), a.module->dense(0));
    EXPECT_EQ(fs::file_size(file), size);
    fs::remove_all(dir);
}

TEST(Run, ClassifyCounts) {
    for (fp_t p : {5u, 7u}) {
        Report r = run(job(p, "classify"));
        EXPECT_EQ(r.exit_code, 0);
        EXPECT_EQ(r.doc["catalog"].size(), static_cast<std::size_t>(p) * p - p + 1);
    }
}

TEST(Run, FactorsOfTrivialInductionAtSeven) {
    Report r = run(job(7, "factors", Weight{0, 0}));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["series"].dump(), R"([{"weight":[0,-1],"dim":48},{"weight":[0,0],"dim":1}])");
}

TEST(Run, RestrictThreeOne) {
    Report r = run(job(5, "restrict", Weight{3, 1}));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["witt"].dump(), R"({"0":6,"1":3,"2":3,"3":3,"4":6})");
    // an alias weight restricts like its representative
    Report alias = run(job(5, "restrict", Weight{3, 2}));
    EXPECT_EQ(alias.doc["witt"], run(job(5, "restrict", Weight{3, 3})).doc["witt"]);
}

TEST(Run, KeyOrderIsFixed) {
    Report r = run(job(5, "factors", Weight{0, 4}));
    std::vector<std::string> keys;
    for (auto it = r.doc.begin(); it != r.doc.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"prime", "command", "weight", "series", "checks", "version", "seed"}));
    EXPECT_EQ(r.doc["checks"][0].dump(), R"({"name":"dimensions add up","pass":true,"detail":"50 = 50"})");
}

TEST(Run, OutputIsDeterministic) {
    for (const std::string fmt : {"json", "markdown"}) {
        JobSpec j = job(5, "induce", Weight{4, 4});
        j.format = fmt;
        EXPECT_EQ(render(run(j), fmt), render(run(j), fmt));
        JobSpec b = job(7, "balanced");
        EXPECT_EQ(render(run(b), fmt), render(run(b), fmt));
    }
}

TEST(Run, InduceReportsNonSimpleExceptional) {
    Report r = run(job(5, "induce", Weight{4, 4}));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.doc["checks"].back()["detail"], "not simple, exceptional");
}

TEST(Binary, ExitCodesAndOutput) {
    if (!std::getenv("HAMLIE_CLI")) GTEST_SKIP() << "HAMLIE_CLI not set";
    CliRun ok = run_cli("factors --p 7 --weight 0,0");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(nlohmann::json::parse(ok.out)["series"][0]["dim"], 48);
    EXPECT_EQ(run_cli("factors --p 7 --weight 0,0").out, ok.out);
    EXPECT_EQ(run_cli("classify --p 4").code, 2);
    EXPECT_EQ(run_cli("factors --p 5 --weight 1").code, 2);
    EXPECT_EQ(run_cli("factors --p 5").code, 2);
    EXPECT_EQ(run_cli("nonsense --p 5").code, 2);
    EXPECT_EQ(run_cli("classify --p 5 --format yaml").code, 2);
    CliRun md = run_cli("restrict --p 5 --weight -1,-1 --format markdown");
    EXPECT_EQ(md.code, 0);
    EXPECT_NE(md.out.find("| 4 | 2 |"), std::string::npos);
}

TEST(Binary, CacheDirFromEnvironment) {
    if (!std::getenv("HAMLIE_CLI")) GTEST_SKIP() << "HAMLIE_CLI not set";
    fs::path dir = fresh_dir("env");
    CliRun first = run_cli("factors --p 5 --weight 2,2 --cache-dir " + dir.string());
    EXPECT_EQ(first.code, 0);
    EXPECT_TRUE(fs::exists(dir / "Z_p5_2_2.txt"));
    fs::remove(dir / "Z_p5_2_2.txt");
    ::setenv("HAMLIE_CACHE_DIR", dir.string().c_str(), 1);
    CliRun second = run_cli("factors --p 5 --weight 2,2");
    ::unsetenv("HAMLIE_CACHE_DIR");
    EXPECT_EQ(second.out, first.out);
    EXPECT_TRUE(fs::exists(dir / "Z_p5_2_2.txt"));
    fs::remove_all(dir);
}

TEST(Binary, VerifyReportsEveryCriterion) {
    if (!std::getenv("HAMLIE_CLI")) GTEST_SKIP() << "HAMLIE_CLI not set";
    CliRun v = run_cli("verify --p 5");
    auto doc = nlohmann::json::parse(v.out);
    ASSERT_EQ(doc["checks"].size(), 12u);
    bool all = true;
    for (const auto& c : doc["checks"]) all = all && c["pass"].get<bool>();
    EXPECT_EQ(v.code, all ? 0 : 1);
}
