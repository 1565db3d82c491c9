#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* env = std::getenv("PREFIXM_CLI");
    return env ? env : "./prefixm";
}

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return Run{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Fixture files under a per-process temp directory.
struct Files {
    std::string dir;
    Files() {
        char tmpl[] = "/tmp/prefixm-cli-XXXXXX";
        REQUIRE(mkdtemp(tmpl));
        dir = tmpl;
    }
    std::string write(const std::string& name, const std::string& text) const {
        std::string path = dir + "/" + name;
        std::ofstream(path) << text;
        return path;
    }
};

const Files& files() {
    static Files f;
    return f;
}

std::string ohare_pres() {
    return files().write("ohare.pres",
                         "kind: inverse-monoid\ngens: a b c d\n"
                         "rel: abcdacdadabbcdacd\n");
}

}  // namespace

TEST_CASE("pieces: O'Hare factorisations") {
    std::string f = ohare_pres();
    Run benois = run("pieces " + f + " --algo benois");
    CHECK(benois.exit_code == 0);
    CHECK(benois.out == "(abcd)(acd)(ad)(abbcd)(acd)\n");
    Run adjan = run("pieces " + f + " --algo adjan");
    CHECK(adjan.exit_code == 0);
    CHECK(adjan.out == "(abcdacdadabbcdacd)\n");
}

TEST_CASE("adjan: overlap closure") {
    Run r = run("adjan " + ohare_pres());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "abcdacdadabbcdacd\n");
}

TEST_CASE("classify: text output and exit codes") {
    std::string f = files().write("aba.pres", "gens: a b\nrel: aba\n");
    Run r = run("classify " + f);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("class: marker") != std::string::npos);

    std::string u = files().write("unsup.pres", "gens: a b\nrel: aabab\n");
    Run ru = run("classify " + u);
    CHECK(ru.exit_code == 2);
    CHECK(ru.out.find("class: unsupported") != std::string::npos);
}

TEST_CASE("prefix-member: answers and exit codes") {
    std::string f = files().write("baa.pres", "gens: a b\nrel: baa\n");
    CHECK(run("prefix-member " + f + " --word A").exit_code == 0);
    CHECK(run("prefix-member " + f + " --word AA").exit_code == 0);
    CHECK(run("prefix-member " + f + " --word a").exit_code == 1);
    CHECK(run("prefix-member " + f + " --word B").exit_code == 1);
    // Letters outside the alphabet fail at parse time.
    CHECK(run("prefix-member " + f + " --word xyz").exit_code == 65);
    // Unsupported presentations never degrade to "no".
    std::string u = files().write("unsup.pres", "gens: a b\nrel: aabab\n");
    Run ru = run("prefix-member " + u + " --word a");
    CHECK(ru.exit_code == 2);
    CHECK(ru.out.find("unsupported") != std::string::npos);
}

TEST_CASE("prefix-member: JSON report is schema-stable") {
    std::string f = files().write("bs23.pres", "gens: a b\nrel: BaabAAA\n");
    Run r = run("--json prefix-member " + f + " --word Ba");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\n"
          "  \"query\": \"Ba\",\n"
          "  \"answer\": \"yes\",\n"
          "  \"class\": \"conj-pinched\",\n"
          "  \"method\": \"conj-pinched: HNN rational-chain membership\",\n"
          "  \"witness\": [\n"
          "    \"Ba\"\n"
          "  ],\n"
          "  \"unchecked-hypotheses\": []\n"
          "}\n");
}

TEST_CASE("right-invertible: O'Hare answers and refusal") {
    std::string f = ohare_pres();
    CHECK(run("right-invertible " + f + " --word abcd").exit_code == 0);
    CHECK(run("right-invertible " + f + " --word ad").exit_code == 0);
    CHECK(run("right-invertible " + f + " --word b").exit_code == 1);
    std::string bad = files().write("bad.pres", "gens: a b\nrel: abA\n");
    Run r = run("right-invertible " + bad + " --word a");
    CHECK(r.exit_code == 2);
}

TEST_CASE("submonoid-member: amalgam and HNN specs") {
    std::string am = files().write(
        "am.spec",
        "factorB:\nfree: a b\nfactorC:\nfree: c d\namalgam: ab = c\n");
    std::string gens = files().write("am.gens", "a\nb\nc\n");
    CHECK(run("submonoid-member --amalgam " + am + " --gens " + gens +
              " --word ab").exit_code == 0);
    CHECK(run("submonoid-member --amalgam " + am + " --gens " + gens +
              " --word abd").exit_code == 1);

    std::string hn = files().write("h.spec",
                                   "base: free a b\nstable: t\nassoc: a = b\n");
    std::string hg = files().write("h.gens", "a\nb\n");
    CHECK(run("submonoid-member --hnn " + hn + " --gens " + hg +
              " --word Tat").exit_code == 0);
    CHECK(run("submonoid-member --hnn " + hn + " --gens " + hg +
              " --word A").exit_code == 1);
    Run both = run("submonoid-member --amalgam " + am + " --hnn " + hn +
                   " --gens " + hg + " --word a");
    CHECK(both.exit_code == 64);
}

TEST_CASE("munn-eq and reduce") {
    CHECK(run("munn-eq a aAa").exit_code == 0);
    Run d = run("munn-eq abA aab");
    CHECK(d.exit_code == 1);
    CHECK(d.out == "distinct\n");
    Run r = run("reduce abBA");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");  // the empty word prints as 1
    CHECK(run("reduce abB").out == "a\n");
}

TEST_CASE("oracle: bounded search") {
    std::string f = files().write("aba.pres", "gens: a b\nrel: aba\n");
    Run yes = run("--max-len 6 oracle " + f + " --word A");
    CHECK(yes.exit_code == 0);
    CHECK(yes.out.find("witness") != std::string::npos);
    Run no = run("--max-len 2 oracle " + f + " --word bb");
    CHECK(no.exit_code == 1);
    CHECK(no.out.find("not-found-at-bound") != std::string::npos);
}

TEST_CASE("corpus: manifest runner") {
    files().write("mini.pres", "gens: a b\nrel: aba\n");
    std::string good = files().write(
        "good.json",
        "{\"entries\":[{\"file\":\"mini.pres\",\"class\":\"marker\","
        "\"queries\":[{\"word\":\"A\",\"expect\":\"yes\"}]}]}");
    Run ok = run("corpus " + good);
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("0 failed") != std::string::npos);

    std::string bad = files().write(
        "bad.json",
        "{\"entries\":[{\"file\":\"mini.pres\","
        "\"queries\":[{\"word\":\"A\",\"expect\":\"no\"}]}]}");
    Run fail = run("corpus " + bad);
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("FAIL") != std::string::npos);
    CHECK(fail.out.find("query A") != std::string::npos);
}

TEST_CASE("usage and parse errors") {
    CHECK(run("no-such-subcommand").exit_code == 64);
    CHECK(run("classify /nonexistent/file.pres").exit_code == 65);
    std::string bad = files().write("broken.pres", "gens a b\nrel: aba\n");
    Run r = run("classify " + bad);
    CHECK(r.exit_code == 65);
    CHECK(r.out.find("line 1") != std::string::npos);
}
