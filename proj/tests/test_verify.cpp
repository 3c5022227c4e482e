#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gconf/error.hpp"
#include "gconf/verify.hpp"

using namespace gconf;
namespace fs = std::filesystem;

namespace {

const CheckOutcome* find_check(const EntryOutcome& e, const std::string& name) {
    for (const auto& c : e.checks)
        if (c.check == name)
            return &c;
    return nullptr;
}

} // namespace

TEST_CASE("verify passes small corpus entries") {
    nlohmann::json corpus = {{"entries",
                              {{{"name", "Y"}, {"graph", "Y.json"}, {"n", 2}, {"expect", {{"counts", {18, 18}}, {"betti", {1, 1}}}}},
                               {{"name", "B3"}, {"graph", "B3.json"}, {"n", 2}, {"expect", {{"tc", 2}, {"b1_min", 2}}}}}}};
    VerifyReport r = run_corpus(corpus, GCONF_FIXTURES);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.ok());
    CHECK(r.tally(CheckStatus::Pass) == 2);
    auto doc = to_json(r);
    CHECK(doc["summary"]["pass"] == 2);
    CHECK(doc["entries"][0]["checks"].size() == 2);
}

TEST_CASE("verify names the offending check") {
    fs::path dir = fs::temp_directory_path() / "gconf_verify_test";
    fs::create_directories(dir);
    {
        // Y with a fourth leaf: no longer the graph the counts belong to.
        std::ofstream(dir / "Y.json") << R"({"vertices":[{"id":"c","sink":false},{"id":"x","sink":false},
            {"id":"y","sink":false},{"id":"z","sink":false},{"id":"w","sink":false}],
            "edges":[["c","x"],["c","y"],["c","z"],["c","w"]]})";
        std::ofstream(dir / "broken.json") << "{\"vertices\": [";
    }
    nlohmann::json corpus = {
        {"entries",
         {{{"name", "altered"}, {"graph", "Y.json"}, {"n", 2}, {"expect", {{"counts", {18, 18}}, {"components", 1}}}},
          {{"name", "unparsable"}, {"graph", "broken.json"}, {"n", 2}, {"expect", {{"counts", {18, 18}}}}},
          {{"name", "typo"}, {"graph", "Y.json"}, {"n", 2}, {"expect", {{"cuonts", {18, 18}}}}}}}};
    VerifyReport r = run_corpus(corpus, dir);
    CHECK_FALSE(r.ok());
    CHECK(r.tally(CheckStatus::Fail) == 3);
    const auto* counts = find_check(r.entries[0], "counts");
    REQUIRE(counts);
    CHECK(counts->status == CheckStatus::Fail);
    CHECK(find_check(r.entries[0], "components")->status == CheckStatus::Pass);
    REQUIRE(find_check(r.entries[1], "graph"));
    CHECK_FALSE(find_check(r.entries[1], "graph")->detail.empty());
    CHECK(find_check(r.entries[2], "cuonts")->detail == "unknown check");
    fs::remove_all(dir);
}

TEST_CASE("tight budget is a skip, not a failure") {
    nlohmann::json corpus = {
        {"entries", {{{"name", "B4"}, {"graph", "B4.json"}, {"n", 3}, {"expect", {{"tc", 4}, {"dimension", 2}}}}}}};
    VerifyOptions options;
    options.zcl.budget = 5;
    VerifyReport r = run_corpus(corpus, GCONF_FIXTURES, options);
    CHECK(r.ok());
    CHECK(r.entries[0].status == CheckStatus::Skip);
    CHECK(find_check(r.entries[0], "tc")->status == CheckStatus::Skip);
    CHECK(find_check(r.entries[0], "dimension")->status == CheckStatus::Pass);
}

TEST_CASE("corpus document errors") {
    CHECK_THROWS_AS(run_corpus(nlohmann::json::object(), GCONF_FIXTURES), Error);
    CHECK_THROWS_AS(run_corpus(fs::path("/nonexistent/corpus.json")), Error);
}
