#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gconf/collapse.hpp"
#include "gconf/tc.hpp"

namespace gconf {

struct VerifyOptions {
    CollapsePolicy policy;
    ZclOptions zcl;
};

enum class CheckStatus { Pass, Fail, Skip };

struct CheckOutcome {
    std::string check;
    CheckStatus status = CheckStatus::Pass;
    nlohmann::json expected;
    nlohmann::json actual;
    std::string detail;
};

struct EntryOutcome {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::vector<CheckOutcome> checks;
};

struct VerifyReport {
    std::string corpus;
    std::vector<EntryOutcome> entries;

    std::size_t tally(CheckStatus status) const;
    bool ok() const { return tally(CheckStatus::Fail) == 0; }
};

/// Runs every entry of a corpus document. Graph paths are resolved
/// against `base`. A check that misses its expectation only because the
/// zero-divisor search ran out of budget is reported as a skip.
VerifyReport run_corpus(const nlohmann::json& corpus, const std::filesystem::path& base,
                        const VerifyOptions& options = {});
VerifyReport run_corpus(const std::filesystem::path& path, const VerifyOptions& options = {});

std::string to_string(CheckStatus status);
nlohmann::json to_json(const VerifyReport& report);

} // namespace gconf
