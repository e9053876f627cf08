#pragma once

#include <filesystem>

#include "frobkit/frobenius.hpp"

namespace frobkit {

struct FixtureCheck {
    std::string name;
    bool pass = true;
    bool erratum = false;  // printed form rejected, corrected form matched
    std::string detail;
};

struct FixtureReport {
    std::string fixture;
    Kind kind = Kind::A;
    int l = 0;
    std::optional<int> m;
    double seconds = 0;
    std::vector<FixtureCheck> checks;

    bool pass() const;
    bool potential_pass() const;
    nlohmann::json to_json() const;
};

// FROBKIT_FIXTURES overrides the compiled-in location
std::filesystem::path fixture_root();
std::vector<std::filesystem::path> fixture_files(const std::string& set);

FixtureReport compare_fixture(const nlohmann::json& fx, const FrobeniusData& fd);
FixtureReport check_fixture_file(const std::filesystem::path& file);

}  // namespace frobkit
