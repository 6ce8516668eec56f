#ifndef UNITDEF_EXPERIMENTS_HPP
#define UNITDEF_EXPERIMENTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitdef/serialize.hpp"

namespace unitdef {

inline constexpr char const * artifact_version = "0.1.0";

struct config_error : std::invalid_argument {
    std::string field;
    config_error(std::string f, std::string const & msg)
        : std::invalid_argument("config field '" + f + "': " + msg)
        , field(std::move(f))
    {}
};

struct experiment_info {
    std::string name;
    std::string description;
    json defaults;
};
std::vector<experiment_info> list_experiments();

/* Fills defaults and checks every field; throws config_error. */
json normalize_config(json const & cfg);
/* FNV-1a 64 of the canonical config, as hex. */
std::string config_hash(json const & normalized);

json empty_report(json const & normalized);
json run_experiment(json const & cfg);

/* Writes canonical JSON; throws std::runtime_error naming the path. */
void emit_report(json const & report, std::string const & path);
json read_json_file(std::string const & path);

/* Problems found in the report structure; empty means valid. */
std::vector<std::string> validate_report_schema(json const & report);

struct verify_outcome {
    bool ok = true;
    std::size_t verified = 0;
    std::vector<std::string> problems;
};
/* Re-checks every check record from its embedded certificate. */
verify_outcome verify_report(json const & report);

/* 0 when every check met its expectation, else 1. */
int report_exit_code(json const & report);

}   // namespace unitdef

#endif  /* UNITDEF_EXPERIMENTS_HPP */
