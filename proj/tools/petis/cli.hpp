#pragma once

#include "petis/petis.h"

#include "json.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

using json = nlohmann::ordered_json;

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitCertificate = 4;

// Raised for anything that should terminate with a specific exit code.
class CliError : public std::runtime_error {
public:
    CliError(int exit_code, const std::string& msg) : std::runtime_error(msg), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

[[noreturn]] void config_error(const std::string& msg);
int exit_code_for(petis_status status);
// Throws CliError carrying petis_last_error() when status != PETIS_OK.
void check(petis_status status, const std::string& context);

struct ModelDeleter {
    void operator()(petis_model* m) const { petis_model_destroy(m); }
};
struct RecordDeleter {
    void operator()(petis_record* r) const { petis_record_destroy(r); }
};
using ModelPtr = std::unique_ptr<petis_model, ModelDeleter>;
using RecordPtr = std::unique_ptr<petis_record, RecordDeleter>;

struct Outputs {
    std::optional<std::string> trajectory_csv;
    std::optional<std::string> report;
    std::optional<std::string> plot_csv;
};

struct Estimation {
    long samples = 2000;
    double radius = 1.0;
    unsigned long long seed = 1;
};

struct RunConfig {
    json model;  // validated model section
    petis_trigger trigger{};
    petis_delay delay{};
    std::vector<double> x0;
    long horizon = 0;
    std::optional<double> epsilon;
    Outputs outputs;
    bool allow_v0_above_a = false;
    Estimation estimation;
    std::optional<json> grid;  // sweep only
};

struct GlobalFlags {
    std::optional<std::string> out_dir;
    std::optional<unsigned long long> seed;
};

json load_json_file(const std::string& path);
RunConfig parse_config(const json& root, bool allow_grid);
// Applies command-line overrides and resolves output paths against --out.
void apply_flags(RunConfig& cfg, const GlobalFlags& flags, bool default_outputs);

ModelPtr build_model(const json& model, const petis_delay& delay);
json echo_inputs(const RunConfig& cfg, const petis_model* model);

// Matrix helpers shared by the commands.
struct Dense {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major
};
Dense model_parameter(const petis_model* model, const char* key);
json dense_to_json(const Dense& d);

int cmd_run(const RunConfig& cfg);
int cmd_table1(const std::string& variant, const GlobalFlags& flags);
int cmd_sweep(const RunConfig& cfg, const GlobalFlags& flags);
// Prints the report; writes <out>/certificate.json only when --out is given.
int cmd_certify(const RunConfig& cfg, const GlobalFlags& flags);

// JSON-safe number: non-finite values become null.
json number(double v);
std::string format_double(double v);

} // namespace cli
