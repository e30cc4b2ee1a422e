// Command-line front end: design | simulate | montecarlo | certify.
// The command functions are stream-based so tests can drive them directly;
// run_cli wires argv parsing, stdout/stderr, and exit codes
// (0 success / 1 error / 2 certification failure).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qsdc/config.hpp"

namespace qsdc {

enum class OutputFormat { Csv, JsonLike };

struct DesignArgs {
    DesignInputs inputs{};
    std::optional<OutputFormat> format;  ///< default: human-readable table
    std::optional<std::string> out;
};

struct SimulateArgs {
    std::optional<std::string> config_path;
    std::optional<std::string> witness_path;  ///< replay mode
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> out;  ///< trajectory sink; stdout if absent
};

struct MonteCarloArgs {
    std::string config_path;
    int trials = 0;
    std::uint64_t seed = 0;
    int workers = 0;  ///< <= 0: QSDC_WORKERS env or hardware default
    OutputFormat format = OutputFormat::JsonLike;
    std::optional<std::string> out;
};

struct CertifyArgs {
    std::string config_path;
    int grid = 8;
    int levels = 8;
    int workers = 0;
    OutputFormat format = OutputFormat::JsonLike;
    std::optional<std::string> out;  ///< witness sink on failure
};

int cmd_design(const DesignArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_montecarlo(const MonteCarloArgs& args, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyArgs& args, std::ostream& out, std::ostream& err);

/// Worker-count resolution: explicit flag, else QSDC_WORKERS, else hardware.
int resolve_workers(int flag_value);

/// Full argv dispatch; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsdc
