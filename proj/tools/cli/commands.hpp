#ifndef TISGM_CLI_COMMANDS_HPP
#define TISGM_CLI_COMMANDS_HPP

#include <string>

#include "cli/config.hpp"

namespace tisgm::cli {

/// Renderers build the complete output document (deterministic bytes for a
/// given config). They throw tisgm errors / std::runtime_error on failure.
std::string render_stability(const RunConfig& cfg);
std::string render_critical(const RunConfig& cfg);
std::string render_phases(const RunConfig& cfg);
std::string render_ks(const RunConfig& cfg);
std::string render_sample(const RunConfig& cfg);

struct VerifyResult {
    std::string output;
    bool all_pass;
};
VerifyResult render_verify(const RunConfig& cfg);

/// Exit codes: 0 success, 1 usage/I-O, 2 numerical or bracketing failure,
/// 3 capacity, 4 verification failure.
int run(const RunConfig& cfg);

} // namespace tisgm::cli

#endif
