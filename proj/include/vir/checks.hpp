#ifndef VIR_CHECKS_HPP
#define VIR_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vir/rep.hpp"
#include "vir/rng.hpp"

namespace vir {

enum class CheckStatus { pass, fail, error };

std::string status_name(CheckStatus s);

/// One machine-runnable check per computational claim. A fail always carries
/// a concrete counterexample in `details`; a pass carries the verified ranges.
struct CheckReport {
    std::string id;
    CheckStatus status = CheckStatus::error;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::int64_t elapsed_ms = 0;

    /// Schema: {"check": ..., "status": ..., "details": {...}, "elapsed_ms": N}.
    /// Timing is the one non-deterministic field; byte-stability comparisons
    /// exclude it via include_timing = false.
    nlohmann::ordered_json to_json(bool include_timing = true) const;
    std::string to_text() const;
};

/// Fault injection for mutation testing of the battery itself.
enum class Mutation { none, flip_central_sign, perturb_m5 };

struct CheckConfig {
    std::uint64_t seed = 1;
    long trials = 100;
    Mutation mutation = Mutation::none;
    bool force = false;      // allow the probe at condition-violating points
    bool full_ideal = false; // also run the 8-variable Groebner stress target
};

const std::vector<std::string>& check_ids();
CheckReport run_check(const std::string& id, const CheckConfig& cfg);
std::vector<CheckReport> run_all(const CheckConfig& cfg);

/// Randomized simplicity probe: draws random truncated elements normalized to
/// carry the canonical generator at their maximal term and verifies the
/// descent step of the simplicity argument; also records bounded generation.
CheckReport probe_simplicity(Space space, const CharacterParams<Rational>& p, long trials,
                             std::uint64_t seed, const Bounds& bounds, bool force = false,
                             const BracketRules& rules = {});

/// Parameter sampling subject to the simplicity conditions; rejections are
/// counted so the sampling is auditable.
CharacterParams<Rational> sample_valid_params(Rng& rng, long* rejections = nullptr);

} // namespace vir

#endif
