#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npsim/machine.hpp"

namespace npsim {

struct MachineBounds {
    int max_states = 4;    // working states, final pair excluded
    int max_symbols = 2;   // input symbols, blank excluded
    int max_cert_len = 3;
    int max_instance_len = 4;
    long step_cap = 60;
    long verify_budget = 3000;
};

// Deterministic machine from a seed: total transition function over the
// working states, so every run halts or gets capped, never sticks.
// Round-trips byte-identically through the text format.
MachineSpec generate_random_machine(std::uint64_t seed, const MachineBounds& bounds);

// Deterministic instance/certificate-length draw for the same seed stream.
struct DiffCase {
    std::uint64_t seed = 0;
    std::string machine_text;
    std::string instance;
    int cert_len = 0;
    long step_cap = 0;
};
DiffCase generate_case(std::uint64_t seed, const MachineBounds& bounds);

enum class EngineStatus { Yes, No, Capped, Error };
const char* to_string(EngineStatus s);

struct EngineRun {
    EngineStatus status = EngineStatus::Error;
    std::string detail;
};

struct CaseReport {
    DiffCase input;
    EngineRun direct;
    EngineRun exp;
    EngineRun poly;
    bool disagreement = false;          // definite verdicts differ
    std::optional<DiffCase> minimized;  // present for disagreements
};

// Runs ground-truth enumeration, the exponential sweep, and the polynomial
// simulation on one case.  Engine exceptions become EngineStatus::Error;
// capped runs are excluded from the agreement check.
CaseReport run_differential(const DiffCase& c, bool minimize = true,
                            bool fault_injection = false);

// Greedy 1-minimal shrink of a disagreeing case: shorter certificate,
// shorter instance, fewer states, fewer symbols, fewer rules -- keeping any
// move that preserves the disagreement.
DiffCase minimize_counterexample(const DiffCase& c, bool fault_injection = false);

struct DiffSummary {
    long total = 0;
    long agreed = 0;
    long disagreed = 0;
    long capped = 0;  // cases where some engine was capped or errored
    std::vector<CaseReport> disagreements;
};

DiffSummary run_differential_range(std::uint64_t seed_lo, std::uint64_t seed_hi,
                                   const MachineBounds& bounds, bool fault_injection = false);

std::string report_to_json(const DiffSummary& s);

}  // namespace npsim
