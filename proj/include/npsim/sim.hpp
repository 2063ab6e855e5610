#pragma once

#include <string>
#include <vector>

#include "npsim/comp_graph.hpp"
#include "npsim/machine.hpp"

namespace npsim {

enum class RunStatus { Halted, StepCapExceeded, Stuck };

const char* to_string(RunStatus s);

struct RunResult {
    RunStatus status = RunStatus::Halted;
    StateId final_state = kNone;  // meaningful only when halted
    bool accepted = false;
    long steps = 0;
    Walk walk;
    bool halted() const { return status == RunStatus::Halted; }
};

// Runs the machine on the given tape contents (cell 0 onward; blank
// elsewhere), recording the computation walk into `g`.  A missing
// transition yields RunStatus::Stuck; exceeding the cap yields
// StepCapExceeded with the partial walk.
RunResult simulate_dtm(const MachineSpec& spec, const std::vector<SymId>& input, long step_cap,
                       CompGraph& g);

// Convenience overload that owns its graph.
struct OwnedRun {
    std::shared_ptr<NodeStore> store;
    RunResult result;
};
OwnedRun simulate_dtm(const MachineSpec& spec, std::string_view input, long step_cap);

// Brute-force ground truth for verifier acceptance: lays every certificate
// in Gamma^m after the instance and runs the machine directly.
// Certificate symbol order: input alphabet order, blank last.
struct DirectEnumResult {
    bool any_accepted = false;
    std::vector<std::string> accepting;  // certificate strings, enumeration order
    long capped = 0;
    long stuck = 0;
    long total = 0;
    // Status per certificate, enumeration order.
    std::vector<RunStatus> statuses;
    std::vector<bool> verdicts;
};
DirectEnumResult enumerate_certificates_direct(const MachineSpec& spec, std::string_view instance,
                                               int cert_len, long step_cap);

// Certificates in enumeration order (lexicographic over the tape alphabet
// with blank last, which is the alphabet's own order).
std::vector<std::vector<SymId>> all_certificates(const MachineSpec& spec, int cert_len);
std::string certificate_to_string(const MachineSpec& spec, const std::vector<SymId>& cert);

}  // namespace npsim
