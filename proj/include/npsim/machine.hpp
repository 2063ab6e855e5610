#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace npsim {

using StateId = int;
using SymId = int;

inline constexpr int kNone = -1;  // undefined state/symbol (tier-0 nodes)

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// One transition: write `write`, move `dir` (+1 right / -1 left), go to `next`.
struct Rule {
    SymId write = kNone;
    int dir = 0;
    StateId next = kNone;
    bool operator==(const Rule&) const = default;
};

// Deterministic acceptor Turing machine. Symbols are single characters;
// the tape alphabet is the input alphabet plus the blank.
struct MachineSpec {
    std::vector<std::string> states;
    StateId initial = 0;
    StateId accept = 0;
    StateId reject = 0;
    std::string tape_alphabet;  // includes blank as its last-added char
    char blank = '_';
    std::map<std::pair<StateId, SymId>, Rule> delta;

    bool is_final(StateId q) const { return q == accept || q == reject; }
    int num_states() const { return static_cast<int>(states.size()); }
    int num_symbols() const { return static_cast<int>(tape_alphabet.size()); }
    SymId blank_sym() const { return sym_id(blank); }

    SymId sym_id(char c) const {
        auto pos = tape_alphabet.find(c);
        return pos == std::string::npos ? kNone : static_cast<SymId>(pos);
    }
    char sym_name(SymId s) const { return tape_alphabet.at(static_cast<size_t>(s)); }
    StateId state_id(std::string_view name) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<StateId>(i);
        return kNone;
    }
    const std::string& state_name(StateId q) const { return states.at(static_cast<size_t>(q)); }

    const Rule* rule(StateId q, SymId s) const {
        auto it = delta.find({q, s});
        return it == delta.end() ? nullptr : &it->second;
    }

    // Input symbols: every tape symbol except the blank.
    bool is_input_symbol(char c) const { return c != blank && sym_id(c) != kNone; }

    // Converts an instance/certificate string to symbol ids; throws on
    // symbols outside the tape alphabet.
    std::vector<SymId> to_symbols(std::string_view text) const;

    void validate() const;
};

MachineSpec parse_machine_spec(std::string_view text);
std::string write_machine_spec(const MachineSpec& spec);

// Precheck from the verifier-for-all-certificates wrapper: exactly one
// delimiter, non-empty suffix drawn from the certificate alphabet.
// Rejection is a value, not an error.
bool sanitize_certificate_input(std::string_view input, char delimiter,
                                std::string_view cert_alphabet);

// Default per-run step budget: 10 * (|L| + m)^2.
inline long default_step_cap(long n) { return 10 * n * n; }

}  // namespace npsim
