#include "npsim/machine.hpp"

#include <algorithm>
#include <sstream>

namespace npsim {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

std::vector<SymId> MachineSpec::to_symbols(std::string_view text) const {
    std::vector<SymId> out;
    out.reserve(text.size());
    for (char c : text) {
        SymId s = sym_id(c);
        if (s == kNone)
            throw ValidationError(std::string("symbol '") + c + "' is not in the tape alphabet");
        out.push_back(s);
    }
    return out;
}

void MachineSpec::validate() const {
    if (states.empty()) throw ValidationError("machine has no states");
    auto check_state = [&](StateId q, const char* what) {
        if (q < 0 || q >= num_states())
            throw ValidationError(std::string("invalid ") + what + " state id");
    };
    check_state(initial, "initial");
    check_state(accept, "accept");
    check_state(reject, "reject");
    if (accept == reject) throw ValidationError("accept and reject states must differ");
    for (size_t i = 0; i < states.size(); ++i)
        for (size_t j = i + 1; j < states.size(); ++j)
            if (states[i] == states[j]) throw ValidationError("duplicate state name " + states[i]);
    if (tape_alphabet.empty()) throw ValidationError("machine has no tape alphabet");
    for (size_t i = 0; i < tape_alphabet.size(); ++i)
        for (size_t j = i + 1; j < tape_alphabet.size(); ++j)
            if (tape_alphabet[i] == tape_alphabet[j])
                throw ValidationError(std::string("duplicate symbol '") + tape_alphabet[i] + "'");
    if (sym_id(blank) == kNone) throw ValidationError("blank symbol is not in the tape alphabet");
    for (const auto& [key, rule] : delta) {
        auto [q, s] = key;
        check_state(q, "rule source");
        check_state(rule.next, "rule target");
        if (s < 0 || s >= num_symbols() || rule.write < 0 || rule.write >= num_symbols())
            throw ValidationError("rule uses a symbol outside the tape alphabet");
        if (rule.dir != 1 && rule.dir != -1) throw ValidationError("rule direction must be L or R");
        if (is_final(q))
            throw ValidationError("transition from final state " + state_name(q));
    }
}

MachineSpec parse_machine_spec(std::string_view text) {
    MachineSpec m;
    m.initial = m.accept = m.reject = kNone;
    bool saw_blank = false;
    std::string init_name, accept_name, reject_name;
    struct PendingRule {
        int line_no;
        std::string q, sym, write, dir, next;
    };
    std::vector<PendingRule> pending;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find("#!"); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (toks[0] == "states:") {
            for (size_t i = 1; i < toks.size(); ++i) m.states.push_back(toks[i]);
        } else if (toks[0] == "final:") {
            for (size_t i = 1; i < toks.size(); ++i) {
                const std::string& t = toks[i];
                if (t.rfind("accept=", 0) == 0)
                    accept_name = t.substr(7);
                else if (t.rfind("reject=", 0) == 0)
                    reject_name = t.substr(7);
                else
                    fail(line_no, "expected accept=<state> or reject=<state>, got '" + t + "'");
            }
        } else if (toks[0] == "alphabet:") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i].size() != 1)
                    fail(line_no, "symbols must be single characters, got '" + toks[i] + "'");
                m.tape_alphabet += toks[i][0];
            }
        } else if (toks[0] == "blank:") {
            if (toks.size() != 2 || toks[1].size() != 1)
                fail(line_no, "expected a single blank character");
            m.blank = toks[1][0];
            saw_blank = true;
        } else if (toks[0] == "init:") {
            if (toks.size() != 2) fail(line_no, "expected a single initial state");
            init_name = toks[1];
        } else {
            // Rule line: q sym -> write dir next
            if (toks.size() != 6 || toks[2] != "->")
                fail(line_no, "expected rule 'q sym -> write dir next'");
            pending.push_back({line_no, toks[0], toks[1], toks[3], toks[4], toks[5]});
        }
    }

    if (m.states.empty()) throw ParseError("missing states: section");
    if (m.tape_alphabet.empty()) throw ParseError("missing alphabet: section");
    if (!saw_blank) throw ParseError("missing blank: section");
    if (m.tape_alphabet.find(m.blank) != std::string::npos)
        throw ParseError("blank symbol must not appear in alphabet:");
    m.tape_alphabet += m.blank;

    auto resolve_state = [&](const std::string& name, const char* what) {
        StateId q = m.state_id(name);
        if (q == kNone)
            throw ParseError(std::string("unknown ") + what + " state '" + name + "'");
        return q;
    };
    if (init_name.empty()) throw ParseError("missing init: section");
    if (accept_name.empty() || reject_name.empty())
        throw ParseError("missing final: accept=... reject=... section");
    m.initial = resolve_state(init_name, "initial");
    m.accept = resolve_state(accept_name, "accept");
    m.reject = resolve_state(reject_name, "reject");

    for (const auto& r : pending) {
        StateId q = m.state_id(r.q);
        if (q == kNone) fail(r.line_no, "unknown state '" + r.q + "'");
        StateId next = m.state_id(r.next);
        if (next == kNone) fail(r.line_no, "unknown state '" + r.next + "'");
        if (r.sym.size() != 1 || r.write.size() != 1)
            fail(r.line_no, "rule symbols must be single characters");
        SymId s = m.sym_id(r.sym[0]);
        if (s == kNone) fail(r.line_no, "unknown symbol '" + r.sym + "'");
        SymId w = m.sym_id(r.write[0]);
        if (w == kNone) fail(r.line_no, "unknown symbol '" + r.write + "'");
        int dir;
        if (r.dir == "L")
            dir = -1;
        else if (r.dir == "R")
            dir = 1;
        else
            fail(r.line_no, "direction must be L or R, got '" + r.dir + "'");
        if (m.is_final(q))
            fail(r.line_no, "transition from final state " + r.q);
        if (!m.delta.emplace(std::make_pair(q, s), Rule{w, dir, next}).second)
            fail(r.line_no, "duplicate rule for (" + r.q + ", " + r.sym + "); machine must be deterministic");
    }

    m.validate();
    return m;
}

std::string write_machine_spec(const MachineSpec& spec) {
    std::ostringstream out;
    out << "states:";
    for (const auto& s : spec.states) out << ' ' << s;
    out << '\n';
    out << "final: accept=" << spec.state_name(spec.accept)
        << " reject=" << spec.state_name(spec.reject) << '\n';
    out << "alphabet:";
    for (char c : spec.tape_alphabet)
        if (c != spec.blank) out << ' ' << c;
    out << '\n';
    out << "blank: " << spec.blank << '\n';
    out << "init: " << spec.state_name(spec.initial) << '\n';
    for (const auto& [key, rule] : spec.delta) {
        out << spec.state_name(key.first) << ' ' << spec.sym_name(key.second) << " -> "
            << spec.sym_name(rule.write) << ' ' << (rule.dir > 0 ? 'R' : 'L') << ' '
            << spec.state_name(rule.next) << '\n';
    }
    return out.str();
}

bool sanitize_certificate_input(std::string_view input, char delimiter,
                                std::string_view cert_alphabet) {
    size_t first = input.find(delimiter);
    if (first == std::string_view::npos) return false;
    if (input.find(delimiter, first + 1) != std::string_view::npos) return false;
    std::string_view suffix = input.substr(first + 1);
    if (suffix.empty()) return false;
    for (char c : suffix)
        if (cert_alphabet.find(c) == std::string_view::npos) return false;
    return true;
}

}  // namespace npsim
