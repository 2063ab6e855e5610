#pragma once

#include <string>
#include <vector>

namespace npsim::fixtures {

// Scans right over 'a's and accepts at the first blank.
inline const std::string scan_machine = R"(states: q0 qa qr
final: accept=qa reject=qr
alphabet: a
blank: _
init: q0
q0 a -> a R q0
q0 _ -> _ R qa
)";

// Steps right, bounces back once, then accepts: the smallest machine whose
// walk revisits cell 0 (a tier-1 node).
inline const std::string bounce_machine = R"(states: q0 q1 q2 qa qr
final: accept=qa reject=qr
alphabet: a x y
blank: _
init: q0
q0 a -> x R q1
q0 x -> x R qr
q0 y -> y R qr
q0 _ -> _ R qr
q1 a -> y L q2
q1 x -> x R qr
q1 y -> y R qr
q1 _ -> _ R qr
q2 x -> x R qa
q2 a -> a R qr
q2 y -> y R qr
q2 _ -> _ R qr
)";

// Verifier: accepts iff the one-cell certificate equals bit 0 of the
// instance ("<bit>#<cert>").
inline const std::string match_bit_machine = R"(states: s c0 c1 v0 v1 qa qr
final: accept=qa reject=qr
alphabet: 0 1 #
blank: _
init: s
s 0 -> 0 R c0
s 1 -> 1 R c1
s # -> # R qr
s _ -> _ R qr
c0 # -> # R v0
c0 0 -> 0 R qr
c0 1 -> 1 R qr
c0 _ -> _ R qr
c1 # -> # R v1
c1 0 -> 0 R qr
c1 1 -> 1 R qr
c1 _ -> _ R qr
v0 0 -> 0 R qa
v0 1 -> 1 R qr
v0 # -> # R qr
v0 _ -> _ R qr
v1 1 -> 1 R qa
v1 0 -> 0 R qr
v1 # -> # R qr
v1 _ -> _ R qr
)";

// Same shape, but every certificate symbol rejects.
inline const std::string match_never_machine = R"(states: s c0 c1 v0 v1 qa qr
final: accept=qa reject=qr
alphabet: 0 1 #
blank: _
init: s
s 0 -> 0 R c0
s 1 -> 1 R c1
s # -> # R qr
s _ -> _ R qr
c0 # -> # R v0
c0 0 -> 0 R qr
c0 1 -> 1 R qr
c0 _ -> _ R qr
c1 # -> # R v1
c1 0 -> 0 R qr
c1 1 -> 1 R qr
c1 _ -> _ R qr
v0 0 -> 0 R qr
v0 1 -> 1 R qr
v0 # -> # R qr
v0 _ -> _ R qr
v1 1 -> 1 R qr
v1 0 -> 0 R qr
v1 # -> # R qr
v1 _ -> _ R qr
)";

struct NamedFixture {
    const char* name;
    const std::string* text;
};

inline std::vector<NamedFixture> all() {
    return {{"scan", &scan_machine},
            {"bounce", &bounce_machine},
            {"match-bit", &match_bit_machine},
            {"match-never", &match_never_machine}};
}

}  // namespace npsim::fixtures
