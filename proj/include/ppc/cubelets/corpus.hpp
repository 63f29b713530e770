#pragma once

#include <array>
#include <string_view>

#include "ppc/cubelets/assembly.hpp"

namespace ppc::cubelets::corpus {

struct Entry {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::string_view w_scar =
    "w_scar = dr_(2,0,0)^(N,B,W) . ba_(1,0,0)^(F,N,W) . di_(0,0,0)^(S,F,W)";

inline constexpr std::string_view w_fire =
    "w_fire = fl_(2,0,0)^(S,F,W) . ba_(1,0,0)^(F,N,W) . te_(0,0,0)^(S,F,W)";

inline constexpr std::string_view w_acar =
    "w_acar = ((B . fl_(1,0,0)^(F,N,W)) .\n"
    "  (di_(2,1,0)^(F,N,W) . di_(1,1,0)^(F,N,W) . di_(0,1,0)^(F,N,W))) .\n"
    "  (dr_(2,1,1)^(W,B,N) . ba_(1,1,1)^(F,N,W) . dr_(0,1,1)^(W,B,N)) .\n"
    "  (B . (dr_(1,1,2)^(S,F,W)))";

// One extension segment; raise the count to lengthen it.
inline constexpr std::string_view w_caterpillar =
    "w_caterpillar = (B . di_(1,1,0)^(F,N,W)) .\n"
    "  ((B . di_(1,0,1)^(F,N,W)) . (di_(0,1,0)^(F,N,W) . pa_(1,1,1)^(F,N,W))) .\n"
    "  ((B . ba_(1,1,2)^(N,F,W)) . (fl_(0,1,3)^(E,N,B) . ro_(1,1,3)^(E,N,B)))*1@(0,0,2)";

inline constexpr std::string_view w_lg =
    "w_lg = (B . di_(1,1,0)^(N,B,E)) .\n"
    "  ((B . bg_(1,0,1)^(S,F,E)) . (B . ro_(1,1,1)^(S,F,E)) .\n"
    "   (dr_(0,2,1)^(E,B,S) . ba_(1,2,1)^(F,N,E) . dr_(2,2,1)^(E,B,S))) .\n"
    "  (dr_(0,2,2)^(E,B,S) . ba_(1,2,2)^(F,N,E) . dr_(2,2,2)^(E,B,S))";

inline constexpr std::string_view w_lg_tape =
    "w_lg_tape = (ba_(0,0,0)^(S,F,E) . fl_(1,0,0)^(S,F,E) . di_(2,0,0)^(E,F,B) .\n"
    "  bo_(3,0,0) . fl_(4,0,0)^(S,F,E) . di_(5,0,0)^(E,F,B) .\n"
    "  bo_(6,0,0) . fl_(7,0,0)^(S,F,E) . di_(8,0,0)^(E,F,B) . ba_(9,0,0)^(S,F,E))";

inline constexpr std::string_view w_TM =
    "w_TM = (B^3 . di_(3,1,0)^(N,B,E)) .\n"
    "  ((B^3 . di_(3,0,1)^(S,F,E)) .\n"
    "   (ba_(0,1,1)^(S,F,E) . fl_(1,1,1)^(S,F,E) . ba_(2,1,1)^(S,F,E) . ro_(3,1,1)^(W,N,F)) .\n"
    "   (dr_(0,2,1)^(E,B,S) . pa_(1,2,1) . dr_(2,2,1)^(E,B,S)))";

inline constexpr std::string_view w_MAJgateI =
    "w_MAJgateI = (B^4 . ba_(4,0,0)^(F,N,W)) . (B^4 . di_(4,1,0)^(F,N,W)) .\n"
    "  (B^4 . fl_(4,2,0)^(F,N,W)) . (B^4 . fl_(4,3,0)^(F,N,W)) .\n"
    "  (ba_(0,4,0)^(F,N,W) . di_(1,4,0)^(F,N,W) . fl_(2,4,0)^(F,N,W) . fl_(3,4,0)^(F,N,W) .\n"
    "   fl_(4,4,0)^(W,N,F)) .\n"
    "  (B^4 . fl_(4,5,0)^(F,N,W)) . (B^4 . fl_(4,6,0)^(F,N,W)) .\n"
    "  (B^4 . di_(4,7,0)^(F,N,W)) . (B^4 . ba_(4,8,0)^(F,N,W))";

inline constexpr std::string_view w_MAJgateO =
    "w_MAJgateO = B . br_(6,4,0)^(W,N,F) . fl_(7,4,0)^(F,N,W) . fl_(8,4,0)^(F,N,W) .\n"
    "  ba_(9,4,0)^(F,N,W)";

inline constexpr std::string_view w_NMAJgateO =
    "w_NMAJgateO = B . br_(6,4,0)^(W,N,F) . in_(7,4,0) . fl_(8,4,0)^(F,N,W) .\n"
    "  fl_(9,4,0)^(F,N,W) . ba_(10,4,0)^(F,N,W)";

inline constexpr std::string_view w_BA =
    "w_BA = (B^3 . di_(3,0,0)^(F,N,W)) . (B^3 . ba_(3,1,0)^(F,N,W)) . (B^3 . fl_(3,2,0)^(F,N,W)) .\n"
    "  (di_(0,3,0)^(F,N,W) . ba_(1,3,0)^(F,N,W) . fl_(2,3,0)^(F,N,W) . bo_(3,3,0) .\n"
    "   fl_(4,3,0)^(W,N,F) . B . br_(6,3,0)^(E,N,B) . fl_(7,3,0)^(F,N,W) . ba_(8,3,0)^(F,N,W)) .\n"
    "  (B^3 . fl_(3,4,0)^(F,N,W) . B^3 . fl_(7,4,0)^(F,N,W)) .\n"
    "  (in_(3,5,0) . fl_(4,5,0)^(F,N,W) . fl_(5,5,0)^(F,N,W) . ba_(6,5,0)^(F,N,W) .\n"
    "   bo_(7,5,0) . fl_(8,5,0)^(W,N,F) . B . br_(10,5,0)^(E,N,B) . ba_(11,5,0)^(F,N,W) .\n"
    "   fl_(12,5,0)^(F,N,W)) .\n"
    "  (B^2 . ba_(2,6,0)^(F,N,W) . di_(3,6,0)^(F,N,W) . B^3 . fl_(5,6,0)^(F,N,W)) .\n"
    "  (B^3 . fl_(3,7,0)^(F,N,W) . B^3 . ba_(7,7,0)^(F,N,W)) .\n"
    "  (di_(0,8,0)^(F,N,W) . ba_(1,8,0)^(F,N,W) . fl_(2,8,0)^(F,N,W) . fl_(3,8,0)^(W,N,F) .\n"
    "   B . br_(5,8,0)^(E,N,B) . in_(6,8,0) . fl_(7,8,0)^(F,N,W) . fl_(8,8,0)^(F,N,W) .\n"
    "   ba_(9,8,0)^(F,N,W)) .\n"
    "  (B^3 . fl_(3,9,0)^(F,N,W)) . (B^3 . ba_(3,10,0)^(F,N,W)) . (B^3 . di_(3,11,0)^(F,N,W))";

inline constexpr std::array<Entry, 11> kAll{{
    {"w_scar", w_scar},
    {"w_fire", w_fire},
    {"w_acar", w_acar},
    {"w_caterpillar", w_caterpillar},
    {"w_lg", w_lg},
    {"w_lg_tape", w_lg_tape},
    {"w_TM", w_TM},
    {"w_MAJgateI", w_MAJgateI},
    {"w_MAJgateO", w_MAJgateO},
    {"w_NMAJgateO", w_NMAJgateO},
    {"w_BA", w_BA},
}};

inline Assembly load(std::string_view text) { return expand(parse(text)); }

inline Assembly majority_gate() {
  return merge(load(w_MAJgateI), load(w_MAJgateO), "w_MAJ");
}
inline Assembly not_majority_gate() {
  return merge(load(w_MAJgateI), load(w_NMAJgateO), "w_NMAJ");
}

}  // namespace ppc::cubelets::corpus
