#pragma once

#include <array>

// Reference tables typed in by hand; tests compare against these rather
// than against anything the library computes.
namespace tables {

struct AdderRow {
  int a, b, cin, nm1, nm2, nm3, cout, sum;
};

// a b cin | ~maj1 ~maj2 ~maj3 | cout sum
inline constexpr std::array<AdderRow, 8> kAdder{{
    {0, 0, 0, 1, 1, 0, 0, 0},
    {0, 0, 1, 1, 1, 1, 0, 1},
    {0, 1, 0, 1, 0, 1, 0, 1},
    {0, 1, 1, 0, 1, 0, 1, 0},
    {1, 0, 0, 1, 0, 1, 0, 1},
    {1, 0, 1, 0, 1, 0, 1, 0},
    {1, 1, 0, 0, 0, 0, 1, 0},
    {1, 1, 1, 0, 0, 1, 1, 1},
}};

// Light reaching the MAJ sensor for inputs 000, 001, ..., 111.
inline constexpr std::array<int, 8> kMajLight{0, 47, 31, 78, 47, 94, 78, 125};

inline constexpr std::array<int, 8> kMaj{0, 0, 0, 1, 0, 1, 1, 1};

// two-input rows 00, 01, 10, 11
inline constexpr std::array<int, 4> kAnd{0, 0, 0, 1};
inline constexpr std::array<int, 4> kOr{0, 1, 1, 1};

}  // namespace tables
