#pragma once

// Named minimal models shared across the test binaries.

#include "ecsym/curve.hpp"

namespace tcurves {

using ecsym::RationalEC;

inline RationalEC from_j(const ecsym::Rat& j) { return RationalEC::from_j(j); }

inline RationalEC e11a1() { return {0, -1, 1, -10, -20}; }
inline RationalEC e11a2() { return {0, -1, 1, -7820, -263580}; }
inline RationalEC e11a3() { return {0, -1, 1, 0, 0}; }
inline RationalEC e14a1() { return {1, 0, 1, 4, -6}; }
inline RationalEC e15a1() { return {1, 1, 1, -10, -10}; }
inline RationalEC e17a1() { return {1, -1, 1, -1, -14}; }
inline RationalEC e19a1() { return {0, 1, 1, -9, -15}; }
inline RationalEC e26a1() { return {1, 0, 1, -5, -8}; }
inline RationalEC e26b1() { return {1, -1, 1, -3, 3}; }
inline RationalEC e27a3() { return {0, 0, 1, 0, 0}; }    // j = 0, CM -3
inline RationalEC e32a4() { return {0, 0, 0, 1, 0}; }    // j = 1728, CM -4
inline RationalEC e37a1() { return {0, 0, 1, -1, 0}; }
inline RationalEC e49a1() { return {1, -1, 0, -2, -1} ; }  // j = -3375, CM -7
inline RationalEC e121b1() { return {0, -1, 1, -7, 10}; }  // j = -32768, CM -11
inline RationalEC e389a1() { return {0, 1, 1, -2, 0}; }
inline RationalEC e5077a1() { return {0, 0, 1, -7, 6}; }

// CM -8, j = 8000.
inline RationalEC cm8() { return {0, 4, 0, 2, 0}; }
// CM -19, -43, -67, -163.
inline RationalEC cm19() { return {0, 0, 1, -38, 90}; }
inline RationalEC cm43() { return {0, 0, 1, -860, 9707}; }
inline RationalEC cm67() { return {0, 0, 1, -7370, 243528}; }
inline RationalEC cm163() { return {0, 0, 1, -2174420, 1234136692}; }

// Quadratic-twist pair certified 7-congruent in the source example.
inline RationalEC bench_curve() {
  return {0, -1, 1, ecsym::Int("-74988699621831"), ecsym::Int("238006866237979285299")};
}

}  // namespace tcurves
