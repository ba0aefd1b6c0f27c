#pragma once

// Reference coefficient tables of H_{g,1} and H_{g,7}: exponent numerator over
// 120, then the 1A, 2A and 3A coefficients.

#include <array>
#include <cstdint>

namespace umbral::testdata {

struct TableRowData {
  std::int64_t exponent_numerator;
  std::array<int, 3> values;
};

inline constexpr std::array<TableRowData, 39> kComponent1{{
    {-1, {-2, -2, -2}},
    {119, {2, 2, 2}},
    {239, {2, -2, 2}},
    {359, {4, 0, -2}},
    {479, {2, -2, 2}},
    {599, {6, 2, 0}},
    {719, {4, 0, -2}},
    {839, {6, 2, 0}},
    {959, {6, -2, 0}},
    {1079, {10, 2, -2}},
    {1199, {6, -2, 0}},
    {1319, {12, 0, 0}},
    {1439, {10, -2, -2}},
    {1559, {14, 2, 2}},
    {1679, {14, -2, 2}},
    {1799, {18, 2, 0}},
    {1919, {14, -2, 2}},
    {2039, {24, 4, 0}},
    {2159, {22, -2, -2}},
    {2279, {26, 2, 2}},
    {2399, {26, -2, 2}},
    {2519, {34, 2, -2}},
    {2639, {30, -2, 0}},
    {2759, {42, 2, 0}},
    {2879, {40, -4, -2}},
    {2999, {48, 4, 0}},
    {3119, {48, -4, 0}},
    {3239, {58, 2, -2}},
    {3359, {56, -4, 2}},
    {3479, {72, 4, 0}},
    {3599, {70, -2, -2}},
    {3719, {80, 4, 2}},
    {3839, {84, -4, 0}},
    {3959, {100, 4, -2}},
    {4079, {96, -4, 0}},
    {4199, {116, 4, 2}},
    {4319, {116, -4, -4}},
    {4439, {134, 6, 2}},
    {4559, {140, -4, 2}},
}};

inline constexpr std::array<TableRowData, 39> kComponent7{{
    {71, {2, -2, 2}},
    {191, {4, 0, -2}},
    {311, {4, 0, -2}},
    {431, {6, 2, 0}},
    {551, {6, -2, 0}},
    {671, {8, 0, 2}},
    {791, {8, 0, 2}},
    {911, {12, 0, 0}},
    {1031, {10, -2, -2}},
    {1151, {14, 2, 2}},
    {1271, {16, 0, -2}},
    {1391, {18, 2, 0}},
    {1511, {18, -2, 0}},
    {1631, {24, 0, 0}},
    {1751, {24, 0, 0}},
    {1871, {30, 2, 0}},
    {1991, {30, -2, 0}},
    {2111, {36, 0, 0}},
    {2231, {38, -2, 2}},
    {2351, {46, 2, -2}},
    {2471, {46, -2, -2}},
    {2591, {54, 2, 0}},
    {2711, {60, 0, 0}},
    {2831, {66, 2, 0}},
    {2951, {68, -4, 2}},
    {3071, {82, 2, -2}},
    {3191, {84, 0, 0}},
    {3311, {98, 2, 2}},
    {3431, {102, -2, 0}},
    {3551, {114, 2, 0}},
    {3671, {122, -2, 2}},
    {3791, {138, 2, 0}},
    {3911, {144, -4, 0}},
    {4031, {162, 2, 0}},
    {4151, {174, -2, 0}},
    {4271, {192, 4, 0}},
    {4391, {200, -4, 2}},
    {4511, {226, 2, -2}},
    {4631, {238, -2, -2}},
}};

}  // namespace umbral::testdata
