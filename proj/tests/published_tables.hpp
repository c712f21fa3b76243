#pragma once
#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

// Census values from the published tangle tables, used as the external truth
// the pipeline must reproduce.

namespace published {

// Two-leg diagram counts (loop-free column) and their two-particle
// irreducible subset, orders 0..22.
inline const std::vector<const char*> g_column = {
    "1", "2", "8", "42", "260", "1796", "13396", "105706", "870772",
    "7420836", "65004584", "582521748", "5320936416", "49402687392",
    "465189744448", "4434492302426", "42731740126228", "415736458808868",
    "4079436831493480", "40338413922226212", "401652846850965808",
    "4024556509468827432", "40558226664529024000"};

inline const std::vector<const char*> sigma2_column = {
    "0", "2", "0", "2", "4", "12", "60", "226", "1076", "5156", "24984",
    "128548", "663040", "3514968", "18918792", "103123906", "569877652",
    "3180066004", "17921451960", "101842206548", "583109887600",
    "3361640932872", "19499226668816"};

inline std::vector<mpz_class> g_counts(int pmax) {
    std::vector<mpz_class> out;
    for (int p = 0; p <= pmax; ++p) out.emplace_back(g_column[p]);
    return out;
}

// Four-leg prime alternating tangles: {series -> {p -> coefficients in n}},
// orders 1..10.
inline const std::map<std::string, std::vector<std::vector<long>>> four_leg = {
    {"Gamma1",
     {{0},  // p = 0
      {1},
      {0},
      {2},
      {2},
      {6, 3},
      {30, 2},
      {62, 40, 2},
      {382, 106, 2},
      {1338, 548, 83, 2},
      {6216, 2968, 194, 2}}},
    {"Gamma2",
     {{0},
      {0},
      {1},
      {1},
      {3, 1},
      {9, 1},
      {21, 11, 1},
      {101, 32, 1},
      {346, 153, 24, 1},
      {1576, 747, 68, 1},
      {7040, 3162, 562, 43, 1}}},
};

// Six-leg prime alternating tangles, orders 1..8.
inline const std::map<std::string, std::vector<std::vector<long>>> six_leg = {
    {"Xi1", {{0}, {0}, {0}, {2}, {0}, {18}, {18}, {156, 24}, {516, 18}}},
    {"Xi2", {{0}, {0}, {1}, {0}, {7}, {6}, {53, 8}, {154, 6}, {609, 181, 6}}},
    {"Xi3", {{0}, {0}, {0}, {2}, {2}, {16, 2}, {42, 2}, {171, 44, 2}, {748, 114, 2}}},
    {"Xi4", {{0}, {0}, {0}, {0}, {4}, {8}, {42, 7}, {156, 14}, {608, 153, 10}}},
    {"Xi5", {{0}, {0}, {0}, {0}, {3}, {9}, {41, 7}, {168, 21}, {663, 165, 12}}},
};

}  // namespace published
