#pragma once

// Worked matrices and models used across the suites, built in code so the
// numeric tests do not depend on the JSON layer.

#include <string>
#include <vector>

#include "groupmat/groupmat.hpp"

namespace fx {

using groupmat::DeGrootModel;
using groupmat::Matrix;
using groupmat::Partition;
using groupmat::Rational;

inline Matrix mat(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> parsed;
  parsed.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> row;
    row.reserve(r.size());
    for (const auto& s : r) row.push_back(Rational::parse(s));
    parsed.push_back(std::move(row));
  }
  return Matrix::from_rows(parsed);
}

inline Matrix row(const std::vector<std::string>& entries) { return mat({entries}); }

// 4x5 with blocks stable on ({1,2},{3,4}) x ({1,2},{3,4,5}).
inline Matrix ex16_P() {
  return mat({{"2", "3", "1/2", "1/2", "0"},
              {"1", "4", "0", "1/2", "1/2"},
              {"4", "6", "0", "0", "7"},
              {"9", "1", "1", "2", "4"}});
}

inline Matrix ex16_Q() {
  return mat({{"1/2", "0", "0"}, {"1/2", "0", "0"}, {"1", "2", "3"}, {"1", "2", "3"}});
}

inline Matrix ex16_T() {
  return mat({{"3", "-1/4", "1/4", "2/4"}, {"3", "-1/4", "3/4", "0"}});
}

inline Matrix ex16_Z() { return mat({{"1/4", "-3/4"}, {"1/4", "-3/4"}}); }

inline Matrix ex112_P1() {
  return mat({{"2/4", "0", "2/4", "0"},
              {"1/4", "2/4", "1/4", "0"},
              {"0", "0", "2/4", "2/4"},
              {"0", "1/4", "1/4", "2/4"}});
}

inline Matrix ex112_P2() {
  return mat({{"1/4", "1/4", "0", "2/4"},
              {"2/4", "0", "0", "2/4"},
              {"2/4", "0", "1/4", "1/4"},
              {"0", "2/4", "2/4", "0"}});
}

inline Matrix ex112_P3() {
  return mat({{"1/4", "0", "2/4", "1/4"},
              {"1/4", "0", "2/4", "1/4"},
              {"0", "1/4", "3/4", "0"},
              {"0", "1/4", "3/4", "0"}});
}

inline Matrix ex112_P3_variant() {
  return mat({{"1/4", "0", "2/4", "1/4"},
              {"1/4", "0", "1/4", "2/4"},
              {"0", "1/4", "2/4", "1/4"},
              {"0", "1/4", "1/4", "2/4"}});
}

inline Matrix ex115_P() {
  return mat({{"1/4", "0", "2/4", "1/4"},
              {"0", "1/4", "3/4", "0"},
              {"1/4", "1/4", "1/4", "1/4"},
              {"1/4", "1/4", "1/4", "1/4"}});
}

inline Matrix ex115_Q() {
  return mat({{"1/4", "0", "3/4", "0"},
              {"1/4", "0", "0", "3/4"},
              {"2/4", "0", "2/4", "0"},
              {"0", "2/4", "2/4", "0"}});
}

inline Matrix ex115_T() {
  return mat({{"1/4", "0", "3/4", "0"},
              {"1/4", "0", "2/4", "1/4"},
              {"0", "2/4", "2/4", "0"},
              {"2/4", "0", "1/4", "1/4"}});
}

inline DeGrootModel ex27_model() {
  DeGrootModel model{row({"2", "4", "1", "1"}),
                     {mat({{"1/4", "0", "1/4", "2/4"},
                           {"0", "1/4", "0", "3/4"},
                           {"1/8", "1/8", "2/4", "1/4"},
                           {"3/16", "1/16", "2/4", "1/4"}}),
                      mat({{"1/4", "0", "0", "3/4"},
                           {"1/4", "0", "0", "3/4"},
                           {"3/4", "0", "1/4", "0"},
                           {"3/4", "0", "1/4", "0"}}),
                      mat({{"1/4", "0", "2/4", "1/4"},
                           {"0", "1/4", "1/4", "2/4"},
                           {"1/4", "0", "0", "3/4"},
                           {"1/8", "1/8", "3/4", "0"}}),
                      mat({{"1/8", "2/8", "3/8", "2/8"},
                           {"2/8", "3/8", "2/8", "1/8"},
                           {"0", "0", "0", "1"},
                           {"0", "1", "0", "0"}})},
                     false};
  return model;
}

inline DeGrootModel ex28_model() {
  DeGrootModel model{row({"10", "20", "2", "4"}),
                     {mat({{"2/10", "1/10", "7/10", "0"},
                           {"2/10", "1/10", "1/10", "6/10"},
                           {"0", "3/10", "0", "7/10"},
                           {"0", "3/10", "2/10", "5/10"}}),
                      mat({{"4/10", "0", "0", "6/10"},
                           {"1/10", "3/10", "4/10", "2/10"},
                           {"1/10", "3/10", "1/10", "5/10"},
                           {"2/10", "2/10", "1/10", "5/10"}})},
                     false};
  return model;
}

inline Matrix remark23_weight() {
  return mat({{"1/2", "1/2", "0"}, {"1/2", "1/2", "0"}, {"0", "0", "1"}});
}

inline DeGrootModel remark23_model() {
  return DeGrootModel{row({"2", "4", "3"}), {remark23_weight()}, true};
}

inline Matrix remark23b_weight() {
  return mat({{"1/3", "2/3", "0"}, {"1/3", "2/3", "0"}, {"0", "0", "1"}});
}

inline DeGrootModel ex210_model() {
  DeGrootModel model{row({"1/10", "2/10", "3/10", "1/10", "1/10", "2/10"}),
                     {mat({{"1/2", "1/2", "0", "0", "0", "0"},
                           {"2/3", "1/3", "0", "0", "0", "0"},
                           {"0", "0", "1/4", "3/4", "0", "0"},
                           {"0", "0", "2/4", "2/4", "0", "0"},
                           {"0", "0", "0", "0", "0", "1"},
                           {"0", "0", "0", "0", "1", "0"}}),
                      mat({{"1", "0", "0", "0", "0", "0"},
                           {"1/2", "0", "1/2", "0", "0", "0"},
                           {"1/4", "1/4", "1/4", "1/4", "0", "0"},
                           {"0", "1", "0", "0", "0", "0"},
                           {"0", "0", "0", "0", "1", "0"},
                           {"0", "0", "0", "0", "1/10", "9/10"}}),
                      mat({{"1", "0", "0", "0", "0", "0"},
                           {"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"},
                           {"0", "1", "0", "0", "0", "0"},
                           {"0", "1", "0", "0", "0", "0"},
                           {"0", "0", "1", "0", "0", "0"},
                           {"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"}})},
                     false};
  return model;
}

inline std::vector<Partition> ex210_partitions() {
  return {Partition::singletons(6), Partition(6, {{1, 2}, {3, 4}, {5, 6}}),
          Partition(6, {{1, 2, 3, 4}, {5, 6}}), Partition::trivial(6)};
}

inline DeGrootModel ex211_model() {
  DeGrootModel model{row({"1/10", "2/10", "3/10", "1/10", "1/10", "2/10"}),
                     {mat({{"4/10", "6/10", "0", "0", "0", "0"},
                           {"4/10", "6/10", "0", "0", "0", "0"},
                           {"0", "0", "1", "0", "0", "0"},
                           {"0", "0", "0", "1", "0", "0"},
                           {"0", "0", "0", "0", "1/10", "9/10"},
                           {"0", "0", "0", "0", "1/10", "9/10"}}),
                      mat({{"3/10", "4/10", "3/10", "0", "0", "0"},
                           {"2/10", "5/10", "3/10", "0", "0", "0"},
                           {"1/10", "6/10", "3/10", "0", "0", "0"},
                           {"0", "0", "0", "1", "0", "0"},
                           {"0", "0", "0", "0", "2/10", "8/10"},
                           {"0", "0", "0", "0", "4/10", "6/10"}}),
                      mat({{"3/10", "2/10", "5/10", "0", "0", "0"},
                           {"2/10", "4/10", "4/10", "0", "0", "0"},
                           {"1/10", "6/10", "3/10", "0", "0", "0"},
                           {"0", "0", "0", "1/10", "1/10", "8/10"},
                           {"0", "0", "0", "1/10", "2/10", "7/10"},
                           {"0", "0", "0", "1/10", "1/10", "8/10"}}),
                      mat({{"2/10", "2/10", "2/10", "1/10", "1/10", "2/10"},
                           {"1/10", "3/10", "2/10", "1/10", "2/10", "1/10"},
                           {"1/10", "2/10", "3/10", "2/10", "1/10", "1/10"},
                           {"3/10", "2/10", "1/10", "1/10", "1/10", "2/10"},
                           {"1/10", "4/10", "1/10", "2/10", "1/10", "1/10"},
                           {"1/10", "4/10", "1/10", "1/10", "1/10", "2/10"}})},
                     false};
  return model;
}

inline std::vector<Partition> ex211_partitions() {
  return {Partition::singletons(6), Partition(6, {{1, 2}, {3}, {4}, {5, 6}}),
          Partition(6, {{1, 2, 3}, {4}, {5, 6}}), Partition(6, {{1, 2, 3}, {4, 5, 6}}),
          Partition::trivial(6)};
}

inline Matrix ex211_P2_prime() {
  return mat({{"3/10", "4/10", "3/10", "0", "0", "0"},
              {"3/10", "4/10", "3/10", "0", "0", "0"},
              {"3/10", "4/10", "3/10", "0", "0", "0"},
              {"0", "0", "0", "1", "0", "0"},
              {"0", "0", "0", "0", "1", "0"},
              {"0", "0", "0", "0", "0", "1"}});
}

inline Matrix ex211_P2_dprime() {
  return mat({{"7/10", "0", "3/10", "0", "0", "0"},
              {"0", "7/10", "3/10", "0", "0", "0"},
              {"7/10", "0", "3/10", "0", "0", "0"},
              {"0", "0", "0", "1", "0", "0"},
              {"0", "0", "0", "0", "0", "1"},
              {"0", "0", "0", "0", "1", "0"}});
}

inline Matrix ex211_U4() {
  return mat({{"6/10", "0", "0", "4/10", "0", "0"},
              {"6/10", "0", "0", "4/10", "0", "0"},
              {"6/10", "0", "0", "4/10", "0", "0"},
              {"6/10", "0", "0", "4/10", "0", "0"},
              {"6/10", "0", "0", "4/10", "0", "0"},
              {"6/10", "0", "0", "4/10", "0", "0"}});
}

inline std::vector<int> everyone(int r) {
  std::vector<int> out(r);
  for (int i = 0; i < r; ++i) out[i] = i + 1;
  return out;
}

}  // namespace fx
