//
// Copyright 2026 The itrbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "itrbench/keyboard.h"

#include <algorithm>
#include <cmath>
#include <string_view>

namespace itrbench {
namespace {

constexpr std::string_view kRows[] = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};

}  // namespace

KeyboardLayout::KeyboardLayout() {
  for (int row = 0; row < 3; ++row) {
    for (size_t col = 0; col < kRows[row].size(); ++col) {
      const char key = kRows[row][col];
      const double x = static_cast<double>(col) + 0.5 * row;
      std::string& neighbours = adjacency_[key - 'a'];
      for (int other_row = std::max(0, row - 1);
           other_row <= std::min(2, row + 1); ++other_row) {
        for (size_t other_col = 0; other_col < kRows[other_row].size();
             ++other_col) {
          if (other_row == row && other_col == col) continue;
          const double other_x =
              static_cast<double>(other_col) + 0.5 * other_row;
          const double dx = std::abs(other_x - x);
          const bool same_row_neighbour = other_row == row && dx == 1.0;
          const bool cross_row_neighbour = other_row != row && dx <= 0.5;
          if (same_row_neighbour || cross_row_neighbour) {
            neighbours.push_back(kRows[other_row][other_col]);
          }
        }
      }
      std::sort(neighbours.begin(), neighbours.end());
    }
  }
}

const KeyboardLayout& KeyboardLayout::Qwerty() {
  static const KeyboardLayout layout;
  return layout;
}

std::string_view KeyboardLayout::Adjacent(char c) const {
  if (c < 'a' || c > 'z') return {};
  return adjacency_[c - 'a'];
}

bool KeyboardLayout::AreAdjacent(char a, char b) const {
  return Adjacent(a).find(b) != std::string_view::npos;
}

}  // namespace itrbench
