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

#ifndef ITRBENCH_KEYBOARD_H_
#define ITRBENCH_KEYBOARD_H_

#include <array>
#include <string>
#include <string_view>

namespace itrbench {

// Physical key adjacency for lowercase letters. Rows "qwertyuiop",
// "asdfghjkl", "zxcvbnm" are staggered by half a key each; a key's
// neighbours are its in-row neighbours plus every key in an adjacent row
// within half a key horizontally. Neighbour lists are sorted.
class KeyboardLayout {
 public:
  static const KeyboardLayout& Qwerty();

  // Sorted neighbours of `c`; empty for anything but 'a'..'z'.
  std::string_view Adjacent(char c) const;

  bool AreAdjacent(char a, char b) const;

 private:
  KeyboardLayout();

  std::array<std::string, 26> adjacency_;
};

}  // namespace itrbench

#endif  // ITRBENCH_KEYBOARD_H_
