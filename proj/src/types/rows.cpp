// Copyright 2026 The hop Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>

#include <fmt/format.h>

#include "hop/types.hpp"

namespace hop {

Row Row::empty() { return Row{}; }

Row Row::var(Name name) { return Row{{}, {std::move(name)}}; }

Row Row::cons(Label label, Row tail) {
  tail.labels.insert(tail.labels.begin(), std::move(label));
  return tail;
}

namespace {

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool row_equiv(const Row& a, const Row& b) {
  return sorted(a.labels) == sorted(b.labels) && sorted(a.tails) == sorted(b.tails);
}

Row row_concat(const Row& left, const Row& right) {
  if (!left.is_closed()) {
    throw HopError(ErrorCode::OpenLeftRow,
                   fmt::format("cannot concatenate onto open row {}", to_string(left)));
  }
  return row_union(left, right);
}

Row row_union(const Row& left, const Row& right) {
  Row out = left;
  out.labels.insert(out.labels.end(), right.labels.begin(), right.labels.end());
  out.tails.insert(out.tails.end(), right.tails.begin(), right.tails.end());
  return out;
}

std::optional<Row> row_remove(const Row& row, const Label& label) {
  auto it = std::find(row.labels.begin(), row.labels.end(), label);
  if (it == row.labels.end()) return std::nullopt;
  Row out = row;
  out.labels.erase(out.labels.begin() + (it - row.labels.begin()));
  return out;
}

std::string to_string(const Row& row) {
  std::string tails = fmt::format("{}", fmt::join(row.tails, "+"));
  if (row.labels.empty()) {
    if (row.tails.empty()) return "<>";
    if (row.tails.size() == 1) return tails;
    return "<|" + tails + ">";
  }
  std::string out = fmt::format("<{}", fmt::join(row.labels, ", "));
  if (!row.tails.empty()) out += "|" + tails;
  return out + ">";
}

}  // namespace hop
