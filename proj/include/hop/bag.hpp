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

// Multisets of result values, and the functors that describe how a
// handler wraps the value of the computation it handles.

#ifndef HOP_BAG_HPP_
#define HOP_BAG_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hop/syntax.hpp"

namespace hop {

// Total structural order on values: by case, then by payload. Code
// (lambdas, suspensions) is ordered by its alpha-normal rendering.
int compare(const Value& a, const Value& b);

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const { return compare(a, b) < 0; }
};

class Bag {
 public:
  Bag() = default;
  static Bag of(const std::vector<Value>& items);

  void insert(const Value& v, std::size_t count = 1);
  Bag& operator+=(const Bag& other);

  std::size_t size() const;
  bool empty() const { return entries_.empty(); }
  // Distinct values in order, with multiplicities.
  const std::vector<std::pair<Value, std::size_t>>& entries() const { return entries_; }
  std::vector<Value> elements() const;

  bool operator==(const Bag& other) const;
  bool operator!=(const Bag& other) const { return !(*this == other); }

 private:
  std::vector<std::pair<Value, std::size_t>> entries_;
};

Bag operator+(Bag a, const Bag& b);

// "{}", "{1}", "{0, 0}".
std::string to_string(const Bag& b);

struct FunctorDescriptor {
  enum class Kind { Id, Maybe, PairFirst, List, Compose };
  Kind kind = Kind::Id;
  // Compose only: the outer functor wraps values of the inner one.
  std::shared_ptr<const FunctorDescriptor> outer;
  std::shared_ptr<const FunctorDescriptor> inner;

  static FunctorDescriptor id() { return {}; }
  static FunctorDescriptor maybe();
  static FunctorDescriptor pair_first();
  static FunctorDescriptor list();
  static FunctorDescriptor compose(FunctorDescriptor outer, FunctorDescriptor inner);

  // Accepts "Id", "Maybe", "PairFirst", "List" and "Compose(F, G)".
  static FunctorDescriptor parse(std::string_view text);
};

std::string to_string(const FunctorDescriptor& f);
bool operator==(const FunctorDescriptor& a, const FunctorDescriptor& b);

// Collects the values a result holds. Throws ShapeMismatch when `v` does
// not have the functor's shape.
Bag to_bag(const FunctorDescriptor& f, const Value& v);

bool bag_equiv(const Value& x, const FunctorDescriptor& fx, const Value& y, const FunctorDescriptor& fy);

}  // namespace hop

#endif  // HOP_BAG_HPP_
