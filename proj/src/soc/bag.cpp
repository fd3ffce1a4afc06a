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

#include "hop/bag.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace hop {

namespace {

template <class T>
int three_way(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int compare_args(const std::vector<Value>& a, const std::vector<Value>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = compare(a[i], b[i])) return c;
  }
  return three_way(a.size(), b.size());
}

}  // namespace

int compare(const Value& a, const Value& b) {
  if (a.node.index() != b.node.index()) return three_way(a.node.index(), b.node.index());
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Value::Var>) {
          return three_way(x.name, y.name);
        } else if constexpr (std::is_same_v<T, Value::Int> || std::is_same_v<T, Value::Str>) {
          return three_way(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Value::Const>) {
          if (int c = three_way(x.name, y.name)) return c;
          return compare_args(x.args, y.args);
        } else if constexpr (std::is_same_v<T, Value::Data>) {
          if (int c = three_way(x.ctor, y.ctor)) return c;
          return compare_args(x.args, y.args);
        } else if constexpr (std::is_same_v<T, Value::Op>) {
          if (int c = three_way(x.label, y.label)) return c;
          if (int c = three_way(x.name, y.name)) return c;
          return compare_args(x.args, y.args);
        } else {
          return three_way(alpha_normal(a), alpha_normal(b));
        }
      },
      a.node);
}

Bag Bag::of(const std::vector<Value>& items) {
  Bag b;
  for (const Value& v : items) b.insert(v);
  return b;
}

void Bag::insert(const Value& v, std::size_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const auto& entry, const Value& key) { return compare(entry.first, key) < 0; });
  if (it != entries_.end() && compare(it->first, v) == 0) {
    it->second += count;
  } else {
    entries_.insert(it, {v, count});
  }
}

Bag& Bag::operator+=(const Bag& other) {
  for (const auto& [v, n] : other.entries_) insert(v, n);
  return *this;
}

Bag operator+(Bag a, const Bag& b) {
  a += b;
  return a;
}

std::size_t Bag::size() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.second;
  return n;
}

std::vector<Value> Bag::elements() const {
  std::vector<Value> out;
  for (const auto& [v, n] : entries_) out.insert(out.end(), n, v);
  return out;
}

bool Bag::operator==(const Bag& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].second != other.entries_[i].second) return false;
    if (compare(entries_[i].first, other.entries_[i].first) != 0) return false;
  }
  return true;
}

std::string to_string(const Bag& b) {
  std::vector<std::string> parts;
  for (const Value& v : b.elements()) parts.push_back(pretty(v));
  return fmt::format("{{{}}}", fmt::join(parts, ", "));
}

FunctorDescriptor FunctorDescriptor::maybe() {
  FunctorDescriptor f;
  f.kind = Kind::Maybe;
  return f;
}

FunctorDescriptor FunctorDescriptor::pair_first() {
  FunctorDescriptor f;
  f.kind = Kind::PairFirst;
  return f;
}

FunctorDescriptor FunctorDescriptor::list() {
  FunctorDescriptor f;
  f.kind = Kind::List;
  return f;
}

FunctorDescriptor FunctorDescriptor::compose(FunctorDescriptor outer, FunctorDescriptor inner) {
  FunctorDescriptor f;
  f.kind = Kind::Compose;
  f.outer = std::make_shared<const FunctorDescriptor>(std::move(outer));
  f.inner = std::make_shared<const FunctorDescriptor>(std::move(inner));
  return f;
}

namespace {

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) : text_(text) {}

  FunctorDescriptor parse() {
    FunctorDescriptor f = descriptor();
    skip_space();
    if (pos_ != text_.size()) fail();
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void fail() const {
    throw HopError(ErrorCode::ShapeMismatch, fmt::format("malformed functor descriptor '{}'", text_));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail();
    ++pos_;
  }

  FunctorDescriptor descriptor() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "Id") return FunctorDescriptor::id();
    if (word == "Maybe") return FunctorDescriptor::maybe();
    if (word == "PairFirst") return FunctorDescriptor::pair_first();
    if (word == "List") return FunctorDescriptor::list();
    if (word != "Compose") fail();
    expect('(');
    FunctorDescriptor outer = descriptor();
    expect(',');
    FunctorDescriptor inner = descriptor();
    expect(')');
    return FunctorDescriptor::compose(std::move(outer), std::move(inner));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void shape_mismatch(const FunctorDescriptor& f, const Value& v) {
  throw HopError(ErrorCode::ShapeMismatch, fmt::format("{} does not have the shape {}", pretty(v), to_string(f)));
}

// Each value held by one layer of the functor.
std::vector<Value> layer(const FunctorDescriptor& f, const Value& v) {
  using K = FunctorDescriptor::Kind;
  auto d = std::get_if<Value::Data>(&v.node);
  switch (f.kind) {
    case K::Id:
      return {v};
    case K::Maybe:
      if (d && d->ctor == "Nothing" && d->args.empty()) return {};
      if (d && d->ctor == "Just" && d->args.size() == 1) return {d->args[0]};
      break;
    case K::PairFirst:
      if (d && d->ctor == "Pair" && d->args.size() == 2) return {d->args[0]};
      break;
    case K::List: {
      std::vector<Value> out;
      const Value* cur = &v;
      while (true) {
        auto c = std::get_if<Value::Data>(&cur->node);
        if (c && c->ctor == "Nil" && c->args.empty()) return out;
        if (!c || c->ctor != "Cons" || c->args.size() != 2) break;
        out.push_back(c->args[0]);
        cur = &c->args[1];
      }
      break;
    }
    case K::Compose:
      break;
  }
  shape_mismatch(f, v);
}

}  // namespace

FunctorDescriptor FunctorDescriptor::parse(std::string_view text) { return DescriptorParser(text).parse(); }

std::string to_string(const FunctorDescriptor& f) {
  using K = FunctorDescriptor::Kind;
  switch (f.kind) {
    case K::Id: return "Id";
    case K::Maybe: return "Maybe";
    case K::PairFirst: return "PairFirst";
    case K::List: return "List";
    case K::Compose: return fmt::format("Compose({}, {})", to_string(*f.outer), to_string(*f.inner));
  }
  return "?";
}

bool operator==(const FunctorDescriptor& a, const FunctorDescriptor& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != FunctorDescriptor::Kind::Compose) return true;
  return *a.outer == *b.outer && *a.inner == *b.inner;
}

Bag to_bag(const FunctorDescriptor& f, const Value& v) {
  if (f.kind != FunctorDescriptor::Kind::Compose) return Bag::of(layer(f, v));
  // The outer layer holds values of the inner functor; their bags are
  // unioned.
  Bag out;
  for (const Value& x : to_bag(*f.outer, v).elements()) out += to_bag(*f.inner, x);
  return out;
}

bool bag_equiv(const Value& x, const FunctorDescriptor& fx, const Value& y, const FunctorDescriptor& fy) {
  return to_bag(fx, x) == to_bag(fy, y);
}

}  // namespace hop
