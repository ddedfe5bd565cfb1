// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WSUB_ELEMENT_SET_H_
#define WSUB_ELEMENT_SET_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace wsub {

using Element = std::uint32_t;

// A set of ground-set element ids kept sorted and duplicate free, so
// iteration is always in ascending id order.
class ElementSet {
 public:
  using const_iterator = std::vector<Element>::const_iterator;

  ElementSet() = default;
  ElementSet(std::initializer_list<Element> ids);
  // Sorts and deduplicates.
  static ElementSet FromUnsorted(std::vector<Element> ids);
  // {0, 1, ..., n-1}.
  static ElementSet Range(std::size_t n);
  // Members are the set bits of `mask`.
  static ElementSet FromMask(std::uint64_t mask);

  bool contains(Element e) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  Element operator[](std::size_t i) const { return members_[i]; }
  std::span<const Element> members() const { return members_; }
  // Largest member; the set must be non-empty.
  Element max() const { return members_.back(); }

  void insert(Element e);
  void erase(Element e);
  ElementSet With(Element e) const;
  ElementSet Without(Element e) const;

  ElementSet Union(const ElementSet& other) const;
  ElementSet Intersection(const ElementSet& other) const;
  ElementSet Difference(const ElementSet& other) const;
  bool Intersects(const ElementSet& other) const;
  bool IsSubsetOf(const ElementSet& other) const;

  // Requires every member < 64.
  std::uint64_t ToMask() const;
  std::string ToString() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet& a, const ElementSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<Element> members_;
};

std::ostream& operator<<(std::ostream& os, const ElementSet& s);

}  // namespace wsub

#endif  // WSUB_ELEMENT_SET_H_
