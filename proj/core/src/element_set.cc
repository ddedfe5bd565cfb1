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

#include "wsub/element_set.h"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "wsub/errors.h"

namespace wsub {

ElementSet::ElementSet(std::initializer_list<Element> ids)
    : members_(ids) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

ElementSet ElementSet::FromUnsorted(std::vector<Element> ids) {
  ElementSet s;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  s.members_ = std::move(ids);
  return s;
}

ElementSet ElementSet::Range(std::size_t n) {
  ElementSet s;
  s.members_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.members_[i] = static_cast<Element>(i);
  return s;
}

ElementSet ElementSet::FromMask(std::uint64_t mask) {
  ElementSet s;
  for (Element e = 0; mask != 0; ++e, mask >>= 1) {
    if (mask & 1) s.members_.push_back(e);
  }
  return s;
}

bool ElementSet::contains(Element e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

void ElementSet::insert(Element e) {
  auto it = std::lower_bound(members_.begin(), members_.end(), e);
  if (it == members_.end() || *it != e) members_.insert(it, e);
}

void ElementSet::erase(Element e) {
  auto it = std::lower_bound(members_.begin(), members_.end(), e);
  if (it != members_.end() && *it == e) members_.erase(it);
}

ElementSet ElementSet::With(Element e) const {
  ElementSet s = *this;
  s.insert(e);
  return s;
}

ElementSet ElementSet::Without(Element e) const {
  ElementSet s = *this;
  s.erase(e);
  return s;
}

ElementSet ElementSet::Union(const ElementSet& other) const {
  ElementSet s;
  s.members_.reserve(size() + other.size());
  std::set_union(begin(), end(), other.begin(), other.end(),
                 std::back_inserter(s.members_));
  return s;
}

ElementSet ElementSet::Intersection(const ElementSet& other) const {
  ElementSet s;
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(s.members_));
  return s;
}

ElementSet ElementSet::Difference(const ElementSet& other) const {
  ElementSet s;
  std::set_difference(begin(), end(), other.begin(), other.end(),
                      std::back_inserter(s.members_));
  return s;
}

bool ElementSet::Intersects(const ElementSet& other) const {
  auto a = begin();
  auto b = other.begin();
  while (a != end() && b != other.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool ElementSet::IsSubsetOf(const ElementSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

std::uint64_t ElementSet::ToMask() const {
  std::uint64_t mask = 0;
  for (Element e : members_) {
    if (e >= 64) throw InputError("ElementSet::ToMask: element id >= 64");
    mask |= std::uint64_t{1} << e;
  }
  return mask;
}

std::string ElementSet::ToString() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ElementSet& s) {
  os << '{';
  bool first = true;
  for (Element e : s) {
    if (!first) os << ',';
    os << e;
    first = false;
  }
  return os << '}';
}

}  // namespace wsub
