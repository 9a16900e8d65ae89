#include "lamplighter/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lamplighter {

CoordKey CoordKey::tsp(int edge, std::vector<int> sorted_set) {
  return {{}, CoordKind::Tsp, edge, std::move(sorted_set)};
}

std::string CoordKey::to_string() const {
  std::ostringstream os;
  for (std::uint32_t s : scope) os << s << '/';
  switch (kind) {
    case CoordKind::Tsp:
      os << "tsp(" << index << ";{";
      for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
      os << "})";
      break;
    case CoordKind::RootPath:
      os << "root(" << index << ')';
      break;
    case CoordKind::Lamp:
      os << "lamp(" << index << ')';
      break;
    case CoordKind::Subtree:
      os << "subtree(" << index << ')';
      break;
  }
  return os.str();
}

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector out;
  out.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
    } else {
      out.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(out.entries_, [](const Entry& e) { return e.second == 0.0; });
  return out;
}

double SparseVector::at(const CoordKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const CoordKey& k) { return e.first < k; });
  return (it != entries_.end() && it->first == key) ? it->second : 0.0;
}

double SparseVector::l1_norm() const {
  double total = 0.0;
  for (const auto& e : entries_) total += std::abs(e.second);
  return total;
}

SparseVector SparseVector::scaled_by(double factor) const {
  if (factor == 0.0) return {};
  SparseVector out = *this;
  for (auto& e : out.entries_) e.second *= factor;
  return out;
}

SparseVector SparseVector::scoped(std::uint32_t tag) const {
  SparseVector out = *this;
  for (auto& e : out.entries_) e.first.scope.insert(e.first.scope.begin(), tag);
  return out;
}

void SparseVector::add(const SparseVector& other, double factor) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      double v = a->second + factor * b->second;
      if (v != 0.0) merged.emplace_back(std::move(a->first), v);
      ++a;
      ++b;
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0.0; });
  entries_ = std::move(merged);
}

double l1_distance(const SparseVector& a, const SparseVector& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    auto c = x[i].first <=> y[j].first;
    if (c < 0) {
      total += std::abs(x[i++].second);
    } else if (c > 0) {
      total += std::abs(y[j++].second);
    } else {
      total += std::abs(x[i++].second - y[j++].second);
    }
  }
  for (; i < x.size(); ++i) total += std::abs(x[i].second);
  for (; j < y.size(); ++j) total += std::abs(y[j].second);
  return total;
}

}  // namespace lamplighter
