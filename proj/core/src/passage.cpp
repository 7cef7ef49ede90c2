// Copyright 2026 The lpplab Authors.
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

#include "lpplab/passage.hpp"

#include <limits>
#include <string>

#include "lpplab/errors.hpp"

namespace lpp {

bool is_monotone(const Path& path) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const LatticePoint d = path[i] - path[i - 1];
    if (!(d == kRight || d == kUp)) return false;
  }
  return true;
}

double path_weight(const WeightField& field, const Path& path) {
  require(!path.empty(), "path_weight: empty path");
  require(is_monotone(path), "path_weight: path is not an up/right path");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    require(field.region().contains(path[i]),
            "path_weight: path leaves the field region");
    sum += field.at(path[i]);
  }
  require(field.region().contains(path.back()),
          "path_weight: path leaves the field region");
  return sum;
}

double PassageField::value(LatticePoint v) const {
  require(reachable(v), "PassageField::value: site not reachable from source");
  return values_[box_.index(v)];
}

Path PassageField::geodesic_to(LatticePoint v) const {
  require(reachable(v), "geodesic: target not reachable from source");
  Path path(static_cast<std::size_t>((v.x - source_.x) + (v.y - source_.y) + 1));
  auto out = path.rbegin();
  LatticePoint p = v;
  *out++ = p;
  while (!(p == source_)) {
    p = from_left_[box_.index(p)] ? p - kRight : p - kUp;
    *out++ = p;
  }
  return path;
}

bool PassageField::on_geodesic(LatticePoint v, LatticePoint w) const {
  require(reachable(v), "on_geodesic: target not reachable from source");
  if (!precedes(source_, w) || !precedes(w, v)) return false;
  LatticePoint p = v;
  const int target_sum = antidiag(w);
  while (antidiag(p) > target_sum) {
    p = from_left_[box_.index(p)] ? p - kRight : p - kUp;
  }
  return p == w;
}

PassageField passage_field(const WeightField& field, LatticePoint source,
                           const Box& region) {
  require(region.contains(source), "passage_field: source outside region");
  require(field.region().contains(region),
          "passage_field: region not covered by the weight field");
  PassageField pf;
  pf.source_ = source;
  pf.box_ = Box{source.x, source.y, region.x1, region.y1};
  const Box& box = pf.box_;
  check_memory(box.area() * std::int64_t{sizeof(double) + 1}, "passage field");
  pf.values_.resize(static_cast<std::size_t>(box.area()));
  pf.from_left_.resize(static_cast<std::size_t>(box.area()));

  const int w = box.width();
  const int fx0 = field.region().x0;
  std::uint64_t ties = 0;
  for (int y = box.y0; y <= box.y1; ++y) {
    double* t = pf.values_.data() + static_cast<std::int64_t>(y - box.y0) * w;
    std::uint8_t* left = pf.from_left_.data() +
                         static_cast<std::int64_t>(y - box.y0) * w;
    const double* xi = field.row(y) + (box.x0 - fx0);
    if (y == box.y0) {
      t[0] = 0.0;
      left[0] = 0;
      for (int i = 1; i < w; ++i) {
        t[i] = t[i - 1] + xi[i - 1];
        left[i] = 1;
      }
      continue;
    }
    const double* tb = t - w;
    const double* xib = field.row(y - 1) + (box.x0 - fx0);
    t[0] = tb[0] + xib[0];
    left[0] = 0;
    for (int i = 1; i < w; ++i) {
      const double a = t[i - 1] + xi[i - 1];
      const double b = tb[i] + xib[i];
      ties += (a == b);
      const bool from_left = a > b;
      t[i] = from_left ? a : b;
      left[i] = from_left;
    }
  }
  pf.ties_ = ties;
  return pf;
}

Path geodesic(const WeightField& field, LatticePoint u, LatticePoint v,
              std::uint64_t* ties) {
  require(precedes(u, v), "geodesic: endpoints are not ordered (u <= v)");
  const PassageField pf = passage_field(field, u, Box::spanning(u, v));
  if (ties) *ties = pf.ties();
  return pf.geodesic_to(v);
}

double passage_time(const WeightField& field, LatticePoint u, LatticePoint v) {
  require(precedes(u, v), "passage_time: endpoints are not ordered (u <= v)");
  return passage_field(field, u, Box::spanning(u, v)).value(v);
}

BruteForceResult brute_force(const WeightField& field, LatticePoint u,
                             LatticePoint v) {
  require(precedes(u, v), "brute_force: endpoints are not ordered (u <= v)");
  require(field.region().contains(u) && field.region().contains(v),
          "brute_force: endpoints outside field region");
  const int steps = (v.x - u.x) + (v.y - u.y);
  if (steps > kBruteForceMaxSteps) {
    throw CapacityError("brute_force: " + std::to_string(steps) +
                        " steps exceeds the enumeration cap of " +
                        std::to_string(kBruteForceMaxSteps));
  }
  BruteForceResult res;
  res.value = -std::numeric_limits<double>::infinity();
  Path current;
  current.reserve(static_cast<std::size_t>(steps + 1));

  // Depth-first enumeration; `acc` holds the weight of current minus its tip.
  auto visit = [&](auto&& self, LatticePoint p, double acc) -> void {
    current.push_back(p);
    if (p == v) {
      ++res.paths;
      if (acc > res.value) {
        res.value = acc;
        res.argmax = current;
        res.maximizers = 1;
      } else if (acc == res.value) {
        ++res.maximizers;
      }
    } else {
      const double next = acc + field.at(p);
      if (p.x < v.x) self(self, p + kRight, next);
      if (p.y < v.y) self(self, p + kUp, next);
    }
    current.pop_back();
  };
  visit(visit, u, 0.0);
  return res;
}

}  // namespace lpp
