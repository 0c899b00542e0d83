#include "ctxbounds/vectors.hpp"

#include <cmath>
#include <string>

#include "ctxbounds/errors.hpp"

namespace ctxbounds {

WeightVector::WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i]) || entries_[i] < 0.0)
      throw InputError("weight vector: entry " + std::to_string(i) +
                       " must be finite and nonnegative (normalize negative coefficients first)");
  }
}

WeightVector WeightVector::unit(int n, int k) {
  if (k < 0 || k >= n) throw InputError("weight vector: unit index out of range");
  std::vector<double> e(n, 0.0);
  e[k] = 1.0;
  return WeightVector(std::move(e));
}

std::vector<int> WeightVector::support() const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i)
    if (entries_[i] > 0.0) s.push_back(i);
  return s;
}

WeightVector WeightVector::scaled(double c) const {
  auto e = entries_;
  for (auto& x : e) x *= c;
  return WeightVector(std::move(e));
}

WeightVector WeightVector::shifted(double c) const {
  auto e = entries_;
  for (auto& x : e) x += c;
  return WeightVector(std::move(e));
}

ProbabilityAssignment::ProbabilityAssignment(std::vector<double> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i]) || entries_[i] < 0.0 || entries_[i] > 1.0)
      throw InputError("probability assignment: entry " + std::to_string(i) + " not in [0, 1]");
  }
}

std::vector<int> ProbabilityAssignment::support() const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i)
    if (entries_[i] > 0.0) s.push_back(i);
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace ctxbounds
