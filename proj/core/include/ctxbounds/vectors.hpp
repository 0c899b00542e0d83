#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ctxbounds {

/// Nonnegative per-vertex coefficients of a linear objective λ·p.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws InputError on negative or non-finite entries.
  explicit WeightVector(std::vector<double> entries);

  static WeightVector ones(int n) { return WeightVector(std::vector<double>(n, 1.0)); }
  static WeightVector unit(int n, int k);

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[i]; }
  std::span<const double> values() const { return entries_; }
  /// Indices with a strictly positive weight.
  std::vector<int> support() const;

  WeightVector scaled(double c) const;
  /// Adds c to every entry (c >= 0).
  WeightVector shifted(double c) const;

 private:
  std::vector<double> entries_;
};

/// Per-vertex event probabilities, each in [0, 1].
class ProbabilityAssignment {
 public:
  ProbabilityAssignment() = default;
  /// Throws InputError on entries outside [0, 1] or non-finite entries.
  explicit ProbabilityAssignment(std::vector<double> entries);

  static ProbabilityAssignment zeros(int n) {
    return ProbabilityAssignment(std::vector<double>(n, 0.0));
  }

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[i]; }
  std::span<const double> values() const { return entries_; }
  std::vector<int> support() const;

 private:
  std::vector<double> entries_;
};

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace ctxbounds
