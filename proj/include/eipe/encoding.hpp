// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace eipe {

// A positional-encoding vector over L octaves: the sin block (octave-major,
// axis-minor: sin(2^0 x), sin(2^0 y), sin(2^0 z), sin(2^1 x), ...) followed by
// the cos block in the same order, 6L values total.  Values are stored in
// double; narrowed() produces the float32 representation used by downstream
// network inputs.
class Encoding {
  public:
    explicit Encoding(int octaves)
        : octaves_(octaves), values_(6 * static_cast<std::size_t>(octaves), 0.0) {
        if (octaves < 1) throw std::invalid_argument("Encoding: octave count must be >= 1");
    }

    int octaves() const { return octaves_; }

    static std::size_t sin_index(int l, int axis, int octaves) {
        (void)octaves;
        return 3 * static_cast<std::size_t>(l) + axis;
    }
    static std::size_t cos_index(int l, int axis, int octaves) {
        return 3 * static_cast<std::size_t>(octaves + l) + axis;
    }

    double sin_at(int l, int axis) const { return values_[sin_index(l, axis, octaves_)]; }
    double cos_at(int l, int axis) const { return values_[cos_index(l, axis, octaves_)]; }
    double& sin_at(int l, int axis) { return values_[sin_index(l, axis, octaves_)]; }
    double& cos_at(int l, int axis) { return values_[cos_index(l, axis, octaves_)]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    std::vector<float> narrowed() const {
        return std::vector<float>(values_.begin(), values_.end());
    }

  private:
    int octaves_;
    std::vector<double> values_;
};

}  // namespace eipe
