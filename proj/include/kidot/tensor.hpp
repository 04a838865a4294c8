#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "kidot/common.hpp"

namespace kidot {

/// Dense row-major tensor of 64-bit reals. Rank 0 (shape {}) is a scalar
/// with one element.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape)
        : shape_(std::move(shape)), data_(count(shape_), 0.0) {}
    Tensor(std::vector<int> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        require(data_.size() == count(shape_), "tensor: data size does not match shape");
    }

    static Tensor scalar(double v) { return Tensor({}, {v}); }

    static std::size_t count(const std::vector<int>& shape) {
        std::size_t n = 1;
        for (int d : shape) {
            require(d > 0, "tensor: nonpositive dimension");
            n *= static_cast<std::size_t>(d);
        }
        return n;
    }

    const std::vector<int>& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& vec() { return data_; }
    const std::vector<double>& vec() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    /// 2-D access (rank must be >= 2; uses the two trailing dims).
    double& at(int r, int c) {
        const int w = shape_.back();
        return data_[static_cast<std::size_t>(r) * w + c];
    }
    double at(int r, int c) const {
        const int w = shape_.back();
        return data_[static_cast<std::size_t>(r) * w + c];
    }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double norm2() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    double dot(const Tensor& o) const {
        require(size() == o.size(), "tensor: dot size mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) s += data_[i] * o.data_[i];
        return s;
    }

private:
    std::vector<int> shape_;
    std::vector<double> data_;
};

inline std::string shape_str(const std::vector<int>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace kidot
