#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "kidot/common.hpp"
#include "kidot/tensor.hpp"

namespace kidot {

/// Flat 64-bit-real parameter storage with named, shaped segments.
/// Segment order is the layout; names are unique.
class ParamVector {
public:
    struct Segment {
        std::string name;
        std::size_t offset = 0;
        std::vector<int> shape;
        std::size_t size = 0;
    };

    std::size_t add_segment(const std::string& name, const std::vector<int>& shape) {
        for (const auto& s : segments_)
            require(s.name != name, "param_vector: duplicate segment '" + name + "'");
        Segment seg;
        seg.name = name;
        seg.offset = values_.size();
        seg.shape = shape;
        seg.size = Tensor::count(shape);
        segments_.push_back(seg);
        values_.resize(values_.size() + seg.size, 0.0);
        return segments_.size() - 1;
    }

    const Segment& segment(const std::string& name) const {
        for (const auto& s : segments_)
            if (s.name == name) return s;
        throw ValidationError("param_vector: no segment '" + name + "'");
    }

    bool has_segment(const std::string& name) const {
        return std::any_of(segments_.begin(), segments_.end(),
                           [&](const Segment& s) { return s.name == name; });
    }

    const std::vector<Segment>& segments() const { return segments_; }

    Tensor segment_tensor(const std::string& name) const {
        const Segment& s = segment(name);
        std::vector<double> d(values_.begin() + s.offset, values_.begin() + s.offset + s.size);
        return Tensor(s.shape, std::move(d));
    }

    void set_segment(const std::string& name, const Tensor& t) {
        const Segment& s = segment(name);
        require(t.size() == s.size, "param_vector: segment size mismatch for '" + name + "'");
        std::copy(t.vec().begin(), t.vec().end(), values_.begin() + s.offset);
    }

    std::size_t size() const { return values_.size(); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// True when both vectors have identical segment names, order and shapes.
    bool same_layout(const ParamVector& o) const {
        if (segments_.size() != o.segments_.size()) return false;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (segments_[i].name != o.segments_[i].name) return false;
            if (segments_[i].shape != o.segments_[i].shape) return false;
        }
        return true;
    }

private:
    std::vector<Segment> segments_;
    std::vector<double> values_;
};

}  // namespace kidot
