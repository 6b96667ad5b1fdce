#pragma once

// Small fixed-width bit-set helpers used throughout: vertex sets are packed
// into a single 64-bit word (graphs are capped at 64 vertices), edge sets of
// up to 64*63/2 = 2016 edges use a short vector of words.

#include <bit>
#include <cstdint>
#include <vector>

namespace eccn {

using VertexSet = std::uint64_t;

constexpr VertexSet vs_bit(int v) { return VertexSet{1} << v; }
constexpr bool vs_test(VertexSet s, int v) { return (s >> v) & 1u; }
constexpr int vs_count(VertexSet s) { return std::popcount(s); }
constexpr int vs_lowest(VertexSet s) { return std::countr_zero(s); }

// Invoke fn(v) for each vertex v in s, in ascending order.
template <typename Fn>
void vs_for_each(VertexSet s, Fn&& fn) {
    while (s) {
        int v = std::countr_zero(s);
        fn(v);
        s &= s - 1;
    }
}

// Dense bit set over a fixed universe of `size` items (edge slots).
class EdgeMask {
public:
    EdgeMask() = default;
    explicit EdgeMask(int size)
        : size_(size), w_((size + 63) / 64, 0) {}

    int size() const { return size_; }

    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    int count() const {
        int c = 0;
        for (std::uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    bool none() const {
        for (std::uint64_t x : w_)
            if (x) return false;
        return true;
    }

    // Lowest set index, or -1 when empty.
    int first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64) + std::countr_zero(w_[k]);
        return -1;
    }

    EdgeMask& operator|=(const EdgeMask& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    // this \ o
    EdgeMask minus(const EdgeMask& o) const {
        EdgeMask r(size_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & ~o.w_[k];
        return r;
    }

    bool operator==(const EdgeMask& o) const { return size_ == o.size_ && w_ == o.w_; }

private:
    int size_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace eccn
