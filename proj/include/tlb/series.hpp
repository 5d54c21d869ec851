#pragma once

#include <vector>

#include "tlb/bigint.hpp"

namespace tlb {

// Truncated power series over the integers in one formal variable.
// coefficient(j) is exact for j <= order; reads beyond the truncation throw.
class Series {
  public:
    explicit Series(int order) : c_(size_t(order) + 1, Int(0)), order_(order) {}

    int order() const { return order_; }

    const Int& coeff(int j) const {
        if (j < 0 || j > order_)
            throw std::out_of_range("Series::coeff beyond truncation order");
        return c_[size_t(j)];
    }
    Int& coeff_mut(int j) { return c_[size_t(j)]; }

    static Series one(int order) {
        Series s(order);
        s.c_[0] = 1;
        return s;
    }

    Series operator+(const Series& o) const {
        Series r(std::min(order_, o.order_));
        for (int j = 0; j <= r.order_; ++j)
            r.c_[j] = c_[j] + o.c_[j];
        return r;
    }

    Series operator-(const Series& o) const {
        Series r(std::min(order_, o.order_));
        for (int j = 0; j <= r.order_; ++j)
            r.c_[j] = c_[j] - o.c_[j];
        return r;
    }

    Series operator*(const Series& o) const {
        Series r(std::min(order_, o.order_));
        for (int i = 0; i <= r.order_; ++i) {
            if (c_[i] == 0)
                continue;
            for (int j = 0; i + j <= r.order_; ++j)
                if (o.c_[j] != 0)
                    r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    bool operator==(const Series& o) const { return order_ == o.order_ && c_ == o.c_; }

    Series shift(int k) const { // multiply by z^k
        Series r(order_);
        for (int j = 0; j + k <= order_; ++j)
            r.c_[j + k] = c_[j];
        return r;
    }

    Series pow(unsigned k) const {
        Series r = one(order_);
        Series b = *this;
        while (k) {
            if (k & 1)
                r = r * b;
            k >>= 1;
            if (k)
                b = b * b;
        }
        return r;
    }

    Series scaled(const Int& a) const {
        Series r = *this;
        for (auto& x : r.c_)
            x *= a;
        return r;
    }

  private:
    std::vector<Int> c_;
    int order_;
};

} // namespace tlb
