#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "polyent/bowen_dist.hpp"
#include "polyent/system.hpp"

namespace polyent {

/// f x g on the product with the max metric.
template <DynamicalSystem A, DynamicalSystem B>
class ProductSystem {
public:
    using point_type = std::pair<point_of<A>, point_of<B>>;

    ProductSystem(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

    const A& first() const { return a_; }
    const B& second() const { return b_; }

    double dist(const point_type& p, const point_type& q) const {
        return std::max(static_cast<double>(a_.dist(p.first, q.first)),
                        static_cast<double>(b_.dist(p.second, q.second)));
    }

    point_type map(const point_type& p) const { return {a_.map(p.first), b_.map(p.second)}; }

    point_type inverse(const point_type& p) const
        requires InvertibleSystem<A> && InvertibleSystem<B>
    {
        return {a_.inverse(p.first), b_.inverse(p.second)};
    }

    // The Bowen metric of a max metric is the max of the factor Bowen metrics.
    double bowen_dist(const point_type& p, const point_type& q, std::size_t n, double stop) const {
        double d = polyent::bowen_dist(a_, p.first, q.first, n, stop);
        if (d >= stop) return d;
        return std::max(d, polyent::bowen_dist(b_, p.second, q.second, n, stop));
    }

    std::vector<point_type> sample(const Resolution& res) const
        requires SampledSystem<A> && SampledSystem<B>
    {
        auto sa = a_.sample(res);
        auto sb = b_.sample(res);
        return product_points(sa, sb);
    }

    static std::vector<point_type> product_points(const std::vector<point_of<A>>& sa,
                                                  const std::vector<point_of<B>>& sb) {
        std::vector<point_type> out;
        out.reserve(sa.size() * sb.size());
        for (const auto& x : sa)
            for (const auto& y : sb) out.emplace_back(x, y);
        return out;
    }

private:
    A a_;
    B b_;
};

template <DynamicalSystem A, DynamicalSystem B>
ProductSystem<A, B> product_system(A a, B b) {
    return ProductSystem<A, B>(std::move(a), std::move(b));
}

}  // namespace polyent
