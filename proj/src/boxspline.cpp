// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/boxspline.hpp"

#include "latfft/parallel.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <unordered_map>

namespace latfft {

namespace {

constexpr Eigen::Index kMaxDirections = 24;

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool independent(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::abs(cross(a, b)) > 1e-12 * a.norm() * b.norm();
}

/// de Boor recurrence. With x = sum t_xi xi (t supported on two independent
/// directions), (s - 2) B_S(x) = sum_xi t_xi B_{S\xi}(x) + (1 - t_xi) B_{S\xi}(x - xi).
/// Subsets that no longer span the plane contribute only on lines and are
/// dropped pointwise. Values are memoized per (subset, subtracted directions).
class Evaluator {
public:
    Evaluator(const Eigen::Matrix2Xd& xi, const Eigen::Vector2d& x) : xi_(xi), x_(x) {}

    double value(std::uint32_t subset, std::uint32_t shifted) {
        const std::uint64_t key = (std::uint64_t{shifted} << 32) | subset;
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
        const double v = compute(subset, shifted);
        memo_.emplace(key, v);
        return v;
    }

private:
    std::optional<std::pair<int, int>> spanning_pair(std::uint32_t subset) const {
        int first = -1;
        for (int i = 0; i < xi_.cols(); ++i) {
            if (!((subset >> i) & 1)) continue;
            if (first < 0) {
                first = i;
            } else if (independent(xi_.col(first), xi_.col(i))) {
                return std::pair{first, i};
            }
        }
        return std::nullopt;
    }

    double compute(std::uint32_t subset, std::uint32_t shifted) {
        const auto pair = spanning_pair(subset);
        if (!pair) return 0.0;
        Eigen::Vector2d x = x_;
        for (int i = 0; i < xi_.cols(); ++i)
            if ((shifted >> i) & 1) x -= xi_.col(i);
        Eigen::Matrix2d basis;
        basis << xi_.col(pair->first), xi_.col(pair->second);
        const Eigen::Vector2d t = basis.inverse() * x;
        const int s = std::popcount(subset);
        if (s == 2) {
            const bool inside = t(0) >= 0.0 && t(0) < 1.0 && t(1) >= 0.0 && t(1) < 1.0;
            return inside ? 1.0 / std::abs(basis.determinant()) : 0.0;
        }
        double acc = 0.0;
        for (int i = 0; i < xi_.cols(); ++i) {
            if (!((subset >> i) & 1)) continue;
            const double ti = i == pair->first ? t(0) : i == pair->second ? t(1) : 0.0;
            const std::uint32_t rest = subset & ~(std::uint32_t{1} << i);
            if (ti != 0.0) acc += ti * value(rest, shifted);
            if (ti != 1.0) acc += (1.0 - ti) * value(rest, shifted | (std::uint32_t{1} << i));
        }
        return acc / static_cast<double>(s - 2);
    }

    const Eigen::Matrix2Xd& xi_;
    Eigen::Vector2d x_;
    std::unordered_map<std::uint64_t, double> memo_;
};

} // namespace

DirectionSet::DirectionSet(Eigen::Matrix2Xd xi) : directions(std::move(xi)) {
    if (directions.cols() < 2) throw DegenerateDirections("at least two directions are required");
    if (directions.cols() > kMaxDirections) throw DegenerateDirections("too many directions");
    if (!directions.allFinite() || !independent(directions.col(0), directions.col(1)))
        throw DegenerateDirections("the first two directions are linearly dependent");
}

DirectionSet xi_directions() {
    Eigen::Matrix2Xd xi(2, 3);
    xi << 1, 0, 0.125, 0, 1, 0.125;
    return DirectionSet(std::numbers::pi * xi);
}

DirectionSet psi_directions() {
    Eigen::Matrix2Xd xi(2, 5);
    xi << 1, 0, 0.125, 0, 0.125, 0, 1, 0, 0.125, 0.125;
    return DirectionSet(std::numbers::pi * xi);
}

double eval_box_spline_uncentered(const DirectionSet& ds, const Eigen::Vector2d& x) {
    Evaluator ev(ds.directions, x);
    const std::uint32_t all = (std::uint32_t{1} << ds.count()) - 1;
    return ev.value(all, 0);
}

double eval_box_spline(const DirectionSet& ds, const Eigen::Vector2d& x) {
    return eval_box_spline_uncentered(ds, x + ds.center());
}

LatticeArray sample_on_pattern(const DirectionSet& ds, std::shared_ptr<const PatternBasis> m_basis, Window window,
                               unsigned threads) {
    if (m_basis->dim() != 2) throw ShapeMismatch("box splines are bivariate");
    const LongMatrix points = enumerate_pattern_scaled(*m_basis, window);
    const double scale = 2.0 * std::numbers::pi / static_cast<double>(m_basis->det_abs);
    LatticeArray out = LatticeArray::zeros(m_basis, Domain::Spatial);
    parallel_for(static_cast<std::size_t>(points.cols()), threads, [&](std::size_t begin, std::size_t end, unsigned) {
        for (auto t = static_cast<Eigen::Index>(begin); t < static_cast<Eigen::Index>(end); ++t)
            out.values(t) = eval_box_spline(ds, scale * points.col(t).cast<double>());
    });
    return out;
}

} // namespace latfft
