// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/fft.hpp"

#include <Eigen/Dense>

#include <memory>

namespace latfft {

/// Direction matrix of a bivariate box spline, one direction per column.
struct DirectionSet {
    Eigen::Matrix2Xd directions;

    /// Throws DegenerateDirections unless there are at least two directions
    /// and the first two are linearly independent.
    explicit DirectionSet(Eigen::Matrix2Xd xi);

    Eigen::Index count() const { return directions.cols(); }
    Eigen::Vector2d center() const { return 0.5 * directions.rowwise().sum(); }
};

/// pi [[1,0,1/8],[0,1,1/8]]: a piecewise linear box spline.
DirectionSet xi_directions();
/// pi [[1,0,1/8,0,1/8],[0,1,0,1/8,1/8]]: a piecewise cubic box spline.
DirectionSet psi_directions();

/// Standard box spline: unit-integral, supported on Xi [0,1]^s.
double eval_box_spline_uncentered(const DirectionSet& ds, const Eigen::Vector2d& x);

/// Centered box spline B(x + (1/2) sum xi), symmetric about the origin.
double eval_box_spline(const DirectionSet& ds, const Eigen::Vector2d& x);

/// Values at 2 pi y for the pattern points y of M in the given window, lambda order.
LatticeArray sample_on_pattern(const DirectionSet& ds, std::shared_ptr<const PatternBasis> m_basis, Window window,
                               unsigned threads = 1);

} // namespace latfft
