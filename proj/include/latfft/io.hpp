// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/dirichlet.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace latfft::io {

/// Parses a square integer matrix from a JSON array of rows or from text
/// with one row per line (entries separated by whitespace or commas).
/// Throws ParseError.
IntMatrix parse_matrix(const std::string& text);
IntMatrix read_matrix(const std::filesystem::path& path);
std::string matrix_to_json(const IntMatrix& m);
std::string matrix_to_text(const IntMatrix& m);

/// Complex values, one per line as `re,im` (a single column reads as real).
/// A leading non-numeric line is treated as a header. Throws ParseError.
Eigen::VectorXcd parse_complex_csv(const std::string& text);
Eigen::VectorXcd read_complex_csv(const std::filesystem::path& path);
std::string complex_csv(const Eigen::VectorXcd& values);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Rows `lambda_1..lambda_dM,x_1..x_d` with x as reduced fractions p/q.
std::string pattern_csv(const PatternBasis& basis, Window window);
/// Rows `mu_1..mu_dM,k_1..k_d` for G(M^T) in the window M^T [-1/2,1/2)^d.
std::string generators_csv(const PatternBasis& basis);
/// Rows `k_1..k_d,value_re,value_im`.
std::string spectrum_csv(const KernelSpectrum& spectrum);

/// JSON with M, J, N and per-branch arrays of [re, im] pairs in lambda order.
std::string filter_bank_json(const FilterBank& fb);
/// Reads a filter bank written by filter_bank_json. Throws ParseError,
/// BadFactorization or ShapeMismatch.
FilterBank parse_filter_bank(const std::string& text);

/// Binary PGM (P5, 8-bit) of a row-major width x height image in [0, 1].
std::string pgm(const std::vector<double>& pixels, std::int64_t width, std::int64_t height);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string checksum(const std::string& content);

} // namespace latfft::io
