// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpq_class NonInteger;
    typedef mpz_class Nested;
    typedef mpz_class Literal;
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    typedef mpq_class Literal;
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 300,
        MulCost = 300
    };
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace latfft {

using BigInt = mpz_class;
using Rational = mpq_class;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<BigInt>;
using IntVector = VectorX<BigInt>;
using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

// Machine-width integer types for the hot paths of the lattice layer.
using LongMatrix = MatrixX<std::int64_t>;
using LongVector = VectorX<std::int64_t>;

// Coordinates of a pattern or generator element with respect to a basis.
using MultiIndex = LongVector;

// Error hierarchy. Every contract violation in the library throws one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LATFFT_DEFINE_ERROR(Name)                                                                  \
    class Name : public Error {                                                                    \
    public:                                                                                        \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}                     \
    }

LATFFT_DEFINE_ERROR(SingularMatrix);
LATFFT_DEFINE_ERROR(NotInLattice);
LATFFT_DEFINE_ERROR(NotInPattern);
LATFFT_DEFINE_ERROR(BadFactorization);
LATFFT_DEFINE_ERROR(NotASubpattern);
LATFFT_DEFINE_ERROR(Unsupported);
LATFFT_DEFINE_ERROR(TooLarge);
LATFFT_DEFINE_ERROR(ShapeMismatch);
LATFFT_DEFINE_ERROR(DegenerateDirections);
LATFFT_DEFINE_ERROR(NonInvertibleKernel);
LATFFT_DEFINE_ERROR(ParseError);

#undef LATFFT_DEFINE_ERROR

} // namespace latfft
