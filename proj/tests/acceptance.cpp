// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include "latfft/bench.hpp"
#include "latfft/boxspline.hpp"
#include "latfft/io.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

namespace latfft {
namespace {

using oracle::matrix;
using BasisPtr = std::shared_ptr<const PatternBasis>;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

BasisPtr basis_of(const IntMatrix& m) { return std::make_shared<const PatternBasis>(build_basis(m)); }
IntMatrix quotient(const IntMatrix& j, const IntMatrix& m) { return to_integer(inverse_rational(j) * m.cast<Rational>()); }

const IntMatrix kExample = matrix({{4, -3}, {4, 5}});
const IntMatrix kJx = matrix({{2, 0}, {0, 1}});
const IntMatrix kJy = matrix({{1, 0}, {0, 2}});
const IntMatrix kJd = matrix({{1, -1}, {1, 1}});

unsigned hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

LatticeArray random_array(oracle::Rng& rng, BasisPtr b, Domain domain) {
    LatticeArray a = LatticeArray::zeros(b, domain);
    a.values = oracle::random_complex(rng, b->size());
    return a;
}

Rational fraction(std::int64_t p, std::int64_t q) {
    Rational r(static_cast<long>(p), static_cast<long>(q));
    r.canonicalize();
    return r;
}

bool integral(const RationalVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i).get_den() != 1) return false;
    return true;
}

/// Dense unitary Fourier matrix by direct summation over the enumerated
/// generators (rows) and pattern points (columns).
Eigen::MatrixXcd direct_fourier(const PatternBasis& b) {
    const LongMatrix k = enumerate_generators(b);
    const LongMatrix y = enumerate_pattern_scaled(b, Window::Unit);
    const std::int64_t m = b.size();
    Eigen::MatrixXcd f(m, m);
    for (std::int64_t r = 0; r < m; ++r)
        for (std::int64_t c = 0; c < m; ++c) {
            std::int64_t dot = 0;
            for (Eigen::Index i = 0; i < b.dim(); ++i) dot = (dot + k(i, r) * y(i, c)) % m;
            f(r, c) = std::polar(1.0 / std::sqrt(double(m)), -2.0 * std::numbers::pi * double(dot) / double(m));
        }
    return f;
}

/// Enumerations agree with brute-force lattice point search (as sets).
bool enumerations_match(const IntMatrix& m, const PatternBasis& b) {
    const LongMatrix pts = enumerate_pattern_scaled(b, Window::Unit);
    std::vector<oracle::Point> got;
    for (Eigen::Index t = 0; t < pts.cols(); ++t) got.emplace_back(pts.col(t).data(), pts.col(t).data() + pts.rows());
    std::sort(got.begin(), got.end());
    if (got != oracle::brute_force_pattern(m, false)) return false;
    const LongMatrix gens = enumerate_generators(b);
    std::vector<oracle::Point> gk;
    for (Eigen::Index t = 0; t < gens.cols(); ++t) gk.emplace_back(gens.col(t).data(), gens.col(t).data() + gens.rows());
    std::sort(gk.begin(), gk.end());
    return gk == oracle::brute_force_generators(m);
}

IntMatrix random_fft_matrix(oracle::Rng& rng, int t) {
    const int d = 1 + t % 3;
    const long range = d == 1 ? 512 : (d == 2 ? 24 : 7);
    IntMatrix m = oracle::random_regular(rng, d, -range, range, 512);
    return m;
}

// 1. Smith normal form.
Outcome criterion_snf() {
    Outcome o;
    const SmithDecomposition example = smith_normal_form(kExample);
    const bool example_ok = example.e == std::vector<BigInt>{1, 32} && verify_smith(kExample, example);
    oracle::Rng rng(101);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const int d = 1 + t % 4;
        const IntMatrix m = oracle::random_regular(rng, d, -30, 30);
        const SmithDecomposition s = smith_normal_form(m);
        bool ok = verify_smith(m, s) && s.product() == m && is_unimodular(s.q) && is_unimodular(s.r);
        for (std::size_t k = 0; k + 1 < s.e.size() && ok; ++k) ok = s.e[k] > 0 && s.e[k + 1] % s.e[k] == 0;
        if (ok && d <= 3) {
            const auto eps = oracle::elementary_divisors(oracle::to_int64(m));
            for (std::size_t k = 0; k < eps.size() && ok; ++k) ok = s.e[k] == BigInt(static_cast<long>(eps[k]));
        }
        bad += ok ? 0 : 1;
    }
    o.pass = example_ok && bad == 0;
    o.detail = std::string("[[4,-3],[4,5]]: E=diag(1,32) ") + (example_ok ? "ok" : "WRONG") + ", random failures " +
               std::to_string(bad) + "/1000";
    return o;
}

// 2. Pattern basis and biorthogonality.
Outcome criterion_basis() {
    Outcome o;
    const PatternBasis b = build_basis(kExample);
    const RationalVector expected = (RationalVector(2) << Rational(3, 8), Rational(1, 32)).finished();
    const RationalVector y1 = b.pattern_vectors.front();
    const bool y1_ok = b.dim_pattern == 1 && y1 == expected;
    const bool expected_in_lattice = integral(RationalVector(kExample.cast<Rational>() * expected));
    oracle::Rng rng(202);
    int bad = 0;
    for (int t = 0; t < 500; ++t) {
        const IntMatrix m = oracle::random_regular(rng, 1 + t % 4, -12, 12);
        const PatternBasis pb = build_basis(m);
        const auto k = pb.pattern_vectors.size();
        bool ok = pb.generator_vectors.size() == k;
        for (std::size_t i = 0; i < k && ok; ++i) {
            ok = integral(RationalVector(m.cast<Rational>() * pb.pattern_vectors[i]));
            for (std::size_t j = 0; j < k && ok; ++j) {
                const Rational dot = (pb.generator_vectors[j].cast<Rational>().transpose() * pb.pattern_vectors[i])(0);
                const Rational want = i == j ? Rational(1, static_cast<unsigned long>(pb.cycle_lengths[i])) : Rational(0);
                ok = dot == want;
            }
        }
        bad += ok ? 0 : 1;
    }
    o.pass = y1_ok && bad == 0;
    std::ostringstream s;
    s << "y_1 = (" << y1(0).get_str() << ", " << y1(1).get_str() << ") vs expected (3/8, 1/32): "
      << (y1_ok ? "equal" : "differ") << " [expected point " << (expected_in_lattice ? "is" : "is not")
      << " in M^{-1}Z^2]; biorthogonality failures " << bad << "/500";
    o.detail = s.str();
    return o;
}

// 3. Kronecker structure of the Fourier matrix.
Outcome criterion_kronecker() {
    Outcome o;
    const PatternBasis example = build_basis(kExample);
    const double example_err = (fourier_matrix(example) - kronecker_fourier({32})).cwiseAbs().maxCoeff();
    double worst = example_err;
    oracle::Rng rng(303);
    for (int t = 0; t < 49; ++t) {
        const int d = 2 + t % 2;
        const IntMatrix m = oracle::random_regular(rng, d, d == 2 ? -16 : -6, d == 2 ? 16 : 6, 256);
        const PatternBasis b = build_basis(m);
        worst = std::max(worst, (fourier_matrix(b) - kronecker_fourier(b.cycle_lengths)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (direct_fourier(b) - kronecker_fourier(b.cycle_lengths)).cwiseAbs().maxCoeff());
    }
    o.pass = example_err <= 1e-12 && worst <= 1e-12;
    o.detail = "[[4,-3],[4,5]] vs F_32 " + fmt(example_err) + ", max entry error over 50 matrices " + fmt(worst);
    return o;
}

struct FftStats {
    double oracle_error = 0;
    double roundtrip_error = 0;
    double parseval_error = 0;
    double unitarity_error = 0;
    int enumeration_mismatches = 0;
};

FftStats run_fft_suite() {
    FftStats s;
    oracle::Rng rng(404);
    for (int t = 0; t < 200; ++t) {
        const IntMatrix m = random_fft_matrix(rng, t);
        const BasisPtr b = basis_of(m);
        if (!enumerations_match(m, *b)) ++s.enumeration_mismatches;
        const Eigen::MatrixXcd f = direct_fourier(*b);
        const LatticeArray a = random_array(rng, b, Domain::Spatial);
        const FourierPlan plan(b, 1 + static_cast<unsigned>(t % 4));
        const LatticeArray fast = fft_pattern(a, plan);
        const Eigen::VectorXcd dense = f * a.values;
        s.oracle_error = std::max(s.oracle_error, oracle::relative_error(fast.values, dense));
        s.roundtrip_error = std::max(s.roundtrip_error, oracle::relative_error(ifft_pattern(fast, plan).values, a.values));
        const double na = a.values.norm();
        s.parseval_error = std::max({s.parseval_error, std::abs(fast.values.norm() - na) / na,
                                     std::abs(dense.norm() - na) / na});
        s.unitarity_error = std::max(
            s.unitarity_error, (f.adjoint() * f - Eigen::MatrixXcd::Identity(b->size(), b->size())).cwiseAbs().maxCoeff());
    }
    return s;
}

// 4. Fast transform vs dense oracle.
Outcome criterion_fft_oracle() {
    const FftStats s = run_fft_suite();
    Outcome o;
    o.pass = s.oracle_error <= 1e-10 && s.roundtrip_error <= 1e-10 && s.enumeration_mismatches == 0;
    o.detail = "max relative error " + fmt(s.oracle_error) + ", inverse round trip " + fmt(s.roundtrip_error) +
               ", enumeration mismatches " + std::to_string(s.enumeration_mismatches) + "/200";
    return o;
}

// 5. Parseval / unitarity.
Outcome criterion_parseval() {
    const FftStats s = run_fft_suite();
    double kron = 0;
    oracle::Rng rng(303);
    for (int t = 0; t < 50; ++t) {
        const int d = 2 + t % 2;
        const IntMatrix m = t == 0 ? kExample : oracle::random_regular(rng, d, d == 2 ? -16 : -6, d == 2 ? 16 : 6, 256);
        const Eigen::MatrixXcd f = fourier_matrix(build_basis(m));
        kron = std::max(kron, (f.adjoint() * f - Eigen::MatrixXcd::Identity(f.rows(), f.cols())).cwiseAbs().maxCoeff());
    }
    Outcome o;
    o.pass = s.parseval_error <= 1e-10 && s.unitarity_error <= 1e-10 && kron <= 1e-10;
    o.detail = "max |‖â‖-‖a‖|/‖a‖ " + fmt(s.parseval_error) + ", max |F^H F - I| " + fmt(std::max(s.unitarity_error, kron));
    return o;
}

// 6. Runtime scaling and parallel speedup.
Outcome criterion_scaling() {
    Outcome o;
    std::ostringstream detail;
    bool pass = true;
    for (std::int64_t shape : {0, 1}) {
        std::vector<double> xs, ys;
        for (int p = 12; p <= 20; ++p) {
            const std::int64_t m = std::int64_t{1} << p;
            const int reps = static_cast<int>(std::max<std::int64_t>(5, (std::int64_t{1} << 23) / m));
            const BenchRow row = run_bench(m, shape, reps, 1, 7);
            xs.push_back(std::log(double(m)));
            ys.push_back(std::log(row.serial_seconds / double(p)));
        }
        const double n = double(xs.size());
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        const double slope = sxy / sxx;
        pass = pass && slope >= 0.95 && slope <= 1.25;
        detail << "slope(i=" << shape << ") " << fmt(slope) << "; ";
    }
    const unsigned threads = std::max(4u, hardware_threads());
    const BenchRow big = run_bench(std::int64_t{1} << 20, 0, 10, threads, 7);
    pass = pass && big.speedup() >= 1.2;
    detail << "speedup at 2^20 with " << threads << " threads " << fmt(big.speedup()) << " (" << hardware_threads()
           << " hardware threads available)";
    o.pass = pass;
    o.detail = detail.str();
    return o;
}

// 7. Orthonormal translates of the Dirichlet kernel.
Outcome criterion_gram() {
    Outcome o;
    oracle::Rng rng(707);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        const IntMatrix m = oracle::random_regular(rng, 2 + (t % 5 == 0), -8, 8, 64);
        const BasisPtr b = basis_of(m);
        const KernelSpectrum phi = dirichlet_spectrum(b);
        const Eigen::MatrixXcd gram = translate_gram(phi, phi, *b);
        worst = std::max(worst, (gram - Eigen::MatrixXcd::Identity(b->size(), b->size())).cwiseAbs().maxCoeff());
    }
    o.pass = worst <= 1e-10;
    o.detail = "max |G - I| over 50 matrices " + fmt(worst);
    return o;
}

// 8. Two-scale identity of the Dirichlet scaling functions.
Outcome criterion_two_scale() {
    Outcome o;
    const IntMatrix m = matrix({{8, 0}, {0, 8}});
    const BasisPtr mb = basis_of(m);
    const KernelSpectrum phi_m = dirichlet_spectrum(mb);
    double worst = 0;
    std::size_t checked = 0;
    for (const IntMatrix& j : {kJx, kJy, kJd}) {
        const BasisPtr nb = basis_of(quotient(j, m));
        const LatticeArray a = scaling_filter(mb, nb);
        const KernelSpectrum phi_n = dirichlet_spectrum(nb);
        auto filter_at = [&](const LongVector& k) {
            return a.values(flatten(generator_to_index(k, *mb), mb->cycle_lengths));
        };
        for (Eigen::Index t = 0; t < phi_n.size(); ++t, ++checked) {
            const LongVector k = phi_n.support.col(t);
            worst = std::max(worst, std::abs(phi_n.coeffs(t) - filter_at(k) * phi_m.coefficient(k)));
        }
        for (Eigen::Index t = 0; t < phi_m.size(); ++t) {
            const LongVector k = phi_m.support.col(t);
            worst = std::max(worst, std::abs(filter_at(k) * phi_m.coeffs(t) - phi_n.coefficient(k)));
        }
    }
    o.pass = worst <= 1e-12;
    o.detail = "max coefficient error " + fmt(worst) + " over " + std::to_string(checked) + " N-support frequencies (J_x, J_y, J_d)";
    return o;
}

// 9. Perfect reconstruction and energy split.
Outcome criterion_reconstruction() {
    Outcome o;
    struct Case {
        IntMatrix m, j;
        const char* name;
    };
    const std::vector<Case> cases{{matrix({{16, 0}, {0, 16}}), kJx, "diag(16,16)/J_x"},
                                  {matrix({{16, 0}, {0, 16}}), kJy, "diag(16,16)/J_y"},
                                  {matrix({{16, 0}, {0, 16}}), kJd, "diag(16,16)/J_d"},
                                  {kExample, kJd, "[[4,-3],[4,5]]/J_d"}};
    oracle::Rng rng(909);
    double recon = 0, energy = 0;
    for (const Case& c : cases) {
        const BasisPtr mb = basis_of(c.m);
        const FilterBank fb = filter_bank_from_dirichlet(mb, basis_of(quotient(c.j, c.m)), basis_of(c.j));
        for (int t = 0; t < 100; ++t) {
            const LatticeArray a = random_array(rng, mb, Domain::Spatial);
            const WaveletCoefficients d = full_analysis(a, fb, 1 + static_cast<unsigned>(t % 3));
            recon = std::max(recon, oracle::relative_error(synthesis(d, fb).values, a.values));
            double e = 0;
            for (const auto& b : d.branches) e += b.values.squaredNorm();
            energy = std::max(energy, std::abs(e - a.values.squaredNorm()) / a.values.squaredNorm());
        }
    }
    const bool example_n = quotient(kJd, kExample) == matrix({{4, 1}, {0, 4}});
    o.pass = recon <= 1e-9 && energy <= 1e-9 && example_n;
    o.detail = "max reconstruction error " + fmt(recon) + ", max energy defect " + fmt(energy) +
               ", 100 inputs x 4 splits, J_d N factor N = [[4,1],[0,4]] " + (example_n ? "ok" : "WRONG");
    return o;
}

// 10. Fast decomposition vs explicit spatial operator.
Outcome criterion_dense_operator() {
    Outcome o;
    oracle::Rng rng(1010);
    double worst = 0;
    int cases = 0;
    for (int t = 0; t < 31; ++t, ++cases) {
        IntMatrix j, n;
        if (t == 0) {
            j = kJd;
            n = matrix({{4, 1}, {0, 4}});
        } else {
            j = t % 3 == 0 ? kJd : oracle::random_regular(rng, 2, -3, 3, 4);
            if (std::abs(oracle::det(oracle::to_int64(j))) < 2) j = kJx;
            n = oracle::random_regular(rng, 2, -8, 8, 256 / std::abs(oracle::det(oracle::to_int64(j))));
        }
        const IntMatrix m = j * n;
        const BasisPtr mb = basis_of(m), nb = basis_of(n), jb = basis_of(j);
        FilterBank fb;
        if (t == 0) {
            fb = filter_bank_from_dirichlet(mb, nb, jb);
        } else {
            std::vector<LatticeArray> bhat;
            for (std::int64_t b = 0; b < jb->size(); ++b) bhat.push_back(random_array(rng, mb, Domain::Frequency));
            fb = make_filter_bank(mb, nb, jb, std::move(bhat));
        }
        const std::int64_t mm = mb->size(), nn = nb->size();
        const LongMatrix k = enumerate_generators(*mb);
        const LongMatrix y = enumerate_pattern_scaled(*mb, Window::Unit);
        const LongMatrix x = enumerate_pattern_scaled(*nb, Window::Unit);
        const std::int64_t ratio = mm / nn;
        const LatticeArray a = random_array(rng, mb, Domain::Spatial);
        const WaveletCoefficients fast = full_analysis(a, fb);
        for (std::int64_t b = 0; b < jb->size(); ++b) {
            // d_b(x) = sum_y C_b(x - y) a_y, C_b(z) = (1/m) sum_k conj(bhat_b(k)) exp(2 pi i k.z).
            Eigen::MatrixXcd op(nn, mm);
            for (std::int64_t r = 0; r < nn; ++r)
                for (std::int64_t c = 0; c < mm; ++c) {
                    Complex acc = 0;
                    for (std::int64_t h = 0; h < mm; ++h) {
                        std::int64_t dot = 0;
                        for (Eigen::Index i = 0; i < 2; ++i) dot += k(i, h) * (x(i, r) * ratio - y(i, c));
                        dot %= mm;
                        acc += std::conj(fb.bhat[static_cast<std::size_t>(b)].values(h)) *
                               std::polar(1.0, 2.0 * std::numbers::pi * double(dot) / double(mm));
                    }
                    op(r, c) = acc / double(mm);
                }
            worst = std::max(worst, oracle::relative_error(fast.branches[static_cast<std::size_t>(b)].values, op * a.values));
        }
    }
    o.pass = worst <= 1e-10;
    o.detail = "max relative error " + fmt(worst) + " over " + std::to_string(cases) + " splits with |det M| <= 256";
    return o;
}

// 11. Scaling property of patterns.
Outcome criterion_scaling_property() {
    Outcome o;
    oracle::Rng rng(1111);
    int bad = 0, total = 0;
    std::string first_failure;
    std::map<std::string, int> reasons;
    int single_axis = 0;
    for (int t = 0; t < 40; ++t, ++total) {
        // J = W S W^{-1}, N = W diag(1, b) V with p | b. S = diag(p, 1) adds a
        // new p-cycle, S = diag(1, p) grows the b-cycle.
        const int expected = 1 + t % 2;
        const long p = (t / 2) % 2 ? 3 : 2;
        const long bb = p * (1 + (t / 4) % 4);
        const IntMatrix w = oracle::random_unimodular(rng, 2);
        const IntMatrix v = oracle::random_unimodular(rng, 2);
        const IntMatrix s = expected == 1 ? matrix({{p, 0}, {0, 1}}) : matrix({{1, 0}, {0, p}});
        const IntMatrix j = w * s * inverse_unimodular(w);
        const IntMatrix n = w * matrix({{1, 0}, {0, bb}}) * v;
        const IntMatrix m = j * n;
        const ScalingReport r = scaling_case(j, n);

        // Brute force: dimensions from determinantal divisors.
        auto dim_of = [](const IntMatrix& a) {
            int c = 0;
            for (auto e : oracle::elementary_divisors(oracle::to_int64(a))) c += e > 1 ? 1 : 0;
            return c;
        };
        const int dm = dim_of(m), dn = dim_of(n);
        // Brute force: case 1 iff some x in P(N) makes eps (w - x) integral.
        const PatternBasis mb = build_basis(m), nb = build_basis(n), jb = build_basis(j);
        const std::int64_t eps = jb.cycle_lengths.back();
        const RationalVector wv = inverse_rational(n) * jb.pattern_vectors.front();
        bool splits = false;
        for (const auto& xs : oracle::brute_force_pattern(n, false)) {
            RationalVector diff = wv;
            for (Eigen::Index i = 0; i < 2; ++i) diff(i) -= fraction(xs[static_cast<std::size_t>(i)], nb.size());
            if (integral(RationalVector(diff * Rational(eps)))) {
                splits = true;
                break;
            }
        }
        const int brute_case = splits ? 1 : 2;
        auto point_m = [&](const MultiIndex& lambda) {
            RationalVector pt = RationalVector::Zero(2);
            for (Eigen::Index k = 0; k < lambda.size(); ++k)
                pt += mb.pattern_vectors[static_cast<std::size_t>(k)] * Rational(static_cast<long>(lambda(k)));
            return pt;
        };
        auto point_n = [&](const MultiIndex& mu) {
            RationalVector pt = RationalVector::Zero(2);
            for (Eigen::Index k = 0; k < mu.size(); ++k)
                pt += nb.pattern_vectors[static_cast<std::size_t>(k)] * Rational(static_cast<long>(mu(k)));
            return pt;
        };
        std::vector<std::string> failed;
        auto check = [&](bool cond, const char* what) {
            if (!cond) failed.emplace_back(what);
        };
        check(r.case_tag == expected && brute_case == expected, "case tag");
        check(r.dim_m == dm && r.dim_n == dn && r.scale == eps, "dimensions");
        check(expected == 1 ? dm == dn + 1 : dm == dn, "dimension relation");
        // eps * w has N-coordinates mu.
        check(integral(RationalVector(wv * Rational(eps) - point_n(r.mu))), "mu");
        const RationalVector lam = point_m(r.lambda);
        if (expected == 2) {
            // lambda are the M-coordinates of w and eps lambda = P mu (mod 1 as points).
            const MultiIndex pmu = reduce_index(r.projection * r.mu, mb.cycle_lengths);
            check(integral(RationalVector(lam - wv)), "lambda is w");
            check(integral(RationalVector(point_m(pmu) - point_n(r.mu))), "projection");
            check(r.scaling_ok && integral(RationalVector(lam * Rational(eps) - point_m(pmu))), "eps lambda = P mu");
        } else {
            // lambda is a lift of w in w + P(N) of order eps.
            bool lift = false;
            for (const auto& xs : oracle::brute_force_pattern(n, false)) {
                RationalVector diff = lam - wv;
                for (Eigen::Index i = 0; i < 2; ++i) diff(i) -= fraction(xs[static_cast<std::size_t>(i)], nb.size());
                if (integral(diff)) {
                    lift = true;
                    break;
                }
            }
            check(lift, "lambda lifts w");
            bool order = integral(RationalVector(lam * Rational(eps)));
            for (std::int64_t c = 1; c < eps && order; ++c) order = !integral(RationalVector(lam * Rational(static_cast<long>(c))));
            check(order, "order eps");
            // <lambda> meets P(N) only in 0 and |P(M)| = eps |P(N)|: P(M) = P(N) (+) <lambda>.
            const auto pn = oracle::brute_force_pattern(n, false);
            bool disjoint = mb.size() == eps * nb.size();
            for (std::int64_t c = 1; c < eps && disjoint; ++c)
                for (const auto& xs : pn) {
                    RationalVector diff = lam * Rational(static_cast<long>(c));
                    for (Eigen::Index i = 0; i < 2; ++i) diff(i) -= fraction(xs[static_cast<std::size_t>(i)], nb.size());
                    if (integral(diff)) {
                        disjoint = false;
                        break;
                    }
                }
            check(disjoint, "brute-force direct sum");
            check(r.complement_ok, "direct sum");
            single_axis += r.cycle_ok ? 1 : 0;
        }
        check(r.verified(), "report");
        if (!failed.empty()) {
            ++bad;
            for (const auto& f : failed) ++reasons[f];
            if (first_failure.empty())
                first_failure = "; first: J=" + io::matrix_to_json(j) + " N=" + io::matrix_to_json(n);
        }
    }
    std::string why;
    for (const auto& [what, count] : reasons) why += (why.empty() ? "" : ", ") + what + " " + std::to_string(count);
    o.pass = bad == 0;
    o.detail = "failures " + std::to_string(bad) + "/" + std::to_string(total) + " (20 per case)" +
               (why.empty() ? "" : " [" + why + "]") + first_failure + "; case-1 lifts on a single SNF axis " +
               std::to_string(single_axis) + "/20";
    return o;
}

// 12. Box-spline decomposition.
Outcome criterion_box_spline(const std::filesystem::path& out_dir) {
    Outcome o;
    const IntMatrix m = matrix({{128, 0}, {0, 128}});
    const BasisPtr mb = basis_of(m);
    const unsigned threads = hardware_threads();
    const DirectionSet ds = xi_directions();
    const LatticeArray s = sample_on_pattern(ds, mb, Window::Centered, threads);
    const KernelSpectrum phi = dirichlet_spectrum(mb);
    const LatticeArray a = samples_to_translate_coeffs(s, phi, threads);
    const LongMatrix pts = enumerate_pattern_scaled(*mb, Window::Centered);
    std::vector<double> fractions;
    double recon = 0;
    const char* names[] = {"J_x", "J_y", "J_d"};
    std::vector<std::vector<double>> magnitudes;
    int idx = 0;
    for (const IntMatrix& j : {kJx, kJy, kJd}) {
        const FilterBank fb = filter_bank_from_dirichlet(mb, basis_of(quotient(j, m)), basis_of(j));
        const WaveletCoefficients d = full_analysis(a, fb, threads);
        fractions.push_back(d.branches[1].values.squaredNorm() / a.values.squaredNorm());
        WaveletCoefficients v_only = d, w_only = d;
        v_only.branches[1].values.setZero();
        w_only.branches[0].values.setZero();
        const LatticeArray fv = translate_coeffs_to_samples(synthesis(v_only, fb, threads), phi, threads);
        const LatticeArray fw = translate_coeffs_to_samples(synthesis(w_only, fb, threads), phi, threads);
        recon = std::max(recon, oracle::relative_error(fv.values + fw.values, s.values));
        const double peak = fw.values.cwiseAbs().maxCoeff();
        std::vector<double> pixels(128 * 128, 0.0), grid(128 * 128, 0.0);
        for (Eigen::Index t = 0; t < pts.cols(); ++t) {
            const auto col = (pts(0, t) / 128 + 64);
            const auto row = 127 - (pts(1, t) / 128 + 64);
            pixels[static_cast<std::size_t>(row * 128 + col)] = peak > 0 ? std::abs(fw.values(t)) / peak : 0.0;
            grid[static_cast<std::size_t>(col * 128 + (pts(1, t) / 128 + 64))] = std::abs(fw.values(t));
        }
        magnitudes.push_back(std::move(grid));
        io::write_file_atomic(out_dir / (std::string("boxspline_fw_") + names[idx++] + ".pgm"), io::pgm(pixels, 128, 128));
    }
    double closest = 1;
    for (std::size_t p = 0; p < fractions.size(); ++p)
        for (std::size_t q = p + 1; q < fractions.size(); ++q)
            closest = std::min(closest, std::abs(fractions[p] - fractions[q]) / std::max(fractions[p], fractions[q]));
    // |f_W| for J_y against the transpose of |f_W| for J_x.
    double mirror = 0;
    for (std::size_t u = 0; u < 128; ++u)
        for (std::size_t v = 0; v < 128; ++v)
            mirror = std::max(mirror, std::abs(magnitudes[1][u * 128 + v] - magnitudes[0][v * 128 + u]));
    o.pass = recon <= 1e-9 && closest > 1e-3;
    std::ostringstream d;
    d.precision(12);
    d << "W energy fractions J_x " << fractions[0] << ", J_y " << fractions[1] << ", J_d " << fractions[2]
      << "; closest pair relative gap " << fmt(closest) << "; max ||f_W(J_y)| - |f_W(J_x)|^T| " << fmt(mirror)
      << "; f_V + f_W error " << fmt(recon) << "; PGMs in "
      << out_dir.string();
    o.detail = d.str();
    return o;
}

// 13. Seventeen-level chain.
Outcome criterion_deep_chain() {
    Outcome o;
    const unsigned threads = hardware_threads();
    BasisPtr current = basis_of(matrix({{512, 0}, {0, 512}}));
    oracle::Rng rng(1313);
    const LatticeArray a = random_array(rng, current, Domain::Spatial);
    std::vector<FilterBank> chain;
    for (int k = 0; k < 17; ++k) {
        const IntMatrix j = k % 2 == 0 ? kJx : kJy;
        const BasisPtr n = basis_of(quotient(j, current->matrix));
        chain.push_back(filter_bank_from_dirichlet(current, n, basis_of(j)));
        current = n;
    }
    const MultilevelDecomposition dec = multilevel(a, chain, threads);
    double energy = dec.approximation.values.squaredNorm();
    for (const auto& level : dec.details)
        for (const auto& b : level) energy += b.values.squaredNorm();
    const double defect = std::abs(energy - a.values.squaredNorm()) / a.values.squaredNorm();
    o.pass = defect <= 1e-8 && dec.details.size() == 17 && dec.approximation.size() == 2;
    o.detail = "17 levels, final pattern size " + std::to_string(dec.approximation.size()) + ", energy defect " + fmt(defect);
    return o;
}

} // namespace
} // namespace latfft

int main(int argc, char** argv) {
    using namespace latfft;
    const std::filesystem::path out_dir = argc > 1 ? argv[1] : "acceptance_out";
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Smith normal form", 10, criterion_snf},
        {2, "pattern basis and biorthogonality", 10, criterion_basis},
        {3, "Kronecker structure", 60, criterion_kronecker},
        {4, "FFT vs dense oracle", 60, criterion_fft_oracle},
        {5, "Parseval / unitarity", 60, criterion_parseval},
        {6, "O(m log m) scaling and parallel speedup", 300, criterion_scaling},
        {7, "Dirichlet translates orthonormal", 60, criterion_gram},
        {8, "two-scale identity", 10, criterion_two_scale},
        {9, "perfect reconstruction and energy split", 60, criterion_reconstruction},
        {10, "dense operator equivalence", 60, criterion_dense_operator},
        {11, "scaling property", 30, criterion_scaling_property},
        {12, "box-spline decomposition", 300, [&] { return criterion_box_spline(out_dir); }},
        {13, "17-level chain", 600, criterion_deep_chain},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds <= c.limit;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("criterion %2d %s  %-42s %8.2f s (limit %g s%s)  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, seconds,
                    c.limit, in_time ? "" : ", exceeded", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
