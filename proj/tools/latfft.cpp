// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/bench.hpp"
#include "latfft/boxspline.hpp"
#include "latfft/dirichlet.hpp"
#include "latfft/io.hpp"
#include "latfft/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

namespace {

using namespace latfft;
using nlohmann::json;
using BasisPtr = std::shared_ptr<const PatternBasis>;
namespace fs = std::filesystem;

/// Thrown for bad flag values found after parsing; exits with status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string matrix;
    std::string window = "unit";
    std::string input;
    std::string output;
    std::string output_dir;
    std::string summary;
    std::string filters = "dirichlet";
    std::vector<std::string> factors;
    std::string which = "xi";
    std::string j = "d";
    bool inverse = false;
    bool oracle = false;
    bool json_out = false;
    std::int64_t m = std::int64_t{1} << 20;
    std::int64_t shape = -1;
    std::int64_t oracle_limit = kDefaultDenseLimit;
    std::int64_t resolution = 0;
    int reps = 50;
    unsigned threads = 0;
    std::uint64_t seed = 1;
};

/// Files written by a command plus timing, for the summary JSON.
struct Run {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    json results = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const fs::path& path, const std::string& content) {
        io::write_file_atomic(path, content);
        outputs[path.string()] = io::checksum(content);
    }
};

BasisPtr basis_of(const IntMatrix& m) { return std::make_shared<const PatternBasis>(build_basis(m)); }

/// A matrix flag is either a file or inline JSON such as "[[4,-3],[4,5]]".
IntMatrix load_matrix(const std::string& source, Run& run, const std::string& key) {
    if (source.empty()) throw UsageError("--" + key + " is required");
    const std::string text = !source.empty() && source.front() == '[' ? source : io::read_file(source);
    const IntMatrix m = io::parse_matrix(text);
    run.inputs[key] = json::parse(io::matrix_to_json(m));
    return m;
}

IntMatrix named_factor(const std::string& name, Run& run, const std::string& key) {
    if (name == "x") return io::parse_matrix("[[2,0],[0,1]]");
    if (name == "y") return io::parse_matrix("[[1,0],[0,2]]");
    if (name == "d") return io::parse_matrix("[[1,-1],[1,1]]");
    return load_matrix(name, run, key);
}

Window parse_window(const std::string& w) {
    if (w == "unit") return Window::Unit;
    if (w == "centered") return Window::Centered;
    throw UsageError("--window must be unit or centered");
}

IntMatrix quotient(const IntMatrix& j, const IntMatrix& m) {
    if (j.rows() != m.rows()) throw BadFactorization("J and M differ in dimension");
    const RationalMatrix n = inverse_rational(j) * m.cast<Rational>();
    if (!is_integral(n)) throw BadFactorization("J does not divide M from the left");
    return to_integer(n);
}

LatticeArray load_input(const Config& cfg, const BasisPtr& b, Run& run) {
    LatticeArray a = LatticeArray::zeros(b, Domain::Spatial);
    if (cfg.input.empty()) {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> normal;
        for (Eigen::Index t = 0; t < a.values.size(); ++t) a.values(t) = Complex(normal(rng), normal(rng));
        run.inputs["input"] = "random, seed " + std::to_string(cfg.seed);
        return a;
    }
    const std::string text = io::read_file(cfg.input);
    a.values = io::parse_complex_csv(text);
    if (a.values.size() != b->size())
        throw ShapeMismatch("input has " + std::to_string(a.values.size()) + " values, |det M| = " + std::to_string(b->size()));
    run.inputs["input"] = {{"path", cfg.input}, {"checksum", io::checksum(text)}};
    return a;
}

void emit(Run& run, const Config& cfg, const std::string& content) {
    if (cfg.output.empty()) {
        std::cout << content;
    } else {
        run.write(cfg.output, content);
    }
}

json matrix_value(const IntMatrix& m) { return json::parse(io::matrix_to_json(m)); }

// Commands.

void cmd_snf(const Config& cfg, Run& run) {
    const IntMatrix m = load_matrix(cfg.matrix, run, "matrix");
    const SmithDecomposition snf = smith_normal_form(m);
    std::string e = "diag(";
    json divisors = json::array();
    for (std::size_t k = 0; k < snf.e.size(); ++k) {
        e += (k ? "," : "") + snf.e[k].get_str();
        divisors.push_back(to_long(snf.e[k]));
    }
    e += ")";
    run.results = {{"Q", matrix_value(snf.q)}, {"E", divisors}, {"R", matrix_value(snf.r)}};
    if (cfg.json_out) {
        emit(run, cfg, run.results.dump() + "\n");
    } else {
        emit(run, cfg, "Q =\n" + io::matrix_to_text(snf.q) + "E = " + e + "\nR =\n" + io::matrix_to_text(snf.r));
    }
}

void cmd_pattern(const Config& cfg, Run& run) {
    const BasisPtr b = basis_of(load_matrix(cfg.matrix, run, "matrix"));
    run.inputs["window"] = cfg.window;
    emit(run, cfg, io::pattern_csv(*b, parse_window(cfg.window)));
}

void cmd_generators(const Config& cfg, Run& run) {
    const BasisPtr b = basis_of(load_matrix(cfg.matrix, run, "matrix"));
    emit(run, cfg, io::generators_csv(*b));
}

void cmd_fft(const Config& cfg, Run& run) {
    const BasisPtr b = basis_of(load_matrix(cfg.matrix, run, "matrix"));
    LatticeArray a = load_input(cfg, b, run);
    LatticeArray out;
    if (cfg.oracle) {
        if (cfg.inverse) {
            a.domain = Domain::Frequency;
            const Eigen::MatrixXcd f = fourier_matrix(*b, cfg.oracle_limit);
            out = LatticeArray{b, Domain::Spatial, f.adjoint() * a.values};
        } else {
            out = dft_naive(a, cfg.oracle_limit);
        }
    } else {
        const FourierPlan plan(b, cfg.threads);
        if (cfg.inverse) {
            a.domain = Domain::Frequency;
            out = ifft_pattern(a, plan);
        } else {
            out = fft_pattern(a, plan);
        }
    }
    run.inputs["inverse"] = cfg.inverse;
    run.inputs["oracle"] = cfg.oracle;
    emit(run, cfg, io::complex_csv(out.values));
}

void cmd_bench(const Config& cfg, Run& run) {
    const std::vector<std::int64_t> shapes = cfg.shape >= 0 ? std::vector<std::int64_t>{cfg.shape} : bench_shapes(cfg.m);
    if (cfg.reps < 1) throw UsageError("--reps must be positive");
    const unsigned threads = cfg.threads == 0 ? std::max(4u, default_thread_count()) : cfg.threads;
    std::string csv = "i,cycles,serial_seconds,parallel_seconds,speedup\n";
    json rows = json::array();
    for (std::int64_t i : shapes) {
        const BenchRow row = run_bench(cfg.m, i, cfg.reps, threads, cfg.seed);
        csv += std::to_string(i) + "," + row.cycles_text() + "," + io::format_double(row.serial_seconds) + "," +
               io::format_double(row.parallel_seconds) + "," + io::format_double(row.speedup()) + "\n";
        rows.push_back({{"i", i}, {"cycles", row.cycles}, {"speedup", row.speedup()}});
        if (!cfg.output.empty()) std::cerr << "i = " << i << " done\n";
    }
    run.inputs["m"] = cfg.m;
    run.inputs["reps"] = cfg.reps;
    run.inputs["threads"] = threads;
    run.results["rows"] = rows;
    emit(run, cfg, csv);
}

fs::path require_dir(const Config& cfg) {
    if (cfg.output_dir.empty()) throw UsageError("--output-dir is required");
    return cfg.output_dir;
}

void cmd_dirichlet(const Config& cfg, Run& run) {
    const fs::path dir = require_dir(cfg);
    const IntMatrix m = load_matrix(cfg.matrix, run, "matrix");
    const IntMatrix j = named_factor(cfg.j, run, "j");
    run.inputs["j"] = matrix_value(j);
    const BasisPtr mb = basis_of(m), nb = basis_of(quotient(j, m)), jb = basis_of(j);
    const FilterBank fb = filter_bank_from_dirichlet(mb, nb, jb);
    run.write(dir / "phi_M.csv", io::spectrum_csv(dirichlet_spectrum(mb)));
    run.write(dir / "phi_N.csv", io::spectrum_csv(dirichlet_spectrum(nb)));
    run.write(dir / "psi_N.csv", io::spectrum_csv(wavelet_spectrum(mb, nb, jb)));
    run.write(dir / "filters.json", io::filter_bank_json(fb));
    run.results["isometry_defect"] = isometry_defect(fb);
}

void cmd_wavedec(const Config& cfg, Run& run) {
    const fs::path dir = require_dir(cfg);
    std::vector<FilterBank> chain;
    if (cfg.filters == "dirichlet") {
        BasisPtr current = basis_of(load_matrix(cfg.matrix, run, "matrix"));
        if (cfg.factors.empty()) throw UsageError("--factor-j is required with --filters dirichlet");
        json js = json::array();
        for (std::size_t k = 0; k < cfg.factors.size(); ++k) {
            const IntMatrix j = named_factor(cfg.factors[k], run, "factor-j");
            js.push_back(matrix_value(j));
            const BasisPtr n = basis_of(quotient(j, current->matrix));
            chain.push_back(filter_bank_from_dirichlet(current, n, basis_of(j)));
            current = n;
        }
        run.inputs["factor-j"] = js;
    } else {
        const std::string text = io::read_file(cfg.filters);
        chain.push_back(io::parse_filter_bank(text));
        run.inputs["filters"] = {{"path", cfg.filters}, {"checksum", io::checksum(text)}};
        if (!cfg.matrix.empty() && load_matrix(cfg.matrix, run, "matrix") != chain.front().m_basis->matrix)
            throw ShapeMismatch("--matrix differs from the filter bank's M");
        if (!cfg.factors.empty()) throw UsageError("--factor-j cannot be combined with a filter file");
    }
    const LatticeArray a = load_input(cfg, chain.front().m_basis, run);
    const MultilevelDecomposition dec = multilevel(a, chain, cfg.threads);
    double energy = dec.approximation.values.squaredNorm();
    if (chain.size() == 1) {
        run.write(dir / "branch_1.csv", io::complex_csv(dec.approximation.values));
        for (std::size_t b = 0; b < dec.details[0].size(); ++b) {
            run.write(dir / ("branch_" + std::to_string(b + 2) + ".csv"), io::complex_csv(dec.details[0][b].values));
            energy += dec.details[0][b].values.squaredNorm();
        }
    } else {
        for (std::size_t k = 0; k < dec.details.size(); ++k)
            for (std::size_t b = 0; b < dec.details[k].size(); ++b) {
                run.write(dir / ("level_" + std::to_string(k + 1) + "_branch_" + std::to_string(b + 2) + ".csv"),
                          io::complex_csv(dec.details[k][b].values));
                energy += dec.details[k][b].values.squaredNorm();
            }
        run.write(dir / "approximation.csv", io::complex_csv(dec.approximation.values));
    }
    run.results["input_energy"] = a.values.squaredNorm();
    run.results["output_energy"] = energy;
}

/// Pixel grid of the centered pattern: diagonal M maps one point per pixel.
void cmd_demo_boxspline(const Config& cfg, Run& run) {
    const fs::path dir = require_dir(cfg);
    const IntMatrix m = cfg.matrix.empty() ? io::parse_matrix("[[128,0],[0,128]]") : load_matrix(cfg.matrix, run, "matrix");
    if (cfg.which != "xi" && cfg.which != "psi") throw UsageError("--which must be xi or psi");
    const IntMatrix j = named_factor(cfg.j, run, "j");
    run.inputs["matrix"] = matrix_value(m);
    run.inputs["which"] = cfg.which;
    run.inputs["j"] = matrix_value(j);
    const BasisPtr mb = basis_of(m), nb = basis_of(quotient(j, m)), jb = basis_of(j);
    const DirectionSet ds = cfg.which == "xi" ? xi_directions() : psi_directions();

    const LatticeArray s = sample_on_pattern(ds, mb, Window::Centered, cfg.threads);
    const KernelSpectrum phi = dirichlet_spectrum(mb);
    const LatticeArray a = samples_to_translate_coeffs(s, phi, cfg.threads);
    const FilterBank fb = filter_bank_from_dirichlet(mb, nb, jb);
    const WaveletCoefficients d = full_analysis(a, fb, cfg.threads);
    run.write(dir / "samples.csv", io::complex_csv(s.values));
    for (std::size_t b = 0; b < d.branches.size(); ++b)
        run.write(dir / ("branch_" + std::to_string(b + 1) + ".csv"), io::complex_csv(d.branches[b].values));

    // Samples of the wavelet part f_W: synthesize the detail branch alone.
    WaveletCoefficients only_w = d;
    only_w.branches[0].values.setZero();
    const LatticeArray fw = translate_coeffs_to_samples(synthesis(only_w, fb, cfg.threads), phi, cfg.threads);

    std::int64_t res = cfg.resolution;
    if (res <= 0) res = m.isDiagonal() ? std::max(to_long(m(0, 0)), to_long(m(1, 1))) : 256;
    const LongMatrix points = enumerate_pattern_scaled(*mb, Window::Centered);
    std::vector<double> pixels(static_cast<std::size_t>(res * res), 0.0);
    const double peak = fw.values.cwiseAbs().maxCoeff();
    for (Eigen::Index t = 0; t < points.cols(); ++t) {
        // Row 0 is the top of the image (largest x_2).
        const auto col = static_cast<std::int64_t>(std::floor((double(points(0, t)) / double(mb->size()) + 0.5) * res));
        const auto row = res - 1 - static_cast<std::int64_t>(std::floor((double(points(1, t)) / double(mb->size()) + 0.5) * res));
        auto& px = pixels[static_cast<std::size_t>(std::clamp<std::int64_t>(row, 0, res - 1) * res +
                                                   std::clamp<std::int64_t>(col, 0, res - 1))];
        px = std::max(px, peak > 0 ? std::abs(fw.values(t)) / peak : 0.0);
    }
    run.write(dir / "fw.pgm", io::pgm(pixels, res, res));
    const double total = a.values.squaredNorm();
    run.results["branch_energy_fraction"] = {d.branches[0].values.squaredNorm() / total,
                                             d.branches[1].values.squaredNorm() / total};
    run.results["reconstruction_error"] =
        (synthesis(d, fb, cfg.threads).values - a.values).norm() / std::max(a.values.norm(), 1e-300);
}

void write_summary(const Config& cfg, Run& run, const std::string& default_dir) {
    fs::path path = cfg.summary;
    if (path.empty()) {
        if (default_dir.empty()) return;
        path = fs::path(default_dir) / "summary.json";
    }
    json s;
    s["command"] = run.command;
    s["inputs"] = run.inputs;
    s["outputs"] = run.outputs;
    s["results"] = run.results;
    s["seed"] = cfg.seed;
    s["threads"] = cfg.threads == 0 ? default_thread_count() : cfg.threads;
    s["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();
    io::write_file_atomic(path, s.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Fast Fourier and wavelet transforms on lattice patterns"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->envname("LATFFT_THREADS");
    app.add_option("--oracle-limit", cfg.oracle_limit, "Largest |det M| for dense matrices")
        ->envname("LATFFT_ORACLE_LIMIT");
    app.add_option("--seed", cfg.seed, "Seed for generated inputs");
    app.add_option("--summary", cfg.summary, "Write a JSON run summary to this file");

    auto matrix_opt = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--matrix", cfg.matrix, "Matrix file (JSON rows or text) or inline JSON");
        if (required) o->required();
    };
    auto output_opt = [&](CLI::App* c) { c->add_option("--output,-o", cfg.output, "Output file (default stdout)"); };

    std::function<void(const Config&, Run&)> handler;
    std::string default_dir;
    auto bind = [&](CLI::App* c, std::string name, void (*fn)(const Config&, Run&), bool uses_dir) {
        c->callback([&, name, fn, uses_dir] {
            handler = [name, fn](const Config& k, Run& r) {
                r.command = name;
                fn(k, r);
            };
            if (uses_dir) default_dir = cfg.output_dir;
        });
    };

    auto* snf = app.add_subcommand("snf", "Smith normal form M = Q E R");
    matrix_opt(snf, true);
    output_opt(snf);
    snf->add_flag("--json", cfg.json_out, "Print JSON instead of text");
    bind(snf, "snf", cmd_snf, false);

    auto* pattern = app.add_subcommand("pattern", "List P(M) in lambda order as CSV");
    matrix_opt(pattern, true);
    output_opt(pattern);
    pattern->add_option("--window", cfg.window, "unit or centered")->check(CLI::IsMember({"unit", "centered"}));
    bind(pattern, "pattern", cmd_pattern, false);

    auto* gens = app.add_subcommand("generators", "List G(M^T) in lambda order as CSV");
    matrix_opt(gens, true);
    output_opt(gens);
    bind(gens, "generators", cmd_generators, false);

    auto* fft = app.add_subcommand("fft", "Pattern FFT of a CSV of re,im values in lambda order");
    matrix_opt(fft, true);
    output_opt(fft);
    fft->add_option("--input", cfg.input, "Input CSV (default: seeded random data)");
    fft->add_flag("--inverse", cfg.inverse, "Inverse transform");
    fft->add_flag("--oracle", cfg.oracle, "Use the dense Fourier matrix");
    bind(fft, "fft", cmd_fft, false);

    auto* bench = app.add_subcommand("bench", "Time the FFT on the normal forms [[l,i],[0,k]]");
    bench->add_option("--m", cfg.m, "|det M|, a power of two");
    bench->add_option("--shape", cfg.shape, "Single shape i (default: 0 and powers of two below l)");
    bench->add_option("--reps", cfg.reps, "Repetitions per timing");
    output_opt(bench);
    bind(bench, "bench", cmd_bench, false);

    auto* dir = app.add_subcommand("dirichlet", "Dirichlet kernel, wavelet spectra and filter bank");
    matrix_opt(dir, true);
    dir->add_option("--j", cfg.j, "x, y, d or a matrix file");
    dir->add_option("--output-dir", cfg.output_dir, "Directory for CSV and JSON output")->required();
    bind(dir, "dirichlet", cmd_dirichlet, true);

    auto* wd = app.add_subcommand("wavedec", "Wavelet decomposition");
    matrix_opt(wd, false);
    wd->add_option("--factor-j", cfg.factors, "J per level: x, y, d or a matrix file (repeatable)");
    wd->add_option("--filters", cfg.filters, "dirichlet or a filter-bank JSON file");
    wd->add_option("--input", cfg.input, "Input CSV (default: seeded random data)");
    wd->add_option("--output-dir", cfg.output_dir, "Directory for branch CSVs")->required();
    bind(wd, "wavedec", cmd_wavedec, true);

    auto* demo = app.add_subcommand("demo", "Demonstrations");
    demo->require_subcommand(1);
    demo->fallthrough();
    auto* box = demo->add_subcommand("boxspline", "Box-spline sampling and one wavelet level");
    box->add_option("--which", cfg.which, "xi or psi")->check(CLI::IsMember({"xi", "psi"}));
    matrix_opt(box, false);
    box->add_option("--j", cfg.j, "x, y, d or a matrix file");
    box->add_option("--resolution", cfg.resolution, "PGM width and height (default: from M)");
    box->add_option("--output-dir", cfg.output_dir, "Directory for output")->required();
    bind(box, "demo boxspline", cmd_demo_boxspline, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!handler) return 2;
    Run run;
    try {
        handler(cfg, run);
        write_summary(cfg, run, default_dir);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const latfft::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
