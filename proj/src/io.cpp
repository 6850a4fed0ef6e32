// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace latfft::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    return s.substr(begin, s.find_last_not_of(" \t\r\n") - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!field.empty()) out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    if (!field.empty()) out.push_back(field);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

IntMatrix matrix_from_rows(const std::vector<std::vector<std::string>>& rows) {
    const auto d = static_cast<Eigen::Index>(rows.size());
    if (d == 0) throw ParseError("empty matrix");
    IntMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != d)
            throw ParseError("matrix must be square");
        for (Eigen::Index j = 0; j < d; ++j) {
            const std::string& s = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (m(i, j).set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
        }
    }
    return m;
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_long(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<std::string> fields;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ParseError("matrix entries must be integers");
            fields.push_back(v.dump());
        }
        rows.push_back(std::move(fields));
    }
    return matrix_from_rows(rows);
}

/// Collects a JSON array of integer rows, keeping the literal text of each
/// entry so values beyond 64 bits stay exact.
class MatrixSax : public nlohmann::json_sax<json> {
public:
    std::vector<std::vector<std::string>> rows;

    bool null() override { return fail("matrix entries must be integers"); }
    bool boolean(bool) override { return fail("matrix entries must be integers"); }
    bool number_integer(number_integer_t v) override { return entry(std::to_string(v)); }
    bool number_unsigned(number_unsigned_t v) override { return entry(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& s) override {
        if (s.find_first_of(".eE") != std::string::npos) return fail("matrix entries must be integers");
        return entry(s);
    }
    bool string(string_t&) override { return fail("matrix entries must be integers"); }
    bool binary(binary_t&) override { return fail("matrix entries must be integers"); }
    bool start_object(std::size_t) override { return fail("matrix must be an array of rows"); }
    bool key(string_t&) override { return false; }
    bool end_object() override { return false; }
    bool start_array(std::size_t) override {
        if (++depth_ > 2) return fail("matrix entries must be integers");
        if (depth_ == 2) rows.emplace_back();
        return true;
    }
    bool end_array() override {
        --depth_;
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& e) override {
        return fail(e.what());
    }

    std::string error;

private:
    bool entry(const std::string& s) {
        if (depth_ != 2) return fail(depth_ < 2 ? "matrix rows must be arrays" : "matrix entries must be integers");
        rows.back().push_back(s);
        return true;
    }
    bool fail(const std::string& message) {
        if (error.empty()) error = message;
        return false;
    }
    int depth_ = 0;
};

IntMatrix matrix_from_json_text(const std::string& text) {
    MatrixSax sax;
    if (!json::sax_parse(text, &sax) || !sax.error.empty())
        throw ParseError(sax.error.empty() ? "malformed matrix JSON" : sax.error);
    return matrix_from_rows(sax.rows);
}

std::string fraction(std::int64_t p, std::int64_t q) {
    const std::int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

void append_index(std::string& out, const MultiIndex& index) {
    for (Eigen::Index i = 0; i < index.size(); ++i) {
        out += std::to_string(index(i));
        out += ',';
    }
}

} // namespace

IntMatrix parse_matrix(const std::string& text) {
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '[') {
        return matrix_from_json_text(t);
    }
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(t);
    std::string line;
    while (std::getline(in, line)) {
        if (line = trim(line); line.empty() || line.front() == '#') continue;
        rows.push_back(split_fields(line));
    }
    return matrix_from_rows(rows);
}

IntMatrix read_matrix(const std::filesystem::path& path) { return parse_matrix(read_file(path)); }

std::string matrix_to_json(const IntMatrix& m) { return matrix_json(m).dump(); }

std::string matrix_to_text(const IntMatrix& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ' ';
            out += m(i, j).get_str();
        }
        out += '\n';
    }
    return out;
}

Eigen::VectorXcd parse_complex_csv(const std::string& text) {
    std::vector<Complex> values;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line = trim(line); line.empty() || line.front() == '#') continue;
        const auto fields = split_fields(line);
        double re = 0, im = 0;
        const bool ok = (fields.size() == 1 || fields.size() == 2) && parse_double(fields[0], re) &&
                        (fields.size() == 1 || parse_double(fields[1], im));
        if (!ok) {
            if (first) {
                first = false;
                continue;
            }
            throw ParseError("line " + std::to_string(number) + ": expected re,im");
        }
        first = false;
        values.emplace_back(re, im);
    }
    return Eigen::Map<const Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXcd read_complex_csv(const std::filesystem::path& path) { return parse_complex_csv(read_file(path)); }

std::string format_double(double v) {
    if (v == 0) v = 0;  // drop the sign of negative zero
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string complex_csv(const Eigen::VectorXcd& values) {
    std::string out = "re,im\n";
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        out += format_double(values(i).real());
        out += ',';
        out += format_double(values(i).imag());
        out += '\n';
    }
    return out;
}

std::string pattern_csv(const PatternBasis& basis, Window window) {
    std::string out;
    for (std::size_t k = 0; k < basis.cycle_lengths.size(); ++k) out += "lambda_" + std::to_string(k + 1) + ",";
    for (Eigen::Index i = 0; i < basis.dim(); ++i) out += "x_" + std::to_string(i + 1) + (i + 1 < basis.dim() ? "," : "\n");
    const LongMatrix points = enumerate_pattern_scaled(basis, window);
    for (Eigen::Index t = 0; t < points.cols(); ++t) {
        append_index(out, unflatten(t, basis.cycle_lengths));
        for (Eigen::Index i = 0; i < basis.dim(); ++i) {
            out += fraction(points(i, t), basis.det_abs);
            out += i + 1 < basis.dim() ? ',' : '\n';
        }
    }
    return out;
}

std::string generators_csv(const PatternBasis& basis) {
    std::string out;
    for (std::size_t k = 0; k < basis.cycle_lengths.size(); ++k) out += "mu_" + std::to_string(k + 1) + ",";
    for (Eigen::Index i = 0; i < basis.dim(); ++i) out += "k_" + std::to_string(i + 1) + (i + 1 < basis.dim() ? "," : "\n");
    const LongMatrix gens = enumerate_generators(basis);
    for (Eigen::Index t = 0; t < gens.cols(); ++t) {
        append_index(out, unflatten(t, basis.cycle_lengths));
        for (Eigen::Index i = 0; i < basis.dim(); ++i) {
            out += std::to_string(gens(i, t));
            out += i + 1 < basis.dim() ? ',' : '\n';
        }
    }
    return out;
}

std::string spectrum_csv(const KernelSpectrum& spectrum) {
    std::string out;
    for (Eigen::Index i = 0; i < spectrum.support.rows(); ++i) out += "k_" + std::to_string(i + 1) + ",";
    out += "value_re,value_im\n";
    for (Eigen::Index t = 0; t < spectrum.size(); ++t) {
        for (Eigen::Index i = 0; i < spectrum.support.rows(); ++i) out += std::to_string(spectrum.support(i, t)) + ",";
        out += format_double(spectrum.coeffs(t).real()) + "," + format_double(spectrum.coeffs(t).imag()) + "\n";
    }
    return out;
}

std::string filter_bank_json(const FilterBank& fb) {
    json j;
    j["M"] = matrix_json(fb.m_basis->matrix);
    j["J"] = matrix_json(fb.j_basis->matrix);
    j["N"] = matrix_json(fb.n_basis->matrix);
    json branches = json::array();
    for (const auto& b : fb.bhat) {
        json values = json::array();
        for (Eigen::Index i = 0; i < b.values.size(); ++i) values.push_back({b.values(i).real(), b.values(i).imag()});
        branches.push_back(std::move(values));
    }
    j["branches"] = std::move(branches);
    return j.dump() + "\n";
}

FilterBank parse_filter_bank(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object() || !j.contains("M") || !j.contains("J") || !j.contains("N") || !j.contains("branches"))
        throw ParseError("filter bank needs M, J, N and branches");
    const auto m = std::make_shared<const PatternBasis>(build_basis(matrix_from_json(j["M"])));
    const auto jb = std::make_shared<const PatternBasis>(build_basis(matrix_from_json(j["J"])));
    const auto n = std::make_shared<const PatternBasis>(build_basis(matrix_from_json(j["N"])));
    std::vector<LatticeArray> bhat;
    try {
        for (const auto& branch : j["branches"]) {
            LatticeArray b = LatticeArray::zeros(m, Domain::Frequency);
            if (!branch.is_array() || static_cast<std::int64_t>(branch.size()) != m->size())
                throw ShapeMismatch("branch length must be |det M|");
            for (std::size_t i = 0; i < branch.size(); ++i)
                b.values(static_cast<Eigen::Index>(i)) = Complex(branch[i].at(0).get<double>(), branch[i].at(1).get<double>());
            bhat.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    return make_filter_bank(m, n, jb, std::move(bhat));
}

std::string pgm(const std::vector<double>& pixels, std::int64_t width, std::int64_t height) {
    if (static_cast<std::int64_t>(pixels.size()) != width * height) throw ShapeMismatch("pixel count");
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    for (double p : pixels) {
        const double c = std::isfinite(p) ? std::clamp(p, 0.0, 1.0) : 0.0;
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * c))));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string checksum(const std::string& content) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace latfft::io
