#pragma once

/**
 * @file io.hpp
 * @brief JSON/CSV file formats for states, operator sets, marginals and
 *        process matrices.
 *
 * All JSON files carry "format": 1. Complex matrices are stored as separate
 * "re"/"im" row-major arrays. Grids go to CSV (header x,z,w, lexicographic
 * (x,z), 17 significant digits) for plotting. Everything is UTF-8 with LF
 * line endings and '.' decimals, independent of locale.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasepoint.hpp"
#include "radon.hpp"
#include "reconstruct.hpp"

namespace fps::io {

using json = nlohmann::ordered_json;

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::bad_format, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(errc::bad_format, path + ": " + e.what());
    }
    require(j.contains("format") && j["format"].get<int>() == 1, errc::bad_format,
            path + ": missing or unsupported format field");
    return j;
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    require(out.good(), errc::bad_format, "cannot write " + path);
    out << j.dump(2) << "\n";
}

inline json matrix_to_json(const cmat& m) {
    json re = json::array(), im = json::array();
    for (i64 i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (i64 j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline cmat matrix_from_json(const json& j, i64 rows, i64 cols, const std::string& what) {
    require(j.contains("re") && j.contains("im"), errc::bad_format, what + ": missing re/im");
    const auto& re = j["re"];
    const auto& im = j["im"];
    require(re.size() == static_cast<size_t>(rows) && im.size() == static_cast<size_t>(rows),
            errc::bad_format, what + ": row count mismatch");
    cmat m(rows, cols);
    for (i64 i = 0; i < rows; ++i) {
        require(re[i].size() == static_cast<size_t>(cols) && im[i].size() == static_cast<size_t>(cols),
                errc::bad_format, what + ": column count mismatch");
        for (i64 jcol = 0; jcol < cols; ++jcol)
            m(i, jcol) = cplx(re[i][jcol].get<double>(), im[i][jcol].get<double>());
    }
    return m;
}

// --------------------------------------------------------------------------
// States

inline void write_state(const std::string& path, const cmat& rho) {
    json j{{"format", 1}, {"dim", rho.rows()}};
    j.update(matrix_to_json(rho));
    write_json(path, j);
}

inline cmat load_state(const std::string& path, bool require_density_check = true,
                       double tol = std::max(default_tolerance(), 1e-8)) {
    const json j = read_json(path);
    require(j.contains("dim"), errc::bad_format, path + ": missing dim");
    const i64 n = j["dim"].get<i64>();
    require(n >= 2, errc::bad_format, path + ": dim must be >= 2");
    cmat rho = matrix_from_json(j, n, n, path);
    if (require_density_check)
        require(is_density(rho, tol), errc::not_a_density_matrix, path + " does not hold a density matrix");
    return rho;
}

// --------------------------------------------------------------------------
// Phase-point sets

inline void write_set(const std::string& path, const PhasePointSet& set) {
    json ops = json::array();
    for (i64 x = 0; x < set.N; ++x)
        for (i64 z = 0; z < set.N; ++z) {
            json op{{"x", x}, {"z", z}};
            op.update(matrix_to_json(set.at(x, z)));
            ops.push_back(std::move(op));
        }
    write_json(path, json{{"format", 1},
                          {"dim", set.N},
                          {"variant", variant_name(set.variant())},
                          {"operators", std::move(ops)}});
}

inline PhasePointSet load_set(const std::string& path) {
    const json j = read_json(path);
    const i64 n = j.at("dim").get<i64>();
    const auto v = variant_from_name(j.at("variant").get<std::string>());
    require(v.has_value(), errc::bad_format, path + ": unknown variant");
    PhasePointSet set{n, Ordering::make(*v, n), std::vector<cmat>(static_cast<size_t>(n * n))};
    require(j.at("operators").size() == static_cast<size_t>(n * n), errc::bad_format,
            path + ": expected N^2 operators");
    for (const auto& op : j.at("operators")) {
        const i64 x = op.at("x").get<i64>(), z = op.at("z").get<i64>();
        require(x >= 0 && x < n && z >= 0 && z < n, errc::bad_format, path + ": operator index out of range");
        set.ops[static_cast<size_t>(x * n + z)] = matrix_from_json(op, n, n, path);
    }
    return set;
}

inline json report_to_json(const WignerSetReport& rep, double tol) {
    return json{{"format", 1},
                {"pass", rep.pass(tol)},
                {"tolerance", tol},
                {"hermiticity", rep.hermiticity},
                {"orthogonality", rep.orthogonality},
                {"completeness", rep.completeness},
                {"diagonal", rep.diagonal},
                {"axis_projector_z", rep.axis_projector_z},
                {"axis_projector_x", rep.axis_projector_x},
                {"offset", {rep.offset_x, rep.offset_z}}};
}

// --------------------------------------------------------------------------
// Marginals

inline void write_marginal(const std::string& path, const MarginalRecord& rec, Variant variant,
                           const std::optional<Eigen::VectorXi>& counts = std::nullopt,
                           std::optional<i64> shots = std::nullopt,
                           std::optional<std::uint64_t> seed = std::nullopt) {
    json j{{"format", 1},
           {"dim", rec.M.N},
           {"variant", variant_name(variant)},
           {"M", {rec.M.a, rec.M.b, rec.M.c, rec.M.d}},
           {"basis", rec.basis_tag},
           {"line", {rec.line.a, rec.line.c}}};
    json probs = json::array();
    for (i64 i = 0; i < rec.probs.size(); ++i) probs.push_back(rec.probs(i));
    j["probs"] = std::move(probs);
    if (counts) {
        json c = json::array();
        for (i64 i = 0; i < counts->size(); ++i) c.push_back((*counts)(i));
        j["counts"] = std::move(c);
        j["shots"] = *shots;
        j["seed"] = *seed;
    }
    write_json(path, j);
}

struct LoadedMarginal {
    MarginalRecord record;
    Variant variant;
    bool sampled = false;
};

// Loads a marginal file; when counts are present the empirical frequencies
// replace the stored probabilities (that is what a real experiment yields).
inline LoadedMarginal load_marginal(const std::string& path, bool prefer_counts = true) {
    const json j = read_json(path);
    const i64 n = j.at("dim").get<i64>();
    const auto v = variant_from_name(j.at("variant").get<std::string>());
    require(v.has_value(), errc::bad_format, path + ": unknown variant");
    const auto& mj = j.at("M");
    require(mj.size() == 4, errc::bad_format, path + ": M must have 4 entries");
    const auto maybe = Sl2::maybe(mj[0].get<i64>(), mj[1].get<i64>(), mj[2].get<i64>(), mj[3].get<i64>(), n);
    require(maybe.has_value(), errc::not_sl2, path + ": M is not in SL(2,Z_N)");
    const Sl2 m = *maybe;

    rvec probs(n);
    bool sampled = false;
    if (prefer_counts && j.contains("counts")) {
        const auto& c = j.at("counts");
        require(c.size() == static_cast<size_t>(n), errc::bad_format, path + ": counts length mismatch");
        double total = 0;
        for (i64 i = 0; i < n; ++i) total += c[i].get<double>();
        require(total > 0, errc::invalid_distribution, path + ": empty counts");
        for (i64 i = 0; i < n; ++i) probs(i) = c[i].get<double>() / total;
        sampled = true;
    } else {
        const auto& p = j.at("probs");
        require(p.size() == static_cast<size_t>(n), errc::bad_format, path + ": probs length mismatch");
        for (i64 i = 0; i < n; ++i) probs(i) = p[i].get<double>();
    }
    double total = probs.sum();
    require(std::abs(total - 1.0) < 1e-6, errc::invalid_distribution,
            path + ": probabilities sum to " + std::to_string(total));

    std::string basis = j.value("basis", std::string{});
    return {MarginalRecord{m, std::move(probs), std::move(basis), marginal_line(*v, m)}, *v, sampled};
}

// --------------------------------------------------------------------------
// Process matrices and channels

inline void write_process(const std::string& path, const ProcessMatrix& t) {
    json rows = json::array();
    for (i64 i = 0; i < t.values.rows(); ++i) {
        json row = json::array();
        for (i64 j = 0; j < t.values.cols(); ++j) row.push_back(t.values(i, j));
        rows.push_back(std::move(row));
    }
    write_json(path, json{{"format", 1}, {"dim", t.N}, {"values", std::move(rows)}});
}

// Channel file: an N^2 x N^2 complex superoperator acting on row-major
// vectorized operators.
inline cmat load_channel_matrix(const std::string& path, i64 expected_dim) {
    const json j = read_json(path);
    const i64 n = j.at("dim").get<i64>();
    require(n == expected_dim, errc::dimension_mismatch,
            path + ": channel dim " + std::to_string(n) + " does not match set dim " + std::to_string(expected_dim));
    return matrix_from_json(j, n * n, n * n, path);
}

inline void write_channel_matrix(const std::string& path, const cmat& s, i64 dim) {
    json j{{"format", 1}, {"dim", dim}};
    j.update(matrix_to_json(s));
    write_json(path, j);
}

// --------------------------------------------------------------------------
// Grids

inline void write_wigner_csv(const std::string& path, const WignerGrid& grid) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    require(f != nullptr, errc::bad_format, "cannot write " + path);
    std::fputs("x,z,w\n", f);
    for (i64 x = 0; x < grid.N; ++x)
        for (i64 z = 0; z < grid.N; ++z)
            std::fprintf(f, "%lld,%lld,%.17g\n", static_cast<long long>(x), static_cast<long long>(z),
                         grid.values(x, z));
    std::fclose(f);
}

} // namespace fps::io
