// Command-line front end for the finite phase-space toolkit: generate
// phase-point operator sets, compute distribution grids, produce or simulate
// marginal measurements, reconstruct states from marginal data, and tabulate
// process matrices.
//
// Exit codes: 0 ok, 2 bad arguments, 3 set invariant violation, 4 input not a
// density matrix, 5 M not in SL(2,Z_N), 6 variant precondition failed (e.g.
// not in L1), 7 incomplete line cover, 8 channel file shape invalid.
//
// FPS_TOLERANCE overrides the default numeric tolerance. With --json-errors,
// stderr carries one machine-parseable JSON object per failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fps/io.hpp"

namespace fs = std::filesystem;
using namespace fps;

namespace {

int map_exit_code(errc c, bool channel_context) {
    switch (c) {
        case errc::invariant_violation:  return 3;
        case errc::not_a_density_matrix:
        case errc::imaginary_residue:    return 4;
        case errc::not_sl2:              return 5;
        case errc::not_in_l1:
        case errc::precondition_nu:      return 6;
        case errc::incomplete_cover:
        case errc::inconsistent_overlap: return 7;
        case errc::dimension_mismatch:   return channel_context ? 8 : 2;
        default:                         return 2;
    }
}

void report_error(const error& e, bool json_errors, int code) {
    if (json_errors) {
        io::json j{{"error", errc_name(e.code())}, {"message", e.what()}, {"exit", code}};
        std::cerr << j.dump() << "\n";
    } else {
        std::cerr << "error: " << e.what() << "\n";
    }
}

Sl2 parse_sl2(const std::string& text, i64 n) {
    std::vector<i64> vals;
    std::string tok;
    for (char ch : text + ",") {
        if (ch == ',') {
            require(!tok.empty(), errc::out_of_range, "empty component in matrix spec '" + text + "'");
            vals.push_back(std::stoll(tok));
            tok.clear();
        } else {
            tok += ch;
        }
    }
    require(vals.size() == 4, errc::out_of_range, "matrix spec must be a,b,c,d");
    auto m = Sl2::maybe(vals[0], vals[1], vals[2], vals[3], n);
    require(m.has_value(), errc::not_sl2, "matrix " + text + " has determinant != 1 mod " + std::to_string(n));
    return *m;
}

Variant parse_variant(const std::string& name) {
    const auto v = variant_from_name(name);
    require(v.has_value(), errc::out_of_range, "unknown variant '" + name + "'");
    return *v;
}

struct GenOpts {
    i64 dim = 0;
    std::string variant, out;
};

int cmd_gen(const GenOpts& o) {
    const double tol = 1e-9;
    const auto set = build_phase_point_set(parse_variant(o.variant), o.dim);
    io::write_set(o.out, set);
    const auto rep = verify_wigner_set(set);
    io::write_json(o.out + ".report.json", io::report_to_json(rep, tol));
    if (!rep.pass(tol)) raise(errc::invariant_violation, "generated set fails verification: " + rep.summary());
    std::cout << "wrote " << o.out << " (" << set.N * set.N << " operators, report: pass)\n";
    return 0;
}

struct WignerOpts {
    std::string state, variant, out;
    bool raw = false;
};

int cmd_wigner(const WignerOpts& o) {
    const cmat rho = io::load_state(o.state, !o.raw);
    const auto set = build_phase_point_set(parse_variant(o.variant), rho.rows());
    const auto grid = wigner(rho, set, !o.raw);
    io::write_wigner_csv(o.out, grid);
    std::cout << "wrote " << o.out << " (sum = " << grid.sum() << ")\n";
    return 0;
}

struct MarginalOpts {
    std::string state, variant, m_spec, out;
    i64 shots = 0;
    std::uint64_t seed = 0;
    bool raw = false;
};

int cmd_marginal(const MarginalOpts& o) {
    const Variant v = parse_variant(o.variant);
    const cmat rho = io::load_state(o.state, !o.raw);
    const i64 n = rho.rows();
    const Sl2 m = parse_sl2(o.m_spec, n);
    const auto set = build_phase_point_set(v, n);

    MarginalRecord rec{m, rvec(), "", marginal_line(v, m)};
    switch (v) {
        case Variant::odd:
            rec = marginal_simple_odd(rho, m, set);
            break;
        case Variant::qubit_w1:
            rec = marginal_qubit_w1(rho, m, set);
            break;
        case Variant::even_nu:
            try {
                rec.probs = marginal_even_general(rho, m, set);
                rec.basis_tag = "even-nu closed form";
            } catch (const error& e) {
                if (e.code() != errc::precondition_nu) throw;
                rec.probs = radon_direct(wigner(rho, set, !o.raw), m);
                rec.basis_tag = "direct";
            }
            break;
    }

    if (o.shots > 0) {
        const auto counts = simulate_counts(rec.probs, o.shots, o.seed);
        io::write_marginal(o.out, rec, v, counts, o.shots, o.seed);
    } else {
        io::write_marginal(o.out, rec, v);
    }
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

struct ReconstructOpts {
    std::string dir, variant, out;
    bool report = false;
};

int cmd_reconstruct(const ReconstructOpts& o) {
    const Variant v = parse_variant(o.variant);
    std::vector<std::string> files;
    require(fs::is_directory(o.dir), errc::out_of_range, o.dir + " is not a directory");
    for (const auto& entry : fs::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    require(!files.empty(), errc::incomplete_cover, "no marginal files in " + o.dir);

    RadonDataset ds;
    bool sampled = false;
    bool first = true;
    for (const auto& f : files) {
        auto loaded = io::load_marginal(f);
        require(loaded.variant == v, errc::out_of_range, f + ": variant does not match --variant");
        if (first) {
            ds = RadonDataset{loaded.record.M.N, v, {}};
            first = false;
        }
        sampled = sampled || loaded.sampled;
        ds.add(std::move(loaded.record));
    }

    const auto set = build_phase_point_set(v, ds.N);
    // overlap consistency: 1e-9 for exact inputs, 1e-6 for sampled ones
    const auto res = reconstruct_state(ds, set, sampled ? 1e-6 : 1e-9);
    io::write_state(o.out, res.rho_physical);

    const double residual = frob_dist(reconstruct_from_wigner(res.grid, set), res.rho_physical);
    if (o.report) {
        io::json plan = io::json::array();
        for (const auto& rec : ds.records) plan.push_back({rec.line.a, rec.line.c});
        io::write_json(o.out + ".report.json",
                       io::json{{"format", 1},
                                {"records", ds.records.size()},
                                {"sampled", sampled},
                                {"residual", residual},
                                {"min_eigenvalue", res.min_eigenvalue},
                                {"imag_residue", res.imag_residue},
                                {"plan", std::move(plan)}});
    }
    std::cout << "wrote " << o.out << " (residual " << residual << ", min eigenvalue " << res.min_eigenvalue
              << ")\n";
    return 0;
}

struct ProcessOpts {
    std::string channel, variant = "odd", out, check;
};

int cmd_process(const ProcessOpts& o) {
    const Variant v = parse_variant(o.variant);
    require(v == Variant::odd, errc::out_of_range, "process tomography is implemented for --variant odd");

    io::json j = io::read_json(o.channel);
    const i64 n = j.at("dim").get<i64>();
    require(n >= 2, errc::bad_format, "channel dim must be >= 2");
    const auto set = build_phase_point_set(v, n);
    cmat super;
    try {
        super = io::matrix_from_json(j, n * n, n * n, o.channel);
    } catch (const error& e) {
        raise(errc::dimension_mismatch, std::string("channel matrix shape invalid: ") + e.what());
    }
    const Channel chan = channel_from_superoperator(super, n);
    const auto t = process_matrix_forward(chan, set);
    io::write_process(o.out, t);
    std::cout << "wrote " << o.out << "\n";

    if (!o.check.empty()) {
        const auto comma = o.check.find(';');
        require(comma != std::string::npos, errc::out_of_range, "--check wants 'a,b,c,d;a,b,c,d'");
        const Sl2 m = parse_sl2(o.check.substr(0, comma), n);
        const Sl2 mp = parse_sl2(o.check.substr(comma + 1), n);
        const double dev = process_radon_check(chan, set, m, mp);
        std::printf("radon check deviation %.3e\n", dev);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite phase-space distribution functions: operator sets, grids, marginals, reconstruction"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "emit machine-parseable error JSON on stderr");

    GenOpts gen;
    auto* cgen = app.add_subcommand("gen", "generate a phase-point operator set file plus verification report");
    cgen->add_option("--dim", gen.dim, "Hilbert space dimension")->required();
    cgen->add_option("--variant", gen.variant, "odd | even-nu | qubit-w1")->required();
    cgen->add_option("--out", gen.out, "output JSON path (sidecar <out>.report.json)")->required();

    WignerOpts wig;
    auto* cwig = app.add_subcommand("wigner", "compute the distribution grid of a state as CSV (x,z,w)");
    cwig->add_option("--state", wig.state, "state JSON file")->required();
    cwig->add_option("--variant", wig.variant, "odd | even-nu | qubit-w1")->required();
    cwig->add_option("--out", wig.out, "output CSV path")->required();
    cwig->add_flag("--raw", wig.raw, "skip the density-matrix check (hermitian inputs)");

    MarginalOpts mar;
    auto* cmar = app.add_subcommand("marginal", "compute one marginal distribution, optionally with sampled counts");
    cmar->add_option("--state", mar.state, "state JSON file")->required();
    cmar->add_option("--variant", mar.variant, "odd | even-nu | qubit-w1")->required();
    cmar->add_option("--M", mar.m_spec, "matrix a,b,c,d in SL(2,Z_N)")->required();
    cmar->add_option("--shots", mar.shots, "simulate this many measurements");
    cmar->add_option("--seed", mar.seed, "RNG seed for --shots (default 0)");
    cmar->add_option("--out", mar.out, "output JSON path")->required();
    cmar->add_flag("--raw", mar.raw, "skip the density-matrix check");

    ReconstructOpts rec;
    auto* crec = app.add_subcommand("reconstruct", "reconstruct a state from a directory of marginal files");
    crec->add_option("--marginals", rec.dir, "directory of marginal JSON files")->required();
    crec->add_option("--variant", rec.variant, "odd | even-nu | qubit-w1")->required();
    crec->add_option("--out", rec.out, "output state JSON path")->required();
    crec->add_flag("--report", rec.report, "write <out>.report.json with diagnostics");

    ProcessOpts proc;
    auto* cproc = app.add_subcommand("process", "tabulate a channel in the phase-point basis");
    cproc->add_option("--channel", proc.channel,
                      "channel JSON: N^2 x N^2 superoperator on row-major vectorized operators")->required();
    cproc->add_option("--variant", proc.variant, "only 'odd' is supported");
    cproc->add_option("--out", proc.out, "output JSON path")->required();
    cproc->add_option("--check", proc.check, "verify the transition identity for 'a,b,c,d;a,b,c,d'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const bool channel_context = cproc->parsed();
    try {
        if (cgen->parsed()) return cmd_gen(gen);
        if (cwig->parsed()) return cmd_wigner(wig);
        if (cmar->parsed()) return cmd_marginal(mar);
        if (crec->parsed()) return cmd_reconstruct(rec);
        if (cproc->parsed()) return cmd_process(proc);
    } catch (const error& e) {
        const int code = map_exit_code(e.code(), channel_context);
        report_error(e, json_errors, code);
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
