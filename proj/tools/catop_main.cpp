// catop: solve T Y^2 - Y + I = 0 for dense complex matrices, reproduce the
// solver benchmark table, emit spectrum-boundary curves, and run the
// randomized verification suites. Batch tool; everything is driven by flags
// and every run drops a manifest next to its outputs.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catop/catalan.hpp"
#include "catop/cmatrix.hpp"
#include "catop/errors.hpp"
#include "catop/operator_calculus.hpp"
#include "catop/qme.hpp"
#include "catop/seq_algebra.hpp"
#include "catop/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// exit codes: 0 ok, 1 verification failure, 2 usage, 3 i/o, 4 non-convergence
enum ExitCode { kOk = 0, kVerifyFail = 1, kUsage = 2, kIo = 3, kNoConverge = 4 };

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw catop::Error("cannot write " + path);
    out << body;
}

void write_manifest(const std::string& dir, const std::string& command,
                    const nlohmann::ordered_json& flags, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, std::uint64_t seed) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["flags"] = flags;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["seed"] = seed;
    m["version"] = kVersion;
    write_text_file(dir + "/manifest.json", m.dump(2) + "\n");
}

catop::SolverConfig parse_method(const std::string& method, const std::string& form,
                                 const std::string& assembly, const std::string& precision) {
    catop::SolverConfig cfg;
    if (method == "newton") {
        cfg.method = catop::QmeMethod::Newton;
    } else if (method.rfind("catalan:", 0) == 0) {
        cfg.method = catop::QmeMethod::Catalan;
        int k = 0;
        try {
            k = std::stoi(method.substr(8));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--method", "catalan:<k> needs an integer k");
        }
        if (k < 1) throw CLI::ValidationError("--method", "catalan:<k> requires k >= 1");
        cfg.catalan_k = static_cast<unsigned>(k);
    } else if (method == "catalan4") {
        cfg.method = catop::QmeMethod::Catalan;
        cfg.catalan_k = 2;  // corrections H_0..H_2: the fourth-order truncation
    } else {
        throw CLI::ValidationError("--method", "expected newton, catalan:<k>, series or quadrature");
    }
    if (form == "paper") cfg.form = catop::SylvesterForm::Paper;
    else if (form == "derived") cfg.form = catop::SylvesterForm::Derived;
    else throw CLI::ValidationError("--form", "expected paper or derived");
    if (assembly == "half-last") cfg.assembly = catop::CatalanAssembly::HalfLast;
    else if (assembly == "sum") cfg.assembly = catop::CatalanAssembly::SumAll;
    else throw CLI::ValidationError("--assembly", "expected half-last or sum");
    if (precision == "double") {
        cfg.precision_digits = 0;
    } else if (precision.rfind("extended:", 0) == 0) {
        int d = 0;
        try {
            d = std::stoi(precision.substr(9));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--precision", "extended:<digits> needs an integer");
        }
        if (d < 30 || d > 200)
            throw CLI::ValidationError("--precision", "extended digits must be in [30, 200]");
        cfg.precision_digits = static_cast<unsigned>(d);
    } else {
        throw CLI::ValidationError("--precision", "expected double or extended:<digits>");
    }
    return cfg;
}

int cmd_table1(int n, const std::string& precision, const std::string& methods,
               const std::string& out_dir, bool timing) {
    std::filesystem::create_directories(out_dir);
    catop::CMatrix T = catop::qbd_example(static_cast<std::size_t>(n));

    bool run_newton = methods.find("newton") != std::string::npos;
    bool run_catalan = methods.find("catalan4") != std::string::npos;
    if (!run_newton && !run_catalan)
        throw CLI::ValidationError("--methods", "expected a subset of newton,catalan4");

    std::vector<std::string> outputs;
    catop::IterationTrace ntr, ctr;
    if (run_newton) {
        auto cfg = parse_method("newton", "paper", "half-last", precision);
        ntr = catop::solve_qme(T, T, cfg);
        write_text_file(out_dir + "/newton_trace.json", ntr.to_json(timing) + "\n");
        outputs.push_back("newton_trace.json");
    }
    if (run_catalan) {
        auto cfg = parse_method("catalan4", "paper", "half-last", precision);
        ctr = catop::solve_qme(T, T, cfg);
        write_text_file(out_dir + "/catalan4_trace.json", ctr.to_json(timing) + "\n");
        outputs.push_back("catalan4_trace.json");
    }

    std::string csv = "k,newton_res,catalan4_res\n";
    std::size_t rows = std::max(ntr.steps.size(), ctr.steps.size());
    for (std::size_t i = 0; i < rows; ++i) {
        csv += std::to_string(i + 1) + ",";
        csv += i < ntr.steps.size() ? fmt17(ntr.steps[i].res) : "";
        csv += ",";
        csv += i < ctr.steps.size() ? fmt17(ctr.steps[i].res) : "";
        csv += "\n";
    }
    write_text_file(out_dir + "/table1.csv", csv);
    outputs.push_back("table1.csv");

    nlohmann::ordered_json flags;
    flags["n"] = n;
    flags["precision"] = precision;
    flags["methods"] = methods;
    flags["timing"] = timing;
    write_manifest(out_dir, "table1", flags, {}, outputs, 0);

    bool converged = (!run_newton || ntr.converged) && (!run_catalan || ctr.converged);
    if (!converged) {
        std::cerr << "table1: a method did not converge\n";
        return kNoConverge;
    }
    std::cout << "table1: wrote " << out_dir << "/table1.csv\n";
    return kOk;
}

int cmd_solve(const std::string& matrix_path, const std::string& y0_path,
              const std::string& method, const std::string& form, const std::string& assembly,
              const std::string& precision, double tol, int max_iters,
              const std::string& out_dir, bool timing) {
    catop::CMatrix T;
    try {
        T = catop::read_matrix_file(matrix_path);
    } catch (const catop::ParseError&) {
        throw;  // malformed content: parse error, reported as i/o trouble
    }
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> outputs;
    nlohmann::ordered_json flags;
    flags["matrix"] = matrix_path;
    flags["method"] = method;
    flags["tol"] = tol;

    if (method == "series" || method == "quadrature") {
        double direct_tol = tol > 0.0 ? tol : 1e-12;
        catop::CMatrix Y = method == "series"
                               ? catop::catalan_of_matrix_series(T, direct_tol)
                               : catop::catalan_of_matrix_quadrature(T, direct_tol);
        catop::write_matrix_file(out_dir + "/solution.txt", Y);
        outputs.push_back("solution.txt");
        nlohmann::ordered_json info;
        info["method"] = method;
        info["n"] = T.rows();
        info["residual"] = catop::quadratic_residual(T, Y);
        write_text_file(out_dir + "/info.json", info.dump(2) + "\n");
        outputs.push_back("info.json");
        write_manifest(out_dir, "solve", flags, {matrix_path}, outputs, 0);
        std::cout << "solve: wrote " << out_dir << "/solution.txt\n";
        return kOk;
    }

    catop::SolverConfig cfg = parse_method(method, form, assembly, precision);
    if (tol > 0) cfg.res_tol = tol;
    cfg.max_iters = static_cast<unsigned>(max_iters);
    catop::CMatrix Y0 = y0_path.empty() ? T : catop::read_matrix_file(y0_path);
    flags["form"] = form;
    flags["assembly"] = assembly;
    flags["precision"] = precision;
    flags["y0"] = y0_path.empty() ? "(matrix)" : y0_path;

    catop::IterationTrace tr = catop::solve_qme(T, Y0, cfg);
    catop::write_matrix_file(out_dir + "/solution.txt", tr.final_Y);
    write_text_file(out_dir + "/trace.json", tr.to_json(timing) + "\n");
    outputs.push_back("solution.txt");
    outputs.push_back("trace.json");
    std::vector<std::string> inputs{matrix_path};
    if (!y0_path.empty()) inputs.push_back(y0_path);
    write_manifest(out_dir, "solve", flags, inputs, outputs, 0);

    if (!tr.converged) {
        std::cerr << "solve: did not reach the residual tolerance\n";
        return kNoConverge;
    }
    std::cout << "solve: wrote " << out_dir << "/solution.txt\n";
    return kOk;
}

int cmd_boundary(int samples, const std::string& curves, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string csv = "theta,re,im,curve\n";
    bool want_sigma = curves.find("sigma") != std::string::npos;
    bool want_omega = curves.find("omega") != std::string::npos;
    if (!want_sigma && !want_omega)
        throw CLI::ValidationError("--curves", "expected a subset of sigma,omega");
    if (want_sigma) {
        for (auto& b : catop::sigma_boundary_samples(static_cast<std::size_t>(samples))) {
            csv += fmt17(b.theta) + "," + fmt17(b.point.real()) + "," + fmt17(b.point.imag()) +
                   ",sigma_c\n";
        }
    }
    if (want_omega) {
        for (auto& b : catop::omega_boundary_samples(static_cast<std::size_t>(samples))) {
            csv += fmt17(b.theta) + "," + fmt17(b.point.real()) + "," + fmt17(b.point.imag()) +
                   ",omega\n";
        }
    }
    write_text_file(out_dir + "/boundary.csv", csv);
    nlohmann::ordered_json flags;
    flags["samples"] = samples;
    flags["curves"] = curves;
    write_manifest(out_dir, "boundary", flags, {}, {"boundary.csv"}, 0);
    std::cout << "boundary: wrote " << out_dir << "/boundary.csv\n";
    return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    auto results = catop::verify_suite(suite, seed);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail << "]\n";
        if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "verify: all properties hold\n"
                              : "verify: " + std::to_string(failed) + " properties failed\n");
    return failed == 0 ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Catalan generating functions of matrices: quadratic solvers and identity checks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* table1 = app.add_subcommand("table1", "residual benchmark on the diagonal example");
    int t1_n = 100;
    std::string t1_precision = "double";
    std::string t1_methods = "newton,catalan4";
    std::string t1_out = ".";
    bool t1_timing = false;
    table1->add_option("--n", t1_n, "matrix dimension (>= 10)")->check(CLI::Range(10, 512));
    table1->add_option("--precision", t1_precision, "double | extended:<digits>");
    table1->add_option("--methods", t1_methods, "comma list of newton,catalan4");
    table1->add_option("--out", t1_out, "output directory");
    table1->add_flag("--timing", t1_timing, "record wall seconds in traces");

    auto* solve = app.add_subcommand("solve", "solve T Y^2 - Y + I = 0 for a matrix file");
    std::string s_matrix, s_y0, s_out = ".";
    std::string s_method = "newton", s_form = "paper", s_assembly = "half-last",
                s_precision = "double";
    double s_tol = 0.0;
    int s_max_iters = 50;
    bool s_timing = false;
    solve->add_option("--matrix", s_matrix, "input matrix file")->required();
    solve->add_option("--y0", s_y0, "starting matrix file (default: the input)");
    solve->add_option("--method", s_method, "newton | catalan:<k> | series | quadrature");
    solve->add_option("--form", s_form, "paper | derived");
    solve->add_option("--assembly", s_assembly, "half-last | sum");
    solve->add_option("--precision", s_precision, "double | extended:<digits>");
    solve->add_option("--tol", s_tol, "residual tolerance (0 = mode default)");
    solve->add_option("--max-iters", s_max_iters, "iteration cap")->check(CLI::Range(1, 10000));
    solve->add_option("--out", s_out, "output directory");
    solve->add_flag("--timing", s_timing, "record wall seconds in traces");

    auto* boundary = app.add_subcommand("boundary", "emit spectrum/region boundary curves as CSV");
    int b_samples = 2048;
    std::string b_curves = "sigma,omega", b_out = ".";
    boundary->add_option("--samples", b_samples, "points per curve")->check(CLI::Range(1, 200000));
    boundary->add_option("--curves", b_curves, "comma list of sigma,omega");
    boundary->add_option("--out", b_out, "output directory");

    auto* verify = app.add_subcommand("verify", "run randomized identity suites");
    std::string v_suite = "all";
    std::uint64_t v_seed = 12345;
    verify->add_option("--suite", v_suite, "all | scalar | sequence | operator | solver");
    verify->add_option("--seed", v_seed, "seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (table1->parsed())
            return cmd_table1(t1_n, t1_precision, t1_methods, t1_out, t1_timing);
        if (solve->parsed())
            return cmd_solve(s_matrix, s_y0, s_method, s_form, s_assembly, s_precision, s_tol,
                             s_max_iters, s_out, s_timing);
        if (boundary->parsed()) return cmd_boundary(b_samples, b_curves, b_out);
        if (verify->parsed()) return cmd_verify(v_suite, v_seed);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const catop::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kIo;
    } catch (const catop::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNoConverge;
    } catch (const catop::IllPosedError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNoConverge;
    } catch (const catop::SpectrumError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNoConverge;
    } catch (const catop::IntegrationError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNoConverge;
    } catch (const catop::SizeError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const catop::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const catop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}
