#include "hypoindex/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypoindex/chern_pairing.hpp"
#include "hypoindex/contact_data.hpp"
#include "hypoindex/error.hpp"
#include "hypoindex/fock_rep.hpp"
#include "hypoindex/frame_calculus.hpp"
#include "hypoindex/nilmanifold_oracle.hpp"
#include "hypoindex/winding_index.hpp"

namespace hypoindex::cli {

namespace {

using nlohmann::ordered_json;

struct Failure : std::runtime_error {
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure(kFileNotFound, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    const std::string re_text = text.substr(0, comma);
    const std::string im_text = comma == std::string::npos ? "0" : text.substr(comma + 1);
    auto number = [&text](const std::string& s) {
        double v = 0.0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
            throw Failure(kUsage, "expected RE,IM but got '" + text + "'");
        }
        return v;
    };
    return {number(re_text), number(im_text)};
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

/// Accumulates everything a command produces so that stdout and the report
/// are assembled in one ordered pass.
struct Run {
    std::string command;
    std::vector<std::string> inputs;
    ordered_json parameters = ordered_json::object();
    ordered_json results = ordered_json::object();
    std::vector<std::string> warnings;
    std::ostringstream text;

    void line(const std::string& s) { text << s << '\n'; }
};

ContactInstance load_validated(Run& run, const std::string& path) {
    run.inputs.push_back(read_file(path));
    ContactInstance inst;
    try {
        inst = parse_instance(run.inputs.back());
    } catch (const ParseError& e) {
        throw Failure(kValidationFailed, path + ": " + e.what());
    }
    const ValidationReport report = validate_instance(inst);
    if (!report.ok) {
        std::string msg = path + ": instance failed validation";
        for (const auto& v : report.violations) {
            msg += "\n  " + (v.loop.empty() ? std::string("<instance>") : v.loop) +
                   (v.sample_index >= 0 ? "[" + std::to_string(v.sample_index) + "]" : std::string()) + " " + v.rule +
                   ": " + v.message;
        }
        throw Failure(kValidationFailed, msg);
    }
    run.parameters["clearance"] = inst.clearance;
    return inst;
}

ordered_json windings_json(const WindingTable& table) {
    ordered_json w = ordered_json::object();
    for (const auto& [k, n] : table.entries) w[std::to_string(k)] = n;
    return w;
}

void cmd_validate(Run& run, const std::string& path) {
    run.inputs.push_back(read_file(path));
    ContactInstance inst;
    try {
        inst = parse_instance(run.inputs.back());
    } catch (const ParseError& e) {
        throw Failure(kValidationFailed, path + ": " + e.what());
    }
    const ValidationReport report = validate_instance(inst);
    ordered_json violations = ordered_json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"loop", v.loop}, {"sample", v.sample_index}, {"rule", v.rule}, {"message", v.message}});
        run.line("violation loop=" + v.loop + " sample=" + std::to_string(v.sample_index) + " rule=" + v.rule + ": " +
                 v.message);
    }
    run.results["ok"] = report.ok;
    run.results["max_abs_gamma"] = report.max_abs_gamma;
    run.results["relevant_odds"] = report.relevant_odds;
    run.results["violations"] = std::move(violations);
    run.line(std::string("ok=") + (report.ok ? "true" : "false"));
    if (!report.ok) throw Failure(kValidationFailed, path + ": instance failed validation");
}

void cmd_index(Run& run, const std::string& path) {
    const ContactInstance inst = load_validated(run, path);
    const WindingTable table = fredholm_index(inst);
    run.results["index"] = table.index;
    run.results["windings"] = windings_json(table);
    run.line("index=" + std::to_string(table.index));
}

ordered_json chern_json(const CohomologicalIndexReport& r) {
    ordered_json per_q = ordered_json::array();
    for (const auto& c : r.per_q_contributions) per_q.push_back({{"q", c.q}, {"value", c.value}});
    return {{"per_q_contributions", std::move(per_q)},
            {"total_real", r.total_real},
            {"total_rounded", r.total_rounded},
            {"agreement", r.agreement}};
}

void cmd_chern(Run& run, const std::string& path) {
    const ContactInstance inst = load_validated(run, path);
    const CohomologicalIndexReport report = chern_index(inst);
    run.results = chern_json(report);
    run.results["index"] = report.total_rounded;
    run.line("index=" + std::to_string(report.total_rounded) + " agreement=" + (report.agreement ? "true" : "false"));
}

void cmd_crosscheck(Run& run, const std::string& path) {
    const ContactInstance inst = load_validated(run, path);
    const WindingTable table = fredholm_index(inst);
    const CohomologicalIndexReport chern = chern_index(inst);
    const bool agree = table.index == chern.total_rounded;
    run.results["winding_index"] = {{"index", table.index}, {"windings", windings_json(table)}};
    run.results["chern_index"] = chern_json(chern);
    run.results["agreement"] = agree;
    run.line("winding_index=" + std::to_string(table.index) + " chern_index=" + std::to_string(chern.total_rounded) +
             " agreement=" + (agree ? "true" : "false"));
    if (!agree) throw Failure(kNumericError, "index routes disagree");
}

void cmd_rockland(Run& run, const std::string& gamma_text) {
    const Complex gamma = parse_complex(gamma_text);
    run.parameters["gamma"] = complex_json(gamma);
    const bool ok = is_rockland(gamma);
    run.results["rockland"] = ok;
    run.line(std::string("rockland=") + (ok ? "true" : "false"));
}

void cmd_fock(Run& run, const std::string& gamma_text, double t, int n, bool opposite) {
    const Complex gamma = parse_complex(gamma_text);
    run.parameters["gamma"] = complex_json(gamma);
    run.parameters["t"] = t;
    run.parameters["n"] = n;
    run.parameters["opposite"] = opposite;
    const FockTruncation m = model_rep_matrix({gamma, opposite}, t, n);
    ordered_json diag = ordered_json::array();
    run.line("q,re,im");
    for (int q = 0; q + 2 < n; ++q) {
        const Complex d = m.matrix(q, q);
        diag.push_back(complex_json(d));
        run.line(std::to_string(q) + "," + fmt(d.real()) + "," + fmt(d.imag()));
    }
    run.results["interior_diagonal"] = std::move(diag);
}

struct OracleResult {
    bool fredholm = false;
    long long index = 0;
    KernelDimensions dims;
    std::vector<ZeroModeCount> growth;
};

OracleResult run_oracle(Complex gamma, const Truncation& trunc) {
    OracleResult r;
    const AnalyticIndex ai = analytic_index(gamma, trunc);
    if (const auto* index = std::get_if<long long>(&ai)) {
        r.fredholm = true;
        r.index = *index;
        r.dims = kernel_dimensions(decompose(gamma, trunc));
    } else {
        const auto& nf = std::get<NotFredholm>(ai);
        r.dims = nf.truncated;
        r.growth = nf.growth;
    }
    return r;
}

void cmd_oracle(Run& run, const std::string& gamma_text, const std::string& sweep, const Truncation& trunc) {
    run.parameters["n_max"] = trunc.n_max;
    run.parameters["q_max"] = trunc.q_max;
    run.parameters["lattice_max"] = trunc.lattice_max;
    if (!sweep.empty()) {
        run.inputs.push_back(read_file(sweep));
        std::istringstream lines(run.inputs.back());
        std::string line;
        ordered_json rows = ordered_json::array();
        run.line("gamma_re,gamma_im,verdict,dim_ker,dim_coker");
        while (std::getline(lines, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                       line.end());
            if (line.empty()) continue;
            const Complex gamma = parse_complex(line);
            const OracleResult r = run_oracle(gamma, trunc);
            const std::string verdict = r.fredholm ? "index=" + std::to_string(r.index) : "not-fredholm";
            run.line(fmt(gamma.real()) + "," + fmt(gamma.imag()) + "," + verdict + "," + std::to_string(r.dims.dim_ker) +
                     "," + std::to_string(r.dims.dim_coker));
            rows.push_back({{"gamma", complex_json(gamma)},
                            {"verdict", verdict},
                            {"dim_ker", r.dims.dim_ker},
                            {"dim_coker", r.dims.dim_coker}});
        }
        run.results["sweep"] = std::move(rows);
        return;
    }
    if (gamma_text.empty()) throw Failure(kUsage, "oracle: --gamma or --sweep is required");
    const Complex gamma = parse_complex(gamma_text);
    run.parameters["gamma"] = complex_json(gamma);
    const OracleResult r = run_oracle(gamma, trunc);
    run.results["dim_ker"] = r.dims.dim_ker;
    run.results["dim_coker"] = r.dims.dim_coker;
    if (r.fredholm) {
        run.results["index"] = r.index;
        run.line("index=" + std::to_string(r.index));
        return;
    }
    run.results["index"] = nullptr;
    ordered_json growth = ordered_json::array();
    run.line("not-fredholm");
    run.line("n,zero_modes");
    for (const auto& g : r.growth) {
        growth.push_back({{"n", g.n}, {"zero_modes", g.zero_modes}});
        run.line(std::to_string(g.n) + "," + std::to_string(g.zero_modes));
    }
    run.results["zero_mode_growth"] = std::move(growth);
}

struct FramesOptions {
    std::string x_field;
    std::string y_field;
    std::string gamma = "0";
    std::string theta = "x*y";
    int grid = 3;
    double h = kDefaultStep;
    double span_tol = 1e-8;
};

void cmd_frames(Run& run, const FramesOptions& o) {
    run.parameters["x_field"] = o.x_field;
    run.parameters["y_field"] = o.y_field;
    run.parameters["gamma"] = o.gamma;
    run.parameters["theta"] = o.theta;
    run.parameters["grid"] = o.grid;
    run.parameters["h"] = o.h;
    run.parameters["span_tol"] = o.span_tol;

    LocalPresentation pres;
    RotationField rot;
    try {
        pres.x = VectorFieldExpr::parse(o.x_field);
        pres.y = VectorFieldExpr::parse(o.y_field);
        pres.gamma.re = parse_field(o.gamma);
        rot.theta = parse_field(o.theta);
    } catch (const ExpressionError& e) {
        throw Failure(kValidationFailed, std::string("frames: ") + e.what());
    }

    const auto points = chart_grid(o.grid);
    double min_det = std::numeric_limits<double>::infinity();
    for (const auto& p : points) min_det = std::min(min_det, std::abs(frame_determinant(pres.x, pres.y, p, o.h)));
    const bool spans = bracket_span_check(pres.x, pres.y, points, o.span_tol, o.h);
    run.results["span"] = spans;
    run.results["min_abs_det"] = min_det;
    run.line(std::string("span=") + (spans ? "true" : "false") + " min_abs_det=" + fmt(min_det));
    if (!spans) {
        run.warnings.push_back("frame does not span at some grid point; gamma invariance not checked");
        return;
    }
    double worst = 0.0;
    double worst_second = 0.0;
    for (const auto& p : points) {
        const RotatedCoefficients r = rotate_presentation(pres, rot, p, o.h);
        worst = std::max(worst, std::abs(r.gamma - pres.gamma(p)));
        worst_second = std::max(worst_second, r.second_order_residual);
    }
    run.results["gamma_invariance_max_residual"] = worst;
    run.results["second_order_max_residual"] = worst_second;
    run.line("gamma_invariance_max_residual=" + fmt(worst));
    run.line("second_order_max_residual=" + fmt(worst_second));
}

void write_report(const std::string& path, const Run& run, int code, const std::string& error) {
    ordered_json report = ordered_json::object();
    report["command"] = run.command;
    report["inputs_digest"] = digest(run.inputs);
    report["parameters"] = run.parameters;
    for (const auto& [key, value] : run.results.items()) report[key] = value;
    report["warnings"] = run.warnings;
    if (!error.empty()) report["error"] = error;
    report["exit_code"] = code;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure(kFileNotFound, "cannot write report '" + path + "'");
    out << report.dump(2) << '\n';
}

}  // namespace

std::string digest(std::span<const std::string> contents) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    for (const auto& c : contents) {
        const std::string length = std::to_string(c.size()) + ":";
        EVP_DigestUpdate(ctx, length.data(), length.size());
        EVP_DigestUpdate(ctx, c.data(), c.size());
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex += kHex[md[i] >> 4];
        hex += kHex[md[i] & 0xF];
    }
    return hex;
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index of second-order hypoelliptic operators on contact 3-manifolds", "hypoindex"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string report_path;
    bool quiet = false;
    app.add_option("--report", report_path, "Write a JSON report to PATH");
    app.add_flag("--quiet", quiet, "Suppress standard output");

    std::string instance;
    auto add_instance_command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--instance", instance, "Instance JSON file")->required();
        return sub;
    };
    auto* validate = add_instance_command("validate", "Check an instance against all admission rules");
    auto* index = add_instance_command("index", "Index as a sum of odd-integer winding numbers");
    auto* chern = add_instance_command("chern", "Index from the Chern character pairing");
    auto* crosscheck = add_instance_command("crosscheck", "Run both index routes and compare");

    std::string gamma;
    auto* rockland = app.add_subcommand("rockland", "Rockland test for a constant gamma");
    rockland->add_option("--gamma", gamma, "RE,IM")->required();

    double t = 1.0;
    int n = 64;
    bool opposite = false;
    auto* fock = app.add_subcommand("fock-spectrum", "Interior diagonal of the truncated model operator");
    fock->add_option("--gamma", gamma, "RE,IM")->required();
    fock->add_option("--t", t, "Representation parameter (> 0)")->capture_default_str();
    fock->add_option("--n", n, "Basis size")->capture_default_str();
    fock->add_flag("--opposite", opposite, "Use the opposite operator");

    Truncation trunc;
    std::string sweep;
    auto* oracle = app.add_subcommand("oracle", "Analytic index on the Heisenberg nilmanifold");
    oracle->add_option("--gamma", gamma, "RE,IM");
    oracle->add_option("--n-max", trunc.n_max)->capture_default_str();
    oracle->add_option("--q-max", trunc.q_max)->capture_default_str();
    oracle->add_option("--lattice-max", trunc.lattice_max)->capture_default_str();
    oracle->add_option("--sweep", sweep, "File with one RE,IM per line");

    FramesOptions frames_opts;
    auto* frames = app.add_subcommand("frames", "Local frame checks");
    frames->require_subcommand(1);
    auto* check = frames->add_subcommand("check", "Bracket span and gamma invariance on a grid");
    check->add_option("--x-field", frames_opts.x_field, "X as 'a, b, c'")->required();
    check->add_option("--y-field", frames_opts.y_field, "Y as 'a, b, c'")->required();
    check->add_option("--gamma", frames_opts.gamma, "Real Z-coefficient expression")->capture_default_str();
    check->add_option("--theta", frames_opts.theta, "Rotation angle expression")->capture_default_str();
    check->add_option("--grid", frames_opts.grid, "Points per axis")->capture_default_str();
    check->add_option("--step", frames_opts.h, "Finite-difference step")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    Run run;
    run.command = app.get_subcommands().front()->get_name();
    int code = kOk;
    std::string error;
    try {
        if (validate->parsed()) cmd_validate(run, instance);
        if (index->parsed()) cmd_index(run, instance);
        if (chern->parsed()) cmd_chern(run, instance);
        if (crosscheck->parsed()) cmd_crosscheck(run, instance);
        if (rockland->parsed()) cmd_rockland(run, gamma);
        if (fock->parsed()) cmd_fock(run, gamma, t, n, opposite);
        if (oracle->parsed()) cmd_oracle(run, gamma, sweep, trunc);
        if (check->parsed()) {
            run.command = "frames check";
            cmd_frames(run, frames_opts);
        }
    } catch (const Failure& e) {
        code = e.code;
        error = e.what();
    } catch (const DomainError& e) {
        code = kUsage;
        error = e.what();
    } catch (const NumericError& e) {
        code = kNumericError;
        error = e.what();
    }

    if (!quiet) out << run.text.str();
    for (const auto& w : run.warnings) err << "warning: " << w << '\n';
    if (!error.empty()) err << "error: " << error << '\n';
    if (!report_path.empty()) {
        try {
            write_report(report_path, run, code, error);
        } catch (const Failure& e) {
            err << "error: " << e.what() << '\n';
            return e.code;
        }
    }
    return code;
}

}  // namespace hypoindex::cli
