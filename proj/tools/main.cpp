#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetabidiff/bidiff.hpp"
#include "thetabidiff/fay.hpp"
#include "thetabidiff/locus.hpp"
#include "thetabidiff/verify.hpp"

namespace {

using nlohmann::json;
using namespace tb;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_real(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("cannot parse number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("trailing junk in number: '" + s + "'");
    return v;
}

// "re,im;re,im;..." one coordinate per semicolon group.
CVector parse_z(const std::string& s, int g) {
    const auto parts = split(s, ';');
    if (static_cast<int>(parts.size()) != g)
        throw UsageError("--z needs " + std::to_string(g) + " 're,im' groups");
    CVector z(g);
    for (int i = 0; i < g; ++i) {
        const auto ri = split(parts[i], ',');
        if (ri.size() != 2) throw UsageError("--z coordinate must be 're,im'");
        z[i] = Complex{parse_real(ri[0]), parse_real(ri[1])};
    }
    return z;
}

// 2g comma-separated rationals p/q (or integers); first g are a, last g are b.
Characteristic parse_char(const std::string& s, int g) {
    const auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) != 2 * g)
        throw UsageError("--char needs " + std::to_string(2 * g) + " rationals");
    auto rational = [](const std::string& t) -> std::pair<long, long> {
        const auto pq = split(t, '/');
        if (pq.size() == 1) return {std::stol(pq[0]), 1};
        if (pq.size() == 2) return {std::stol(pq[0]), std::stol(pq[1])};
        throw UsageError("bad rational: '" + t + "'");
    };
    // Common denominator via lcm so the exact constructor applies.
    long den = 1;
    std::vector<std::pair<long, long>> vals;
    for (const auto& p : parts) {
        vals.push_back(rational(p));
        den = std::lcm(den, vals.back().second);
    }
    std::vector<long> a_num(g), b_num(g);
    for (int i = 0; i < g; ++i) {
        a_num[i] = vals[i].first * (den / vals[i].second);
        b_num[i] = vals[g + i].first * (den / vals[g + i].second);
    }
    return Characteristic::from_rational(a_num, den, b_num, den);
}

json complex_json(Complex v) {
    return json{{"re", v.real()}, {"im", v.imag()}};
}

json matrix_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"re", re}, {"im", im}};
}

json meta_json(const RunConfig& cfg) {
    return json{{"eps_value", cfg.eps_value},
                {"eps_jet", cfg.eps_jet},
                {"lattice_cap", cfg.lattice_cap},
                {"seed", cfg.seed},
                {"threads", cfg.threads}};
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty())
        std::cout << text;
    else
        atomic_write(out, text);
}

void emit_json(const json& j, const std::string& out) {
    emit(j.dump(2) + "\n", out);
}

struct Ctx {
    std::string config_file;
    std::string tau_file;
    std::string out;
    RunConfig cfg;

    void finalize() {
        if (!config_file.empty()) cfg = load_config(config_file);
        if (const char* env = std::getenv("THETA_BIDIFF_THREADS"))
            cfg.threads = std::max(1, std::atoi(env));
        cfg.validate();
    }
    PeriodMatrix tau() const {
        if (tau_file.empty()) throw UsageError("--tau is required");
        return load_period_matrix(tau_file);
    }
};

void cmd_theta_eval(Ctx& ctx, const std::string& z_str, const std::string& char_str,
                    bool jet) {
    const PeriodMatrix tau = ctx.tau();
    const CVector z = parse_z(z_str, tau.g());
    const double eps = jet ? ctx.cfg.eps_jet : ctx.cfg.eps_value;
    ThetaJet res;
    CVector zarg = z;
    RVector shift = RVector::Zero(tau.g());
    if (!char_str.empty()) {
        const Characteristic c = parse_char(char_str, tau.g());
        res = theta_char_jet(c, z, tau, eps);
        shift = c.a();
        zarg = z + c.b().cast<Complex>();
    } else {
        res = theta_jet(z, tau, eps);
    }
    const TruncationPlan plan =
        detail::plan(tau.g(), tau.lambda_min(), tau.im_inverse(), shift,
                     zarg.imag(), eps, jet ? 2 : 0, ctx.cfg.lattice_cap);
    json j{{"value", complex_json(res.value)},
           {"eps", eps},
           {"radius", plan.radius},
           {"meta", meta_json(ctx.cfg)}};
    if (jet) {
        json grad = json::array();
        for (int i = 0; i < tau.g(); ++i) grad.push_back(complex_json(res.gradient[i]));
        j["gradient"] = grad;
        j["hessian"] = matrix_json(res.hessian);
    }
    emit_json(j, ctx.out);
}

SecondOrderIndex parse_u(const std::string& s, int g) {
    const auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) != g)
        throw UsageError("--u needs " + std::to_string(g) + " entries (0 or 1/2)");
    SecondOrderIndex u;
    u.u = RVector(g);
    for (int i = 0; i < g; ++i) {
        if (parts[i] == "0")
            u.u[i] = 0.0;
        else if (parts[i] == "1/2")
            u.u[i] = 0.5;
        else
            throw UsageError("--u entries must be 0 or 1/2");
    }
    return u;
}

void cmd_sot_eval(Ctx& ctx, const std::string& u_str, const std::string& z_str) {
    const PeriodMatrix tau = ctx.tau();
    const SecondOrderIndex u = parse_u(u_str, tau.g());
    const CVector z = parse_z(z_str, tau.g());
    const Complex v = sot_value(u, z, tau, ctx.cfg.eps_value);
    emit_json(json{{"value", complex_json(v)},
                   {"eps", ctx.cfg.eps_value},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

void cmd_sot_gram(Ctx& ctx, int n) {
    const PeriodMatrix tau = ctx.tau();
    if (tau.g() != 1) throw NotSupported("the gram integral is implemented for g = 1");
    const auto u = second_order_indices(1);
    CMatrix gram(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            gram(i, j) = inner_product_g1(u[i], u[j], tau, n, ctx.cfg.eps_value);
    emit_json(json{{"gram", matrix_json(gram)},
                   {"n", n},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

void cmd_bidiff_matrix(Ctx& ctx, const std::string& which) {
    const PeriodMatrix tau = ctx.tau();
    CMatrix m;
    if (which == "sigma")
        m = sigma_correction(tau, ctx.cfg.eps_jet).entries;
    else if (which == "eta")
        m = eta_correction(tau).entries;
    else
        m = sigma_correction(tau, ctx.cfg.eps_jet).entries -
            eta_correction(tau).entries;
    json j{{"kind", which},
           {"matrix", matrix_json(m)},
           {"max_abs", m.cwiseAbs().maxCoeff()},
           {"frobenius", m.norm()},
           {"meta", meta_json(ctx.cfg)}};
    emit_json(j, ctx.out);
}

void cmd_bidiff_v00(Ctx& ctx) {
    const PeriodMatrix tau = ctx.tau();
    const RVector sv = v00_singular_values(tau, ctx.cfg.eps_jet);
    json svj = json::array();
    for (int i = 0; i < sv.size(); ++i) svj.push_back(sv[i]);
    emit_json(json{{"kernel_dimension", v00_kernel_dimension(tau, ctx.cfg.eps_jet)},
                   {"singular_values", svj},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

void cmd_bidiff_gunning(Ctx& ctx) {
    const PeriodMatrix tau = ctx.tau();
    const int g = tau.g();
    std::ostringstream os;
    os << "# eps_jet=" << format_double(ctx.cfg.eps_jet)
       << " lattice_cap=" << ctx.cfg.lattice_cap << " seed=" << ctx.cfg.seed << "\n";
    os << "a,b,parity,residual\n";
    for (const Characteristic& zeta : odd_characteristics(g)) {
        const Complex c = c_zeta(zeta, tau);
        const CVector grad = theta_char_jet(zeta, CVector::Zero(g), tau,
                                            ctx.cfg.eps_jet)
                                 .gradient;
        const ThetaJet sz = s_zeta_jet(zeta, CVector::Zero(g), tau, ctx.cfg.eps_jet);
        double worst = 0, scale = 0;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                const Complex lhs = 2.0 * grad[i] * grad[j];
                scale = std::max(scale, std::abs(lhs));
                worst = std::max(worst, std::abs(lhs - c * sz.hessian(i, j)));
            }
        auto vec_str = [&](const RVector& v) {
            std::string s;
            for (int i = 0; i < g; ++i) {
                if (i) s += ' ';
                s += format_double(v[i]);
            }
            return s;
        };
        os << vec_str(zeta.a()) << ',' << vec_str(zeta.b()) << ",odd,"
           << format_double(worst / (scale + 1e-30)) << "\n";
    }
    emit(os.str(), ctx.out);
}

std::string locus_row(const LocusSample& s) {
    std::ostringstream os;
    os << format_double(s.x) << ',' << format_double(s.y) << ',';
    if (s.failed) {
        os << ",,,,,," << "eval_failed";
    } else {
        os << format_double(s.w) << ',' << format_double(s.w_x) << ','
           << format_double(s.w_y) << ',' << format_double(s.r1) << ','
           << format_double(s.r2) << ',' << format_double(s.res) << ',';
    }
    os << "\n";
    return os.str();
}

void cmd_locus_scan(Ctx& ctx, const std::string& window, const std::string& grid,
                    const std::string& out_file, bool resume) {
    const auto wparts = split(window, ',');
    const auto gparts = split(grid, ',');
    if (wparts.size() != 4) throw UsageError("--window needs xmin,xmax,ymin,ymax");
    if (gparts.size() != 2) throw UsageError("--grid needs nx,ny");
    const double x_min = parse_real(wparts[0]), x_max = parse_real(wparts[1]);
    const double y_min = parse_real(wparts[2]), y_max = parse_real(wparts[3]);
    const int nx = std::stoi(gparts[0]), ny = std::stoi(gparts[1]);
    if (!(0 < y_min && y_min < y_max) || nx < 2 || ny < 2)
        throw UsageError("scan needs 0 < ymin < ymax and nx, ny >= 2");

    // The CSV doubles as the resume state: finished data rows are kept
    // verbatim and only the remaining grid indices are computed.
    std::vector<std::string> done;
    if (resume && std::filesystem::exists(out_file)) {
        std::ifstream in(out_file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("x,y,", 0) == 0)
                continue;
            done.push_back(line + "\n");
        }
    }
    const int total = nx * ny;
    if (static_cast<int>(done.size()) > total)
        throw UsageError("resume file has more rows than the requested grid");

    std::ostringstream os;
    os << "# window=" << window << " grid=" << grid
       << " eps_value=" << format_double(ctx.cfg.eps_value)
       << " lattice_bound=" << w_lattice_bound(y_min, ctx.cfg.eps_value)
       << " seed=" << ctx.cfg.seed << "\n";
    os << "x,y,w,wx,wy,r1,r2,res,err\n";
    for (const auto& row : done) os << row;

    const int m_bound = w_lattice_bound(y_min, ctx.cfg.eps_value);
    for (int idx = static_cast<int>(done.size()); idx < total; ++idx) {
        const int iy = idx / nx, ix = idx % nx;
        const double y = y_min + (y_max - y_min) * iy / (ny - 1);
        const double x = x_min + (x_max - x_min) * ix / (nx - 1);
        LocusSample s;
        try {
            const WJet j = w_jet_bounded(x, y, m_bound);
            s.x = j.x;
            s.y = j.y;
            s.w = j.w;
            s.w_x = j.w_x;
            s.w_y = j.w_y;
            s.r1 = j.w_x;
            s.r2 = 2.0 * j.y * j.w_y + j.w;
            s.res = std::hypot(s.r1, s.r2) / j.w;
        } catch (const NumericsError&) {
            s.x = x;
            s.y = y;
            s.failed = true;
        }
        os << locus_row(s);
    }
    atomic_write(out_file, os.str());
    std::cout << "wrote " << out_file << " (" << total << " rows, "
              << done.size() << " resumed)\n";
}

void cmd_locus_refine(Ctx& ctx, const std::string& seed_pt) {
    const auto parts = split(seed_pt, ',');
    if (parts.size() != 2) throw UsageError("--seed needs x,y");
    const RefineResult r =
        refine(parse_real(parts[0]), parse_real(parts[1]), ctx.cfg.eps_value);
    emit_json(json{{"x", r.sample.x},
                   {"y", r.sample.y},
                   {"res", r.sample.res},
                   {"iters", r.iterations},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

void cmd_fay_residual(Ctx& ctx, int count) {
    const PeriodMatrix tau = ctx.tau();
    PointGen gen(ctx.cfg.seed);
    double max_res = 0, sum = 0;
    for (int k = 0; k < count; ++k) {
        TrisecantConfig c;
        c.w = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
        c.z1 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
        c.z2 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
        c.a1 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
        c.a2 = gen.complex_in(-0.5, 0.5, -0.35, 0.35);
        const double r = trisecant_sides(c, tau, ctx.cfg.eps_value).residual();
        max_res = std::max(max_res, r);
        sum += r;
    }
    emit_json(json{{"count", count},
                   {"max_residual", max_res},
                   {"mean_residual", sum / count},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

void cmd_fay_periods(Ctx& ctx, const std::string& p_str) {
    const PeriodMatrix tau = ctx.tau();
    const auto parts = split(p_str, ',');
    if (parts.size() != 2) throw UsageError("--p needs re,im");
    const Complex p{parse_real(parts[0]), parse_real(parts[1])};
    const PeriodCheck pc = period_check(tau, p, ctx.cfg.eps_jet);
    emit_json(json{{"a_period", complex_json(pc.a_period)},
                   {"b_period", complex_json(pc.b_period)},
                   {"meta", meta_json(ctx.cfg)}},
              ctx.out);
}

int cmd_verify(Ctx& ctx) {
    const VerifyReport report = verify_all(ctx.cfg);
    emit(report.render(), ctx.out);
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for theta functions, bidifferential "
                 "corrections, and the genus-1 coincidence locus"};
    app.require_subcommand(1);

    Ctx ctx;
    app.add_option("--config", ctx.config_file, "RunConfig JSON file");

    std::string z_str, char_str, u_str, window, grid, seed_pt, p_str;
    std::string scan_out = "scan.csv";
    bool jet = false, resume = false;
    int gram_n = 128, fay_count = 100;
    std::string bidiff_kind;

    auto add_common = [&](CLI::App* sub, bool needs_tau) {
        if (needs_tau)
            sub->add_option("--tau", ctx.tau_file, "period matrix JSON file");
        sub->add_option("--out", ctx.out, "output file (default: stdout)");
    };

    CLI::App* theta = app.add_subcommand("theta", "first-order theta functions");
    CLI::App* theta_eval = theta->add_subcommand("eval", "evaluate theta at z");
    add_common(theta_eval, true);
    theta_eval->add_option("--z", z_str, "point, 're,im' groups joined by ';'")
        ->required();
    theta_eval->add_option("--char", char_str,
                           "characteristic, 2g rationals a...,b...");
    theta_eval->add_flag("--jet", jet, "include gradient and hessian");

    CLI::App* sot = app.add_subcommand("sot", "second-order theta functions");
    CLI::App* sot_eval = sot->add_subcommand("eval", "evaluate theta_u at z");
    add_common(sot_eval, true);
    sot_eval->add_option("--u", u_str, "index, entries 0 or 1/2")->required();
    sot_eval->add_option("--z", z_str, "point")->required();
    CLI::App* sot_gram = sot->add_subcommand("gram", "Gram matrix (g = 1)");
    add_common(sot_gram, true);
    sot_gram->add_option("--n", gram_n, "quadrature order");

    CLI::App* bidiff = app.add_subcommand("bidiff", "correction matrices");
    for (const char* k : {"sigma", "eta", "diff"}) {
        CLI::App* sub = bidiff->add_subcommand(k);
        add_common(sub, true);
        sub->callback([&, k] { bidiff_kind = k; });
    }
    CLI::App* v00 = bidiff->add_subcommand("v00", "kernel dimension + spectrum");
    add_common(v00, true);
    CLI::App* gunning = bidiff->add_subcommand("gunning", "per-characteristic residuals");
    add_common(gunning, true);

    CLI::App* locus = app.add_subcommand("locus", "genus-1 coincidence locus");
    CLI::App* locus_scan = locus->add_subcommand("scan", "grid scan to CSV");
    locus_scan->add_option("--window", window, "xmin,xmax,ymin,ymax")->required();
    locus_scan->add_option("--grid", grid, "nx,ny")->required();
    locus_scan->add_option("--out", scan_out, "CSV output (also the resume state)");
    locus_scan->add_flag("--resume", resume, "keep finished rows, compute the rest");
    CLI::App* locus_refine = locus->add_subcommand("refine", "Newton refinement");
    add_common(locus_refine, false);
    locus_refine->add_option("--seed", seed_pt, "starting point x,y")->required();

    CLI::App* fay = app.add_subcommand("fay", "trisecant and period checks");
    CLI::App* fay_res = fay->add_subcommand("residual", "randomized residuals");
    add_common(fay_res, true);
    fay_res->add_option("--seed", ctx.cfg.seed, "generator seed");
    fay_res->add_option("--count", fay_count, "number of configurations");
    CLI::App* fay_per = fay->add_subcommand("periods", "a/b periods of Omega(p, .)");
    add_common(fay_per, true);
    fay_per->add_option("--p", p_str, "base point re,im")->required();

    CLI::App* verify = app.add_subcommand("verify", "run every property suite");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ctx.finalize();
        if (theta_eval->parsed()) cmd_theta_eval(ctx, z_str, char_str, jet);
        else if (sot_eval->parsed()) cmd_sot_eval(ctx, u_str, z_str);
        else if (sot_gram->parsed()) cmd_sot_gram(ctx, gram_n);
        else if (!bidiff_kind.empty()) cmd_bidiff_matrix(ctx, bidiff_kind);
        else if (v00->parsed()) cmd_bidiff_v00(ctx);
        else if (gunning->parsed()) cmd_bidiff_gunning(ctx);
        else if (locus_scan->parsed())
            cmd_locus_scan(ctx, window, grid, scan_out, resume);
        else if (locus_refine->parsed()) cmd_locus_refine(ctx, seed_pt);
        else if (fay_res->parsed()) cmd_fay_residual(ctx, fay_count);
        else if (fay_per->parsed()) cmd_fay_periods(ctx, p_str);
        else if (verify->parsed()) return cmd_verify(ctx);
        else {
            std::cerr << "missing subcommand\n";
            return 2;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: malformed input file: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
