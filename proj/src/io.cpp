#include "thetabidiff/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace tb {

using nlohmann::json;

void RunConfig::validate() const {
    if (!(eps_value <= 1e-8 && eps_value > 0))
        throw NotSupported("eps_value must lie in (0, 1e-8]");
    if (lattice_cap < 8) throw NotSupported("lattice_cap must be >= 8");
    if (threads < 1) throw NotSupported("threads must be >= 1");
    if (output_format != "csv" && output_format != "json")
        throw NotSupported("output_format must be csv or json");
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw NotSupported("cannot open config file: " + file.string());
    json j = json::parse(in);
    RunConfig cfg;
    if (j.contains("eps_value")) cfg.eps_value = j["eps_value"].get<double>();
    if (j.contains("eps_jet")) cfg.eps_jet = j["eps_jet"].get<double>();
    if (j.contains("lattice_cap")) cfg.lattice_cap = j["lattice_cap"].get<int>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_format"))
        cfg.output_format = j["output_format"].get<std::string>();
    cfg.validate();
    return cfg;
}

PeriodMatrix load_period_matrix(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw NotSupported("cannot open period matrix file: " + file.string());
    json j = json::parse(in);
    const int g = j.at("g").get<int>();
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("im").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != g || static_cast<int>(im.size()) != g)
        throw NotSupported("re/im dimensions do not match g");
    CMatrix m(g, g);
    for (int i = 0; i < g; ++i) {
        if (static_cast<int>(re[i].size()) != g || static_cast<int>(im[i].size()) != g)
            throw NotSupported("re/im rows must have length g");
        for (int k = 0; k < g; ++k) m(i, k) = Complex{re[i][k], im[i][k]};
    }
    return validate_period_matrix(m);
}

Characteristic load_characteristic(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw NotSupported("cannot open characteristic file: " + file.string());
    json j = json::parse(in);
    return Characteristic::from_rational(
        j.at("a_num").get<std::vector<long>>(), j.at("a_den").get<long>(),
        j.at("b_num").get<std::vector<long>>(), j.at("b_den").get<long>());
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_complex(Complex v) {
    return format_double(v.real()) + (v.imag() < 0 ? "-" : "+") +
           format_double(std::abs(v.imag())) + "i";
}

void atomic_write(const std::filesystem::path& file, const std::string& content) {
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NotSupported("cannot write: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, file);
}

double PointGen::uniform(double lo, double hi) {
    // Fixed mapping from raw 64-bit draws; identical across platforms.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Complex PointGen::complex_in(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return Complex{re, im};
}

PeriodMatrix PointGen::random_tau(int g) {
    RMatrix re(g, g), a(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            re(i, j) = uniform(-0.5, 0.5);
            a(i, j) = uniform(-0.7, 0.7);
        }
    const RMatrix re_sym = 0.5 * (re + re.transpose());
    const RMatrix im = a.transpose() * a + 0.6 * RMatrix::Identity(g, g);
    CMatrix tau(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) tau(i, j) = Complex{re_sym(i, j), im(i, j)};
    return PeriodMatrix(tau);
}

CVector PointGen::random_z(int g, double box) {
    CVector z(g);
    for (int i = 0; i < g; ++i) z[i] = complex_in(-box, box, -box, box);
    return z;
}

} // namespace tb
