#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "thetabidiff/siegel.hpp"

namespace tb {

struct RunConfig {
    double eps_value = kConfigDefaultEpsValue;
    double eps_jet = kConfigDefaultEpsJet;
    int lattice_cap = 200;
    int threads = 1;
    std::uint64_t seed = 20240801;
    std::string output_format = "json";  // csv | json

    static constexpr double kConfigDefaultEpsValue = 1e-13;
    static constexpr double kConfigDefaultEpsJet = 1e-11;

    // eps_value <= 1e-8, lattice_cap >= 8.
    void validate() const;
};

RunConfig load_config(const std::filesystem::path& file);

// {"g": n, "re": [[...]], "im": [[...]]}
PeriodMatrix load_period_matrix(const std::filesystem::path& file);

// {"a_num": [...], "a_den": d, "b_num": [...], "b_den": d}
Characteristic load_characteristic(const std::filesystem::path& file);

// Round-trip float formatting (shortest representation that parses back
// to the same double), '.' decimal separator.
std::string format_double(double v);
std::string format_complex(Complex v);

// Write via temp file + rename so readers never see partial output.
void atomic_write(const std::filesystem::path& file, const std::string& content);

// Named, seeded generator for all randomized test points; the seed fully
// determines every draw.
class PointGen {
public:
    explicit PointGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    Complex complex_in(double re_lo, double re_hi, double im_lo, double im_hi);
    // Random point of the Siegel upper half-space: symmetric Re in
    // [-0.5, 0.5], Im = A^t A + margin * I with A random.
    PeriodMatrix random_tau(int g);
    CVector random_z(int g, double box = 1.0);

private:
    std::mt19937_64 rng_;
};

} // namespace tb
