#ifndef HYBO_BENCH_HPP
#define HYBO_BENCH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hybo/space.hpp"

namespace hybo {

/// A point in original units: discrete variables carry their level values
/// (not category indices), continuous variables their raw coordinates.
struct RawPoint {
    std::vector<double> discrete;
    std::vector<double> continuous;
};

/// A registered objective. All benchmarks are minimization problems.
struct BenchmarkFn {
    std::string name;
    SpaceSpec spec;
    std::vector<std::vector<double>> levels;  // level value of each category, per discrete variable
    std::function<double(const RawPoint&)> evaluate;

    [[nodiscard]] RawPoint to_raw(const HybridPoint& x) const;
    [[nodiscard]] double operator()(const HybridPoint& x) const { return evaluate(to_raw(x)); }
};

double pressure_vessel(int x1, int x2, double x3, double x4);

struct WeldedBeamConstants {
    double g1 = 0.0;
    double g2 = 0.0;
    double length = 0.0;
};

/// Constants keyed by the material index x2.
using WeldedBeamTable = std::map<int, WeldedBeamConstants>;

/// Parses the tab/space separated constants file (columns: x2 index, G1, G2,
/// L; '#' starts a comment). Throws std::runtime_error with the path on I/O
/// or parse failure.
WeldedBeamTable load_welded_beam_constants(const std::string& path);

/// Path of the constants file shipped in data/ (overridable through the
/// HYBO_DATA_DIR environment variable).
std::string default_welded_beam_path();

/// G1 = G2 = 1, L = 0 for every material; exercises the formula shape only.
WeldedBeamTable unit_welded_beam_constants();

double welded_beam(int x1, int x2, double x3, double x4, double x5, double x6, const WeldedBeamTable& constants);

double speed_reducer(int x1, double x2, double x3, double x4, double x5, double x6, double x7);

/// Shifted sphere over integer levels 0..15 and continuous coordinates in
/// [-5, 5].
struct MixintSphere {
    int num_discrete = 8;
    int num_continuous = 2;
    std::vector<double> shift;  // discrete components first

    [[nodiscard]] double operator()(const RawPoint& x) const;
};

/// Shift drawn from `instance_seed`; discrete components are integers in
/// [0, 15], continuous components lie in [-4, 4].
MixintSphere make_mixint_sphere(int num_discrete, int num_continuous, std::uint64_t instance_seed);

BenchmarkFn make_benchmark(const MixintSphere& sphere, const std::string& name);

/// Throws std::invalid_argument listing the registered names on a miss.
BenchmarkFn lookup(const std::string& name);
std::vector<std::string> benchmark_names();

/// 64-bit FNV-1a over a file's bytes.
std::uint64_t file_checksum(const std::string& path);

}  // namespace hybo

#endif  // HYBO_BENCH_HPP
