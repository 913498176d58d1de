#include "hybo/bench.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace hybo {

namespace {

void require_int(int v, int lo, int hi, const char* what) {
    if (v < lo || v > hi) {
        throw std::invalid_argument(std::string(what) + " out of bounds [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]: " + std::to_string(v));
    }
}

void require_real(double v, double lo, double hi, const char* what) {
    if (!(v >= lo && v <= hi)) {
        std::ostringstream os;
        os << what << " out of bounds [" << lo << ", " << hi << "]: " << v;
        throw std::invalid_argument(os.str());
    }
}

int as_level(double v, const char* what) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) throw std::invalid_argument(std::string(what) + " must be an integer level");
    return static_cast<int>(r);
}

std::vector<double> integer_levels(int first, int last) {
    std::vector<double> out;
    for (int v = first; v <= last; ++v) out.push_back(v);
    return out;
}

void require_shape(const RawPoint& x, std::size_t m, std::size_t n, const std::string& name) {
    if (x.discrete.size() != m || x.continuous.size() != n) {
        throw std::invalid_argument(name + ": expected " + std::to_string(m) + " discrete and " + std::to_string(n) +
                                    " continuous values");
    }
}

BenchmarkFn pressure_vessel_benchmark() {
    BenchmarkFn b;
    b.name = "pressure_vessel";
    b.spec.discrete_vars = {{"shell_thickness", 100}, {"head_thickness", 100}};
    b.spec.continuous_vars = {{"inner_radius", 10.0, 200.0}, {"length", 10.0, 240.0}};
    b.levels = {integer_levels(1, 100), integer_levels(1, 100)};
    b.evaluate = [](const RawPoint& x) {
        require_shape(x, 2, 2, "pressure_vessel");
        return pressure_vessel(as_level(x.discrete[0], "x1"), as_level(x.discrete[1], "x2"), x.continuous[0],
                               x.continuous[1]);
    };
    return b;
}

BenchmarkFn welded_beam_benchmark() {
    BenchmarkFn b;
    b.name = "welded_beam";
    b.spec.discrete_vars = {{"weld_type", 2}, {"material", 4}};
    b.spec.continuous_vars = {{"weld_thickness", 0.0625, 2.0},
                              {"weld_length", 0.0, 20.0},
                              {"bar_thickness", 2.0, 20.0},
                              {"bar_width", 0.0625, 2.0}};
    b.levels = {integer_levels(0, 1), integer_levels(0, 3)};
    auto table = load_welded_beam_constants(default_welded_beam_path());
    b.evaluate = [table = std::move(table)](const RawPoint& x) {
        require_shape(x, 2, 4, "welded_beam");
        return welded_beam(as_level(x.discrete[0], "x1"), as_level(x.discrete[1], "x2"), x.continuous[0],
                           x.continuous[1], x.continuous[2], x.continuous[3], table);
    };
    return b;
}

BenchmarkFn speed_reducer_benchmark() {
    BenchmarkFn b;
    b.name = "speed_reducer";
    b.spec.discrete_vars = {{"pinion_teeth", 12}};
    b.spec.continuous_vars = {{"face_width", 2.6, 3.6},  {"teeth_module", 0.7, 0.8}, {"shaft1_length", 7.3, 8.3},
                              {"shaft2_length", 0.7, 0.8}, {"shaft1_diameter", 2.9, 3.9}, {"shaft2_diameter", 5.0, 5.5}};
    b.levels = {integer_levels(17, 28)};
    b.evaluate = [](const RawPoint& x) {
        require_shape(x, 1, 6, "speed_reducer");
        const auto& c = x.continuous;
        return speed_reducer(as_level(x.discrete[0], "x1"), c[0], c[1], c[2], c[3], c[4], c[5]);
    };
    return b;
}

}  // namespace

RawPoint BenchmarkFn::to_raw(const HybridPoint& x) const {
    check_point(spec, x);
    RawPoint r;
    r.discrete.reserve(x.x_d.size());
    for (std::size_t i = 0; i < x.x_d.size(); ++i) r.discrete.push_back(levels[i][static_cast<std::size_t>(x.x_d[i])]);
    r.continuous = denormalize(spec, x.x_c);
    return r;
}

double pressure_vessel(int x1, int x2, double x3, double x4) {
    require_int(x1, 1, 100, "x1");
    require_int(x2, 1, 100, "x2");
    require_real(x3, 10.0, 200.0, "x3");
    require_real(x4, 10.0, 240.0, "x4");
    const double a = x1;
    const double b = x2;
    return 0.6224 * a * x3 * x4 + 1.7781 * b * x3 * x3 + 3.1661 * a * a * x4 + 19.84 * a * a * x3;
}

WeldedBeamTable load_welded_beam_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open welded-beam constants file: " + path);
    WeldedBeamTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        int idx = 0;
        WeldedBeamConstants c;
        if (!(is >> idx)) continue;  // blank
        if (!(is >> c.g1 >> c.g2 >> c.length)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 columns");
        }
        table[idx] = c;
    }
    return table;
}

std::string default_welded_beam_path() {
    const char* env = std::getenv("HYBO_DATA_DIR");
    const std::string dir = env != nullptr ? env : HYBO_DATA_DIR;
    return dir + "/welded_beam_constants.tsv";
}

WeldedBeamTable unit_welded_beam_constants() {
    WeldedBeamTable t;
    for (int i = 0; i < 4; ++i) t[i] = {1.0, 1.0, 0.0};
    return t;
}

double welded_beam(int x1, int x2, double x3, double x4, double x5, double x6, const WeldedBeamTable& constants) {
    require_int(x1, 0, 1, "x1");
    require_int(x2, 0, 3, "x2");
    require_real(x3, 0.0625, 2.0, "x3");
    require_real(x4, 0.0, 20.0, "x4");
    require_real(x5, 2.0, 20.0, "x5");
    require_real(x6, 0.0625, 2.0, "x6");
    const auto it = constants.find(x2);
    if (it == constants.end()) throw std::invalid_argument("welded_beam: no constants for material " + std::to_string(x2));
    const auto& c = it->second;
    return (1.0 + c.g1) * (x1 * x5 + x4) * x3 * x3 + c.g2 * x5 * x6 * (c.length + x4);
}

double speed_reducer(int x1, double x2, double x3, double x4, double x5, double x6, double x7) {
    require_int(x1, 17, 28, "x1");
    require_real(x2, 2.6, 3.6, "x2");
    require_real(x3, 0.7, 0.8, "x3");
    require_real(x4, 7.3, 8.3, "x4");
    require_real(x5, 0.7, 0.8, "x5");
    require_real(x6, 2.9, 3.9, "x6");
    require_real(x7, 5.0, 5.5, "x7");
    const double t = x1;
    return 0.79 * x2 * x3 * x3 * (3.33 * t * t * t + 14.93 * t - 43.09) - 1.51 * x2 * (x6 * x6 + x7 * x7) +
           7.48 * (x6 * x6 * x6 + x7 * x7 * x7) + 0.79 * (x4 * x6 * x6 + x5 * x7 * x7);
}

double MixintSphere::operator()(const RawPoint& x) const {
    require_shape(x, static_cast<std::size_t>(num_discrete), static_cast<std::size_t>(num_continuous), "mixint_sphere");
    double total = 0.0;
    for (int i = 0; i < num_discrete; ++i) {
        require_real(x.discrete[i], 0.0, 15.0, "integer level");
        const double d = x.discrete[i] - shift[static_cast<std::size_t>(i)];
        total += d * d;
    }
    for (int j = 0; j < num_continuous; ++j) {
        require_real(x.continuous[j], -5.0, 5.0, "continuous coordinate");
        const double d = x.continuous[j] - shift[static_cast<std::size_t>(num_discrete + j)];
        total += d * d;
    }
    return total;
}

MixintSphere make_mixint_sphere(int num_discrete, int num_continuous, std::uint64_t instance_seed) {
    MixintSphere s;
    s.num_discrete = num_discrete;
    s.num_continuous = num_continuous;
    Rng rng(instance_seed);
    std::uniform_real_distribution<double> level(0.0, 15.0);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (int i = 0; i < num_discrete; ++i) s.shift.push_back(std::round(level(rng)));
    for (int j = 0; j < num_continuous; ++j) s.shift.push_back(coord(rng));
    return s;
}

BenchmarkFn make_benchmark(const MixintSphere& sphere, const std::string& name) {
    BenchmarkFn b;
    b.name = name;
    for (int i = 0; i < sphere.num_discrete; ++i) {
        b.spec.discrete_vars.push_back({"z" + std::to_string(i + 1), 16});
        b.levels.push_back(integer_levels(0, 15));
    }
    for (int j = 0; j < sphere.num_continuous; ++j) {
        b.spec.continuous_vars.push_back({"c" + std::to_string(j + 1), -5.0, 5.0});
    }
    b.evaluate = [sphere](const RawPoint& x) { return sphere(x); };
    return b;
}

std::vector<std::string> benchmark_names() {
    return {"mixint_sphere", "mixint_sphere_20", "pressure_vessel", "speed_reducer", "welded_beam"};
}

BenchmarkFn lookup(const std::string& name) {
    if (name == "pressure_vessel") return pressure_vessel_benchmark();
    if (name == "welded_beam") return welded_beam_benchmark();
    if (name == "speed_reducer") return speed_reducer_benchmark();
    if (name == "mixint_sphere") return make_benchmark(make_mixint_sphere(8, 2, 1), name);
    if (name == "mixint_sphere_20") return make_benchmark(make_mixint_sphere(16, 4, 1), name);
    std::string msg = "unknown benchmark '" + name + "'; available:";
    for (const auto& n : benchmark_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace hybo
