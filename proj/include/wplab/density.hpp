#pragma once
// Position-space probability density of a spinor state on a Cartesian grid,
// ring/axis metrics for torus detection, and a small volumetric raster
// format (ASCII header + little-endian float32 payload, x-index fastest).

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wplab/basis.hpp"
#include "wplab/special.hpp"
#include "wplab/states.hpp"

namespace wplab {

// Axis-aligned box sampled at cell centers, values stored x-fastest.
struct DensityGrid {
    std::array<int, 3> shape{};
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};
    std::vector<double> values;

    double step(int axis) const {
        return (hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]) /
               shape[static_cast<std::size_t>(axis)];
    }
    double center(int axis, int i) const {
        return lo[static_cast<std::size_t>(axis)] + (i + 0.5) * step(axis);
    }
    std::size_t index(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(shape[0]) *
                   (static_cast<std::size_t>(iy) +
                    static_cast<std::size_t>(shape[1]) * static_cast<std::size_t>(iz));
    }
    double cell_volume() const { return step(0) * step(1) * step(2); }
    // Midpoint-rule integral over the box.
    double integral() const {
        double s = 0;
        for (const double v : values) s += v;
        return s * cell_volume();
    }
};

inline DensityGrid make_grid(std::array<int, 3> shape, std::array<double, 3> lo,
                             std::array<double, 3> hi) {
    DensityGrid g;
    std::size_t count = 1;
    for (int a = 0; a < 3; ++a) {
        const auto ia = static_cast<std::size_t>(a);
        if (shape[ia] < 1 || shape[ia] > 512)
            throw std::invalid_argument("make_grid: shape must be within 1..512 per axis");
        if (!(lo[ia] < hi[ia])) throw std::invalid_argument("make_grid: need lo < hi");
        count *= static_cast<std::size_t>(shape[ia]);
    }
    g.shape = shape;
    g.lo = lo;
    g.hi = hi;
    g.values.assign(count, 0.0);
    return g;
}

// Cube of half-width w centered at the origin, n cells per axis.
inline DensityGrid cube_grid(double w, int n) {
    return make_grid({n, n, n}, {-w, -w, -w}, {w, w, w});
}

// Default box half-width: classical turning radius sqrt(2N) plus 4 widths.
inline double default_half_width(double n_mean) { return std::sqrt(2 * n_mean) + 4; }

// Fills grid.values with |psi_up|^2 + |psi_dn|^2. Per point, one radial
// recurrence per distinct l and one Legendre recurrence per distinct |m|
// replace per-amplitude special-function calls.
inline void evaluate_density(const SpinorState& state, DensityGrid& grid) {
    for (int a = 0; a < 3; ++a)
        if (grid.shape[static_cast<std::size_t>(a)] > 512)
            throw std::invalid_argument("evaluate_density: grid too large (max 512 per axis)");
    struct Group {
        int l = 0;
        int m = 0;
        int spin = 0;
        std::size_t coeff_begin = 0;
        std::size_t coeff_end = 0;
    };
    // Amplitudes are sorted by (l, 2m_j, n_r, spin); regroup by (l, m, spin).
    std::vector<Group> groups;
    std::vector<std::pair<int, Complex>> coeffs; // (n_r, amplitude), flat
    int l_max_used = 0;
    std::vector<int> nr_max_by_l;
    std::vector<char> am_used;
    for (const auto& [idx, a] : state.amplitudes) {
        if (idx.l > 120)
            throw std::invalid_argument("evaluate_density: l exceeds stable range (120)");
        l_max_used = std::max(l_max_used, idx.l);
        const int spin = idx.spin == Spin::up ? 0 : 1;
        if (groups.empty() || groups.back().l != idx.l || groups.back().m != idx.m ||
            groups.back().spin != spin) {
            groups.push_back({idx.l, idx.m, spin, coeffs.size(), coeffs.size()});
        }
        coeffs.emplace_back(idx.n_r, a);
        groups.back().coeff_end = coeffs.size();
        const auto am = static_cast<std::size_t>(std::abs(idx.m));
        if (am_used.size() <= am) am_used.resize(am + 1, 0);
        am_used[am] = 1;
        if (nr_max_by_l.size() <= static_cast<std::size_t>(idx.l))
            nr_max_by_l.resize(static_cast<std::size_t>(idx.l) + 1, -1);
        auto& nr = nr_max_by_l[static_cast<std::size_t>(idx.l)];
        nr = std::max(nr, idx.n_r);
    }
    // Flat per-l radial buffers and per-|m| Legendre columns.
    std::vector<std::size_t> rad_off(nr_max_by_l.size() + 1, 0);
    for (std::size_t l = 0; l < nr_max_by_l.size(); ++l)
        rad_off[l + 1] = rad_off[l] + (nr_max_by_l[l] >= 0
                                           ? static_cast<std::size_t>(nr_max_by_l[l]) + 1
                                           : 0);
    std::vector<double> rad(rad_off.back());
    const std::size_t lcols = static_cast<std::size_t>(l_max_used) + 1;
    std::vector<double> leg(am_used.size() * lcols);
    std::vector<Complex> eim(am_used.size());

    const int nx = grid.shape[0], ny = grid.shape[1], nz = grid.shape[2];
    for (int iz = 0; iz < nz; ++iz) {
        const double z = grid.center(2, iz);
        for (int iy = 0; iy < ny; ++iy) {
            const double y = grid.center(1, iy);
            for (int ix = 0; ix < nx; ++ix) {
                const double x = grid.center(0, ix);
                const double rho2 = x * x + y * y;
                const double r = std::sqrt(rho2 + z * z);
                const double ct = r > 0 ? z / r : 1.0;
                for (std::size_t l = 0; l < nr_max_by_l.size(); ++l)
                    if (nr_max_by_l[l] >= 0)
                        radial_column(nr_max_by_l[l], static_cast<int>(l), r,
                                      rad.data() + rad_off[l]);
                for (std::size_t am = 0; am < am_used.size(); ++am)
                    if (am_used[am])
                        legendre_column(l_max_used, static_cast<int>(am), ct,
                                        leg.data() + am * lcols);
                const Complex unit = rho2 > 0
                                         ? Complex(x, y) / std::sqrt(rho2)
                                         : Complex(1, 0);
                eim[0] = Complex(1, 0);
                for (std::size_t am = 1; am < eim.size(); ++am) eim[am] = eim[am - 1] * unit;
                Complex psi[2] = {Complex(0, 0), Complex(0, 0)};
                for (const auto& gr : groups) {
                    Complex radial_sum(0, 0);
                    const double* rl = rad.data() + rad_off[static_cast<std::size_t>(gr.l)];
                    for (std::size_t k = gr.coeff_begin; k < gr.coeff_end; ++k)
                        radial_sum += coeffs[k].second * rl[coeffs[k].first];
                    const auto am = static_cast<std::size_t>(std::abs(gr.m));
                    Complex ang = leg[am * lcols + static_cast<std::size_t>(gr.l)] *
                                  (gr.m >= 0 ? eim[am] : std::conj(eim[am]));
                    if (gr.m < 0 && (am & 1)) ang = -ang;
                    psi[gr.spin] += radial_sum * ang;
                }
                grid.values[grid.index(ix, iy, iz)] = std::norm(psi[0]) + std::norm(psi[1]);
            }
        }
    }
}

struct TorusMetrics {
    std::array<double, 3> axis{0, 0, 1};
    double ring_radius = 0;  // cylindrical radius of the global maximum
    double on_axis_max = 0;  // max over cells within one cell of the axis
    double global_max = 0;
    std::array<double, 3> max_position{};
};

// Ring/axis statistics about a symmetry axis through the origin. The axis
// must point along one of the grid axes.
inline TorusMetrics torus_metrics(const DensityGrid& grid,
                                  std::array<double, 3> axis = {0, 0, 1}) {
    int axdir = -1;
    for (int a = 0; a < 3; ++a) {
        const double c = axis[static_cast<std::size_t>(a)];
        if (std::abs(std::abs(c) - 1.0) < 1e-12) {
            if (axdir >= 0) throw std::invalid_argument("torus_metrics: axis not grid-aligned");
            axdir = a;
        } else if (std::abs(c) > 1e-12) {
            throw std::invalid_argument("torus_metrics: axis not grid-aligned");
        }
    }
    if (axdir < 0) throw std::invalid_argument("torus_metrics: axis not grid-aligned");
    TorusMetrics tm;
    tm.axis = axis;
    const int t0 = (axdir + 1) % 3, t1 = (axdir + 2) % 3;
    const double cell = std::max(grid.step(t0), grid.step(t1)) * (1 + 1e-12);
    bool any = false;
    for (int iz = 0; iz < grid.shape[2]; ++iz)
        for (int iy = 0; iy < grid.shape[1]; ++iy)
            for (int ix = 0; ix < grid.shape[0]; ++ix) {
                const double v = grid.values[grid.index(ix, iy, iz)];
                if (v != 0) any = true;
                const int i3[3] = {ix, iy, iz};
                const double u = grid.center(t0, i3[t0]);
                const double w = grid.center(t1, i3[t1]);
                const double radius = std::hypot(u, w);
                if (v > tm.global_max) {
                    tm.global_max = v;
                    tm.ring_radius = radius;
                    tm.max_position = {grid.center(0, ix), grid.center(1, iy),
                                       grid.center(2, iz)};
                }
                if (radius <= cell && v > tm.on_axis_max) tm.on_axis_max = v;
            }
    if (!any) throw std::invalid_argument("torus_metrics: field is identically zero");
    return tm;
}

namespace detail {

inline void put_f32_le(std::ostream& os, float v) {
    const auto u = std::bit_cast<std::uint32_t>(v);
    const char b[4] = {static_cast<char>(u & 0xff), static_cast<char>((u >> 8) & 0xff),
                       static_cast<char>((u >> 16) & 0xff),
                       static_cast<char>((u >> 24) & 0xff)};
    os.write(b, 4);
}

inline float get_f32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    const std::uint32_t u = static_cast<std::uint32_t>(b[0]) |
                            (static_cast<std::uint32_t>(b[1]) << 8) |
                            (static_cast<std::uint32_t>(b[2]) << 16) |
                            (static_cast<std::uint32_t>(b[3]) << 24);
    return std::bit_cast<float>(u);
}

} // namespace detail

inline void write_raster(std::ostream& os, const DensityGrid& grid) {
    char header[256];
    std::snprintf(header, sizeof header,
                  "WPLAB1 %d %d %d %.17g %.17g %.17g %.17g %.17g %.17g\n", grid.shape[0],
                  grid.shape[1], grid.shape[2], grid.lo[0], grid.hi[0], grid.lo[1], grid.hi[1],
                  grid.lo[2], grid.hi[2]);
    os << header;
    for (const double v : grid.values) detail::put_f32_le(os, static_cast<float>(v));
    if (!os) throw IoError("write_raster: stream failure");
}

inline void write_raster_file(const std::string& path, const DensityGrid& grid) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_raster: cannot open " + path);
    write_raster(os, grid);
}

inline DensityGrid read_raster(std::istream& is) {
    std::string magic;
    std::array<int, 3> shape{};
    std::array<double, 3> lo{}, hi{};
    is >> magic >> shape[0] >> shape[1] >> shape[2] >> lo[0] >> hi[0] >> lo[1] >> hi[1] >>
        lo[2] >> hi[2];
    if (!is || magic != "WPLAB1") throw std::invalid_argument("read_raster: bad header");
    is.ignore(1); // trailing newline
    DensityGrid g = make_grid(shape, lo, hi);
    for (auto& v : g.values) v = detail::get_f32_le(is);
    if (!is) throw IoError("read_raster: truncated payload");
    return g;
}

inline DensityGrid read_raster_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_raster: cannot open " + path);
    return read_raster(is);
}

// One axis-normal plane of the grid as x,y,z,value rows.
inline void write_slice_csv(std::ostream& os, const DensityGrid& grid, int axis, int index) {
    if (axis < 0 || axis > 2 || index < 0 ||
        index >= grid.shape[static_cast<std::size_t>(axis)])
        throw std::invalid_argument("write_slice_csv: slice out of range");
    os << "x,y,z,value\n";
    const int u = (axis + 1) % 3, w = (axis + 2) % 3;
    for (int j = 0; j < grid.shape[static_cast<std::size_t>(w)]; ++j)
        for (int i = 0; i < grid.shape[static_cast<std::size_t>(u)]; ++i) {
            int i3[3];
            i3[axis] = index;
            i3[u] = i;
            i3[w] = j;
            char row[160];
            std::snprintf(row, sizeof row, "%.9g,%.9g,%.9g,%.16e\n", grid.center(0, i3[0]),
                          grid.center(1, i3[1]), grid.center(2, i3[2]),
                          grid.values[grid.index(i3[0], i3[1], i3[2])]);
            os << row;
        }
    if (!os) throw IoError("write_slice_csv: stream failure");
}

} // namespace wplab
