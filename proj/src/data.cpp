#include "unmix/data.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "unmix/core.hpp"
#include "unmix/log.hpp"

namespace unmix {

void SceneSpec::validate() const {
    if (height < 1 || width < 1) throw ParameterError("scene height/width must be positive");
    if (k < 2) throw ParameterError("scene needs k >= 2 endmembers");
    if (bands < 2) throw ParameterError("scene needs at least 2 bands");
    if (blob_count < 1) throw ParameterError("blob_count must be >= 1");
    if (mixing_sparsity < 1 || mixing_sparsity > k) {
        throw ParameterError("mixing_sparsity must lie in [1, k]");
    }
    if (smoothness < 0.0) throw ParameterError("smoothness must be >= 0");
}

namespace {

constexpr std::uint64_t kMaxCubeEntries = 1ull << 31;

void put_le_float(std::vector<unsigned char>& buf, size_t off, float v) {
    const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
    buf[off] = static_cast<unsigned char>(bits & 0xFF);
    buf[off + 1] = static_cast<unsigned char>((bits >> 8) & 0xFF);
    buf[off + 2] = static_cast<unsigned char>((bits >> 16) & 0xFF);
    buf[off + 3] = static_cast<unsigned char>((bits >> 24) & 0xFF);
}

float get_le_float(const unsigned char* p) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                               (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(bits);
}

}  // namespace

void save_cube(const HyperspectralImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "HSCUBE1 " << image.height << ' ' << image.width << ' ' << image.bands << '\n';

    const int n = image.pixels();
    std::vector<unsigned char> row(static_cast<size_t>(n) * 4);
    for (int l = 0; l < image.bands; ++l) {
        for (int p = 0; p < n; ++p) {
            put_le_float(row, static_cast<size_t>(p) * 4, static_cast<float>(image.data(l, p)));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("failed writing cube to '" + path + "'");
}

HyperspectralImage load_cube(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string header;
    if (!std::getline(in, header)) throw IoError("missing cube header in '" + path + "'");
    int h = 0, w = 0, b = 0;
    char trailing = 0;
    const int fields = std::sscanf(header.c_str(), "HSCUBE1 %d %d %d %c", &h, &w, &b, &trailing);
    if (fields != 3 || h < 1 || w < 1 || b < 1) {
        throw IoError("malformed cube header '" + header + "'");
    }
    const std::uint64_t entries =
        static_cast<std::uint64_t>(h) * static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(b);
    if (entries > kMaxCubeEntries) throw IoError("cube dimensions overflow");

    std::vector<unsigned char> payload(entries * 4);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != payload.size()) {
        throw IoError("truncated cube payload in '" + path + "'");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw IoError("trailing bytes after cube payload in '" + path + "'");
    }

    const int n = h * w;
    Matrix data(b, n);
    long clamped = 0;
    for (int l = 0; l < b; ++l) {
        const size_t band_off = static_cast<size_t>(l) * n * 4;
        for (int p = 0; p < n; ++p) {
            double v = get_le_float(payload.data() + band_off + static_cast<size_t>(p) * 4);
            if (v < 0.0 || std::isnan(v)) {
                v = std::max(v, 0.0);
                if (std::isnan(v)) v = 0.0;
                ++clamped;
            }
            data(l, p) = v;
        }
    }
    if (clamped > 0) {
        warn(std::to_string(clamped) + " negative/NaN sample(s) clamped to 0 while loading '" +
             path + "'");
    }
    return HyperspectralImage(h, w, std::move(data));
}

HyperspectralImage remove_bands(const HyperspectralImage& image,
                                const std::vector<int>& bands_1based) {
    std::set<int> drop;
    for (int idx : bands_1based) {
        if (idx < 1 || idx > image.bands) {
            throw ParameterError("band index " + std::to_string(idx) + " out of range [1, " +
                                 std::to_string(image.bands) + "]");
        }
        drop.insert(idx);
    }
    if (drop.empty()) return image;

    const int kept = image.bands - static_cast<int>(drop.size());
    if (kept == 0) throw ParameterError("band removal would drop every band");
    Matrix data(kept, image.pixels());
    std::vector<int> ids;
    ids.reserve(kept);
    int row = 0;
    for (int l = 0; l < image.bands; ++l) {
        if (drop.count(l + 1)) continue;
        data.row(row++) = image.data.row(l);
        ids.push_back(image.band_ids.empty() ? l + 1 : image.band_ids[l]);
    }
    return HyperspectralImage(image.height, image.width, std::move(data), std::move(ids));
}

namespace {

std::vector<int> make_removal_list(std::initializer_list<std::pair<int, int>> ranges) {
    std::vector<int> out;
    for (auto [lo, hi] : ranges) {
        for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
    return out;
}

}  // namespace

const std::vector<int>& urban_band_preset() {
    static const std::vector<int> bands =
        make_removal_list({{1, 4}, {76, 76}, {87, 87}, {101, 111}, {136, 153}, {198, 210}});
    return bands;
}

const std::vector<int>& jasper_band_preset() {
    static const std::vector<int> bands =
        make_removal_list({{1, 3}, {108, 112}, {154, 166}, {220, 224}});
    return bands;
}

HyperspectralImage add_gaussian_noise(const HyperspectralImage& image, double snr_db,
                                      std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) return image;
    if (!(snr_db > 0.0)) throw ParameterError("snr_db must be positive or infinity");

    const double mean_sq = image.data.squaredNorm() / static_cast<double>(image.data.size());
    const double sigma = std::sqrt(mean_sq * std::pow(10.0, -snr_db / 10.0));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    Matrix out = image.data;
    long clamped = 0;
    for (long c = 0; c < out.cols(); ++c) {
        for (long r = 0; r < out.rows(); ++r) {
            const double v = out(r, c) + noise(rng);
            if (v < 0.0) ++clamped;
            out(r, c) = std::max(0.0, v);
        }
    }
    if (clamped > 0) {
        warn(std::to_string(clamped) + " sample(s) clamped to 0 after noise injection");
    }
    return HyperspectralImage(image.height, image.width, std::move(out), image.band_ids);
}

namespace {

// Truncating box blur along both grid axes; window shrinks at the borders.
void box_blur(Eigen::RowVectorXd& field, int h, int w, int radius) {
    if (radius < 1) return;
    Eigen::RowVectorXd tmp(field.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int c0 = std::max(0, c - radius), c1 = std::min(w - 1, c + radius);
            double acc = 0.0;
            for (int cc = c0; cc <= c1; ++cc) acc += field[r * w + cc];
            tmp[r * w + c] = acc / (c1 - c0 + 1);
        }
    }
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) {
            const int r0 = std::max(0, r - radius), r1 = std::min(h - 1, r + radius);
            double acc = 0.0;
            for (int rr = r0; rr <= r1; ++rr) acc += tmp[rr * w + c];
            field[r * w + c] = acc / (r1 - r0 + 1);
        }
    }
}

}  // namespace

std::pair<HyperspectralImage, GroundTruth> synthesize_scene(const SceneSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int L = spec.bands, K = spec.k, h = spec.height, w = spec.width;
    const int n = h * w;

    // Smooth positive spectra, normalized to unit l2 norm: a broadband
    // baseline (real reflectance curves are dense across the spectrum) plus
    // a dominant bump in the endmember's own slice of the band axis and a
    // weaker secondary bump anywhere, so signatures are distinct but
    // correlated the way real material classes are.
    Matrix M(L, K);
    std::uniform_real_distribution<double> baseline(0.15, 0.25);
    for (int k = 0; k < K; ++k) {
        Vector s = Vector::Constant(L, baseline(rng));
        const double zone_lo = static_cast<double>(k) * L / K;
        const double zone_span = static_cast<double>(L) / K;
        const double main_center = zone_lo + (0.25 + 0.5 * unit(rng)) * zone_span;
        const double main_width = zone_span * (0.25 + 0.25 * unit(rng));
        const double side_center = unit(rng) * (L - 1);
        const double side_width = L * (0.05 + 0.10 * unit(rng));
        const double side_amp = 0.10 + 0.15 * unit(rng);
        for (int l = 0; l < L; ++l) {
            const double dm = (l - main_center) / main_width;
            const double ds = (l - side_center) / side_width;
            s[l] += std::exp(-0.5 * dm * dm) + side_amp * std::exp(-0.5 * ds * ds);
        }
        M.col(k) = s / s.norm();
    }

    // Per-endmember intensity fields: strictly positive base noise plus
    // blob_count Gaussian blobs, blurred for regional smoothness.
    Matrix fields(K, n);
    const double min_dim = std::min(h, w);
    for (int k = 0; k < K; ++k) {
        for (int p = 0; p < n; ++p) fields(k, p) = 1e-4 + 1e-3 * unit(rng);
        for (int blob = 0; blob < spec.blob_count; ++blob) {
            const double cr = unit(rng) * (h - 1);
            const double cc = unit(rng) * (w - 1);
            const double sigma = min_dim * (0.12 + 0.18 * unit(rng));
            const double amp = 0.5 + 0.75 * unit(rng);
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < w; ++c) {
                    const double d2 = (r - cr) * (r - cr) + (c - cc) * (c - cc);
                    fields(k, r * w + c) += amp * std::exp(-0.5 * d2 / (sigma * sigma));
                }
            }
        }
        Eigen::RowVectorXd field_row = fields.row(k);
        box_blur(field_row, h, w, static_cast<int>(std::lround(spec.smoothness)));
        fields.row(k) = field_row;
    }

    // Keep the mixing_sparsity largest components per pixel, renormalize.
    Matrix A = Matrix::Zero(K, n);
    std::vector<int> order(K);
    for (int p = 0; p < n; ++p) {
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + spec.mixing_sparsity, order.end(),
                          [&](int a, int b) { return fields(a, p) > fields(b, p); });
        double sum = 0.0;
        for (int t = 0; t < spec.mixing_sparsity; ++t) sum += fields(order[t], p);
        for (int t = 0; t < spec.mixing_sparsity; ++t) {
            A(order[t], p) = fields(order[t], p) / sum;
        }
    }

    EndmemberMatrix endmembers{std::move(M)};
    AbundanceMatrix abundances{std::move(A)};
    HyperspectralImage image = lmm_synthesize(endmembers, abundances, h, w, 0.0, 0);
    return {std::move(image), GroundTruth(std::move(endmembers), std::move(abundances))};
}

namespace {

void write_pnm(const std::string& path, const std::string& magic, int width, int height,
               const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << magic << '\n' << width << ' ' << height << '\n' << 255 << '\n';
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing raster to '" + path + "'");
}

inline unsigned char ink_channel(double covered) {
    const double v = 255.0 * (1.0 - std::min(1.0, covered));
    return static_cast<unsigned char>(std::floor(v));
}

}  // namespace

void render_pseudocolor(const AbundanceMatrix& A, int height, int width,
                        const std::string& path) {
    const int k = A.count();
    if (k > 4) throw ParameterError("pseudocolor rendering supports at most 4 endmembers");
    if (A.pixels() != height * width) throw ShapeError("abundance/grid pixel count mismatch");

    std::vector<unsigned char> rgb(static_cast<size_t>(height) * width * 3);
    for (int p = 0; p < height * width; ++p) {
        double a[4] = {0.0, 0.0, 0.0, 0.0};
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            a[i] = A.data(i, p);
            sum += a[i];
        }
        if (sum > 1.0) {
            for (double& v : a) v /= sum;
        }
        for (double& v : a) v = std::clamp(v, 0.0, 1.0);
        rgb[p * 3 + 0] = ink_channel(a[1] + a[2] + a[3]);
        rgb[p * 3 + 1] = ink_channel(a[0] + a[1] + a[3]);
        rgb[p * 3 + 2] = ink_channel(a[0] + a[2] + a[3]);
    }
    write_pnm(path, "P6", width, height, rgb);
}

void render_grayscale(const Eigen::Ref<const Vector>& map, int height, int width,
                      const std::string& path) {
    if (map.size() != static_cast<long>(height) * width) {
        throw ShapeError("abundance map/grid pixel count mismatch");
    }
    std::vector<unsigned char> gray(static_cast<size_t>(height) * width);
    for (long p = 0; p < map.size(); ++p) {
        gray[p] = static_cast<unsigned char>(std::floor(255.0 * std::clamp(map[p], 0.0, 1.0)));
    }
    write_pnm(path, "P5", width, height, gray);
}

}  // namespace unmix
