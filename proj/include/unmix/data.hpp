#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

/// Parameters of the synthetic-scene generator: k smooth spectra mixed over
/// blobby, regionally smooth abundance maps with at most mixing_sparsity
/// active endmembers per pixel.
struct SceneSpec {
    int height = 32;
    int width = 32;
    int k = 4;
    int bands = 40;
    std::uint64_t seed = 0;
    int blob_count = 3;        // random regions per endmember
    int mixing_sparsity = 2;   // max active endmembers per pixel
    double smoothness = 2.0;   // blur radius in pixels

    void validate() const;
};

/// Cube container: one ASCII header line "HSCUBE1 <height> <width> <bands>"
/// followed by raw little-endian float32 samples, band-major (all pixels of
/// band 0 first), pixels in row-major order. Negative samples are clamped to
/// zero on load with a warning.
HyperspectralImage load_cube(const std::string& path);
void save_cube(const HyperspectralImage& image, const std::string& path);

/// Drops the listed bands (1-based indices into the current bands, matching
/// the usual water-absorption removal lists) and updates band_ids.
HyperspectralImage remove_bands(const HyperspectralImage& image,
                                const std::vector<int>& bands_1based);

/// 48 bands dropped from 210-band HYDICE Urban cubes (1-4, 76, 87, 101-111,
/// 136-153, 198-210), leaving 162.
const std::vector<int>& urban_band_preset();

/// 26 bands dropped from 224-band Jasper Ridge cubes (1-3, 108-112, 154-166,
/// 220-224), leaving 198.
const std::vector<int>& jasper_band_preset();

/// Adds iid zero-mean white Gaussian noise with variance
/// mean(Y^2) * 10^(-snr_db/10) over the whole cube, clamping negatives to
/// zero. snr_db = infinity returns the image unchanged.
HyperspectralImage add_gaussian_noise(const HyperspectralImage& image, double snr_db,
                                      std::uint64_t seed);

std::pair<HyperspectralImage, GroundTruth> synthesize_scene(const SceneSpec& spec);

/// Binary PPM (P6) in the subtractive ink scheme: endmembers 1..4 map to
/// Red, Blue, Green, Black. With clamp(x) = min(1, x) and columns first
/// normalized by their sum when it exceeds 1:
///   R = 255 (1 - clamp(A2 + A3 + A4))
///   G = 255 (1 - clamp(A1 + A2 + A4))
///   B = 255 (1 - clamp(A1 + A3 + A4))
/// with floor rounding; missing endmembers count as 0. Requires K <= 4.
void render_pseudocolor(const AbundanceMatrix& A, int height, int width,
                        const std::string& path);

/// Binary PGM (P5): one abundance map as floor(255 * clamp(z, 0, 1)).
void render_grayscale(const Eigen::Ref<const Vector>& map, int height, int width,
                      const std::string& path);

}  // namespace unmix
