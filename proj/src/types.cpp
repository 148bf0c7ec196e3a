#include "unmix/types.hpp"

#include <string>

#include "unmix/log.hpp"

namespace unmix {

namespace {

void require_nonnegative(const Matrix& m, const char* name) {
    if (!(m.array() >= 0.0).all()) {
        throw ParameterError(std::string(name) + " must be entrywise nonnegative and finite");
    }
}

}  // namespace

HyperspectralImage::HyperspectralImage(int height_, int width_, Matrix data_,
                                       std::vector<int> band_ids_)
    : height(height_),
      width(width_),
      bands(static_cast<int>(data_.rows())),
      data(std::move(data_)),
      band_ids(std::move(band_ids_)) {
    if (height < 1 || width < 1) {
        throw ParameterError("image height/width must be positive");
    }
    if (data.cols() != static_cast<long>(height) * width) {
        throw ShapeError("pixel count mismatch: data has " + std::to_string(data.cols()) +
                         " columns, grid is " + std::to_string(height) + "x" +
                         std::to_string(width));
    }
    require_nonnegative(data, "image data");
    if (!band_ids.empty()) {
        if (static_cast<int>(band_ids.size()) != bands) {
            throw ShapeError("band_ids length does not match band count");
        }
        for (size_t i = 1; i < band_ids.size(); ++i) {
            if (band_ids[i] <= band_ids[i - 1]) {
                throw ParameterError("band_ids must be strictly increasing");
            }
        }
    }
}

EndmemberMatrix::EndmemberMatrix(Matrix data_) : data(std::move(data_)) {
    require_nonnegative(data, "endmember matrix");
    if (data.cols() > data.rows()) {
        warn("endmember count K=" + std::to_string(data.cols()) +
             " exceeds band count L=" + std::to_string(data.rows()) +
             "; expected K <= min(L, N)");
    }
}

AbundanceMatrix::AbundanceMatrix(Matrix data_) : data(std::move(data_)) {
    require_nonnegative(data, "abundance matrix");
}

GroundTruth::GroundTruth(EndmemberMatrix endmembers_, AbundanceMatrix abundances_)
    : endmembers(std::move(endmembers_)), abundances(std::move(abundances_)) {
    if (endmembers.count() != abundances.count()) {
        throw ShapeError("ground truth endmember/abundance K mismatch");
    }
}

}  // namespace unmix
