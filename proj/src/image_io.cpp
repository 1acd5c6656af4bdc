#include "saltex/image_io.hpp"

#include <cmath>
#include <filesystem>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace saltex {

namespace {

cv::Mat decode(const std::filesystem::path& path, int flags) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec)
        throw Error(ErrorCode::Io, "cannot read " + path.string());
    cv::Mat m = cv::imread(path.string(), flags);
    if (m.empty())
        throw Error(ErrorCode::Format, "cannot decode " + path.string());
    return m;
}

// OpenCV decodes into BGR(A) order; channel 2 is the file's first channel.
int first_channel_index(int channels) { return channels >= 3 ? 2 : 0; }

} // namespace

RasterU8 load_image(const std::filesystem::path& path) {
    cv::Mat bgr = decode(path, cv::IMREAD_COLOR); // grayscale replicated to 3 channels
    if (bgr.rows < 3 || bgr.cols < 3)
        throw Error(ErrorCode::TooSmall, path.string() + ": dimension below 3");

    RasterU8 img;
    img.width = bgr.cols;
    img.height = bgr.rows;
    img.channels = 3;
    img.data.resize(img.pixel_count() * 3);
    for (int y = 0; y < img.height; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width; ++x) {
            img.at(x, y, 0) = row[x][2];
            img.at(x, y, 1) = row[x][1];
            img.at(x, y, 2) = row[x][0];
        }
    }
    return img;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
    cv::Mat m = decode(path, cv::IMREAD_UNCHANGED);
    if (m.depth() != CV_8U)
        m.convertTo(m, CV_8U);

    GroundTruth gt;
    gt.width = m.cols;
    gt.height = m.rows;
    gt.mask.resize(gt.pixel_count());
    const int ch = m.channels();
    const int c0 = first_channel_index(ch);
    for (int y = 0; y < gt.height; ++y) {
        const std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < gt.width; ++x)
            gt.mask[static_cast<std::size_t>(y) * gt.width + x] = row[x * ch + c0] >= 128 ? 1 : 0;
    }
    return gt;
}

SaliencyMap load_saliency(const std::filesystem::path& path) {
    cv::Mat m = decode(path, cv::IMREAD_UNCHANGED);
    if (m.depth() != CV_8U)
        m.convertTo(m, CV_8U);

    SaliencyMap map;
    map.width = m.cols;
    map.height = m.rows;
    map.values.resize(map.pixel_count());
    const int ch = m.channels();
    const int c0 = first_channel_index(ch);
    for (int y = 0; y < map.height; ++y) {
        const std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < map.width; ++x)
            map.values[static_cast<std::size_t>(y) * map.width + x] = row[x * ch + c0] / 255.0;
    }
    return map;
}

void save_saliency(const SaliencyMap& map, const std::filesystem::path& path) {
    cv::Mat m(map.height, map.width, CV_8UC1);
    for (int y = 0; y < map.height; ++y) {
        std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < map.width; ++x) {
            long v = std::lround(255.0 * map.at(x, y));
            row[x] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
        }
    }
    if (!cv::imwrite(path.string(), m, {cv::IMWRITE_PNG_COMPRESSION, 3}))
        throw Error(ErrorCode::Io, "cannot write " + path.string());
}

void save_raster(const RasterU8& img, const std::filesystem::path& path) {
    cv::Mat m(img.height, img.width, img.channels == 1 ? CV_8UC1 : CV_8UC3);
    for (int y = 0; y < img.height; ++y) {
        std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width; ++x) {
            if (img.channels == 1) {
                row[x] = img.at(x, y, 0);
            } else {
                row[x * 3 + 0] = img.at(x, y, 2); // back to BGR for the encoder
                row[x * 3 + 1] = img.at(x, y, 1);
                row[x * 3 + 2] = img.at(x, y, 0);
            }
        }
    }
    if (!cv::imwrite(path.string(), m, {cv::IMWRITE_PNG_COMPRESSION, 3}))
        throw Error(ErrorCode::Io, "cannot write " + path.string());
}

} // namespace saltex
