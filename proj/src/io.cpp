#include "gteval/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gteval {
namespace io {

namespace {

struct PnmImage {
    int type = 0;  // 2, 3, 5 or 6
    int width = 0, height = 0, maxval = 0;
    std::vector<std::uint32_t> samples;  // 1 (gray) or 3 (rgb) per pixel
    int channels() const { return (type == 3 || type == 6) ? 3 : 1; }
};

int next_pnm_token(std::istream& in) {
    // Skips whitespace and '#' comments, returns the next integer.
    for (;;) {
        const int c = in.peek();
        if (c == EOF) throw DataError("pnm: unexpected end of file in header");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = 0;
    in >> value;
    if (!in) throw DataError("pnm: malformed header");
    return value;
}

PnmImage load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P') throw DataError("'" + path + "' is not a PNM file");

    PnmImage img;
    img.type = magic[1] - '0';
    if (img.type != 2 && img.type != 3 && img.type != 5 && img.type != 6)
        throw DataError("'" + path + "': unsupported PNM type P" + std::string(1, magic[1]));

    img.width = next_pnm_token(in);
    img.height = next_pnm_token(in);
    img.maxval = next_pnm_token(in);
    if (img.width < 1 || img.height < 1 || img.maxval < 1 || img.maxval > 65535)
        throw DataError("'" + path + "': invalid PNM dimensions");

    const std::size_t count = static_cast<std::size_t>(img.width) *
                              static_cast<std::size_t>(img.height) *
                              static_cast<std::size_t>(img.channels());
    img.samples.resize(count);

    if (img.type == 2 || img.type == 3) {
        for (std::size_t i = 0; i < count; ++i)
            img.samples[i] = static_cast<std::uint32_t>(next_pnm_token(in));
        return img;
    }

    in.get();  // single whitespace after maxval
    if (img.maxval < 256) {
        std::vector<unsigned char> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (!in) throw DataError("'" + path + "': truncated PNM data");
        for (std::size_t i = 0; i < count; ++i) img.samples[i] = raw[i];
    } else {
        std::vector<unsigned char> raw(count * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 2));
        if (!in) throw DataError("'" + path + "': truncated PNM data");
        for (std::size_t i = 0; i < count; ++i)
            img.samples[i] = static_cast<std::uint32_t>(raw[2 * i]) << 8 | raw[2 * i + 1];
    }
    return img;
}

void write_pgm(const std::string& path, int width, int height, int maxval,
               const std::vector<std::uint32_t>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
    if (maxval < 256) {
        for (std::uint32_t s : samples) out.put(static_cast<char>(s));
    } else {
        for (std::uint32_t s : samples) {
            out.put(static_cast<char>(s >> 8));
            out.put(static_cast<char>(s & 0xFF));
        }
    }
    if (!out) throw DataError("error while writing '" + path + "'");
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ScalarField load_response_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw DataError("'" + path + "': empty response CSV");
    std::replace(header.begin(), header.end(), ',', ' ');
    std::istringstream hs(header);
    int width = 0, height = 0;
    if (!(hs >> width >> height) || width < 1 || height < 1)
        throw DataError("'" + path + "': response CSV header must give X, Y");

    const ImageGrid grid(width, height);
    std::vector<double> values;
    values.reserve(grid.pixel_count());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::stod(line));
    }
    if (values.size() != grid.pixel_count())
        throw DataError("'" + path + "': expected " + std::to_string(grid.pixel_count()) +
                        " values, got " + std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("'" + path + "': non-finite response value");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (lo < 0.0 || hi > 1.0) {
        if (hi == lo)
            throw DataError("'" + path + "': constant response outside [0, 1]");
        for (double& v : values) v = (v - lo) / (hi - lo);
    }
    return ScalarField(grid, std::move(values));
}

}  // namespace

BinaryMask load_mask(const std::string& path) {
    const PnmImage img = load_pnm(path);
    const ImageGrid grid(img.width, img.height);
    BinaryMask mask(grid);
    const int ch = img.channels();
    for (std::size_t i = 0; i < grid.pixel_count(); ++i) {
        std::uint32_t v = 0;
        for (int c = 0; c < ch; ++c) v |= img.samples[i * static_cast<std::size_t>(ch) +
                                                      static_cast<std::size_t>(c)];
        mask.set(i, v != 0);
    }
    return mask;
}

void write_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<std::uint32_t> samples(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) samples[i] = mask.at(i) ? 255 : 0;
    write_pgm(path, mask.grid().width, mask.grid().height, 255, samples);
}

ScalarField load_response(const std::string& path) {
    if (has_suffix(path, ".csv")) return load_response_csv(path);
    const PnmImage img = load_pnm(path);
    if (img.channels() != 1)
        throw DataError("'" + path + "': detector responses must be grayscale");
    const ImageGrid grid(img.width, img.height);
    std::vector<double> values(grid.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = static_cast<double>(img.samples[i]) / static_cast<double>(img.maxval);
    return ScalarField(grid, std::move(values));
}

ColorImage load_image(const std::string& path) {
    const PnmImage img = load_pnm(path);
    const ImageGrid grid(img.width, img.height);
    const double scale = 255.0 / static_cast<double>(img.maxval);
    if (img.channels() == 1) {
        std::vector<double> gray(grid.pixel_count());
        for (std::size_t i = 0; i < gray.size(); ++i)
            gray[i] = static_cast<double>(img.samples[i]) * scale;
        return ColorImage::grayscale(grid, std::move(gray));
    }
    std::vector<double> r(grid.pixel_count()), g(grid.pixel_count()), b(grid.pixel_count());
    for (std::size_t i = 0; i < grid.pixel_count(); ++i) {
        r[i] = static_cast<double>(img.samples[3 * i]) * scale;
        g[i] = static_cast<double>(img.samples[3 * i + 1]) * scale;
        b[i] = static_cast<double>(img.samples[3 * i + 2]) * scale;
    }
    return ColorImage::rgb(grid, std::move(r), std::move(g), std::move(b));
}

void write_image(const ColorImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    const auto quantize = [](double v) {
        return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
    };
    if (img.is_color()) {
        const auto& r = img.channel("red");
        const auto& g = img.channel("green");
        const auto& b = img.channel("blue");
        out << "P6\n" << img.grid().width << " " << img.grid().height << "\n255\n";
        for (std::size_t i = 0; i < img.grid().pixel_count(); ++i) {
            out.put(static_cast<char>(quantize(r[i])));
            out.put(static_cast<char>(quantize(g[i])));
            out.put(static_cast<char>(quantize(b[i])));
        }
    } else {
        const auto& gray = img.channel("gray");
        out << "P5\n" << img.grid().width << " " << img.grid().height << "\n255\n";
        for (std::size_t i = 0; i < img.grid().pixel_count(); ++i)
            out.put(static_cast<char>(quantize(gray[i])));
    }
    if (!out) throw DataError("error while writing '" + path + "'");
}

void write_counts(const AgreementMap& agreement, const std::string& path) {
    std::vector<std::uint32_t> samples(agreement.counts.begin(), agreement.counts.end());
    write_pgm(path, agreement.grid.width, agreement.grid.height,
              std::max(1, agreement.n_annotators), samples);
}

void write_posterior(const ScalarField& posterior, const std::string& path) {
    std::vector<std::uint32_t> samples(posterior.size());
    for (std::size_t i = 0; i < posterior.size(); ++i) {
        const double v = std::clamp(posterior.at(i), 0.0, 1.0);
        samples[i] = static_cast<std::uint32_t>(std::lround(v * 65535.0));
    }
    write_pgm(path, posterior.grid().width, posterior.grid().height, 65535, samples);
}

std::string parent_dir(const std::string& path) {
    const std::size_t slash = path.find_last_of('/');
    if (slash == std::string::npos) return ".";
    if (slash == 0) return "/";
    return path.substr(0, slash);
}

std::string join_path(const std::string& dir, const std::string& path) {
    if (path.empty() || path.front() == '/' || dir.empty() || dir == ".") return path;
    return dir + "/" + path;
}

StackManifest StackManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("manifest '" + path + "': " + e.what());
    }

    StackManifest m;
    m.image_path = j.value("image", "");
    m.nir_path = j.value("nir", "");
    m.roi_path = j.value("roi", "");
    if (!j.contains("annotations") || !j["annotations"].is_array() || j["annotations"].empty())
        throw DataError("manifest '" + path + "': needs a non-empty 'annotations' array");
    for (const auto& entry : j["annotations"]) {
        if (!entry.contains("id") || !entry.contains("mask"))
            throw DataError("manifest '" + path + "': annotation entries need 'id' and 'mask'");
        m.annotations.emplace_back(entry["id"].get<std::string>(),
                                   entry["mask"].get<std::string>());
    }
    if (j.contains("extents")) {
        for (const auto& e : j["extents"])
            m.extents.push_back({e.at("x").get<int>(), e.at("y").get<int>(),
                                 e.at("width").get<int>(), e.at("height").get<int>()});
    }
    return m;
}

void StackManifest::save(const std::string& path) const {
    nlohmann::ordered_json j;
    if (!image_path.empty()) j["image"] = image_path;
    if (!nir_path.empty()) j["nir"] = nir_path;
    if (!roi_path.empty()) j["roi"] = roi_path;
    j["annotations"] = nlohmann::ordered_json::array();
    for (const auto& [id, mask] : annotations)
        j["annotations"].push_back({{"id", id}, {"mask", mask}});
    if (!extents.empty()) {
        j["extents"] = nlohmann::ordered_json::array();
        for (const Rect& r : extents)
            j["extents"].push_back(
                {{"x", r.x}, {"y", r.y}, {"width", r.width}, {"height", r.height}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest '" + path + "'");
    out << j.dump(2) << "\n";
}

LoadedStack load_stack(const StackManifest& manifest, const std::string& manifest_dir) {
    std::optional<BinaryMask> roi;
    if (!manifest.roi_path.empty())
        roi = load_mask(join_path(manifest_dir, manifest.roi_path));

    std::vector<Annotation> annotations;
    for (const auto& [id, mask_path] : manifest.annotations)
        annotations.push_back({id, load_mask(join_path(manifest_dir, mask_path))});

    AnnotationStack stack(std::move(annotations), std::move(roi));

    std::optional<ColorImage> image;
    if (!manifest.image_path.empty()) {
        image = load_image(join_path(manifest_dir, manifest.image_path));
        require_same_grid(stack.grid(), image->grid(), "manifest image");
        if (!manifest.nir_path.empty()) {
            ColorImage nir = load_image(join_path(manifest_dir, manifest.nir_path));
            require_same_grid(stack.grid(), nir.grid(), "manifest nir plane");
            image->add_channel("nir", nir.is_grayscale() ? nir.channel("gray")
                                                         : to_intensity(nir).values());
        }
    }

    if (!manifest.extents.empty()) {
        // Extents must tile the grid exactly: every pixel covered once.
        std::vector<std::uint8_t> covered(stack.grid().pixel_count(), 0);
        for (const Rect& r : manifest.extents) {
            if (r.x < 0 || r.y < 0 || r.width < 1 || r.height < 1 ||
                r.x + r.width > stack.grid().width || r.y + r.height > stack.grid().height)
                throw DataError("manifest: extent outside the image grid");
            for (int y = r.y; y < r.y + r.height; ++y)
                for (int x = r.x; x < r.x + r.width; ++x) {
                    auto& c = covered[stack.grid().index(x, y)];
                    if (c) throw DataError("manifest: extents overlap");
                    c = 1;
                }
        }
        for (std::uint8_t c : covered)
            if (!c) throw DataError("manifest: extents do not cover the grid");
    }

    return LoadedStack{std::move(stack), std::move(image), manifest.extents};
}

LoadedStack load_stack_file(const std::string& manifest_path) {
    return load_stack(StackManifest::load(manifest_path), parent_dir(manifest_path));
}

}  // namespace io
}  // namespace gteval
