#include "guikit/guienv_gen.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace guikit {

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string box_tag(const Box& b) {
  return "<box>" + format_coordinate(b.x1, b.space) + " " +
         format_coordinate(b.y1, b.space) + " " +
         format_coordinate(b.x2, b.space) + " " +
         format_coordinate(b.y2, b.space) + "</box>";
}

}  // namespace

std::vector<std::string> CropSpec::problems() const {
  std::vector<std::string> out;
  if (max_width <= 0 || max_height <= 0) {
    out.push_back("crop size must be positive");
  }
  if (min_elements == 0) out.push_back("min_elements must be positive");
  if (samples_per_crop == 0) out.push_back("samples_per_crop must be positive");
  if (samples_per_crop > min_elements) {
    out.push_back("samples_per_crop must not exceed min_elements");
  }
  return out;
}

std::string_view to_string(QaKind kind) {
  return kind == QaKind::text2bbox ? "text2bbox" : "bbox2text";
}

GlobalAnnotation global_annotation(const PageCapture& capture) {
  GlobalAnnotation out{capture.screenshot, {}};
  for (const PageElement* e : in_layout_order(capture)) {
    if (!e->ocr_eligible()) continue;
    const Box scaled =
        convert_space(e->box, PositionSpace::scaled_1000, capture.viewport);
    if (!out.serialized.empty()) out.serialized += '\n';
    std::string text = e->text;
    std::replace(text.begin(), text.end(), '\n', ' ');
    out.serialized += text + box_tag(scaled);
  }
  return out;
}

std::vector<PageCapture> crop_capture(const PageCapture& capture,
                                      const CropSpec& spec) {
  std::vector<PageCapture> crops;
  const int page_w = capture.viewport.width_px;
  const int page_h = capture.viewport.height_px;
  if (page_w <= 0 || page_h <= 0 || spec.max_width <= 0 || spec.max_height <= 0) {
    return crops;
  }
  for (int y0 = 0; y0 < page_h; y0 += spec.max_height) {
    for (int x0 = 0; x0 < page_w; x0 += spec.max_width) {
      const CropRect rect{x0, y0, std::min(spec.max_width, page_w - x0),
                          std::min(spec.max_height, page_h - y0)};
      PageCapture crop;
      crop.url = capture.url;
      crop.screenshot = capture.screenshot;
      crop.viewport = {rect.width, rect.height};
      crop.crop = rect;
      for (const auto& e : capture.elements) {
        const Box& b = e.box;
        if (b.x1 >= rect.x && b.y1 >= rect.y && b.x2 <= rect.x + rect.width &&
            b.y2 <= rect.y + rect.height) {
          PageElement local = e;
          local.box = {b.x1 - rect.x, b.y1 - rect.y, b.x2 - rect.x,
                       b.y2 - rect.y, PositionSpace::absolute_px};
          crop.elements.push_back(std::move(local));
        }
      }
      crops.push_back(std::move(crop));
    }
  }
  return crops;
}

std::vector<PageCapture> filter_crops(std::vector<PageCapture> crops,
                                      const CropSpec& spec) {
  std::erase_if(crops, [&](const PageCapture& c) {
    const auto eligible = std::count_if(
        c.elements.begin(), c.elements.end(),
        [](const PageElement& e) { return e.ocr_eligible(); });
    return static_cast<std::size_t>(eligible) < spec.min_elements;
  });
  return crops;
}

std::string crop_ref(const PageCapture& crop) {
  const CropRect r = crop.crop.value_or(
      CropRect{0, 0, crop.viewport.width_px, crop.viewport.height_px});
  return crop.screenshot + "#" + std::to_string(r.x) + "," +
         std::to_string(r.y) + "," + std::to_string(r.width) + "x" +
         std::to_string(r.height);
}

std::uint64_t crop_seed(std::uint64_t run_seed, std::string_view ref) {
  return splitmix64(run_seed ^ fnv1a64(ref));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t v = rng();
  while (v > limit) v = rng();
  return v % bound;
}

std::vector<QASample> sample_qa(const PageCapture& crop, const CropSpec& spec,
                                std::uint64_t seed) {
  std::vector<const PageElement*> pool;
  for (const PageElement* e : in_layout_order(crop)) {
    if (e->ocr_eligible()) pool.push_back(e);
  }
  if (pool.size() < spec.samples_per_crop) {
    throw std::invalid_argument(
        "crop has " + std::to_string(pool.size()) +
        " eligible elements, fewer than samples_per_crop " +
        std::to_string(spec.samples_per_crop));
  }

  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first k slots become the sample.
  const std::size_t k = spec.samples_per_crop;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }

  const std::string ref = crop_ref(crop);
  const CropRect rect = crop.crop.value_or(
      CropRect{0, 0, crop.viewport.width_px, crop.viewport.height_px});
  std::vector<QASample> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const PageElement& e = *pool[i];
    QASample s;
    s.id = ref + "#" + std::to_string(i);
    s.kind = (rng() >> 63) != 0 ? QaKind::bbox2text : QaKind::text2bbox;
    s.crop_ref = ref;
    s.crop = rect;
    s.element_id = e.id;
    s.text = e.text;
    s.box = convert_space(e.box, PositionSpace::scaled_1000, crop.viewport);
    out.push_back(std::move(s));
  }
  return out;
}

GuienvOutput generate_guienv(const PageCapture& capture, const CropSpec& spec,
                             std::uint64_t seed) {
  GuienvOutput out;
  out.global = global_annotation(capture);
  out.crops = crop_capture(capture, spec);
  out.kept = filter_crops(out.crops, spec);
  for (const auto& crop : out.kept) {
    auto samples = sample_qa(crop, spec, crop_seed(seed, crop_ref(crop)));
    std::move(samples.begin(), samples.end(), std::back_inserter(out.samples));
  }
  return out;
}

}  // namespace guikit
