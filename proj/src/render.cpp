#include "amoeba/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <png.h>

#include "amoeba/errors.hpp"
#include "parallel.hpp"

namespace amoeba {
namespace {

// Fixed-precision formatting keeps the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v == 0.0 ? 0.0 : v);  // no "-0.0000"
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string order_label(const IntVector& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + k[i].get_str();
  return s + ")";
}

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  static_cast<std::string*>(png_get_io_ptr(png))->append(reinterpret_cast<const char*>(data), length);
}

void check_window(const Box& w) {
  if (w.lo.size() != 2 || w.hi.size() != 2) throw Error(ErrorKind::InvalidInput, "render", "window must be 2-d");
  for (int i = 0; i < 2; ++i)
    if (!(w.hi[i] > w.lo[i]) || !std::isfinite(w.lo[i]) || !std::isfinite(w.hi[i]))
      throw Error(ErrorKind::InvalidInput, "render", "degenerate window");
}

bool inside(const Box& w, const RealVector& y) {
  return y[0] >= w.lo[0] && y[0] <= w.hi[0] && y[1] >= w.lo[1] && y[1] <= w.hi[1];
}

// Parameter interval {t : t * dir in window}, empty when lo > hi.
std::pair<double, double> clip_line(const Box& w, const RealVector& dir) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    if (dir[i] == 0.0) {
      if (w.lo[i] > 0.0 || w.hi[i] < 0.0) return {1.0, 0.0};
      continue;
    }
    double a = w.lo[i] / dir[i], b = w.hi[i] / dir[i];
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  return {lo, hi};
}

// Maps amoeba coordinates to SVG user units (y flipped).
struct Frame {
  double x0, y1, scale;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return (y1 - y) * scale; }
};

std::string svg_open(double w, double h) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\"" << num(w)
    << "\" height=\"" << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
  return o.str();
}

}  // namespace

std::string encode_png_gray(const std::vector<unsigned char>& pixels, std::size_t width, std::size_t height) {
  if (pixels.size() != width * height || width == 0 || height == 0)
    throw Error(ErrorKind::InvalidInput, "render", "pixel buffer does not match the image size");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorKind::InvalidInput, "render", "cannot initialise the PNG writer");
  }
  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::InvalidInput, "render", "PNG encoding failed");
  }
  png_set_write_fn(png, &out, append_bytes, nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 9);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_write_info(png, info);
  for (std::size_t row = 0; row < height; ++row)
    png_write_row(png, const_cast<png_bytep>(pixels.data() + row * width));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::string base64_encode(const std::string& bytes) {
  static constexpr char table[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                       (static_cast<unsigned char>(bytes[i + 1]) << 8) | static_cast<unsigned char>(bytes[i + 2]);
    out += table[(v >> 18) & 63];
    out += table[(v >> 12) & 63];
    out += table[(v >> 6) & 63];
    out += table[v & 63];
  }
  if (i < bytes.size()) {
    unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
    if (i + 1 < bytes.size()) v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    out += table[(v >> 18) & 63];
    out += table[(v >> 12) & 63];
    out += i + 1 < bytes.size() ? table[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

AmoebaFigure render_amoeba(const LaurentPoly& p, const LatticeIso& iso, const ComponentReport& components,
                           const FigureSpec& spec) {
  if (p.rank() != 2 || iso.rank() != 2) throw Error(ErrorKind::UnsupportedRank, "render", "amoeba figures need r = 2");
  check_window(spec.window);
  if (!(spec.pixel_density >= 10.0)) throw Error(ErrorKind::InvalidInput, "render", "pixel_density must be >= 10");

  const Box& w = spec.window;
  AmoebaFigure fig;
  fig.width_px = static_cast<std::size_t>(std::ceil((w.hi[0] - w.lo[0]) * spec.pixel_density));
  fig.height_px = static_cast<std::size_t>(std::ceil((w.hi[1] - w.lo[1]) * spec.pixel_density));
  const double cell_x = (w.hi[0] - w.lo[0]) / static_cast<double>(fig.width_px);
  const double cell_y = (w.hi[1] - w.lo[1]) / static_cast<double>(fig.height_px);

  const double view = 480.0;
  const Frame frame{w.lo[0], w.hi[1], view / std::max(w.hi[0] - w.lo[0], w.hi[1] - w.lo[1])};
  const double width = frame.px(w.hi[0]), height = frame.py(w.lo[1]);
  std::string svg = svg_open(width, height);

  if (spec.layers & kLayerAmoeba) {
    const MembershipTester tester(p, spec.membership);
    std::vector<unsigned char> pixels(fig.width_px * fig.height_px, 255);
    std::vector<unsigned char> dark(pixels.size(), 0);
    detail::parallel_for(pixels.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<Complex> scratch;
      for (std::size_t s = begin; s < end; ++s) {
        const std::size_t row = s / fig.width_px, col = s % fig.width_px;
        const RealVector y{w.lo[0] + (static_cast<double>(col) + 0.5) * cell_x,
                           w.hi[1] - (static_cast<double>(row) + 0.5) * cell_y};
        const MembershipVerdict v = tester.classify(y);
        if (v.status == Membership::CertifiedComplement) continue;
        if (v.status == Membership::LikelyAmoeba) dark[s] = 1;
        if (spec.heat) {
          const double scale = std::exp(p.torus_coefficients(y, scratch));
          const double rel = std::clamp(v.min_modulus / scale, 0.0, 1.0);
          pixels[s] = static_cast<unsigned char>(std::lround(40.0 + 215.0 * std::sqrt(rel)));
          if (dark[s]) pixels[s] = static_cast<unsigned char>(std::min<int>(pixels[s], 40));
        } else if (dark[s]) {
          pixels[s] = 0;
        }
      }
    });
    fig.amoeba_pixels = static_cast<std::size_t>(std::count(dark.begin(), dark.end(), 1));
    svg += "<image x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" preserveAspectRatio=\"none\" style=\"image-rendering:pixelated\" xlink:href=\"data:image/png;base64," +
           base64_encode(encode_png_gray(pixels, fig.width_px, fig.height_px)) + "\"/>\n";
  }

  // L(R^n) is a line exactly when n = 1; for n = 2 it fills the plane.
  const bool line = iso.ambient_dim() == 1;
  const RealVector dir = line ? RealVector{iso.omega()[0][0], iso.omega()[1][0]} : RealVector{};
  if (line && (spec.layers & kLayerLine)) {
    const auto [t0, t1] = clip_line(w, dir);
    if (t0 <= t1)
      svg += "<line x1=\"" + num(frame.px(t0 * dir[0])) + "\" y1=\"" + num(frame.py(t0 * dir[1])) + "\" x2=\"" +
             num(frame.px(t1 * dir[0])) + "\" y2=\"" + num(frame.py(t1 * dir[1])) +
             "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  }

  if (spec.layers & kLayerLabels) {
    for (const Component& c : components.components) {
      RealVector at;
      if (line) {
        const auto [t0, t1] = clip_line(w, dir);
        const double a = std::max(t0, c.extent_lo[0]), b = std::min(t1, c.extent_hi[0]);
        if (a > b) continue;
        const double t = 0.5 * (a + b);
        at = {t * dir[0], t * dir[1]};
      } else {
        at = embed_L(iso, c.sample);
        if (!inside(w, at)) continue;
      }
      ++fig.labeled_regions;
      svg += "<circle cx=\"" + num(frame.px(at[0])) + "\" cy=\"" + num(frame.py(at[1])) +
             "\" r=\"2.5\" fill=\"#1f4e9e\"/>\n<text x=\"" + num(frame.px(at[0]) + 4.0) + "\" y=\"" +
             num(frame.py(at[1]) - 4.0) + "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f4e9e\">" +
             order_label(c.order_gamma) + "</text>\n";
    }
  }

  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"none\" stroke=\"black\"/>\n</svg>\n";
  fig.svg = std::move(svg);
  return fig;
}

std::string render_polytope(const LatticePolytope& poly, const LambdaSet& lambda, const FigureSpec& spec) {
  if (poly.ambient_dim() != 2) throw Error(ErrorKind::UnsupportedRank, "render", "polytope figures need r = 2");
  for (const IntVector& k : lambda.points_gamma)
    if (!poly.contains(k))
      throw Error(ErrorKind::InvalidInput, "render", "lambda point " + order_label(k) + " lies outside the hull");

  std::vector<RealVector> verts;
  for (const IntVector& v : poly.vertices()) verts.push_back({to_double(v[0]), to_double(v[1])});
  RealVector lo = verts.front(), hi = verts.front();
  for (const auto& v : verts)
    for (int i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  for (int i = 0; i < 2; ++i) {
    lo[i] -= 1.0;
    hi[i] += 1.0;
  }

  const Frame frame{lo[0], hi[1], 360.0 / std::max(hi[0] - lo[0], hi[1] - lo[1])};
  const double width = frame.px(hi[0]), height = frame.py(lo[1]);
  std::string svg = svg_open(width, height);

  if (spec.layers & kLayerPolytope) {
    for (long x = static_cast<long>(lo[0]); x <= static_cast<long>(hi[0]); ++x)
      svg += "<line x1=\"" + num(frame.px(x)) + "\" y1=\"0\" x2=\"" + num(frame.px(x)) + "\" y2=\"" + num(height) +
             "\" stroke=\"" + (x == 0 ? "#888" : "#ddd") + "\" stroke-width=\"1\"/>\n";
    for (long y = static_cast<long>(lo[1]); y <= static_cast<long>(hi[1]); ++y)
      svg += "<line x1=\"0\" y1=\"" + num(frame.py(y)) + "\" x2=\"" + num(width) + "\" y2=\"" + num(frame.py(y)) +
             "\" stroke=\"" + (y == 0 ? "#888" : "#ddd") + "\" stroke-width=\"1\"/>\n";

    // Vertices in counterclockwise order around their centroid.
    double cx = 0.0, cy = 0.0;
    for (const auto& v : verts) {
      cx += v[0] / static_cast<double>(verts.size());
      cy += v[1] / static_cast<double>(verts.size());
    }
    std::sort(verts.begin(), verts.end(), [&](const RealVector& a, const RealVector& b) {
      return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
    });
    std::string pts;
    for (const auto& v : verts) pts += (pts.empty() ? "" : " ") + num(frame.px(v[0])) + "," + num(frame.py(v[1]));
    if (verts.size() == 1)
      svg += "<circle cx=\"" + num(frame.px(verts[0][0])) + "\" cy=\"" + num(frame.py(verts[0][1])) +
             "\" r=\"6\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    else
      svg += "<polygon points=\"" + pts + "\" fill=\"#eef3fb\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }

  if (spec.layers & kLayerLambda)
    for (const IntVector& k : lambda.points_gamma)
      svg += "<circle cx=\"" + num(frame.px(to_double(k[0]))) + "\" cy=\"" + num(frame.py(to_double(k[1]))) +
             "\" r=\"4\" fill=\"black\"/>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace amoeba
