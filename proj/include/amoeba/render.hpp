#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "amoeba/geometry.hpp"
#include "amoeba/lattice.hpp"
#include "amoeba/ronkin.hpp"

namespace amoeba {

enum Layer : unsigned {
  kLayerAmoeba = 1u << 0,
  kLayerLine = 1u << 1,
  kLayerPolytope = 1u << 2,
  kLayerLambda = 1u << 3,
  kLayerLabels = 1u << 4,
  kLayerAll = 0x1f,
};

struct FigureSpec {
  Box window{{-4.0, -4.0}, {4.0, 4.0}};  // amoeba coordinates
  double pixel_density = 10.0;            // samples per unit, at least 10
  unsigned layers = kLayerAll;
  bool heat = false;  // shade the amoeba by min |P| instead of a flat fill
  MembershipOptions membership{};
  std::size_t threads = 1;
};

struct AmoebaFigure {
  std::string svg;
  std::size_t labeled_regions = 0;
  std::size_t width_px = 0;
  std::size_t height_px = 0;
  std::size_t amoeba_pixels = 0;
};

// Raster of the amoeba of P over spec.window with L(R^n) and the component
// orders from `components` overlaid. Requires rank 2.
AmoebaFigure render_amoeba(const LaurentPoly& p, const LatticeIso& iso, const ComponentReport& components,
                           const FigureSpec& spec = {});

// Hull outline, Lambda points and the integer grid. Requires ambient dimension 2.
std::string render_polytope(const LatticePolytope& poly, const LambdaSet& lambda, const FigureSpec& spec = {});

// 8-bit grayscale PNG, rows top to bottom.
std::string encode_png_gray(const std::vector<unsigned char>& pixels, std::size_t width, std::size_t height);
std::string base64_encode(const std::string& bytes);

}  // namespace amoeba
