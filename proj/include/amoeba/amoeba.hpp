#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "amoeba/exposum.hpp"
#include "amoeba/geometry.hpp"
#include "amoeba/lattice.hpp"
#include "amoeba/ronkin.hpp"
#include "amoeba/torus.hpp"

namespace amoeba {

enum class Membership { CertifiedComplement, LikelyAmoeba, LikelyComplement };

std::string_view to_string(Membership m);

struct MembershipVerdict {
  RealVector point;
  Membership status = Membership::LikelyAmoeba;
  double min_modulus = 0.0;  // certified lower bound when CertifiedComplement
  std::optional<IntVector> order;
};

struct MembershipOptions {
  std::size_t theta_grid = 64;
  double threshold = 1e-3;  // relative to the largest term modulus at the point
};

// Classifies points of L(R^n) against the amoeba of P: lopsidedness first, then
// min |P| over the character torus (grid scan refined by Gauss-Newton).
// Immutable; safe to share across threads.
class MembershipTester {
 public:
  MembershipTester(LaurentPoly p, MembershipOptions options = {});

  const LaurentPoly& poly() const { return poly_; }
  const MembershipOptions& options() const { return options_; }

  MembershipVerdict classify(const RealVector& y) const;
  // Min over the torus of |P(e^{y + i theta})| after refinement.
  double min_modulus(const RealVector& y) const;

 private:
  LaurentPoly poly_;
  MembershipOptions options_;
  TorusSampler sampler_;
  std::vector<RealVector> k_real_;
};

MembershipVerdict membership(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x,
                             MembershipOptions options = {});

struct Box {
  RealVector lo;
  RealVector hi;
};

struct ScanOptions {
  std::size_t resolution = 400;
  MembershipOptions membership{};
  OrderOptions order{};
  std::optional<Box> box;  // auto-sized when absent
  std::size_t threads = 1;
};

struct Component {
  RealVector sample;  // sample closest to the centroid
  IntVector order_gamma;
  RealVector order_spectrum;
  RealVector extent_lo;
  RealVector extent_hi;
  RealVector centroid;
  std::size_t sample_count = 0;
  std::size_t certified_samples = 0;  // samples with a lopsidedness certificate
  std::size_t pieces = 1;             // grid-connected pieces merged by equal order
};

struct ComponentReport {
  std::vector<Component> components;  // sorted by order_gamma
  std::size_t rho_estimate = 0;
  Box scan_box;
  std::size_t resolution = 0;
  std::size_t theta_grid = 0;
  std::size_t amoeba_samples = 0;
  std::size_t unresolved_samples = 0;
};

// Box around the origin reaching the lopsided region of every Newton vertex, padded 20%.
Box auto_box(const ExponentialSum& f, const LatticeIso& iso);

ComponentReport scan_components(const ExponentialSum& f, const LatticeIso& iso, const ScanOptions& options = {});

struct AnalysisOptions {
  ScanOptions scan{};
  double box_cap = 1e8;
};

struct AmoebaReport {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> vertex_indices;
  std::size_t card_vertices = 0;
  std::vector<IntVector> gamma_points;  // gamma(Sp f) in term order
  LambdaSet lambda;
  std::size_t card_lambda = 0;
  double upsilon = 0.0;
  std::size_t rho_estimate = 0;
  bool sparse = false;
  bool solid_observed = false;
  std::optional<std::size_t> newton_integer_points;  // card(Gamma_f ∩ Z^n) for integral spectra
  ComponentReport components;
};

// Throws BoundChainViolation unless card_vertices <= rho <= card_lambda < upsilon.
void check_bound_chain(const AmoebaReport& report);

AmoebaReport analyze(const ExponentialSum& f, const LatticeIso& iso, const AnalysisOptions& options = {});
AmoebaReport analyze(const ExponentialSum& f, const AnalysisOptions& options = {});

struct Disagreement {
  RealVector point;
  RealVector character;
  Membership plain;
  Membership twisted;
};

struct PerturbationReport {
  std::size_t checks = 0;
  std::vector<Disagreement> disagreements;
};

// Membership of f and of its character twists f_chi must agree pointwise.
PerturbationReport perturbation_invariance_check(const ExponentialSum& f, const LatticeIso& iso,
                                                 const std::vector<RealVector>& samples,
                                                 const std::vector<RealVector>& characters,
                                                 MembershipOptions options = {});

}  // namespace amoeba
