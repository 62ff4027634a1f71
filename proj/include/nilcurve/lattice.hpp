#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/geodesic.hpp"
#include "nilcurve/metric.hpp"
#include "nilcurve/zlattice.hpp"

namespace nilcurve {

struct LatticeSpec {
  std::vector<GroupElement> generators;
  std::size_t word_bound = 2;
  long box = 1;
};

// Γ generated by rational elements. Elements are written ℓ^m · exp(c) with
// ℓ_j ∈ Γ lifting a basis of π(log Γ) and c ∈ log Γ ∩ 𝔷.
class Lattice {
 public:
  Lattice(const AlgebraSpec& algebra, const WittFrame& frame, LatticeSpec spec);

  const AlgebraSpec& algebra() const { return algebra_; }
  const WittFrame& frame() const { return frame_; }
  const LatticeSpec& spec() const { return spec_; }

  const ZModule& base() const { return base_; }  // π(log Γ), coordinates on V ⊕ E
  const std::vector<GroupElement>& lifts() const { return lifts_; }
  const ZModule& central() const { return central_; }  // log Γ ∩ 𝔷, full coordinates

  QVector project(const QVector& x) const;  // coordinates of x mod 𝔷 on V ⊕ E
  bool contains(const GroupElement& g) const;
  GroupElement element(const ZVector& base_coords, const ZVector& central_coords) const;

  // Nonidentity elements with every coordinate in [−r, r].
  std::vector<GroupElement> box_elements(long r) const;
  // Words of length <= word_bound in the generators and their inverses.
  const std::vector<GroupElement>& closure_cache() const { return closure_; }

  // Canonical label of the Γ-conjugacy class: log φ reduced modulo [log Γ, log φ].
  QVector class_representative(const GroupElement& g) const;

 private:
  AlgebraSpec algebra_;
  WittFrame frame_;
  LatticeSpec spec_;
  QMatrix to_frame_;  // ordered-basis coordinates of x
  ZModule base_, central_;
  std::vector<GroupElement> lifts_;
  std::vector<GroupElement> closure_;
};

// Generators exp(e_1), …, exp(e_n).
LatticeSpec integer_lattice(std::size_t dim, long box = 1, std::size_t word_bound = 2);

struct RationalityResult {
  bool rational = true;
  QMatrix witness;  // basis in which the structure constants are rational
};
RationalityResult rationality_check(const AlgebraSpec& algebra);

struct ToriSpec {
  std::vector<QVector> T_z_basis;  // basis of log Γ ∩ 𝔷
  std::vector<QVector> T_v_basis;  // basis of π(log Γ), as vectors of V ⊕ E
  bool fiber_degenerate = false;   // U ≠ {0}
  bool base_is_T_v = false;        // T_B ≅ T_𝔳 when the center is nondegenerate
  std::size_t dim_center = 0, dim_complement = 0;
};
ToriSpec tori(const Lattice& lattice);

// <R(x,y)y,x> + ¾<[x,y],[x,y]> for x, y ∈ V ⊕ E.
Rational base_curvature_numerator(const QVector& x, const QVector& y, const AlgebraSpec& algebra,
                                  const MetricSpec& metric, const WittFrame& frame);

enum class SubmersionType { pseudoriemannian, generalized };
const char* to_string(SubmersionType t);
SubmersionType submersion_type(const WittFrame& frame);

struct PeriodValue {
  double value = 0;
  std::optional<Rational> squared;  // exact ω² when known
  std::size_t multiplicity = 0;
};

// Periods of the flat torus Γ\R^m for Γ spanned by `generators`, over the
// coefficient box [−bound, bound] in the Hermite basis.
std::vector<PeriodValue> flat_torus_period_spectrum(const std::vector<QVector>& generators, const MetricSpec& metric,
                                                    long bound);

struct ConjugacyClass {
  QVector representative;  // canonical log coordinates
  std::size_t size = 0;    // members inside the box
  bool central = false;
};
std::vector<ConjugacyClass> boxed_classes(const Lattice& lattice, long bound);

enum class Bucket { fiber, base, excluded };
const char* to_string(Bucket b);

struct ClassPeriod {
  QVector representative;
  std::size_t class_size = 0;
  bool central = false;
  double period = 0;
  std::optional<Rational> squared;
  Bucket bucket = Bucket::base;
  double residual = 0;
  Eigen::VectorXd velocity;
};

// Excluded when both the 𝔷- and 𝔳-parts of the velocity are null.
Bucket classify_bucket(const QVector& velocity, bool central, const WittFrame& frame, const MetricSpec& metric);
Bucket classify_bucket(const Eigen::VectorXd& velocity, bool central, const WittFrame& frame,
                       const MetricSpec& metric, double tol);

// Requires [𝔫,𝔫] ⊆ U and E = {0}. A class of exp(F) has a period iff ∇_F F = 0 and
// F is not null, in which case it is |F|; every such period is certified numerically.
std::vector<ClassPeriod> flat_group_period_spectrum(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                                    double certify_tol = 1e-8);

struct SpectrumPartition {
  std::vector<ClassPeriod> fiber, base, excluded;
  std::size_t classes = 0;
  std::size_t classes_without_period = 0;
};
SpectrumPartition spectrum_partition(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                     const PeriodSearchOptions& search = {});

struct DistinguishedSpectrum {
  std::vector<ClassPeriod> entries;
  std::size_t null_classes = 0;
  std::optional<bool> fiber_cross_check;  // set for nonsingular algebras
};
DistinguishedSpectrum distinguished_period_spectrum(const Lattice& lattice, const MetricSpec& metric, long bound);

struct LorentzCheck {
  std::string name;
  std::string scope;   // "central" or "all"
  std::vector<CausalSearch> searches;
  std::size_t elements = 0;
  PeriodSearchStats stats;
  std::vector<TranslationCertificate> certificates;
};

struct LorentzReport {
  bool timelike_negative = false;  // timelike means <v,v> < 0 for this metric
  std::vector<LorentzCheck> checks;
  bool violation() const;
};

LorentzReport lorentz_closed_geodesic_checks(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                             const PeriodSearchOptions& search = {});

enum class Resonance { in_resonance, not_in_resonance, undecidable };
const char* to_string(Resonance r);

struct ResonanceResult {
  Resonance verdict = Resonance::in_resonance;
  std::vector<std::vector<Rational>> squared_eigenvalues;  // exact roots μ = λ² per center basis vector
  std::vector<std::string> notes;
};
ResonanceResult resonance_check(const AlgebraSpec& algebra, const MetricSpec& metric, const WittFrame& frame);

}  // namespace nilcurve
