#include "nilcurve/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>

#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/parallel.hpp"

namespace nilcurve {

namespace {

std::string key_of(const QVector& v) {
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += ',';
    s += format_rational(x);
  }
  return s;
}

// Lexicographic order on rational vectors, for deterministic output.
bool lex_less(const QVector& a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

bool is_central(const AlgebraSpec& algebra, const QVector& x) { return algebra.ad(x).is_zero(); }

// Visits every integer vector in [−r, r]^k.
void for_each_box(std::size_t k, long r, const std::function<void(const ZVector&)>& visit) {
  ZVector c(k, -r);
  if (k == 0) {
    visit(c);
    return;
  }
  while (true) {
    visit(c);
    std::size_t i = 0;
    while (i < k && c[i] == r) c[i++] = -r;
    if (i == k) return;
    ++c[i];
  }
}

}  // namespace

Lattice::Lattice(const AlgebraSpec& algebra, const WittFrame& frame, LatticeSpec spec)
    : algebra_(algebra), frame_(frame), spec_(std::move(spec)) {
  const std::size_t n = algebra_.dim();
  if (spec_.generators.empty()) throw ValidationError("lattice needs at least one generator");
  for (const auto& g : spec_.generators)
    if (g.log.size() != n) throw ValidationError("lattice generator has the wrong dimension");
  if (spec_.box < 0) throw ValidationError("lattice box must be nonnegative");
  auto inv = inverse(QMatrix::from_columns(frame_.ordered_basis(), n));
  if (!inv) throw ValidationError("Witt frame is not a basis");
  to_frame_ = std::move(*inv);

  std::vector<QVector> projected;
  for (const auto& g : spec_.generators) projected.push_back(project(g.log));
  const std::size_t d = frame_.V.size() + frame_.E.size();
  auto h = hermite(projected, d);
  if (h.basis.size() != d) throw ValidationError("lattice not full rank: π(log Γ) has rank " +
                                                 std::to_string(h.basis.size()) + " < " + std::to_string(d));
  base_ = ZModule(projected, d);
  auto word = [&](const ZVector& exps) {
    GroupElement g = GroupElement::identity(n);
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] != 0) g = bch_product(algebra_, g, group_power(algebra_, spec_.generators[i], exps[i].get_si()));
    return g;
  };
  for (const auto& t : h.transform) lifts_.push_back(word(t));

  std::vector<QVector> central_gens;
  for (const auto& rel : h.relations) central_gens.push_back(word(rel).log);
  for (std::size_t i = 0; i < spec_.generators.size(); ++i)
    for (std::size_t j = i + 1; j < spec_.generators.size(); ++j)
      central_gens.push_back(algebra_.bracket(spec_.generators[i].log, spec_.generators[j].log));
  const std::size_t m = frame_.U.size() + frame_.Z.size();
  central_ = ZModule(central_gens, n);
  if (central_.rank() != m)
    throw ValidationError("lattice not full rank: log Γ ∩ 𝔷 has rank " + std::to_string(central_.rank()) + " < " +
                          std::to_string(m));

  // Words up to the bound, each re-verified to lie in Γ.
  std::vector<GroupElement> letters;
  for (const auto& g : spec_.generators) {
    letters.push_back(g);
    letters.push_back(group_inverse(g));
  }
  std::map<std::string, GroupElement> seen;
  std::vector<GroupElement> frontier{GroupElement::identity(n)};
  for (std::size_t len = 0; len < spec_.word_bound; ++len) {
    std::vector<GroupElement> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        auto p = bch_product(algebra_, w, l);
        if (seen.emplace(key_of(p.log), p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  for (auto& [_, g] : seen) {
    if (!contains(g)) throw ValidationError("lattice closure check failed");
    closure_.push_back(g);
  }
}

QVector Lattice::project(const QVector& x) const {
  QVector f = to_frame_ * x;
  const std::size_t c = frame_.U.size() + frame_.Z.size();
  return QVector(f.begin() + static_cast<std::ptrdiff_t>(c), f.end());
}

bool Lattice::contains(const GroupElement& g) const {
  auto m = base_.coordinates(project(g.log));
  if (!m) return false;
  GroupElement h = element(*m, ZVector(central_.rank(), 0));
  return central_.contains(bch_product(algebra_, group_inverse(h), g).log);
}

GroupElement Lattice::element(const ZVector& base_coords, const ZVector& central_coords) const {
  const std::size_t n = algebra_.dim();
  GroupElement g = GroupElement::identity(n);
  for (std::size_t j = 0; j < lifts_.size(); ++j)
    if (base_coords[j] != 0) g = bch_product(algebra_, g, group_power(algebra_, lifts_[j], base_coords[j].get_si()));
  QVector c = zero_vector(n);
  for (std::size_t k = 0; k < central_.rank(); ++k) axpy(c, Rational(central_coords[k]), central_.basis()[k]);
  return bch_product(algebra_, g, GroupElement{c});
}

std::vector<GroupElement> Lattice::box_elements(long r) const {
  const std::size_t d = lifts_.size(), m = central_.rank();
  std::vector<GroupElement> out;
  for_each_box(d + m, r, [&](const ZVector& c) {
    if (std::all_of(c.begin(), c.end(), [](const mpz_class& x) { return x == 0; })) return;
    out.push_back(element(ZVector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d)),
                          ZVector(c.begin() + static_cast<std::ptrdiff_t>(d), c.end())));
  });
  return out;
}

QVector Lattice::class_representative(const GroupElement& g) const {
  std::vector<QVector> shifts;
  for (const auto& l : lifts_) shifts.push_back(algebra_.bracket(l.log, g.log));
  return ZModule(shifts, algebra_.dim()).reduce(g.log);
}

LatticeSpec integer_lattice(std::size_t dim, long box, std::size_t word_bound) {
  LatticeSpec spec;
  for (std::size_t i = 0; i < dim; ++i) spec.generators.push_back({unit_vector(dim, i)});
  spec.box = box;
  spec.word_bound = word_bound;
  return spec;
}

RationalityResult rationality_check(const AlgebraSpec& algebra) {
  return {!algebra.declared_irrational(), QMatrix::identity(algebra.dim())};
}

ToriSpec tori(const Lattice& lattice) {
  const auto& frame = lattice.frame();
  ToriSpec t;
  t.T_z_basis = lattice.central().basis();
  auto complement = frame.complement_basis();
  for (const auto& b : lattice.base().basis()) {
    QVector v = zero_vector(frame.dim);
    for (std::size_t i = 0; i < complement.size(); ++i) axpy(v, b[i], complement[i]);
    t.T_v_basis.push_back(std::move(v));
  }
  t.fiber_degenerate = frame.center_degenerate();
  t.base_is_T_v = !frame.center_degenerate();
  t.dim_center = frame.U.size() + frame.Z.size();
  t.dim_complement = complement.size();
  return t;
}

Rational base_curvature_numerator(const QVector& x, const QVector& y, const AlgebraSpec& algebra,
                                  const MetricSpec& metric, const WittFrame& frame) {
  auto complement = frame.complement_basis();
  if (!in_span(complement, x) || !in_span(complement, y))
    throw PreconditionError("base_curvature_numerator: arguments must lie in V ⊕ E");
  auto r = riemann(algebra, metric);
  QVector b = algebra.bracket(x, y);
  return sectional_numerator(r, metric, x, y) + Rational(3, 4) * metric.inner(b, b);
}

const char* to_string(SubmersionType t) {
  return t == SubmersionType::pseudoriemannian ? "pseudoriemannian" : "generalized";
}

SubmersionType submersion_type(const WittFrame& frame) {
  return frame.U.empty() && frame.V.empty() ? SubmersionType::pseudoriemannian : SubmersionType::generalized;
}

std::vector<PeriodValue> flat_torus_period_spectrum(const std::vector<QVector>& generators, const MetricSpec& metric,
                                                    long bound) {
  const std::size_t n = metric.dim();
  if (generators.empty()) return {};
  ZModule lattice(generators, n);
  std::map<Rational, std::size_t> counts;
  for_each_box(lattice.rank(), bound, [&](const ZVector& c) {
    QVector g = zero_vector(n);
    for (std::size_t i = 0; i < c.size(); ++i) axpy(g, Rational(c[i]), lattice.basis()[i]);
    if (is_zero(g)) return;
    Rational q = abs(metric.inner(g, g));
    if (q != 0) ++counts[q];
  });
  std::vector<PeriodValue> out;
  for (const auto& [q, count] : counts) out.push_back({std::sqrt(q.get_d()), q, count});
  return out;
}

std::vector<ConjugacyClass> boxed_classes(const Lattice& lattice, long bound) {
  auto elements = lattice.box_elements(bound);
  std::vector<QVector> reps(elements.size());
  parallel_for(elements.size(), [&](std::size_t i) { reps[i] = lattice.class_representative(elements[i]); });
  std::map<std::string, ConjugacyClass> classes;
  for (const auto& rep : reps) {
    auto [it, inserted] = classes.try_emplace(key_of(rep));
    if (inserted) {
      it->second.representative = rep;
      it->second.central = is_central(lattice.algebra(), rep);
    }
    ++it->second.size;
  }
  std::vector<ConjugacyClass> out;
  for (auto& [_, c] : classes) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    return lex_less(a.representative, b.representative);
  });
  return out;
}

const char* to_string(Bucket b) {
  switch (b) {
    case Bucket::fiber: return "fiber";
    case Bucket::base: return "base";
    case Bucket::excluded: return "excluded";
  }
  return "?";
}

Bucket classify_bucket(const QVector& velocity, bool central, const WittFrame& frame, const MetricSpec& metric) {
  auto [z, v] = split_center(frame, velocity);
  if (metric.inner(z, z) == 0 && metric.inner(v, v) == 0) return Bucket::excluded;
  return central ? Bucket::fiber : Bucket::base;
}

Bucket classify_bucket(const Eigen::VectorXd& velocity, bool central, const WittFrame& frame,
                       const MetricSpec& metric, double tol) {
  const auto n = static_cast<Eigen::Index>(frame.dim);
  Eigen::MatrixXd basis(n, n);
  auto ordered = frame.ordered_basis();
  for (Eigen::Index j = 0; j < n; ++j) basis.col(j) = to_double(ordered[static_cast<std::size_t>(j)]);
  Eigen::VectorXd c = basis.partialPivLu().solve(velocity);
  const auto m = static_cast<Eigen::Index>(frame.U.size() + frame.Z.size());
  Eigen::VectorXd z = basis.leftCols(m) * c.head(m);
  Eigen::VectorXd v = basis.rightCols(n - m) * c.tail(n - m);
  bool z_null = causal_type(z, metric, tol) == CausalType::null;
  bool v_null = causal_type(v, metric, tol) == CausalType::null;
  if (z_null && v_null) return Bucket::excluded;
  return central ? Bucket::fiber : Bucket::base;
}

std::vector<ClassPeriod> flat_group_period_spectrum(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                                    double certify_tol) {
  const auto& algebra = lattice.algebra();
  const auto& metric = system.metric();
  if (!flatness_sufficient_condition(algebra, lattice.frame()))
    throw PreconditionError("flat_group_period_spectrum: [n,n] ⊆ U and E = {0} do not hold");
  auto nabla = connection(algebra, metric);
  auto classes = boxed_classes(lattice, bound);
  std::vector<std::optional<ClassPeriod>> results(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    const auto& c = classes[i];
    const QVector& f = c.representative;
    if (!one_param_geodesic_exact(f, nabla)) return;
    Rational q = metric.inner(f, f);
    if (q == 0) return;
    auto cert = one_param_certificate(system, to_double(f), certify_tol);
    if (!cert) throw NumericalError("flat_group_period_spectrum: certification failed for class " + key_of(f));
    ClassPeriod p;
    p.representative = f;
    p.class_size = c.size;
    p.central = c.central;
    p.squared = abs(q);
    p.period = cert->omega;
    p.bucket = classify_bucket(f, c.central, lattice.frame(), metric);
    p.residual = cert->residual;
    p.velocity = cert->velocity;
    results[i] = std::move(p);
  });
  std::vector<ClassPeriod> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  return out;
}

SpectrumPartition spectrum_partition(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                     const PeriodSearchOptions& search) {
  SpectrumPartition out;
  std::vector<ClassPeriod> periods;
  const auto& frame = lattice.frame();
  if (flatness_sufficient_condition(lattice.algebra(), frame)) {
    out.classes = boxed_classes(lattice, bound).size();
    periods = flat_group_period_spectrum(lattice, system, bound, search.certify_tol);
    std::map<std::string, bool> with_period;
    for (const auto& p : periods) with_period[key_of(p.representative)] = true;
    out.classes_without_period = out.classes - with_period.size();
  } else if (!frame.center_degenerate()) {
    auto classes = boxed_classes(lattice, bound);
    out.classes = classes.size();
    auto sig = signature(system.metric());
    std::vector<PeriodSearcher> searchers;
    if (sig.p > 0) {
      auto o = search;
      o.causal = CausalSearch::timelike;
      o.negate_form = false;
      searchers.emplace_back(system, o);
    }
    if (sig.q > 0) {
      auto o = search;
      o.causal = CausalSearch::spacelike;
      o.negate_form = false;
      searchers.emplace_back(system, o);
    }
    std::vector<std::vector<ClassPeriod>> found(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
      const auto& c = classes[i];
      Eigen::VectorXd phi = to_double(c.representative);
      for (const auto& s : searchers)
        for (auto& cert : s.search(phi)) {
          ClassPeriod p;
          p.representative = c.representative;
          p.class_size = c.size;
          p.central = c.central;
          p.period = cert.omega;
          p.bucket = classify_bucket(cert.velocity, c.central, frame, system.metric(), 1e-8);
          p.residual = cert.residual;
          p.velocity = cert.velocity;
          found[i].push_back(std::move(p));
        }
    });
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (found[i].empty()) ++out.classes_without_period;
      for (auto& p : found[i]) periods.push_back(std::move(p));
    }
  } else {
    throw PreconditionError("spectrum_partition: needs [n,n] ⊆ U with E = {0}, or a nondegenerate center");
  }
  for (auto& p : periods) {
    switch (p.bucket) {
      case Bucket::fiber: out.fiber.push_back(std::move(p)); break;
      case Bucket::base: out.base.push_back(std::move(p)); break;
      case Bucket::excluded: out.excluded.push_back(std::move(p)); break;
    }
  }
  return out;
}

DistinguishedSpectrum distinguished_period_spectrum(const Lattice& lattice, const MetricSpec& metric, long bound) {
  const auto& frame = lattice.frame();
  const auto& algebra = lattice.algebra();
  if (frame.center_degenerate()) throw PreconditionError("distinguished_period_spectrum: center is degenerate");
  DistinguishedSpectrum out;
  const bool nonsingular = is_nonsingular(algebra);
  bool cross = true;
  for (const auto& c : boxed_classes(lattice, bound)) {
    auto dp = distinguished_period(c.representative, algebra, metric, frame);
    if (dp.null) {
      ++out.null_classes;
      continue;
    }
    ClassPeriod p;
    p.representative = c.representative;
    p.class_size = c.size;
    p.central = c.central;
    p.period = dp.omega_star;
    p.squared = dp.omega_star_squared;
    p.bucket = c.central ? Bucket::fiber : Bucket::base;
    if (nonsingular && c.central) {
      // central classes are periods of the fiber torus T_F
      cross = cross && lattice.central().contains(c.representative) &&
              dp.omega_star_squared == abs(metric.inner(c.representative, c.representative));
    }
    out.entries.push_back(std::move(p));
  }
  if (nonsingular) out.fiber_cross_check = cross;
  return out;
}

bool LorentzReport::violation() const {
  return std::any_of(checks.begin(), checks.end(), [](const LorentzCheck& c) { return !c.certificates.empty(); });
}

LorentzReport lorentz_closed_geodesic_checks(const Lattice& lattice, const GeodesicSystem& system, long bound,
                                             const PeriodSearchOptions& search) {
  const auto& algebra = lattice.algebra();
  const auto& metric = system.metric();
  const auto& frame = lattice.frame();
  auto sig = signature(metric);
  if (sig.p != 1 && sig.q != 1) throw PreconditionError("lorentz checks: metric is not Lorentzian");
  LorentzReport report;
  // The timelike direction is the one of multiplicity one.
  report.timelike_negative = sig.q == 1 && sig.p != 1;

  auto center = algebra.center();
  auto rc = restricted_signature(metric, center);
  const bool center_timelike = report.timelike_negative ? rc.q > 0 : rc.p > 0;
  const bool heisenberg_like =
      center.size() == 1 && span_dimension(algebra.derived_subalgebra(), algebra.dim()) == 1 && is_nonsingular(algebra);

  struct Plan {
    std::string name;
    bool central_only;
    std::vector<CausalSearch> searches;
  };
  std::vector<Plan> plans;
  if (frame.center_degenerate()) plans.push_back({"degenerate_center_central", true, {CausalSearch::timelike}});
  if (!frame.center_degenerate() && center_timelike)
    plans.push_back({"lorentzian_center", false, {CausalSearch::timelike, CausalSearch::null}});
  // the flat statements concern nonabelian groups; abelian tori carry closed timelike geodesics
  if (!algebra.is_abelian() && is_flat(algebra, metric)) plans.push_back({"flat_group", false, {CausalSearch::timelike}});
  if (frame.center_degenerate() && heisenberg_like)
    plans.push_back({"heisenberg_degenerate_center", false, {CausalSearch::timelike}});
  if (plans.empty()) return report;

  auto classes = boxed_classes(lattice, bound);
  std::map<CausalSearch, std::unique_ptr<PeriodSearcher>> searchers;
  for (const auto& plan : plans) {
    LorentzCheck check;
    check.name = plan.name;
    check.scope = plan.central_only ? "central" : "all";
    check.searches = plan.searches;
    std::vector<const ConjugacyClass*> targets;
    for (const auto& c : classes)
      if (!plan.central_only || c.central) {
        targets.push_back(&c);
        check.elements += c.size;
      }
    for (auto causal : plan.searches) {
      auto& s = searchers[causal];
      if (!s) {
        auto o = search;
        o.causal = causal;
        o.negate_form = report.timelike_negative;
        s = std::make_unique<PeriodSearcher>(system, o);
      }
      std::vector<std::vector<TranslationCertificate>> found(targets.size());
      std::vector<PeriodSearchStats> stats(targets.size());
      parallel_for(targets.size(),
                   [&](std::size_t i) { found[i] = s->search(to_double(targets[i]->representative), &stats[i]); });
      for (std::size_t i = 0; i < targets.size(); ++i) {
        check.stats.grid_points = s->grid_size();
        check.stats.omega_samples = stats[i].omega_samples;
        check.stats.omega_max = stats[i].omega_max;
        check.stats.polished += stats[i].polished;
        check.stats.converged += stats[i].converged;
        for (auto& cert : found[i]) check.certificates.push_back(std::move(cert));
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

const char* to_string(Resonance r) {
  switch (r) {
    case Resonance::in_resonance: return "in_resonance";
    case Resonance::not_in_resonance: return "not_in_resonance";
    case Resonance::undecidable: return "undecidable";
  }
  return "?";
}

namespace {

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Characteristic polynomial det(λI − J) by Lagrange interpolation at 0..k.
Poly characteristic_polynomial(const QMatrix& j) {
  const std::size_t k = j.rows();
  std::vector<Rational> xs, ys;
  for (std::size_t i = 0; i <= k; ++i) {
    Rational x = static_cast<long>(i);
    xs.push_back(x);
    ys.push_back(determinant(x * QMatrix::identity(k) - j));
  }
  Poly p(k + 1, Rational(0));
  for (std::size_t i = 0; i <= k; ++i) {
    Poly basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t m = 0; m <= k; ++m) {
      if (m == i) continue;
      Poly next(basis.size() + 1, Rational(0));
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= xs[m] * basis[t];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[m];
    }
    for (std::size_t t = 0; t < basis.size(); ++t) p[t] += ys[i] * basis[t] / denom;
  }
  return p;
}

// Synthetic division by (x − r).
Poly deflate(const Poly& p, const Rational& r) {
  const std::size_t d = p.size() - 1;
  Poly q(d, Rational(0));
  Rational carry = 0;
  for (std::size_t i = d; i-- > 0;) {
    carry = p[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

std::vector<mpz_class> divisors(const mpz_class& v) {
  mpz_class a = abs(v);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= a; ++d)
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  return out;
}

// Rational roots with multiplicity; p is left holding the remaining factor.
// Returns false when the coefficients are too large to enumerate divisors.
bool rational_roots(Poly& p, std::vector<Rational>& roots) {
  while (p.size() > 1) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_class a0 = Rational(p.front() * l).get_num(), an = Rational(p.back() * l).get_num();
    if (abs(a0) > mpz_class("1000000000000") || abs(an) > mpz_class("1000000000000")) return false;
    bool found = false;
    for (const auto& num : divisors(a0)) {
      for (const auto& den : divisors(an)) {
        for (int s : {1, -1}) {
          Rational r(s * num, den);
          r.canonicalize();
          if (evaluate(p, r) == 0) {
            roots.push_back(r);
            p = deflate(p, r);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  return true;
}

bool positive_square(const Rational& q) {
  return q > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Resonance numeric_verdict(const Poly& rest, const std::vector<Rational>& exact) {
  const std::size_t d = rest.size() - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double lead = rest.back().get_d();
  for (std::size_t i = 0; i < d; ++i) {
    if (i + 1 < d) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1;
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -rest[i].get_d() / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(companion);
  std::vector<std::complex<double>> mus;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mus.push_back(es.eigenvalues()[i]);
  for (const auto& e : exact) mus.emplace_back(e.get_d(), 0.0);
  bool undecided = false;
  for (std::size_t a = 0; a < mus.size(); ++a)
    for (std::size_t b = a + 1; b < mus.size(); ++b) {
      std::complex<double> ratio = mus[a] / mus[b];
      if (std::abs(ratio.imag()) > 1e-9 * std::abs(ratio) || ratio.real() <= 0) return Resonance::not_in_resonance;
      // continued fraction of sqrt(ratio) with denominators up to 1e6
      double x = std::sqrt(ratio.real()), t = x;
      double h0 = 1, h1 = std::floor(t), k0 = 0, k1 = 1;
      while (true) {
        double frac = t - std::floor(t);
        if (frac < 1e-15) break;
        t = 1 / frac;
        double a_i = std::floor(t);
        double h2 = a_i * h1 + h0, k2 = a_i * k1 + k0;
        if (k2 > 1e6) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
      }
      if (std::abs(x - h1 / k1) > 1e-9 * x) return Resonance::not_in_resonance;
      undecided = true;
    }
  return undecided ? Resonance::undecidable : Resonance::in_resonance;
}

}  // namespace

ResonanceResult resonance_check(const AlgebraSpec& algebra, const MetricSpec& metric, const WittFrame& frame) {
  if (frame.center_degenerate()) throw PreconditionError("resonance_check: center is degenerate");
  ResonanceResult out;
  bool undecided = false;
  for (const auto& z : frame.Z) {
    if (frame.E.empty()) break;
    QMatrix j = j_map(z, frame, algebra, metric);
    Poly p = characteristic_polynomial(j);
    // p(λ) = λ^r q(λ²) for a skew-adjoint J
    std::size_t r = 0;
    while (r < p.size() && p[r] == 0) ++r;
    Poly q;
    for (std::size_t i = r; i < p.size(); i += 2) q.push_back(p[i]);
    for (std::size_t i = r + 1; i < p.size(); i += 2)
      if (p[i] != 0) throw NumericalError("resonance_check: J_z is not skew-adjoint");
    std::vector<Rational> mus;
    Poly rest = q;
    bool enumerated = rational_roots(rest, mus);
    out.squared_eigenvalues.push_back(mus);
    Resonance verdict = Resonance::in_resonance;
    if (enumerated && rest.size() == 3) {
      // an irreducible quadratic in μ: conjugate surd pair, never a rational square ratio
      verdict = Resonance::not_in_resonance;
      out.notes.push_back("irreducible quadratic factor in λ² for J_z, z = " + key_of(z));
    } else if (!enumerated || rest.size() > 1) {
      verdict = numeric_verdict(rest, mus);
      out.notes.push_back("numeric ratio test for J_z, z = " + key_of(z));
    } else {
      for (std::size_t a = 0; a < mus.size() && verdict == Resonance::in_resonance; ++a)
        for (std::size_t b = a + 1; b < mus.size(); ++b)
          if (!positive_square(mus[a] / mus[b])) {
            verdict = Resonance::not_in_resonance;
            break;
          }
    }
    if (verdict == Resonance::not_in_resonance) {
      out.verdict = verdict;
      return out;
    }
    if (verdict == Resonance::undecidable) undecided = true;
  }
  out.verdict = undecided ? Resonance::undecidable : Resonance::in_resonance;
  return out;
}

}  // namespace nilcurve
