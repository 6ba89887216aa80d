// Acceptance gate for the exact index library and its command-line tool.
//
// Each numbered criterion prints exactly one [PASS]/[FAIL] line with its
// runtime; indented lines carry supporting detail.  Tolerances are pinned as
// the constants below.  The process exit code is the number of failed
// criteria, so a fully green run exits 0.
//
// The eigenvalue clause of criterion 10 asserts a strict spectral bound (< 2)
// for arbitrary commuting torus pairs.  That bound only holds when every
// rotation-plane angle pair lies in the principal triangle |psi_a|, |psi_b|,
// |psi_a - psi_b| < pi; unconstrained sampling reaches 5/2.  The criterion is
// reported honestly: the clause fails with the explicit counterexample, and
// an informational line shows the triangle-restricted variant passing.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "verlinde/center.hpp"
#include "verlinde/characters.hpp"
#include "verlinde/cyclotomic.hpp"
#include "verlinde/fixedpoint.hpp"
#include "verlinde/lie_type.hpp"
#include "verlinde/rat.hpp"
#include "verlinde/root_datum.hpp"
#include "verlinde/verlinde_sums.hpp"

namespace {

using namespace vt;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Pinned tolerances and budgets

constexpr double kDetResidualTol = 1e-10;   // torus determinant identity
constexpr double kSpectralBound = 2.0;      // strict eigenvalue bound
constexpr double kPhaseTol = 1e-9;          // principal phase match
constexpr double kHomotopyFloor = 1e-8;     // min |det| along the path
constexpr long double kSineResidual = 1e-6; // float oracle rounding residual
constexpr long long kSpectralSamples = 10000;
constexpr double kTriangleMargin = 0.3;     // shrink of the principal triangle

const double kPi = std::acos(-1.0);

// ---------------------------------------------------------------------------
// Reporting scaffold

struct Outcome {
  bool pass = true;
  long long cases = 0;
  std::string detail;             // one-line summary appended to the verdict
  std::vector<std::string> info;  // indented informational lines
};

void record_failure(Outcome& o, const std::string& what) {
  if (o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Shared grid helpers

const std::vector<LieType>& grid_types() {
  static const std::vector<LieType> types = {{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2},
                                             {'C', 2}, {'D', 4}, {'G', 2}};
  return types;
}

// Every subgroup of the (at most rank-two) center, from generator subsets.
std::vector<CenterSubgroup> distinct_subgroups(const ProductDatum& pd) {
  std::vector<CenterSubgroup> out;
  std::set<std::vector<CenterIdx>> seen;
  auto push = [&](const std::vector<CenterIdx>& gens) {
    CenterSubgroup g = center_subgroup(pd, gens);
    if (seen.insert(g.elements).second) out.push_back(std::move(g));
  };
  push({});
  const auto elements = all_center_elements(pd);
  for (const auto& a : elements) {
    push({a});
    for (const auto& b : elements) push({a, b});
  }
  return out;
}

// A minimal generating set of the character group of G.
std::vector<CenterCharacter> character_generators(const CenterSubgroup& G) {
  const auto chars = enumerate_characters(G);
  const size_t n = static_cast<size_t>(G.order());
  auto span_of = [&](const std::vector<CenterCharacter>& gens) {
    std::set<QVec> seen;
    std::vector<QVec> frontier{QVec(n, Rat(0))};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
      std::vector<QVec> next;
      for (const auto& p : frontier)
        for (const auto& g : gens) {
          QVec q(n);
          for (size_t i = 0; i < n; ++i) q[i] = frac_part(p[i] + g.exponents[i]);
          if (seen.insert(q).second) next.push_back(q);
        }
      frontier = std::move(next);
    }
    return seen;
  };
  std::vector<CenterCharacter> gens;
  auto spanned = span_of(gens);
  for (const auto& chi : chars) {
    if (spanned.size() == chars.size()) break;
    QVec folded(n);
    for (size_t i = 0; i < n; ++i) folded[i] = frac_part(chi.exponents[i]);
    if (spanned.count(folded)) continue;
    gens.push_back(chi);
    spanned = span_of(gens);
  }
  return gens;
}

// Twist tuples covering a generating set: the trivial tuple plus, for each
// handle-generator slot and each character generator, the tuple that is
// nontrivial in that slot only.
std::vector<std::vector<CenterCharacter>> twist_tuples(const CenterSubgroup& G, long long h) {
  const CenterCharacter id{QVec(static_cast<size_t>(G.order()), Rat(0))};
  std::vector<std::vector<CenterCharacter>> out;
  out.emplace_back(static_cast<size_t>(2 * h), id);
  for (long long s = 0; s < 2 * h; ++s)
    for (const auto& g : character_generators(G)) {
      std::vector<CenterCharacter> phi(static_cast<size_t>(2 * h), id);
      phi[static_cast<size_t>(s)] = g;
      out.push_back(std::move(phi));
    }
  return out;
}

template <typename T>
std::vector<T> strided(const std::vector<T>& v, size_t cap) {
  if (v.size() <= cap) return v;
  std::vector<T> out;
  const size_t step = (v.size() + cap - 1) / cap;
  for (size_t i = 0; i < v.size(); i += step) out.push_back(v[i]);
  return out;
}

std::string weight_str(const IVec& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s + ")";
}

std::string type_str(const LieType& t) { return std::string(1, t.family) + std::to_string(t.rank); }

// ---------------------------------------------------------------------------
// Criterion 1: the command-line levels table for the adjoint groups

Outcome criterion_levels_table() {
  Outcome o;
  const char* bin = std::getenv("VERLINDE_CLI_BIN");
  if (bin == nullptr) {
    record_failure(o, "VERLINDE_CLI_BIN is not set");
    return o;
  }
  const std::vector<std::pair<std::string, long long>> expected = {
      {"A1", 4}, {"A2", 3}, {"A3", 8}, {"A4", 5}, {"B2", 2},
      {"B3", 2}, {"C2", 2}, {"C3", 4}, {"C4", 2}, {"D4", 4},
      {"D5", 16}, {"D6", 4}, {"D7", 8}, {"E6", 3}, {"E7", 4}};
  std::string group;
  for (const auto& [label, lvl] : expected) {
    if (!group.empty()) group += 'x';
    group += label + "'";
  }
  const std::string cmd = std::string(bin) + " levels --group \"" + group + "\" 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    record_failure(o, "failed to launch the command-line tool");
    return o;
  }
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) out += buf;
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    record_failure(o, "levels command exited nonzero");
    return o;
  }
  std::istringstream lines(out);
  std::string line;
  std::getline(lines, line);  // header
  size_t row = 0;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::string idx, label, order, lvl;
    toks >> idx >> label >> order >> lvl;
    if (label.empty()) continue;
    if (row >= expected.size()) {
      record_failure(o, "more rows than expected");
      return o;
    }
    ++o.cases;
    if (label != expected[row].first || lvl != std::to_string(expected[row].second)) {
      record_failure(o, fmt("row %zu: got %s -> %s, want %s -> %lld", row, label.c_str(),
                            lvl.c_str(), expected[row].first.c_str(), expected[row].second));
      return o;
    }
    ++row;
  }
  if (row != expected.size()) {
    record_failure(o, fmt("only %zu of %zu rows present", row, expected.size()));
    return o;
  }
  o.detail = "15 adjoint factors across the A/B/C/D parity classes and E6/E7";
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 2: integrality of the quotient indices over the whole grid

Outcome criterion_integrality() {
  Outcome o;
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    auto subgroups = distinct_subgroups(pd);
    for (long long k = 1; k <= 8; ++k) {
      std::vector<const CenterSubgroup*> adm;
      for (const auto& G : subgroups)
        if (admissible_levels(G, {k})) adm.push_back(&G);
      if (adm.empty()) continue;
      const auto mus = product_level_weights(pd, {k});
      for (const auto& mu : mus)
        for (long long h = 1; h <= 3; ++h)
          for (const CenterSubgroup* G : adm)
            for (const auto& phi : twist_tuples(*G, h)) {
              VerlindeResult r = verlinde_ns(*G, {k}, h, mu, phi);
              ++o.cases;
              if (!r.integral)
                record_failure(
                    o, fmt("non-integer %s at %s |G|=%lld k=%lld h=%lld mu=%s",
                           r.value.get_str().c_str(), type_str(type).c_str(), G->order(), k, h,
                           weight_str(mu[0]).c_str()));
            }
    }
  }
  if (o.pass)
    o.detail = fmt("%lld quotient indices, all exact integers", o.cases);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 3: two-holed-sphere pairing is the star-conjugation delta

Outcome criterion_orthogonality() {
  Outcome o;
  constexpr size_t kFullPairCap = 21;  // full pair matrix below this size
  constexpr size_t kStrideCap = 12;    // strided rows/columns above it
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    const RootDatum& d = pd.factors[0];
    for (long long k = 1; k <= 8; ++k) {
      const auto mus = level_weights(d, k);
      std::vector<IVec> lhs = mus, rhs = mus;
      if (mus.size() > kFullPairCap) {
        lhs = strided(mus, kStrideCap);
        rhs = strided(mus, kStrideCap);
      }
      for (const IVec& m1 : lhs) {
        std::vector<IVec> partners = rhs;
        const IVec star = star_weight(d, m1);
        if (std::find(partners.begin(), partners.end(), star) == partners.end())
          partners.push_back(star);
        for (const IVec& m2 : partners) {
          const long long want = (m2 == star) ? 1 : 0;
          Int got = two_holed_sphere(pd, {k}, {m1}, {m2});
          ++o.cases;
          if (got != int_ll(want))
            record_failure(o, fmt("%s k=%lld mu1=%s mu2=%s", type_str(type).c_str(), k,
                                  weight_str(m1).c_str(), weight_str(m2).c_str()));
        }
      }
    }
  }
  if (o.pass)
    o.detail = fmt("%lld pairs (full matrices up to %zu weights, strided %zu beyond)", o.cases,
                   kFullPairCap, kStrideCap);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 4: rank-one indices against an independent sine-sum oracle

long double sine_oracle(long long k, long long h, const std::vector<long long>& mus) {
  const long double pi = acosl(-1.0L);
  const long double n = static_cast<long double>(k + 2);
  long double total = 0.0L;
  for (long long j = 0; j <= k; ++j) {
    const long double s0 = sqrtl(2.0L / n) * sinl(pi * (j + 1) / n);
    long double term = powl(s0, 2.0L - 2.0L * h - static_cast<long double>(mus.size()));
    for (long long m : mus) term *= sqrtl(2.0L / n) * sinl(pi * (m + 1) * (j + 1) / n);
    total += term;
  }
  return total;
}

Outcome criterion_sine_oracle() {
  Outcome o;
  ProductDatum a1 = make_product({LieType{'A', 1}});
  long double worst = 0.0L;
  for (long long k = 1; k <= 12; ++k) {
    // Multisets of at most three marking weights.
    std::vector<std::vector<long long>> markings{{}};
    for (long long m1 = 0; m1 <= k; ++m1) {
      markings.push_back({m1});
      for (long long m2 = m1; m2 <= k; ++m2) {
        markings.push_back({m1, m2});
        for (long long m3 = m2; m3 <= k; ++m3) markings.push_back({m1, m2, m3});
      }
    }
    for (long long h = 0; h <= 4; ++h)
      for (const auto& mus : markings) {
        if (h == 0 && mus.empty()) continue;  // the closed sphere needs a marking
        std::vector<PWeight> marks;
        marks.reserve(mus.size());
        for (long long m : mus) marks.push_back({IVec{m}});
        VerlindeResult r =
            mus.empty() ? verlinde_closed(a1, {k}, h) : verlinde_sc(a1, {k}, h, marks);
        const long double approx = sine_oracle(k, h, mus);
        const long long rounded = llroundl(approx);
        const long double residual = fabsl(approx - static_cast<long double>(rounded));
        worst = std::max(worst, residual);
        ++o.cases;
        if (residual >= kSineResidual || !r.integral || r.integer() != int_ll(rounded))
          record_failure(o, fmt("k=%lld h=%lld r=%zu: oracle %.9Lf vs exact %s", k, h, mus.size(),
                                approx, r.value.get_str().c_str()));
      }
  }
  if (o.pass)
    o.detail = fmt("%lld sums match; worst rounding residual %.2Le", o.cases, worst);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 5: prime-quotient reduction identity

Outcome criterion_prime_reduction() {
  Outcome o;
  for (long long p : {2, 3, 5}) {
    ProductDatum pd = make_product({LieType{'A', static_cast<int>(p - 1)}});
    const long long step = min_level(pd.factors[0], p);
    for (long long k = step; k <= 4 * p; k += step)
      for (long long h = 1; h <= 3; ++h) {
        auto [lhs, rhs] = psu_p_crosscheck(p, k, h);
        ++o.cases;
        if (lhs != rhs)
          record_failure(o, fmt("p=%lld k=%lld h=%lld: %s vs %s", p, k, h, lhs.get_str().c_str(),
                                rhs.get_str().c_str()));
      }
  }
  auto [l0, r0] = psu_p_crosscheck(2, 4, 2);
  ++o.cases;
  if (!(l0 == Rat(5) && r0 == Rat(5)))
    record_failure(o, fmt("anchor p=2 k=4 h=2: got %s and %s, want 5", l0.get_str().c_str(),
                          r0.get_str().c_str()));
  if (o.pass)
    o.detail = fmt("%lld level/genus cells for p in {2,3,5}; anchor value 5 on both paths",
                   o.cases);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 6: the center twist of characters at the special points

Outcome criterion_character_law() {
  Outcome o;
  constexpr size_t kPointCap = 32;  // special points per cell (strided)
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    const RootDatum& d = pd.factors[0];
    if (d.center_order == 1) continue;
    for (long long k = 1; k <= 8; ++k) {
      const auto mus = level_weights(d, k);
      const auto lams = strided(mus, kPointCap);
      std::map<IVec, std::vector<CycloNumber>> table;
      for (const IVec& mu : mus) {
        std::vector<CycloNumber> row;
        row.reserve(lams.size());
        for (const IVec& lam : lams)
          row.push_back(eval_character(d, mu, make_special_point(d, k, lam).xi_w));
        table.emplace(mu, std::move(row));
      }
      for (int g = 1; g < static_cast<int>(d.center_order); ++g) {
        const CenterElement el = center_element(d, g);
        for (const IVec& mu : mus) {
          const IVec gmu = act_on_level_weight(el, mu, k);
          const auto& base = table.at(mu);
          const auto& moved = table.at(gmu);
          for (size_t li = 0; li < lams.size(); ++li) {
            ++o.cases;
            if (!(moved[li] == mul(gamma_pairing(el, lams[li]), base[li]))) {
              record_failure(o, fmt("%s k=%lld gamma=%d mu=%s lam=%s", type_str(type).c_str(), k,
                                    g, weight_str(mu).c_str(), weight_str(lams[li]).c_str()));
            }
          }
        }
      }
    }
  }
  if (o.pass)
    o.detail = fmt("%lld twisted evaluations (points strided to %zu per cell)", o.cases,
                   kPointCap);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 7: Weyl-quotient vs multiplicity-sum character evaluation

Outcome criterion_dual_evaluation() {
  Outcome o;
  constexpr long long kDimCap = 500;
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    const RootDatum& d = pd.factors[0];
    const auto pts_src = level_weights(d, 2);
    const std::array<QVec, 2> pts = {make_special_point(d, 2, pts_src.front()).xi_w,
                                     make_special_point(d, 2, pts_src.back()).xi_w};
    for (const IVec& mu : level_weights(d, 8)) {
      if (weyl_dimension(d, mu) > int_ll(kDimCap)) continue;
      for (const QVec& xi : pts) {
        ++o.cases;
        if (!(eval_character_weyl(d, mu, xi) == eval_character_freudenthal(d, mu, xi)))
          record_failure(o, fmt("%s mu=%s", type_str(type).c_str(), weight_str(mu).c_str()));
      }
    }
  }
  if (o.pass)
    o.detail = fmt("%lld evaluations agree (all weights of dimension <= %lld, two points each)",
                   o.cases, kDimCap);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 8: lattice sign criterion vs direct evaluation

Outcome criterion_lattice_sign() {
  Outcome o;
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    const RootDatum& d = pd.factors[0];
    const long long c = d.dual_coxeter;
    const QVec xi0(static_cast<size_t>(d.rank), rat(1, c));
    for (long long k = c; k <= 8; k += c)
      for (const IVec& mu : level_weights(d, k)) {
        const int sign = kostant_character(d, mu, k);
        ++o.cases;
        if (sign < -1 || sign > 1 ||
            !(eval_character(d, mu, xi0) == cyclo_rational(rat(sign))))
          record_failure(o, fmt("%s k=%lld mu=%s sign=%d", type_str(type).c_str(), k,
                                weight_str(mu).c_str(), sign));
      }
  }
  if (o.pass) o.detail = fmt("%lld weights, signs in {-1,0,1} and equal to the evaluation",
                             o.cases);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 9: special torus point count vs brute-force closure

long long t_count_bruteforce(const RootDatum& d, long long l) {
  std::vector<QVec> gens;
  for (int i = 0; i < d.rank; ++i) {
    QVec e(static_cast<size_t>(d.rank), Rat(0));
    e[static_cast<size_t>(i)] = 1;
    QVec g = coroot_coords(d, e);
    for (Rat& c : g) c = frac_part(c / rat_ll(l));
    gens.push_back(g);
  }
  std::set<QVec> seen;
  std::vector<QVec> frontier{QVec(static_cast<size_t>(d.rank), Rat(0))};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<QVec> next;
    for (const QVec& p : frontier)
      for (const QVec& g : gens) {
        QVec q(static_cast<size_t>(d.rank));
        for (int i = 0; i < d.rank; ++i)
          q[static_cast<size_t>(i)] = frac_part(p[static_cast<size_t>(i)] + g[static_cast<size_t>(i)]);
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return static_cast<long long>(seen.size());
}

Outcome criterion_torus_count() {
  Outcome o;
  for (const char* label : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"}) {
    const RootDatum d = build_root_datum(parse_lie_type(label));
    for (long long l = 1; l <= 8; ++l) {
      ++o.cases;
      if (t_count(d, l) != int_ll(t_count_bruteforce(d, l)))
        record_failure(o, fmt("%s l=%lld", label, l));
    }
  }
  if (o.pass) o.detail = fmt("%lld counts match the lattice closure", o.cases);
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 10: the floating-point fixed-point suite

Eigen::MatrixXd double_block(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m.rows(), 2 * m.cols());
  out.topLeftCorner(m.rows(), m.cols()) = m;
  out.bottomRightCorner(m.rows(), m.cols()) = m;
  return out;
}

// Commuting pair of rank-one torus elements with prescribed rotation-plane
// angles (the adjoint action rotates the root plane by twice the torus angle).
std::pair<MatrixGroupElement, MatrixGroupElement> pair_with_angles(double psi_a, double psi_b) {
  return {su_torus_element({psi_a / 2.0}), su_torus_element({psi_b / 2.0})};
}

// Uniform sample of the principal triangle shrunk by the pinned margin.
std::pair<double, double> sample_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-kPi + kTriangleMargin, kPi - kTriangleMargin);
  while (true) {
    const double a = unif(rng), b = unif(rng);
    if (std::abs(a - b) < kPi - kTriangleMargin) return {a, b};
  }
}

Outcome criterion_fixed_point_numerics() {
  Outcome o;
  std::mt19937_64 rng(20260815ULL);

  // Clause 1: the torus determinant identity for commuting Weyl pairs.
  double det_worst = 0.0;
  long long det_samples = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      Eigen::MatrixXd w1 = Eigen::MatrixXd::Identity(n, n);
      Eigen::MatrixXd w2 = Eigen::MatrixXd::Identity(n, n);
      if (trial % 2 == 0) {
        for (int i = 0; i < n; ++i) {
          w1(i, i) = coin(rng) ? 1.0 : -1.0;
          w2(i, i) = coin(rng) ? 1.0 : -1.0;
        }
      } else {
        for (int i = 0; i + 1 < n; i += 2) {
          const double ta = angle(rng), tb = angle(rng);
          w1.block(i, i, 2, 2) << std::cos(ta), -std::sin(ta), std::sin(ta), std::cos(ta);
          w2.block(i, i, 2, 2) << std::cos(tb), -std::sin(tb), std::sin(tb), std::cos(tb);
        }
      }
      det_worst = std::max(det_worst, torus_det_check(w1, w2));
      ++det_samples;
    }
    if (n % 2 == 0) {
      det_worst = std::max(det_worst,
                           torus_det_check(torus_weyl_negate_ends(n), torus_weyl_reverse_negate(n)));
      ++det_samples;
    }
  }
  const bool det_ok = det_worst <= kDetResidualTol;
  o.info.push_back(fmt("%s determinant identity: worst residual %.2e over %lld commuting pairs"
                       " (tolerance %.0e)",
                       det_ok ? "[ok]" : "[bad]", det_worst, det_samples, kDetResidualTol));

  // Clause 2: the strict spectral bound under unconstrained sampling.
  double spec_max = 0.0;
  double cex_a = 0.0, cex_b = 0.0;
  long long spec_samples = 0;
  std::uniform_real_distribution<double> full(0.0, 2.0 * kPi);
  while (spec_samples < kSpectralSamples) {
    MatrixGroupElement a =
        (spec_samples % 2 == 0) ? su_torus_element({full(rng)})
                                : su_torus_element({full(rng), full(rng)});
    MatrixGroupElement b =
        (spec_samples % 2 == 0) ? su_torus_element({full(rng)})
                                : su_torus_element({full(rng), full(rng)});
    try {
      const double v = eigenvalue_bound_check(a, b);
      if (v > spec_max) spec_max = v;
      ++spec_samples;
    } catch (const SplitError&) {
      continue;  // ambiguous eigenvalue clustering; resample
    }
  }
  auto [ca, cb] = pair_with_angles(4.0 * kPi / 3.0, 2.0 * kPi / 3.0);
  const double cex = eigenvalue_bound_check(ca, cb);
  cex_a = 4.0 * kPi / 3.0;
  cex_b = 2.0 * kPi / 3.0;
  spec_max = std::max(spec_max, cex);
  const bool spec_ok = spec_max < kSpectralBound;
  o.info.push_back(fmt("%s spectral bound: max %.6f over %lld SU(2)/SU(3) samples; the pair with"
                       " plane angles (%.4f, %.4f) evaluates to %.6f",
                       spec_ok ? "[ok]" : "[bad]", spec_max, spec_samples, cex_a, cex_b, cex));
  double tri_max = 0.0;
  for (int trial = 0; trial < 5000; ++trial) {
    auto [pa, pb] = sample_triangle(rng);
    auto [a, b] = pair_with_angles(pa, pb);
    try {
      tri_max = std::max(tri_max, eigenvalue_bound_check(a, b));
    } catch (const SplitError&) {
    }
  }
  o.info.push_back(fmt("    restricted to the principal angle triangle (margin %.1f) the bound"
                       " holds: max %.6f < 2 over 5000 samples",
                       kTriangleMargin, tri_max));

  // Clause 3: the principal phase equals the positive-root parity.
  double phase_worst = 0.0;
  long long phase_samples = 0;
  std::uniform_real_distribution<double> reg(0.15, 1.35);
  auto phase_of = [](const Eigen::MatrixXd& ad, int dim) {
    return phase_factor(unitarize_in_structure(double_block(ad), standard_complex_structure(dim)));
  };
  for (int trial = 0; trial < 200; ++trial) {  // one positive root: phase -1
    MatrixGroupElement t = su_torus_element({reg(rng)});
    phase_worst = std::max(phase_worst,
                           std::abs(phase_of(adjoint_rep(t), 3) - std::complex<double>(-1.0)));
    ++phase_samples;
  }
  for (int trial = 0; trial < 200; ++trial) {  // three positive roots: phase -1
    MatrixGroupElement t = su_torus_element({reg(rng), reg(rng) + 1.4});
    phase_worst = std::max(phase_worst,
                           std::abs(phase_of(adjoint_rep(t), 8) - std::complex<double>(-1.0)));
    ++phase_samples;
  }
  for (int trial = 0; trial < 100; ++trial) {  // four positive roots: phase +1
    const double u = reg(rng);
    MatrixGroupElement t = so_torus_element(5, {u, u + reg(rng)});
    phase_worst = std::max(phase_worst,
                           std::abs(phase_of(adjoint_rep(t), 10) - std::complex<double>(1.0)));
    ++phase_samples;
  }
  const bool phase_ok = phase_worst <= kPhaseTol;
  o.info.push_back(fmt("%s principal phase: worst deviation %.2e from the root-parity sign over"
                       " %lld samples (tolerance %.0e)",
                       phase_ok ? "[ok]" : "[bad]", phase_worst, phase_samples, kPhaseTol));

  // Clause 4: the straightening path stays nondegenerate on the triangle.
  double hom_min = 1e300;
  long long hom_samples = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto [pa, pb] = sample_triangle(rng);
    auto [a, b] = pair_with_angles(pa, pb);
    hom_min = std::min(hom_min, homotopy_nondegeneracy(a, b, 41));
    ++hom_samples;
  }
  std::uniform_real_distribution<double> small(-0.35, 0.35);
  for (int trial = 0; trial < 100; ++trial) {
    MatrixGroupElement a = su_torus_element({small(rng), small(rng)});
    MatrixGroupElement b = su_torus_element({small(rng), small(rng)});
    hom_min = std::min(hom_min, homotopy_nondegeneracy(a, b, 41));
    ++hom_samples;
  }
  const bool hom_ok = hom_min > kHomotopyFloor;
  o.info.push_back(fmt("%s straightening path: min |det| %.3e over %lld triangle-restricted"
                       " pairs (floor %.0e)",
                       hom_ok ? "[ok]" : "[bad]", hom_min, hom_samples, kHomotopyFloor));

  o.cases = det_samples + spec_samples + phase_samples + hom_samples;
  o.pass = det_ok && spec_ok && phase_ok && hom_ok;
  if (!o.pass && det_ok && phase_ok && hom_ok)
    o.detail = fmt("spectral clause fails as sampled: unconstrained commuting pairs reach %.6f"
                   " >= 2 (plane angles %.4f, %.4f); the other three clauses pass",
                   spec_max, cex_a, cex_b);
  else if (!o.pass)
    o.detail = "see clause lines";
  else
    o.detail = "all four clauses within tolerance";
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 11: commuting Clifford lifts

Outcome criterion_clifford_lifts() {
  Outcome o;
  for (int n : {4, 6, 8}) {
    ++o.cases;
    if (!clifford_lift_commutes(n)) record_failure(o, fmt("lifts fail to commute at N=%d", n));
  }
  if (o.pass) o.detail = "lifts commute for N in {4, 6, 8}, all four sign choices";
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 12: conjugacy-class sums equal the orbit sums of components

Outcome criterion_class_sums() {
  Outcome o;
  constexpr size_t kRepCap = 24;  // orbit representatives per cell (strided)
  for (const LieType& type : grid_types()) {
    ProductDatum pd = make_product({type});
    for (const auto& G : distinct_subgroups(pd)) {
      if (G.order() == 1) continue;
      for (long long k = 1; k <= 8; ++k) {
        if (!admissible_levels(G, {k})) continue;
        std::vector<PWeight> reps;
        for (const auto& orb : orbit_representatives(G, {k})) reps.push_back(orb.rep);
        reps = strided(reps, kRepCap);
        for (long long h = 1; h <= 3; ++h)
          for (const auto& phi : twist_tuples(G, h))
            for (const PWeight& mu : reps) {
              VerlindeResult r = verlinde_conjclass(G, {k}, h, mu, phi);
              std::set<PWeight> orbit;
              for (const auto& g : G.elements)
                orbit.insert(act_on_level_weight(pd, g, mu, {k}));
              Rat component_sum(0);
              for (const auto& nu : orbit)
                component_sum += verlinde_ns(G, {k}, h, nu, phi).value;
              ++o.cases;
              if (!(r.value == component_sum && r.integral))
                record_failure(o, fmt("%s |G|=%lld k=%lld h=%lld mu=%s", type_str(type).c_str(),
                                      G.order(), k, h, weight_str(mu[0]).c_str()));
            }
      }
    }
  }
  if (o.pass)
    o.detail = fmt("%lld class sums equal their orbit component sums (reps strided to %zu)",
                   o.cases, kRepCap);
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    Outcome (*run)();
  };
  const std::vector<Entry> criteria = {
      {1, "smallest admissible quotient levels via the command line", criterion_levels_table},
      {2, "integrality sweep over central quotients", criterion_integrality},
      {3, "two-holed-sphere orthogonality", criterion_orthogonality},
      {4, "rank-one sine-sum cross-check", criterion_sine_oracle},
      {5, "prime-quotient reduction identity", criterion_prime_reduction},
      {6, "center-twist character law", criterion_character_law},
      {7, "character evaluation by two algorithms", criterion_dual_evaluation},
      {8, "lattice sign criterion at the distinguished point", criterion_lattice_sign},
      {9, "special torus point count", criterion_torus_count},
      {10, "fixed-point numerical suite", criterion_fixed_point_numerics},
      {11, "commuting Clifford lifts", criterion_clifford_lifts},
      {12, "conjugacy-class dual path", criterion_class_sums},
  };

  int failures = 0;
  for (const Entry& e : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("unexpected exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d. %s (%.1f s) — %s\n", o.pass ? "PASS" : "FAIL", e.number, e.title, secs,
                o.detail.c_str());
    for (const auto& line : o.info) std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
