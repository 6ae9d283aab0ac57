#pragma once

#include "mfhess/cache.hpp"
#include "mfhess/errors.hpp"
#include "mfhess/hessenberg.hpp"
#include "mfhess/invariants.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/mftranslate.hpp"
#include "mfhess/principal.hpp"
#include "mfhess/random.hpp"
#include "mfhess/rootdata.hpp"
#include "mfhess/symplectic.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace mfhess {

struct SuiteConfig
{
  std::string type = "A2";
  std::uint64_t seed = 42;
  std::size_t regular_samples = 10;    ///< random regular points for the gradient criterion
  std::size_t hess_samples = 20;       ///< Hess points for strong regularity and Z_x
  std::size_t section_samples = 20;    ///< round trips each way
  std::size_t symplectic_samples = 10; ///< points for the orbit checks
  std::size_t slice_samples = 5;
  long num_bound = 4;
  long den_bound = 3;
  int series_order = 0; ///< 0 means 2h
  bool enable_g2 = false;
  bool float_shadow = false;
  bool use_cache = false;
  std::string cache_dir;
  bool verbose = false; ///< per-check timings on stderr
};

enum class Status { pass, fail, inconclusive, skipped };

inline const char *status_name(Status s)
{
  switch (s) {
  case Status::pass: return "pass";
  case Status::fail: return "fail";
  case Status::inconclusive: return "inconclusive";
  case Status::skipped: return "skipped";
  }
  return "?";
}

struct CheckRecord
{
  int id = 0;
  std::string check;
  std::string claim;
  Status status = Status::skipped;
  std::string detail;
  nlohmann::json witness;
  double seconds = 0; ///< not serialized
};

struct CheckInfo
{
  int id;
  const char *slug;
  const char *claim;
};

inline const std::vector<CheckInfo> &check_catalog()
{
  static const std::vector<CheckInfo> catalog{
      {1, "degrees-partition", "degrees sum to dim b and the layer sizes form the dual partition"},
      {2, "algebra-soundness", "Jacobi identity and Killing invariance on all basis triples"},
      {3, "principal-decomposition", "principal TDS modules have dims 2m_j+1 and the chains z_jk span b_-"},
      {4, "gradient-regularity", "invariant gradients have rank l exactly at regular points and centralize g^x"},
      {5, "vandermonde-span", "gradients of invariants along w + t f over h values of t span b_-"},
      {6, "shift-family-commutes", "the shifted invariants q_1..q_b Poisson commute"},
      {7, "nilpotent-gradient-span", "g(V_y, e) = g(V_y, e1) = b and the zeta-chain relations hold"},
      {8, "principal-shift-span", "g(V_f, w) = b_-"},
      {9, "shift-family-dimension", "dim V_y = b with graded dimensions r_m"},
      {10, "hess-chart-section", "unitriangular chart on Hess and exact inverse of Phi on Hess"},
      {11, "poincare-series", "both product forms of the Poincare series agree"},
      {12, "hess-strongly-regular", "points of Hess are strongly regular"},
      {13, "zx-lagrangian", "Z_x has dimension n and is isotropic"},
      {14, "hess-orbit-lagrangian", "[n_-, v] has dimension n and is isotropic"},
      {15, "polarization-transversality", "Z_x + [n_-, x] = T_x(O) with nonsingular cross pairing"},
      {16, "negative-unipotent-infinitesimal", "n_- acts on Hess(O) with trivial isotropy and fixed invariants"},
      {17, "report-determinism", "identical configuration yields identical report bytes"},
  };
  return catalog;
}

inline nlohmann::json vec_json(const Vec &v)
{
  nlohmann::json a = nlohmann::json::array();
  for (const auto &c : v)
    a.push_back(format_rational(c));
  return a;
}

struct VerificationReport
{
  std::string type;
  std::uint64_t seed = 0;
  std::string chevalley_hash;
  std::string convention_hash;
  Vec y;
  std::vector<CheckRecord> records;

  std::size_t count(Status s) const
  {
    std::size_t n = 0;
    for (const auto &r : records)
      n += r.status == s;
    return n;
  }
  bool any_failed() const { return count(Status::fail) > 0; }

  nlohmann::json records_json() const
  {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto &r : records)
      recs.push_back({{"id", r.id},
                      {"check", r.check},
                      {"claim", r.claim},
                      {"status", status_name(r.status)},
                      {"detail", r.detail},
                      {"witness", r.witness}});
    return recs;
  }

  nlohmann::json to_json() const
  {
    return {{"schema", "report_v1"},
            {"type", type},
            {"seed", seed},
            {"chevalley_hash", chevalley_hash},
            {"convention_hash", convention_hash},
            {"y", vec_json(y)},
            {"summary",
             {{"pass", count(Status::pass)},
              {"fail", count(Status::fail)},
              {"inconclusive", count(Status::inconclusive)},
              {"skipped", count(Status::skipped)}}},
            {"checks", records_json()}};
  }

  std::string to_text() const
  {
    std::ostringstream os;
    os << "mfhess report_v1 type=" << type << " seed=" << seed << " convention=" << convention_hash << "\n";
    for (const auto &r : records) {
      char id[8];
      std::snprintf(id, sizeof id, "%02d", r.id);
      os << "[" << status_name(r.status) << "] " << id << " " << r.check << ": " << r.detail << "\n";
      if (r.status == Status::fail)
        os << "    witness: " << r.witness.dump() << "\n";
    }
    os << "pass=" << count(Status::pass) << " fail=" << count(Status::fail)
       << " inconclusive=" << count(Status::inconclusive) << " skipped=" << count(Status::skipped) << "\n";
    return os.str();
  }
};

/// Result of one check while it runs; the first failed requirement wins.
struct Outcome
{
  Status status = Status::pass;
  std::string detail;
  nlohmann::json witness;

  bool require(bool ok, const std::string &what, nlohmann::json w = nullptr)
  {
    if (!ok && status != Status::fail) {
      status = Status::fail;
      detail = what;
      witness = w.is_null() ? nlohmann::json{{"reason", what}} : std::move(w);
    }
    return ok;
  }
  void summary(const std::string &text)
  {
    if (status == Status::pass || status == Status::inconclusive)
      detail = text;
  }
};

enum class Region { ambient, ambient_regular, hess, cartan_regular, slice };

struct SamplingContext
{
  const LieAlgebra *L = nullptr;
  const HessChart *chart = nullptr;
  const ShiftFamily *F = nullptr;
  const InvariantFamily *inv = nullptr;
  std::optional<Vec> slice_base;
  long num_bound = 4;
  long den_bound = 3;
  std::size_t max_attempts = 50; ///< per requested point
};

/// Deterministic rational points of a region, each re-verified exactly.
inline std::vector<Vec> sample_points(const SamplingContext &sc, Region region, std::size_t count,
                                      std::uint64_t seed, std::uint64_t stream = 0)
{
  if (!sc.L)
    throw std::invalid_argument("sampling needs an algebra");
  const LieAlgebra &L = *sc.L;
  const bool needs_chart = region == Region::hess || region == Region::slice;
  if (needs_chart && !sc.chart)
    throw std::invalid_argument("sampling on Hess needs a chart");
  if (region == Region::slice && (!sc.F || !sc.inv || !sc.slice_base))
    throw std::invalid_argument("slice sampling needs the family, invariants and a base point");
  Rng rng = Rng::stream(seed, 0x5a4d0000ull + stream);
  std::optional<OrbitSlice> slice;
  Vec base_values;
  if (region == Region::slice) {
    slice = orbit_slice(*sc.inv, *sc.slice_base);
    base_values = phi(*sc.F, *sc.slice_base);
  }
  std::vector<Vec> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (attempts++ >= sc.max_attempts * count)
      throw RegionExhausted("no admissible point after " + std::to_string(attempts - 1) + " attempts");
    Vec x;
    bool ok = false;
    switch (region) {
    case Region::ambient:
      x = rng.vec(L.dim(), sc.num_bound, sc.den_bound);
      ok = true;
      break;
    case Region::ambient_regular:
      x = rng.vec(L.dim(), sc.num_bound, sc.den_bound);
      ok = L.is_regular(x);
      break;
    case Region::hess:
      x = sc.chart->point(rng.vec(sc.chart->size(), sc.num_bound, sc.den_bound));
      ok = in_hess(L, sc.chart->e1, x);
      break;
    case Region::cartan_regular:
      x = L.cartan_element(rng.vec(L.rank(), sc.num_bound, sc.den_bound));
      ok = is_regular_in_cartan(L, x);
      break;
    case Region::slice: {
      Vec c = base_values;
      for (auto b : sc.F->index_N)
        c[b] = rng.rational(sc.num_bound, sc.den_bound);
      x = hess_section(*sc.chart, c);
      ok = slice_member(L, sc.chart->e1, *sc.inv, *slice, x);
      break;
    }
    }
    if (ok)
      out.push_back(std::move(x));
  }
  return out;
}

/// Type labels the suite accepts: products of A1..A3, B2, C2 (and G2 behind
/// the flag) with total rank at most 3.
inline void check_supported_type(const std::string &label, bool enable_g2)
{
  static const std::set<std::string> allowed{"A1", "A2", "A3", "B2", "C2", "G2"};
  std::string token;
  std::size_t rank = 0;
  auto flush = [&]() {
    std::string up;
    for (char c : token)
      up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (!allowed.count(up))
      throw UnsupportedType("type '" + label + "' is not supported (component '" + token + "')");
    if (up == "G2" && !enable_g2)
      throw UnsupportedType("G2 is gated behind --enable-g2");
    rank += static_cast<std::size_t>(up[1] - '0');
    token.clear();
  };
  for (char c : label) {
    if (c == 'x' || c == 'X' || c == '*')
      flush();
    else
      token += c;
  }
  flush();
  if (rank > 3)
    throw UnsupportedType("type '" + label + "' exceeds rank 3");
}

namespace detail {

/// Objects shared between checks, built in dependency order.
struct SuiteState
{
  std::optional<RootSystem> rs;
  std::unique_ptr<LieAlgebra> L;
  std::unique_ptr<GradientContext> ctx;
  std::optional<PrincipalTriple> triple;
  std::optional<PrincipalDecomposition> decomposition;
  std::optional<InvariantFamily> inv;
  std::optional<Vec> y;
  std::optional<ShiftFamily> F;
  std::optional<HessChart> chart;
  std::vector<Vec> hess_points;
};

inline bool is_type_a(const RootSystem &rs)
{
  const std::size_t l = rs.rank;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      int expected = i == j ? 2 : (i + 1 == j || j + 1 == i ? -1 : 0);
      if (rs.cartan(i, j) != expected)
        return false;
    }
  return true;
}

inline std::vector<int> dual_of(const std::vector<int> &parts)
{
  std::vector<int> out;
  int top = 0;
  for (int p : parts)
    top = std::max(top, p);
  for (int m = 1; m <= top; ++m) {
    int c = 0;
    for (int p : parts)
      c += p >= m;
    out.push_back(c);
  }
  return out;
}

inline nlohmann::json int_list(const std::vector<int> &v) { return nlohmann::json(v); }

inline std::vector<Vec> unit_vectors(const LieAlgebra &L, const std::vector<std::size_t> &idx)
{
  std::vector<Vec> out;
  for (auto a : idx)
    out.push_back(L.basis_vector(a));
  return out;
}

inline void check_degrees(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  s.rs = build_root_system(cartan_from_label(cfg.type));
  const RootSystem &rs = *s.rs;
  int sum = 0, maxd = 0, maxh = 0;
  for (int d : rs.degrees) {
    sum += d;
    maxd = std::max(maxd, d);
  }
  for (const auto &r : rs.positive_roots)
    maxh = std::max(maxh, height(r));
  const auto b = static_cast<int>(rs.borel_dim());
  o.require(sum == b, "sum of degrees differs from dim b", {{"degrees", int_list(rs.degrees)}, {"b", b}});
  o.require(dual_of(rs.degrees) == rs.layer_dims, "layers are not the dual partition of the degrees",
            {{"degrees", int_list(rs.degrees)}, {"layers", int_list(rs.layer_dims)}});
  auto redual = dual_of(rs.layer_dims);
  std::sort(redual.begin(), redual.end());
  o.require(redual == rs.degrees, "dualizing the layers does not return the degrees",
            {{"degrees", int_list(rs.degrees)}, {"layers", int_list(rs.layer_dims)}});
  o.require(rs.coxeter_number == maxd && rs.coxeter_number == maxh + 1, "Coxeter number inconsistent",
            {{"h", rs.coxeter_number}, {"max_degree", maxd}, {"max_height", maxh}});
  std::vector<int> heights;
  heights.push_back(static_cast<int>(rs.rank));
  for (int m = 1; m < maxh + 1; ++m) {
    int c = 0;
    for (const auto &r : rs.positive_roots)
      c += height(r) == m;
    heights.push_back(c);
  }
  o.require(heights == rs.layer_dims, "layer sizes differ from the height counts",
            {{"layers", int_list(rs.layer_dims)}, {"height_counts", int_list(heights)}});
  std::ostringstream os;
  os << "degrees " << nlohmann::json(rs.degrees).dump() << ", layers " << nlohmann::json(rs.layer_dims).dump()
     << ", b=" << b;
  o.summary(os.str());
}

inline void check_algebra(SuiteState &s, const SuiteConfig &, Outcome &o)
{
  s.L = std::make_unique<LieAlgebra>(chevalley_algebra(*s.rs));
  const LieAlgebra &L = *s.L;
  s.ctx = std::make_unique<GradientContext>(L);
  auto triple_json = [](const TripleWitness &w) {
    return nlohmann::json{{"basis", {w.a, w.b, w.c}}, {"residual", vec_json(w.residual)}};
  };
  if (auto j = L.jacobi_violation())
    o.require(false, "Jacobi identity fails", triple_json(*j));
  if (auto k = L.killing_invariance_violation())
    o.require(false, "Killing form is not ad-invariant", triple_json(*k));
  o.require(L.dim() == L.rank() + 2 * L.num_positive(), "dim g differs from l + 2n", {{"dim", L.dim()}});
  o.require(sgn(determinant(L.killing_gram())) != 0, "Killing form is degenerate");
  std::size_t triples = L.dim() * (L.dim() - 1) * (L.dim() - 2) / 6;
  o.summary("dim " + std::to_string(L.dim()) + ", " + std::to_string(triples) + " basis triples exact");
}

inline void check_principal(SuiteState &s, const SuiteConfig &, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  s.triple = principal_triple(L);
  const auto &t = *s.triple;
  for (std::size_t i = 0; i < L.rank(); ++i)
    o.require(L.root_value(L.root_of(L.pos_index(i)), t.w) == 2, "alpha_i(w) != 2", {{"i", i}});
  o.require(L.bracket(t.w, t.e) == Rational(2) * t.e, "[w, e] != 2e");
  o.require(L.bracket(t.w, t.f) == Rational(-2) * t.f, "[w, f] != -2f");
  o.require(L.bracket(t.e, t.f) == t.w, "[e, f] != w");
  o.require(L.killing(t.e1, t.f) == 1, "(e1, f) != 1");
  s.decomposition = principal_decomposition(L, t);
  const auto &pd = *s.decomposition;
  std::vector<Vec> chains;
  for (std::size_t j = 0; j < pd.exponents.size(); ++j) {
    o.require(pd.modules[j].size() == static_cast<std::size_t>(2 * pd.exponents[j] + 1) &&
                  rank_of(pd.modules[j]) == pd.modules[j].size(),
              "module has the wrong dimension", {{"j", j}, {"m_j", pd.exponents[j]}});
    chains.insert(chains.end(), pd.chains[j].begin(), pd.chains[j].end());
  }
  const auto bminus = unit_vectors(L, L.negative_borel_indices());
  o.require(chains.size() == bminus.size() && rank_of(chains) == bminus.size() && same_span(chains, bminus),
            "chains z_jk do not form a basis of b_-", {{"chains", chains.size()}, {"rank", rank_of(chains)}});
  // u_t . z_j for d_j distinct t spans the lower half of the module.
  for (std::size_t j = 0; j < pd.exponents.size(); ++j) {
    std::vector<Vec> images;
    for (int k = 1; k <= pd.exponents[j] + 1; ++k)
      images.push_back(apply_u(L, t, Rational(k), pd.cartan_representatives[j]));
    o.require(same_span(images, pd.chains[j]), "u_t z_j do not span the chain of module j", {{"j", j}});
  }
  o.summary("exponents " + nlohmann::json(pd.exponents).dump() + ", chains span b_- (rank " +
            std::to_string(chains.size()) + ")");
}

inline void check_gradient_regularity(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  const GradientContext &ctx = *s.ctx;
  if (cfg.use_cache)
    s.inv = cached_invariants(cfg.type, ctx, resolve_cache_dir(cfg.cache_dir));
  else
    s.inv = invariant_generators(ctx);
  const auto &inv = *s.inv;
  o.require(inv.degrees == L.roots().degrees, "invariant degrees differ from the root data",
            {{"found", int_list(inv.degrees)}});
  o.require(family_is_invariant(ctx, inv), "a generator is not invariant");
  std::string oracle = "no trace oracle";
  if (is_type_a(L.roots())) {
    InvariantFamily traces = trace_oracle_type_A(L);
    o.require(equivalent_modulo_decomposables(inv, traces, L.dim()),
              "solver invariants differ from the trace invariants modulo decomposables");
    oracle = "trace oracle agrees";
  }
  auto grads_at = [&](const Vec &x) {
    std::vector<Vec> g;
    for (const auto &I : inv.generators)
      g.push_back(ctx.gradient(I, x));
    return g;
  };
  SamplingContext sc;
  sc.L = &L;
  sc.num_bound = cfg.num_bound;
  sc.den_bound = cfg.den_bound;
  auto points = sample_points(sc, Region::ambient_regular, cfg.regular_samples, cfg.seed, 4);
  for (const auto &x : points) {
    auto g = grads_at(x);
    std::size_t r = rank_of(g);
    o.require(r == L.rank(), "gradient rank is not l at a regular point", {{"point", vec_json(x)}, {"rank", r}});
    for (const auto &k : L.centralizer(x))
      for (const auto &gi : g)
        o.require(is_zero(L.bracket(gi, k)), "gradient does not centralize g^x", {{"point", vec_json(x)}});
  }
  std::vector<Vec> singular{zero_vec(L.dim())};
  if (L.rank() >= 2) {
    singular.push_back(L.basis_vector(L.pos_index(L.num_positive() - 1)));
    // alpha_1 vanishes on this Cartan element.
    Vec c = zero_vec(L.rank());
    const auto &cm = L.roots().cartan;
    c[0] = -cm(1, 0);
    c[1] = cm(0, 0);
    singular.push_back(L.cartan_element(c));
  }
  std::size_t nonregular = 0;
  for (const auto &x : singular) {
    if (L.is_regular(x))
      continue;
    ++nonregular;
    std::size_t r = rank_of(grads_at(x));
    o.require(r < L.rank(), "gradient rank is l at a non-regular point", {{"point", vec_json(x)}, {"rank", r}});
  }
  o.summary(std::to_string(points.size()) + " regular points rank l, " + std::to_string(nonregular) +
            " non-regular points rank < l, " + oracle);
}

inline void check_vandermonde(SuiteState &s, const SuiteConfig &, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  const int h = L.roots().coxeter_number;
  Vec ts;
  for (int k = 0; k < h; ++k)
    ts.push_back(Rational(k + 1));
  auto span = vandermonde_span(*s.ctx, *s.triple, s.inv->generators, ts);
  const auto bminus = unit_vectors(L, L.negative_borel_indices());
  o.require(span.size() == bminus.size() && same_span(span, bminus), "span over h values is not b_-",
            {{"dimension", span.size()}});
  auto single = vandermonde_span(*s.ctx, *s.triple, s.inv->generators, Vec{Rational(1)});
  o.require(single.size() < bminus.size(), "single value already spans b_-", {{"dimension", single.size()}});
  auto at_w = vandermonde_span(*s.ctx, *s.triple, s.inv->generators, Vec{Rational(0)});
  o.require(at_w.size() == L.rank() && same_span(at_w, unit_vectors(L, L.layer_indices(0))),
            "gradients at w do not span h", {{"dimension", at_w.size()}});
  o.summary(std::to_string(h) + " values span b_- (dim " + std::to_string(span.size()) + "), one value gives dim " +
            std::to_string(single.size()));
}

inline void build_family(SuiteState &s, const SuiteConfig &cfg)
{
  s.y = choose_regular_y(*s.L, cfg.seed);
  s.F = shift_family(*s.L, *s.inv, *s.y);
}

inline void check_commute(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  build_family(s, cfg);
  auto r = pairwise_commute(*s.ctx, *s.F);
  if (!r.all_zero)
    o.require(false, "nonzero Poisson bracket",
              {{"pair", {r.witness_pair->first + 1, r.witness_pair->second + 1}},
               {"bracket", polynomial_to_json(r.witness_bracket)}});
  o.summary(std::to_string(r.pairs_checked) + " brackets vanish identically");
}

inline void check_nilpotent_span(SuiteState &s, const SuiteConfig &, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  const auto &t = *s.triple;
  const auto borel = unit_vectors(L, L.borel_indices());
  for (const Vec *x0 : {&t.e, &t.e1}) {
    auto span = gradient_span(*s.ctx, s.F->q, *x0);
    o.require(span.size() == borel.size() && same_span(span, borel), "g(V_y, x) is not b at the nilpotent",
              {{"point", vec_json(*x0)}, {"dimension", span.size()}});
  }
  const int h = L.roots().coxeter_number;
  std::size_t chains = 0;
  for (const Vec *x0 : {&t.e, &t.e1})
    for (std::size_t j = 0; j < s.inv->generators.size(); ++j) {
      auto zc = zeta_chain(*s.ctx, *x0, *s.y, s.inv->generators[j], h);
      ++chains;
      o.require(zc.ok(), "zeta-chain relation fails",
                {{"invariant", j + 1},
                 {"y_centralizes_v0", zc.y_centralizes_v0},
                 {"e_kills_last", zc.e_kills_last},
                 {"chain", zc.chain_relation},
                 {"layers", zc.layers_respected}});
    }
  o.summary("dim g(V_y, e) = dim g(V_y, e1) = " + std::to_string(borel.size()) + ", " + std::to_string(chains) +
            " zeta-chains verified");
}

inline void check_principal_shift(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  const auto &t = *s.triple;
  auto span = gradient_span(*s.ctx, shifted_space(*s.inv, t.f), t.w);
  const auto bminus = unit_vectors(L, L.negative_borel_indices());
  o.require(span.size() == bminus.size() && same_span(span, bminus), "g(V_f, w) is not b_-",
            {{"dimension", span.size()}});
  // Membership witnesses: f with x = w, y by search, 0 never.
  auto mf = mv_membership(*s.ctx, *s.inv, t.f, {t.w}, 0, cfg.seed, cfg.float_shadow);
  o.require(mf.certified, "f not certified in R with witness w");
  auto my = mv_membership(*s.ctx, *s.inv, *s.y, {}, 10, cfg.seed, cfg.float_shadow);
  auto m0 = mv_membership(*s.ctx, *s.inv, zero_vec(L.dim()), {}, 3, cfg.seed, cfg.float_shadow);
  o.require(!m0.certified, "0 certified in R", {{"witness", vec_json(*m0.witness)}});
  if (o.status == Status::pass && !my.certified) {
    o.status = Status::inconclusive;
    o.witness = {{"best_dimension", my.best_dimension}, {"samples", my.samples_tried}};
  }
  o.summary("dim g(V_f, w) = " + std::to_string(span.size()) + " equals b_-; y " +
            (my.certified ? "certified" : "inconclusive") + " in R after " + std::to_string(my.samples_tried) +
            " samples");
}

inline void check_family_dimension(SuiteState &s, const SuiteConfig &, Outcome &o)
{
  const RootSystem &rs = s.L->roots();
  const std::size_t b = rs.borel_dim();
  o.require(s.F->size() == b, "family size differs from b", {{"size", s.F->size()}});
  o.require(detail::polynomial_rank(s.F->q) == b, "family is linearly dependent");
  auto ranks = graded_ranks(*s.F);
  o.require(ranks == rs.layer_dims, "graded dimensions differ from r_m",
            {{"graded", int_list(ranks)}, {"layers", int_list(rs.layer_dims)}});
  o.require(s.F->index_I.size() == rs.rank && s.F->index_N.size() == rs.num_positive, "index split wrong");
  o.summary("dim V_y = " + std::to_string(b) + ", graded " + nlohmann::json(ranks).dump());
}

inline void check_chart(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  s.chart = build_chart(*s.ctx, *s.triple, *s.F);
  const HessChart &chart = *s.chart;
  Rng rng = Rng::stream(cfg.seed, 10);
  for (std::size_t i = 0; i < cfg.section_samples; ++i) {
    Vec sv = rng.vec(chart.size(), cfg.num_bound, cfg.den_bound);
    Vec v = chart.point(sv);
    Vec back = hess_section(chart, phi(*s.F, v));
    o.require(back == v, "section does not invert Phi", {{"point", vec_json(v)}, {"section", vec_json(back)}});
    Vec c = rng.vec(chart.size(), cfg.num_bound, cfg.den_bound);
    Vec w = hess_section(chart, c);
    Vec img = phi(*s.F, w);
    o.require(img == c, "Phi does not invert the section", {{"values", vec_json(c)}, {"image", vec_json(img)}});
  }
  o.summary("unitriangular in " + std::to_string(chart.size()) + " coordinates, " +
            std::to_string(cfg.section_samples) + " round trips each way");
}

inline void check_poincare(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  const int order = cfg.series_order > 0 ? cfg.series_order : 2 * s.rs->coxeter_number;
  auto p = poincare_series(*s.rs, order);
  if (!p.agree()) {
    nlohmann::json a, b;
    for (std::size_t i = 0; i < p.by_degrees.size(); ++i) {
      a.push_back(format_rational(p.by_degrees[i]));
      b.push_back(format_rational(p.by_layers[i]));
    }
    o.require(false, "series forms differ", {{"by_degrees", a}, {"by_layers", b}});
  }
  o.summary("agree to order " + std::to_string(order));
}

inline void check_strong_regularity(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  SamplingContext sc;
  sc.L = s.L.get();
  sc.chart = &*s.chart;
  sc.num_bound = cfg.num_bound;
  sc.den_bound = cfg.den_bound;
  s.hess_points = sample_points(sc, Region::hess, cfg.hess_samples, cfg.seed, 12);
  for (const auto &x : s.hess_points) {
    std::vector<Vec> g;
    for (const auto &q : s.F->q)
      g.push_back(s.ctx->gradient(q, x));
    std::size_t r = rank_of(g);
    o.require(r == s.F->size(), "Hess point is not strongly regular", {{"point", vec_json(x)}, {"rank", r}});
    o.require(s.L->is_regular(x), "strongly regular point is not regular", {{"point", vec_json(x)}});
  }
  o.summary(std::to_string(s.hess_points.size()) + " Hess points with Jacobian rank " + std::to_string(s.F->size()));
}

inline void check_zx(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  const std::size_t n = L.num_positive();
  Rng rng = Rng::stream(cfg.seed, 13);
  for (const auto &x : s.hess_points) {
    ZxFrame z = zx_frame(*s.ctx, *s.F, x);
    o.require(z.frame.dimension == n, "dim Z_x differs from n",
              {{"point", vec_json(x)}, {"dimension", z.frame.dimension}});
    o.require(z.isotropic, "Z_x is not isotropic", {{"point", vec_json(x)}});
    o.require(z.invariants_vanish, "Hamiltonian of an invariant is nonzero", {{"point", vec_json(x)}});
    // omega does not see the centralizer.
    Vec z1 = rng.vec(L.dim(), 2, 1), z2 = rng.vec(L.dim(), 2, 1);
    for (const auto &k : L.centralizer(x))
      o.require(omega(L, x, z1 + k, z2) == omega(L, x, z1, z2), "omega depends on the preimage",
                {{"point", vec_json(x)}});
  }
  o.summary(std::to_string(s.hess_points.size()) + " points, dim Z_x = " + std::to_string(n) + ", isotropic");
}

inline std::vector<Vec> symplectic_points(const SuiteState &s, const SuiteConfig &cfg)
{
  std::size_t k = std::min(cfg.symplectic_samples, s.hess_points.size());
  return {s.hess_points.begin(), s.hess_points.begin() + static_cast<std::ptrdiff_t>(k)};
}

inline void check_hess_lagrangian(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  auto pts = symplectic_points(s, cfg);
  for (const auto &v : pts) {
    auto r = hess_lagrangian_check(*s.L, v);
    o.require(r.ok(), "[n_-, v] is not Lagrangian",
              {{"point", vec_json(v)}, {"dimension", r.dimension}, {"isotropic", r.isotropic}});
  }
  o.summary(std::to_string(pts.size()) + " points, dim [n_-, v] = " + std::to_string(s.L->num_positive()) +
            ", isotropic");
}

inline void check_transversality(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  auto pts = symplectic_points(s, cfg);
  for (const auto &x : pts) {
    auto r = transversality_check(*s.ctx, *s.F, x);
    o.require(r.ok(), "transversality fails",
              {{"point", vec_json(x)},
               {"orbit_dimension", r.orbit_dimension},
               {"sum_dimension", r.sum_dimension},
               {"fills_orbit", r.fills_orbit},
               {"pairing_determinant", format_rational(r.pairing_determinant)},
               {"phi_rank_on_hess", r.phi_rank_on_hess}});
  }
  // Whole slices: the nilpotent one through e1 and a generic one.
  std::size_t slice_points = 0;
  Rng rng = Rng::stream(cfg.seed, 15);
  std::vector<Vec> bases{s.chart->e1, hess_section(*s.chart, rng.vec(s.chart->size(), cfg.num_bound, 1))};
  for (const auto &v0 : bases) {
    auto rep = polarization_report(*s.ctx, *s.F, *s.chart, *s.inv, v0, cfg.slice_samples, cfg.seed);
    slice_points += rep.points;
    o.require(rep.ok(), "pointwise polarization check fails on a slice",
              {{"base", vec_json(v0)},
               {"points", rep.points},
               {"strongly_regular", rep.strongly_regular},
               {"zx_lagrangian", rep.zx_lagrangian},
               {"hess_lagrangian", rep.hess_lagrangian},
               {"transversal", rep.transversal},
               {"in_slice", rep.in_slice}});
  }
  o.summary(std::to_string(pts.size()) + " Hess points with nonsingular pairing, " + std::to_string(slice_points) +
            " slice points");
}

inline void check_infinitesimal(SuiteState &s, const SuiteConfig &cfg, Outcome &o)
{
  const LieAlgebra &L = *s.L;
  auto pts = symplectic_points(s, cfg);
  Rng rng = Rng::stream(cfg.seed, 16);
  for (const auto &v : pts) {
    auto iso = n_minus_isotropy(L, v);
    o.require(iso.empty(), "nonzero centralizer in n_-", {{"point", vec_json(v)}, {"element", vec_json(iso.empty() ? Vec{} : iso[0])}});
    Vec n = zero_vec(L.dim());
    for (std::size_t k = 0; k < L.num_positive(); ++k)
      n[L.neg_index(k)] = rng.rational(cfg.num_bound, cfg.den_bound);
    Vec moved = L.exp_ad(n, v);
    o.require(in_hess(L, s.chart->e1, moved), "exp(ad n) v leaves Hess", {{"point", vec_json(v)}, {"n", vec_json(n)}});
    OrbitSlice slice = orbit_slice(*s.inv, v);
    o.require(slice_member(L, s.chart->e1, *s.inv, slice, moved), "invariants change along n_-",
              {{"point", vec_json(v)}, {"n", vec_json(n)}});
    Vec p0 = phi(*s.F, v), p1 = phi(*s.F, moved);
    for (auto b : s.F->index_I)
      o.require(p0[b] == p1[b], "I-component of Phi changes", {{"point", vec_json(v)}, {"index", b + 1}});
  }
  o.summary(std::to_string(pts.size()) + " points, trivial n_- isotropy, invariants preserved");
}

} // namespace detail

using CheckFn = std::function<void(detail::SuiteState &, const SuiteConfig &, Outcome &)>;

/// Runs checks 1..16 in dependency order.
inline VerificationReport run_checks(const SuiteConfig &cfg)
{
  VerificationReport rep;
  rep.type = cfg.type;
  rep.seed = cfg.seed;
  detail::SuiteState state;
  const std::vector<CheckFn> fns{
      detail::check_degrees,        detail::check_algebra,          detail::check_principal,
      detail::check_gradient_regularity, detail::check_vandermonde, detail::check_commute,
      detail::check_nilpotent_span, detail::check_principal_shift,  detail::check_family_dimension,
      detail::check_chart,          detail::check_poincare,         detail::check_strong_regularity,
      detail::check_zx,             detail::check_hess_lagrangian,  detail::check_transversality,
      detail::check_infinitesimal,
  };
  // Prerequisites of each check, by id.
  const std::vector<std::vector<int>> needs{
      {}, {1}, {2}, {2}, {3, 4}, {4}, {3, 6}, {3, 6}, {6}, {3, 6}, {1}, {10}, {12}, {12}, {12}, {10, 12},
  };
  std::optional<std::string> gate;
  try {
    check_supported_type(cfg.type, cfg.enable_g2);
  } catch (const Error &e) {
    gate = e.what();
  }
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const auto &info = check_catalog()[i];
    CheckRecord rec;
    rec.id = info.id;
    rec.check = info.slug;
    rec.claim = info.claim;
    auto start = std::chrono::steady_clock::now();
    if (gate) {
      rec.status = i == 0 ? Status::fail : Status::skipped;
      rec.detail = i == 0 ? *gate : "type not supported";
      if (i == 0)
        rec.witness = {{"error", "UnsupportedType"}, {"message", *gate}};
    } else {
      std::string missing;
      for (int dep : needs[i])
        if (rep.records[static_cast<std::size_t>(dep - 1)].status == Status::fail ||
            rep.records[static_cast<std::size_t>(dep - 1)].status == Status::skipped)
          missing += (missing.empty() ? "" : ",") + std::to_string(dep);
      if (!missing.empty()) {
        rec.status = Status::skipped;
        rec.detail = "prerequisite check " + missing + " did not pass";
      } else {
        Outcome o;
        try {
          fns[i](state, cfg, o);
        } catch (const Error &e) {
          o.status = Status::fail;
          o.detail = e.what();
          o.witness = {{"error", e.kind()}, {"message", e.what()}};
        }
        rec.status = o.status;
        rec.detail = o.detail;
        rec.witness = o.witness;
      }
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.verbose)
      std::cerr << "check " << rec.id << " " << rec.check << ": " << status_name(rec.status) << " in "
                << rec.seconds << " s\n";
    if (i == 1 && state.L)
      rep.chevalley_hash = convention_hash(*state.L);
    if (i == 5 && state.y)
      rep.y = *state.y;
    rep.records.push_back(std::move(rec));
  }
  if (state.L) {
    std::string conv = state.L->convention_string() + ";y=" + vec_json(rep.y).dump() + ";q=m-asc,j-asc";
    rep.convention_hash = hex64(fnv1a(conv));
  }
  return rep;
}

/// Full suite: checks 1..16, then a second independent run compared byte for byte.
inline VerificationReport run_suite(const SuiteConfig &cfg)
{
  VerificationReport first = run_checks(cfg);
  const auto &info = check_catalog().back();
  CheckRecord rec;
  rec.id = info.id;
  rec.check = info.slug;
  rec.claim = info.claim;
  if (first.records.front().status == Status::fail && first.count(Status::skipped) == first.records.size() - 1) {
    rec.status = Status::skipped;
    rec.detail = "type not supported";
  } else {
    SuiteConfig quiet = cfg;
    quiet.verbose = false;
    std::string a = first.to_json().dump(), b = run_checks(quiet).to_json().dump();
    if (a == b) {
      rec.status = Status::pass;
      rec.detail = "second run identical (" + std::to_string(a.size()) + " bytes)";
    } else {
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k])
        ++k;
      rec.status = Status::fail;
      rec.detail = "second run differs";
      rec.witness = {{"first_difference", k}};
    }
  }
  first.records.push_back(std::move(rec));
  return first;
}

} // namespace mfhess
