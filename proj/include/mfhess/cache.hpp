#pragma once

#include "mfhess/invariants.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/polynomial.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

namespace mfhess {

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string &s)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v)
{
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::string convention_hash(const LieAlgebra &L) { return hex64(fnv1a(L.convention_string())); }

/// MFHESS_CACHE, then the explicit directory, then ".mfhess-cache".
inline std::filesystem::path resolve_cache_dir(const std::string &explicit_dir = "")
{
  if (const char *env = std::getenv("MFHESS_CACHE"); env && *env)
    return env;
  if (!explicit_dir.empty())
    return explicit_dir;
  return ".mfhess-cache";
}

inline nlohmann::json polynomial_to_json(const Polynomial &p)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &t : serialize(p))
    terms.push_back({{"exponents", t.exponents}, {"coefficient", t.coefficient}});
  return terms;
}

inline Polynomial polynomial_from_json(std::size_t nvars, const nlohmann::json &j)
{
  std::vector<SerializedTerm> terms;
  for (const auto &t : j)
    terms.push_back({t.at("exponents").get<std::vector<unsigned>>(), t.at("coefficient").get<std::string>()});
  return deserialize(nvars, terms);
}

inline nlohmann::json invariants_to_json(const std::string &type, const LieAlgebra &L, const InvariantFamily &inv)
{
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t j = 0; j < inv.generators.size(); ++j)
    gens.push_back({{"degree", inv.degrees[j]}, {"terms", polynomial_to_json(inv.generators[j])}});
  return {{"schema", "invariants_v1"},
          {"type", type},
          {"convention_hash", convention_hash(L)},
          {"nvars", L.dim()},
          {"generators", gens}};
}

/// True when every generator is annihilated by the Chevalley generators.
inline bool family_is_invariant(const GradientContext &ctx, const InvariantFamily &inv)
{
  const LieAlgebra &L = ctx.algebra();
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t a : {L.pos_index(i), L.neg_index(i)}) {
      auto field = ctx.linear_derivation(L.basis_vector(a));
      for (const auto &I : inv.generators)
        if (!ctx.apply_field(field, I).is_zero())
          return false;
    }
  return true;
}

/// Parses a cache document; nullopt when it belongs to another type,
/// convention or ring, or fails the invariance check.
inline std::optional<InvariantFamily> invariants_from_json(const std::string &type, const GradientContext &ctx,
                                                           const nlohmann::json &doc)
{
  const LieAlgebra &L = ctx.algebra();
  try {
    if (doc.at("schema") != "invariants_v1" || doc.at("type") != type ||
        doc.at("convention_hash") != convention_hash(L) || doc.at("nvars").get<std::size_t>() != L.dim())
      return std::nullopt;
    InvariantFamily inv;
    inv.provenance = "cache";
    for (const auto &g : doc.at("generators")) {
      inv.degrees.push_back(g.at("degree").get<int>());
      inv.generators.push_back(polynomial_from_json(L.dim(), g.at("terms")));
    }
    if (inv.degrees != L.roots().degrees)
      return std::nullopt;
    for (std::size_t j = 0; j < inv.generators.size(); ++j)
      if (inv.generators[j].degree() != inv.degrees[j] || !inv.generators[j].is_homogeneous())
        return std::nullopt;
    if (!family_is_invariant(ctx, inv))
      return std::nullopt;
    return inv;
  } catch (const nlohmann::json::exception &) {
    return std::nullopt;
  } catch (const Error &) {
    return std::nullopt;
  }
}

inline std::filesystem::path cache_file(const std::filesystem::path &dir, const std::string &type,
                                        const LieAlgebra &L)
{
  return dir / (type + "-" + convention_hash(L) + ".json");
}

/// Loads generators from the cache directory, or solves and stores them.
inline InvariantFamily cached_invariants(const std::string &type, const GradientContext &ctx,
                                         const std::filesystem::path &dir)
{
  const auto path = cache_file(dir, type, ctx.algebra());
  if (std::ifstream in(path); in) {
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (!doc.is_discarded())
      if (auto inv = invariants_from_json(type, ctx, doc))
        return *inv;
  }
  InvariantFamily inv = invariant_generators(ctx);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (std::ofstream out(path); out)
    out << invariants_to_json(type, ctx.algebra(), inv).dump(1) << '\n';
  return inv;
}

} // namespace mfhess
