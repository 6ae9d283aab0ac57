#include "mfhess/mfhess.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace mfhess;

namespace {

bool use_cache(const std::string &cache_dir) { return !cache_dir.empty() || std::getenv("MFHESS_CACHE"); }

struct Built
{
  LieAlgebra L;
  GradientContext ctx;
  InvariantFamily inv;
  PrincipalTriple triple;
  ShiftFamily F;
  HessChart chart;

  Built(const std::string &type, std::uint64_t seed, const std::string &cache_dir)
      : L(chevalley_algebra(build_root_system(cartan_from_label(type)))), ctx(L),
        inv(use_cache(cache_dir) ? cached_invariants(type, ctx, resolve_cache_dir(cache_dir))
                                 : invariant_generators(ctx)),
        triple(principal_triple(L)),
        F(shift_family(L, inv, choose_regular_y(L, seed))), chart(build_chart(ctx, triple, F))
  {
  }
};

int run_verify(const SuiteConfig &cfg, const std::string &format, const std::string &out)
{
  VerificationReport rep = run_suite(cfg);
  std::string text = format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "mfhess: cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  return rep.any_failed() ? 1 : 0;
}

int run_section(const std::string &type, std::uint64_t seed, bool enable_g2, const std::string &values,
                const std::string &cache_dir)
{
  check_supported_type(type, enable_g2);
  Vec c = parse_rational_list(values);
  Built b(type, seed, cache_dir);
  if (c.size() != b.chart.size()) {
    std::cerr << "mfhess: " << type << " needs " << b.chart.size() << " values, got " << c.size() << "\n";
    return 2;
  }
  Vec v = hess_section(b.chart, c);
  if (phi(b.F, v) != c) {
    std::cerr << "mfhess: section does not reproduce the values\n";
    return 1;
  }
  for (std::size_t a = 0; a < v.size(); ++a)
    std::cout << (a ? "," : "") << format_rational_short(v[a]);
  std::cout << "\n";
  return 0;
}

int run_invariants(const std::string &type, bool enable_g2, const std::string &cache_dir)
{
  check_supported_type(type, enable_g2);
  LieAlgebra L = chevalley_algebra(build_root_system(cartan_from_label(type)));
  GradientContext ctx(L);
  auto dir = resolve_cache_dir(cache_dir);
  InvariantFamily inv = cached_invariants(type, ctx, dir);
  std::cerr << "cache: " << cache_file(dir, type, L).string() << " (" << inv.provenance << ")\n";
  for (std::size_t j = 0; j < inv.generators.size(); ++j)
    std::cout << "I" << j + 1 << " (degree " << inv.degrees[j] << "): " << to_string(inv.generators[j]) << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Shift-of-argument algebras and the Hessenberg section, in exact arithmetic"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string format = "text", out;
  auto *verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--type", cfg.type, "type label, e.g. A2, B2, A1xA1")->required();
  verify->add_option("--seed", cfg.seed, "64-bit seed");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out, "output file (default stdout)");
  verify->add_option("--cache-dir", cfg.cache_dir, "invariant cache directory");
  verify->add_flag("--enable-g2", cfg.enable_g2, "allow G2");
  verify->add_flag("--float-shadow", cfg.float_shadow, "floating-point prescreen in sampling searches");
  verify->add_flag("--verbose", cfg.verbose, "per-check timings on stderr");
  verify->add_option("--samples", cfg.hess_samples, "Hess sample points")->check(CLI::PositiveNumber);

  std::string type = "A2", values, cache_dir;
  std::uint64_t seed = 42;
  bool enable_g2 = false;
  auto *section = app.add_subcommand("section", "point of Hess with prescribed values of q_1..q_b");
  section->add_option("--type", type)->required();
  section->add_option("--seed", seed);
  section->add_option("--values", values, "comma-separated num/den values")->required();
  section->add_option("--cache-dir", cache_dir);
  section->add_flag("--enable-g2", enable_g2);

  auto *invariants = app.add_subcommand("invariants", "compute or load invariant generators");
  invariants->add_option("--type", type)->required();
  invariants->add_option("--cache-dir", cache_dir);
  invariants->add_flag("--enable-g2", enable_g2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      cfg.use_cache = use_cache(cfg.cache_dir);
      return run_verify(cfg, format, out);
    }
    if (*section)
      return run_section(type, seed, enable_g2, values, cache_dir);
    if (*invariants)
      return run_invariants(type, enable_g2, cache_dir);
  } catch (const Error &e) {
    std::cerr << "mfhess: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "mfhess: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
