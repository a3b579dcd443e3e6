#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cdtwist/atlas.hpp"
#include "cdtwist/basis.hpp"
#include "cdtwist/bench.hpp"
#include "cdtwist/element.hpp"
#include "cdtwist/treewalk.hpp"
#include "cdtwist/verify.hpp"

namespace cdtwist::cli {

namespace {

// Raised for bad operands after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BasisIndex parse_index(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || value > BasisIndex::kMax) {
    throw UsageError(std::string(what) + ": '" + text +
                     "' is not a non-negative integer below 2^63");
  }
  return BasisIndex(value);
}

ProductVariant parse_variant_flag(const std::string& text) {
  if (const auto v = parse_variant(text)) {
    return *v;
  }
  throw UsageError("unknown product variant '" + text + "' (expected P0-P3 or T0-T3)");
}

Element parse_operand(const std::string& text, const char* what) {
  try {
    return parse_element(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw UsageError("expected P,Q but got '" + text + "'");
  }
  return {parse_index(text.substr(0, comma), "P").value(),
          parse_index(text.substr(comma + 1), "Q").value()};
}

struct Options {
  std::string p, q;
  std::string variant = "P2";
  std::string x, y;
  std::string strategy;
  bool trace = false;
  int atlas_n = 0;
  std::string out_path;
  std::string format = "pgm";
  int max_exp = -1;
  int exp = 10;
  std::uint64_t terms = 4;
  std::uint64_t samples = 0;
  bool json = false;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::string inject_flip;
};

int cmd_basis_mul(const Options& o, std::ostream& out) {
  const auto v = parse_variant_flag(o.variant);
  out << to_string(basis_mul(v, parse_index(o.p, "P"), parse_index(o.q, "Q"))) << "\n";
  return kExitOk;
}

int cmd_mul(const Options& o, std::ostream& out) {
  const auto v = parse_variant_flag(o.variant);
  const Element x = parse_operand(o.x, "X");
  const Element y = parse_operand(o.y, "Y");
  std::string strategy = o.strategy;
  if (strategy.empty()) {
    strategy = v == ProductVariant::P2 ? "twist" : "doubling";
  }
  if (strategy == "twist") {
    if (v != ProductVariant::P2) {
      throw UsageError("--strategy twist is only defined for variant P2");
    }
    out << to_string(mul_twist(x, y)) << "\n";
  } else {
    out << to_string(mul_doubling(v, x, y)) << "\n";
  }
  return kExitOk;
}

int cmd_omega(const Options& o, std::ostream& out) {
  const auto v = parse_variant_flag(o.variant);
  out << to_string(omega(v, parse_index(o.p, "P"), parse_index(o.q, "Q"))) << "\n";
  return kExitOk;
}

int cmd_tree(const Options& o, std::ostream& out) {
  if (o.p.empty() || o.q.empty()) {
    throw UsageError("tree: expected P Q or 'dump'");
  }
  const BasisIndex p = parse_index(o.p, "P");
  const BasisIndex q = parse_index(o.q, "Q");
  const Traversal t = trace(TwistAutomaton::shipped(), p, q);
  out << to_string(t.sign) << "\n";
  if (o.trace) {
    for (std::size_t i = 0; i < t.path.size(); ++i) {
      out << (i == 0 ? "" : ",") << t.path[i];
    }
    out << "\n";
  }
  return kExitOk;
}

int cmd_atlas(const Options& o, std::ostream& out, std::ostream& err) {
  const auto v = parse_variant_flag(o.variant);
  if (o.atlas_n < kMinTableExponent || o.atlas_n > kMaxTableExponent) {
    throw UsageError("atlas: n must be in [1, 12], got " + std::to_string(o.atlas_n));
  }
  const OmegaTable table = build_table(v, o.atlas_n);
  const std::string path = o.out_path.empty() ? "omega_" + std::string(to_string(v)) + "_" +
                                                    std::to_string(o.atlas_n) + "." + o.format
                                              : o.out_path;
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "atlas: cannot open '" << path << "' for writing\n";
    return kExitFailure;
  }
  if (o.format == "pgm") {
    const auto bytes = render_pgm(table);
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
  } else {
    file << render_txt(table);
  }
  file.close();
  if (!file) {
    err << "atlas: write to '" << path << "' failed\n";
    return kExitFailure;
  }
  const ChecksumEntry entry{v, o.atlas_n, table_checksum(table)};
  out << format_checksums(std::span(&entry, 1));
  return kExitOk;
}

int cmd_bench(const std::string& kind, const Options& o, std::ostream& out) {
  BenchOptions options;
  options.seed = o.seed ? *o.seed : seed_from_environment();
  options.threads = o.threads;
  BenchReport report;
  if (kind == "basis") {
    report = bench_basis_products(o.max_exp < 0 ? 16 : o.max_exp,
                                  o.samples == 0 ? 100'000 : o.samples, options);
  } else {
    report = bench_element_mul(o.exp, o.terms, o.samples == 0 ? 100 : o.samples, options);
  }
  out << (o.json ? to_json(report) : to_csv(report));
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.max_exp = o.max_exp < 0 ? 8 : o.max_exp;
  if (options.max_exp < 1 || options.max_exp > kMaxVerifyExponent) {
    throw UsageError("verify: --max-exp must be in [1, 10]");
  }
  if (!o.inject_flip.empty()) {
    const auto [fp, fq] = parse_pair(o.inject_flip);
    options.twist = [fp = fp, fq = fq](BasisIndex p, BasisIndex q) {
      const Sign s = omega2(p, q);
      return p.value() == fp && q.value() == fq ? -s : s;
    };
  }
  const auto results = run_verification(options);
  out << format_summary(results);
  for (const SuiteResult& r : results) {
    if (!r.passed()) {
      err << "verify: " << r.name << " failed at " << *r.counterexample << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley-Dickson basis products, twist tables and checks", "cdtwist"};
  app.require_subcommand(1);
  Options o;

  auto* basis = app.add_subcommand("basis-mul", "Product of two basis vectors, e.g. +e20");
  basis->add_option("p", o.p, "Left index")->required();
  basis->add_option("q", o.q, "Right index")->required();
  basis->add_option("--variant", o.variant, "Doubling product (P0-P3, T0-T3)");

  auto* mul = app.add_subcommand("mul", "Product of two elements, e.g. \"3*e0 - 1/2*e5\"");
  mul->add_option("x", o.x, "Left element")->required();
  mul->add_option("y", o.y, "Right element")->required();
  mul->add_option("--variant", o.variant, "Doubling product (P0-P3, T0-T3)");
  mul->add_option("--strategy", o.strategy, "twist (P2 only) or doubling")
      ->check(CLI::IsMember({"twist", "doubling"}));

  auto* omega_cmd = app.add_subcommand("omega", "Twist sign of (p, q)");
  omega_cmd->add_option("p", o.p, "Left index")->required();
  omega_cmd->add_option("q", o.q, "Right index")->required();
  omega_cmd->add_option("--variant", o.variant, "Doubling product (P0-P3, T0-T3)");

  auto* tree = app.add_subcommand("tree", "Walk the omega2 twist tree");
  tree->add_option("p", o.p, "Left index");
  tree->add_option("q", o.q, "Right index");
  tree->add_flag("--trace", o.trace, "Print the visited states");
  auto* dump = tree->add_subcommand("dump", "Print the automaton transition table");

  auto* atlas = app.add_subcommand("atlas", "Render the 2^n x 2^n twist table");
  atlas->add_option("n", o.atlas_n, "Table exponent, 1..12")->required();
  atlas->add_option("--variant", o.variant, "Doubling product (P0-P3, T0-T3)");
  atlas->add_option("--out", o.out_path, "Output path (default omega_<variant>_<n>.<format>)");
  atlas->add_option("--format", o.format, "pgm or txt")->check(CLI::IsMember({"pgm", "txt"}));

  auto* bench = app.add_subcommand("bench", "Closed form vs doubling throughput");
  bench->require_subcommand(1);
  bench->add_option("--seed", o.seed, "Input seed (overrides CDTWIST_SEED)");
  bench->add_option("--threads", o.threads, "Worker threads for timing")
      ->check(CLI::Range(1u, 256u));
  bench->add_flag("--json", o.json, "Emit JSON instead of CSV");
  bench->fallthrough();
  auto* bench_basis = bench->add_subcommand("basis", "Basis products");
  bench_basis->add_option("--max-exp", o.max_exp, "Indices below 2^max-exp (default 16)");
  bench_basis->add_option("--samples", o.samples, "Sampled pairs (default 100000)");
  auto* bench_element = bench->add_subcommand("element", "Sparse element products");
  bench_element->add_option("--exp", o.exp, "Indices below 2^exp (default 10)");
  bench_element->add_option("--terms", o.terms, "Nonzero terms per operand (default 4)");
  bench_element->add_option("--samples", o.samples, "Sampled products (default 100)");

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--max-exp", o.max_exp, "Exhaustive range 2^k, k <= 10 (default 8)");
  verify->add_option("--inject-flip", o.inject_flip, "Harness self-test: flip omega2 at P,Q")
      ->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (basis->parsed()) return cmd_basis_mul(o, out);
    if (mul->parsed()) return cmd_mul(o, out);
    if (omega_cmd->parsed()) return cmd_omega(o, out);
    if (dump->parsed()) {
      out << TwistAutomaton::shipped().serialize();
      return kExitOk;
    }
    if (tree->parsed()) return cmd_tree(o, out);
    if (atlas->parsed()) return cmd_atlas(o, out, err);
    if (bench_basis->parsed()) return cmd_bench("basis", o, out);
    if (bench_element->parsed()) return cmd_bench("element", o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace cdtwist::cli
