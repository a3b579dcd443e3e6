#include "cdtwist/verify.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cdtwist/atlas.hpp"
#include "cdtwist/element.hpp"
#include "cdtwist/treewalk.hpp"

namespace cdtwist {

namespace {

std::string pair_failure(std::uint64_t p, std::uint64_t q, std::string_view what, Sign expected,
                         Sign actual) {
  std::ostringstream os;
  os << "(" << p << ", " << q << "): " << what << " expected " << to_string(expected) << ", got "
     << to_string(actual);
  return os.str();
}

class Verifier {
 public:
  explicit Verifier(const VerifyOptions& options)
      : twist_(options.twist ? options.twist : TwistFunction(omega2)),
        limit_(std::uint64_t{1} << options.max_exp),
        max_exp_(options.max_exp),
        rng_(options.seed) {}

  // P2 and T2 go through the twist under test; others through the oracle.
  Sign variant_twist(ProductVariant v, std::uint64_t p, std::uint64_t q) const {
    switch (v) {
      case ProductVariant::P2:
        return twist_(BasisIndex(p), BasisIndex(q));
      case ProductVariant::T2:
        return twist_(BasisIndex(q), BasisIndex(p));
      default:
        return oracle_basis_mul(v, BasisIndex(p), BasisIndex(q)).sign;
    }
  }

  SuiteResult closed_form_vs_oracle() const {
    SuiteResult r{"closed_form_vs_oracle", 0, std::nullopt};
    for (std::uint64_t p = 0; p < limit_; ++p) {
      for (std::uint64_t q = 0; q < limit_; ++q) {
        const Sign expected = oracle_basis_mul(ProductVariant::P2, BasisIndex(p), BasisIndex(q)).sign;
        const Sign actual = twist_(BasisIndex(p), BasisIndex(q));
        ++r.checked;
        if (expected != actual) {
          r.counterexample = pair_failure(p, q, "omega2", expected, actual);
          return r;
        }
      }
    }
    return r;
  }

  SuiteResult product_axioms() const {
    SuiteResult r{"eight_product_axioms", 0, std::nullopt};
    const std::uint64_t limit = std::min<std::uint64_t>(limit_, 256);
    for (const ProductVariant v : kAllVariants) {
      const std::string name(to_string(v));
      for (std::uint64_t p = 0; p < limit; ++p) {
        for (std::uint64_t q = 0; q < limit; ++q) {
          ++r.checked;
          const SignedBasis product = oracle_basis_mul(v, BasisIndex(p), BasisIndex(q));
          if (product.index.value() != (p ^ q)) {
            r.counterexample = "(" + std::to_string(p) + ", " + std::to_string(q) + "): " + name +
                               " index " + std::to_string(product.index.value()) +
                               " is not p xor q";
            return r;
          }
          const Sign s = variant_twist(v, p, q);
          Sign expected = s;
          std::string law;
          if (p == 0 || q == 0) {
            expected = Sign::plus();
            law = name + " unit law";
          } else if (p == q) {
            expected = Sign::minus();
            law = name + " square law";
          } else {
            expected = -variant_twist(v, q, p);
            law = name + " anticommutativity";
          }
          if (s != expected) {
            r.counterexample = pair_failure(p, q, law, expected, s);
            return r;
          }
          const ProductVariant t = transpose_of(v);
          const Sign dual = variant_twist(t, q, p);
          if (s != dual) {
            r.counterexample = pair_failure(p, q, name + " transpose duality", dual, s);
            return r;
          }
        }
      }
    }
    return r;
  }

  SuiteResult block_laws() const {
    SuiteResult r{"block_laws", 0, std::nullopt};
    for (int n = 0; n < max_exp_; ++n) {
      const std::uint64_t lo = std::uint64_t{1} << n;
      const std::uint64_t hi = lo << 1;
      for (std::uint64_t p = lo; p < hi; ++p) {
        for (std::uint64_t q = p + 1; q < limit_; ++q) {
          ++r.checked;
          const Sign expected = q < hi ? Sign::plus() : Sign::from_parity(q / lo);
          const Sign actual = twist_(BasisIndex(p), BasisIndex(q));
          if (expected != actual) {
            r.counterexample = pair_failure(p, q, q < hi ? "same-block law" : "stripe law",
                                            expected, actual);
            return r;
          }
        }
      }
    }
    return r;
  }

  SuiteResult tree_equivalence() const {
    SuiteResult r{"tree_equivalence", 0, std::nullopt};
    for (std::uint64_t p = 0; p < limit_; ++p) {
      for (std::uint64_t q = 0; q < limit_; ++q) {
        ++r.checked;
        const Sign expected = traverse(BasisIndex(p), BasisIndex(q));
        const Sign actual = twist_(BasisIndex(p), BasisIndex(q));
        if (expected != actual) {
          r.counterexample = pair_failure(p, q, "tree traversal", expected, actual);
          return r;
        }
      }
    }
    return r;
  }

  SuiteResult element_products() {
    SuiteResult r{"element_products", 0, std::nullopt};
    const std::uint64_t limit = std::min<std::uint64_t>(limit_, 64);
    for (std::uint64_t p = 0; p < limit; ++p) {
      for (std::uint64_t q = 0; q < limit; ++q) {
        ++r.checked;
        const Element x = Element::basis(BasisIndex(p));
        const Element y = Element::basis(BasisIndex(q));
        const Element doubled = mul_doubling(ProductVariant::P2, x, y);
        const Element expected =
            Element::basis(BasisIndex(p ^ q), twist_(BasisIndex(p), BasisIndex(q)).value());
        if (doubled != expected) {
          r.counterexample = "(" + std::to_string(p) + ", " + std::to_string(q) +
                             "): mul_doubling gives " + to_string(doubled) +
                             ", twist rule gives " + to_string(expected);
          return r;
        }
      }
    }
    for (int sample = 0; sample < 200; ++sample) {
      ++r.checked;
      const Element x = random_element(limit_, 4);
      const Element y = random_element(limit_, 4);
      const Element twisted = mul_twist(x, y);
      const Element doubled = mul_doubling(ProductVariant::P2, x, y);
      if (twisted != doubled) {
        r.counterexample = "(" + to_string(x) + ") * (" + to_string(y) + "): mul_twist " +
                           to_string(twisted) + " vs mul_doubling " + to_string(doubled);
        return r;
      }
    }
    return r;
  }

  // The P2 twist stops composing norms at dim 8 ((e1+e2)(e4+e7) = 0), so the
  // law is only checked through the quaternion level.
  SuiteResult norm_composition() {
    SuiteResult r{"norm_composition", 0, std::nullopt};
    for (std::uint64_t dim = 1; dim <= std::min<std::uint64_t>(limit_, 4); dim *= 2) {
      for (int sample = 0; sample < 100; ++sample) {
        ++r.checked;
        const Element x = random_element(dim, dim);
        const Element y = random_element(dim, dim);
        if (norm_sq(mul_twist(x, y)) != norm_sq(x) * norm_sq(y)) {
          r.counterexample = "dim " + std::to_string(dim) + ": |xy|^2 != |x|^2 |y|^2 for x = " +
                             to_string(x) + ", y = " + to_string(y);
          return r;
        }
      }
    }
    return r;
  }

  SuiteResult atlas_cells() const {
    SuiteResult r{"atlas_cells", 0, std::nullopt};
    const int n = std::min(max_exp_, 8);
    const OmegaTable table = build_table(ProductVariant::P2, n);
    for (std::uint64_t p = 0; p < table.size(); ++p) {
      for (std::uint64_t q = 0; q < table.size(); ++q) {
        ++r.checked;
        const Sign expected = twist_(BasisIndex(p), BasisIndex(q));
        if (table.at(p, q) != expected) {
          r.counterexample = pair_failure(p, q, "atlas cell", expected, table.at(p, q));
          return r;
        }
      }
    }
    return r;
  }

 private:
  // Up to `terms` small integer coefficients on indices below `limit`.
  Element random_element(std::uint64_t limit, std::uint64_t terms) {
    std::uniform_int_distribution<std::uint64_t> index(0, limit - 1);
    std::uniform_int_distribution<int> coefficient(-5, 5);
    Element e;
    for (std::uint64_t t = 0; t < terms; ++t) {
      e.accumulate(BasisIndex(index(rng_)), coefficient(rng_));
    }
    return e;
  }

  TwistFunction twist_;
  std::uint64_t limit_;
  int max_exp_;
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  if (options.max_exp < 1 || options.max_exp > kMaxVerifyExponent) {
    throw std::invalid_argument("verify: max_exp must be in [1, 10]");
  }
  Verifier verifier(options);
  std::vector<SuiteResult> results;
  auto record = [&](SuiteResult r) {
    const bool failed = !r.passed();
    results.push_back(std::move(r));
    return failed && options.fail_fast;
  };
  if (record(verifier.closed_form_vs_oracle())) return results;
  if (record(verifier.product_axioms())) return results;
  if (record(verifier.block_laws())) return results;
  if (record(verifier.tree_equivalence())) return results;
  if (record(verifier.element_products())) return results;
  if (record(verifier.norm_composition())) return results;
  record(verifier.atlas_cells());
  return results;
}

std::string format_summary(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "suite" << std::right << std::setw(12) << "checked"
     << "  result\n";
  for (const SuiteResult& r : results) {
    os << std::left << std::setw(24) << r.name << std::right << std::setw(12) << r.checked << "  "
       << (r.passed() ? "ok" : "FAIL " + *r.counterexample) << "\n";
  }
  return os.str();
}

}  // namespace cdtwist
