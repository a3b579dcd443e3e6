#include "cdtwist/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <openssl/evp.h>

namespace cdtwist {

OmegaTable::OmegaTable(ProductVariant variant, int n) : variant_(variant), n_(n) {
  if (n < kMinTableExponent || n > kMaxTableExponent) {
    throw std::invalid_argument("table exponent must be in [1, 12], got " + std::to_string(n));
  }
  minus_.assign(size() * size(), 0);
}

OmegaTable build_table(ProductVariant v, int n, unsigned threads) {
  OmegaTable table(v, n);
  const std::uint64_t side = table.size();
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, side));

  // Workers claim whole rows; every cell is written by exactly one worker.
  std::atomic<std::uint64_t> next_row{0};
  auto work = [&] {
    for (std::uint64_t p = next_row++; p < side; p = next_row++) {
      const BasisIndex ip(p);
      for (std::uint64_t q = 0; q < side; ++q) {
        table.set(p, q, omega(v, ip, BasisIndex(q)));
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(work);
    }
  }
  return table;
}

std::vector<std::uint8_t> render_pgm(const OmegaTable& table) {
  const std::string side = std::to_string(table.size());
  const std::string header = "P5\n" + side + " " + side + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + table.cells().size());
  out.insert(out.end(), header.begin(), header.end());
  for (const std::uint8_t minus : table.cells()) {
    out.push_back(minus != 0 ? kWhiteMinus : kGrayPlus);
  }
  return out;
}

std::string render_txt(const OmegaTable& table) {
  const std::uint64_t side = table.size();
  std::string out;
  out.reserve(side * (side + 1));
  for (std::uint64_t p = 0; p < side; ++p) {
    for (std::uint64_t q = 0; q < side; ++q) {
      out += table.at(p, q).negative() ? '-' : '+';
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: EVP_Digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string table_checksum(const OmegaTable& table) { return sha256_hex(render_pgm(table)); }

std::vector<ChecksumEntry> parse_checksums(std::string_view text) {
  std::vector<ChecksumEntry> entries;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string variant;
    if (!(fields >> variant)) {
      continue;
    }
    ChecksumEntry entry{};
    const auto parsed = parse_variant(variant);
    std::string extra;
    if (!parsed || !(fields >> entry.n >> entry.digest) || (fields >> extra) ||
        entry.digest.size() != 64) {
      throw std::invalid_argument("atlas.sums line " + std::to_string(line_no) +
                                  ": expected '<variant> <n> <sha256>'");
    }
    entry.variant = *parsed;
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string format_checksums(std::span<const ChecksumEntry> entries) {
  std::string out;
  for (const ChecksumEntry& e : entries) {
    out += to_string(e.variant);
    out += ' ';
    out += std::to_string(e.n);
    out += ' ';
    out += e.digest;
    out += '\n';
  }
  return out;
}

}  // namespace cdtwist
