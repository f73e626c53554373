#pragma once

#include <gmpxx.h>

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dejean {

// Every inequality a certificate depends on is checked in exact rational
// arithmetic; doubles only ever feed these types through exact conversion.
using Rational = mpq_class;
using BigInt = mpz_class;

// Failure taxonomy; the CLI maps these onto its exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cooperative work/time budget for enumerations. bump() is amortized: the
// clock is consulted every 'stride' nodes, the node cap on every call.
class Guard {
 public:
  Guard(std::uint64_t max_nodes, double max_seconds)
      : max_nodes_(max_nodes),
        max_seconds_(max_seconds),
        start_(std::chrono::steady_clock::now()) {}

  static Guard unlimited() { return Guard(UINT64_MAX, 1e18); }

  void bump(std::uint64_t n = 1) {
    std::uint64_t seen = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (seen > max_nodes_)
      throw GuardError("node budget exceeded: " + std::to_string(seen) + " > " +
                       std::to_string(max_nodes_));
    if ((seen & 0xffffu) < n) check_clock();
  }

  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

 private:
  void check_clock() const {
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_)
                    .count();
    if (el > max_seconds_)
      throw GuardError("time budget exceeded: " + std::to_string(el) + "s > " +
                       std::to_string(max_seconds_) + "s");
  }

  std::uint64_t max_nodes_;
  double max_seconds_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> used_{0};
};

// Permutation of {0..k-1}, k <= 10. map[i] is the image of i.
struct Perm {
  std::uint8_t k = 0;
  std::array<std::uint8_t, 10> map{};

  static Perm identity(int k);
  std::uint8_t operator()(std::uint8_t a) const { return map[a]; }
  bool operator==(const Perm&) const = default;
};

// (f*g)(x) = f(g(x)): g acts first.
Perm compose(const Perm& f, const Perm& g);
Perm inverse(const Perm& p);

std::uint64_t factorial(int k);

// Lehmer ranking; identity ranks 0, ranks are dense in [0, k!).
std::uint32_t perm_rank(const Perm& p);
Perm perm_unrank(int k, std::uint32_t r);

// One-line image as letters, e.g. identity on 3 letters is "abc".
std::string perm_image_text(const Perm& p);
Perm perm_from_image_text(const std::string& s, int k);

// Streaming SHA-256 (FIPS 180-4); digest as lowercase hex.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, std::size_t len);
  void update(const std::string& s) { update(s.data(), s.size()); }
  std::string hex_digest();  // finalizes; object must not be reused

  static std::string of(const std::string& s);

 private:
  void process_block(const std::uint8_t* p);
  std::array<std::uint32_t, 8> h_;
  std::array<std::uint8_t, 64> buf_;
  std::size_t buf_len_ = 0;
  std::uint64_t total_ = 0;
  bool done_ = false;
};

// Runs fn(i) for all i in [0, n). Work distribution never affects results:
// callers write into per-index slots and merge in index order themselves.
// Exceptions are rethrown (lowest index wins if several workers throw).
void parallel_for_index(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& fn);

// Rational text form "num/den", canonical, den >= 1 always explicit.
std::string rational_text(const Rational& q);
Rational rational_from_text(const std::string& s);

// q^e for e >= 0.
Rational rational_pow(const Rational& q, unsigned long e);

// Exact value of the double (doubles are dyadic rationals).
Rational rational_from_double(double d);

double rational_to_double(const Rational& q);

}  // namespace dejean
