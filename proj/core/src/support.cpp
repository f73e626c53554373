#include "dejean/support.hpp"

#include <bit>
#include <cstring>
#include <thread>

namespace dejean {

Perm Perm::identity(int k) {
  Perm p;
  p.k = static_cast<std::uint8_t>(k);
  for (int i = 0; i < k; ++i) p.map[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm compose(const Perm& f, const Perm& g) {
  Perm r;
  r.k = f.k;
  for (int i = 0; i < f.k; ++i) r.map[i] = f.map[g.map[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r;
  r.k = p.k;
  for (int i = 0; i < p.k; ++i) r.map[p.map[i]] = static_cast<std::uint8_t>(i);
  return r;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint32_t perm_rank(const Perm& p) {
  // Lehmer code: count smaller elements to the right, weight by factorials.
  std::uint32_t r = 0;
  for (int i = 0; i < p.k; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < p.k; ++j)
      if (p.map[j] < p.map[i]) ++smaller;
    r += smaller * static_cast<std::uint32_t>(factorial(p.k - 1 - i));
  }
  return r;
}

Perm perm_unrank(int k, std::uint32_t r) {
  Perm p;
  p.k = static_cast<std::uint8_t>(k);
  std::array<std::uint8_t, 10> pool{};
  for (int i = 0; i < k; ++i) pool[i] = static_cast<std::uint8_t>(i);
  int pool_n = k;
  for (int i = 0; i < k; ++i) {
    std::uint32_t f = static_cast<std::uint32_t>(factorial(k - 1 - i));
    std::uint32_t idx = r / f;
    r %= f;
    p.map[i] = pool[idx];
    for (int j = static_cast<int>(idx); j + 1 < pool_n; ++j)
      pool[j] = pool[j + 1];
    --pool_n;
  }
  return p;
}

std::string perm_image_text(const Perm& p) {
  std::string s(p.k, '?');
  for (int i = 0; i < p.k; ++i) s[i] = static_cast<char>('a' + p.map[i]);
  return s;
}

Perm perm_from_image_text(const std::string& s, int k) {
  if (static_cast<int>(s.size()) != k)
    throw ConfigError("permutation image has wrong length: " + s);
  Perm p;
  p.k = static_cast<std::uint8_t>(k);
  std::array<bool, 10> seen{};
  for (int i = 0; i < k; ++i) {
    int v = s[i] - 'a';
    if (v < 0 || v >= k || seen[v])
      throw ConfigError("invalid permutation image: " + s);
    seen[v] = true;
    p.map[i] = static_cast<std::uint8_t>(v);
  }
  return p;
}

namespace {

constexpr std::uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) {
  return std::rotr(x, n);
}

}  // namespace

Sha256::Sha256()
    : h_{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
         0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19} {}

void Sha256::process_block(const std::uint8_t* p) {
  std::uint32_t w[64];
  for (int i = 0; i < 16; ++i)
    w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
           (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
  for (int i = 16; i < 64; ++i) {
    std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3];
  std::uint32_t e = h_[4], f = h_[5], g = h_[6], h = h_[7];
  for (int i = 0; i < 64; ++i) {
    std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    std::uint32_t ch = (e & f) ^ (~e & g);
    std::uint32_t t1 = h + s1 + ch + kSha256K[i] + w[i];
    std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    std::uint32_t mj = (a & b) ^ (a & c) ^ (b & c);
    std::uint32_t t2 = s0 + mj;
    h = g; g = f; f = e; e = d + t1;
    d = c; c = b; b = a; a = t1 + t2;
  }
  h_[0] += a; h_[1] += b; h_[2] += c; h_[3] += d;
  h_[4] += e; h_[5] += f; h_[6] += g; h_[7] += h;
}

void Sha256::update(const void* data, std::size_t len) {
  const std::uint8_t* p = static_cast<const std::uint8_t*>(data);
  total_ += len;
  while (len > 0) {
    std::size_t take = std::min(len, buf_.size() - buf_len_);
    std::memcpy(buf_.data() + buf_len_, p, take);
    buf_len_ += take;
    p += take;
    len -= take;
    if (buf_len_ == buf_.size()) {
      process_block(buf_.data());
      buf_len_ = 0;
    }
  }
}

std::string Sha256::hex_digest() {
  if (done_) throw std::logic_error("Sha256 reused after finalization");
  done_ = true;
  std::uint64_t bits = total_ * 8;
  std::uint8_t pad = 0x80;
  update(&pad, 1);
  std::uint8_t zero = 0;
  while (buf_len_ != 56) update(&zero, 1);
  std::uint8_t len_be[8];
  for (int i = 0; i < 8; ++i)
    len_be[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
  // update() counts these into total_, harmless: total_ is already captured.
  update(len_be, 8);
  std::string out;
  out.reserve(64);
  static const char* hex = "0123456789abcdef";
  for (std::uint32_t v : h_)
    for (int i = 28; i >= 0; i -= 4) out.push_back(hex[(v >> i) & 0xf]);
  return out;
}

std::string Sha256::of(const std::string& s) {
  Sha256 h;
  h.update(s);
  return h.hex_digest();
}

void parallel_for_index(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& fn) {
  if (threads < 1) threads = 1;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i)
    if (errs[i]) std::rethrow_exception(errs[i]);
}

std::string rational_text(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_text(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    throw VerifyError("malformed rational: " + s);
  try {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den <= 0) throw VerifyError("nonpositive denominator: " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw VerifyError("malformed rational: " + s);
  }
}

Rational rational_pow(const Rational& q, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

Rational rational_from_double(double d) {
  return Rational(d);
}

double rational_to_double(const Rational& q) {
  return q.get_d();
}

}  // namespace dejean
