#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cohomkit {

/// Exact scalar used by every rational backend. Arbitrary precision, so
/// Gaussian elimination over this field is exact with no overflow concerns.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Thrown when an input document (algebra file, rep file, tuple, CLI value)
/// cannot be parsed or fails structural validation. CLI maps this to exit 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when user-supplied structure constants violate the Jacobi
/// identity (or antisymmetry). CLI maps this to exit 3.
struct JacobiError : std::runtime_error {
  explicit JacobiError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a requested computation exceeds the configured size budget.
/// CLI maps this to exit 4.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a stated precondition of an operation fails (for example
/// running back-and-forth on data whose homotopies do not satisfy h∘k = 0).
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

using Rng = std::mt19937_64;

/// splitmix64 step; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// FNV-1a, for deriving per-check seeds from (global seed, check name).
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline Rng seeded_rng(std::uint64_t seed, const std::string& tag = {}) {
  std::uint64_t s = mix64(seed);
  if (!tag.empty()) s = mix64(s ^ fnv1a(tag));
  return Rng(s);
}

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double rand_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

/// Exact complex rational scalar, for complex-valued multilinear forms on
/// real bases. Field operations only; no ordering.
struct CRational {
  Rational re{0}, im{0};

  CRational() = default;
  CRational(int v) : re(v) {}  // NOLINT: implicit by design, enables K(0)/K(1)
  CRational(const Rational& r) : re(r) {}
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend bool operator==(const CRational& x, const CRational& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const CRational& x, const CRational& y) { return !(x == y); }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
};

inline CRational operator+(CRational x, const CRational& y) { return x += y; }
inline CRational operator-(CRational x, const CRational& y) { return x -= y; }
inline CRational operator-(const CRational& x) { return CRational(-x.re, -x.im); }
inline CRational operator*(CRational x, const CRational& y) { return x *= y; }
inline CRational operator/(const CRational& x, const CRational& y) {
  Rational d = y.re * y.re + y.im * y.im;
  if (d == 0) throw std::domain_error("complex rational division by zero");
  return CRational((x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d);
}
inline CRational conj(const CRational& x) { return CRational(x.re, -x.im); }

/// i^k for integer k (k >= 0).
inline CRational imaginary_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return CRational(1);
    case 1: return CRational(Rational(0), Rational(1));
    case 2: return CRational(-1);
    default: return CRational(Rational(0), Rational(-1));
  }
}

/// Canonical text form "n" or "n/d" with positive denominator.
inline std::string rational_to_string(const Rational& r) { return r.str(); }

inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("rational: empty string");
  for (size_t pos = 0; pos < s.size(); ++pos) {
    char c = s[pos];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && pos == 0);
    if (!ok) throw ParseError("rational: bad character in '" + s + "'");
  }
  try {
    Rational r(s);
    return r;
  } catch (const std::exception&) {
    throw ParseError("rational: cannot parse '" + s + "'");
  }
}

/// Worker cap shared by every data-parallel loop; COHOMKIT_THREADS overrides
/// the hardware default.
inline int thread_budget() {
  if (const char* s = std::getenv("COHOMKIT_THREADS")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Run body(i) for i in [0, count) across the thread budget. Callers are
/// responsible for writing results into disjoint slots; the first exception
/// is rethrown after all workers join.
template <class F>
void parallel_for(int count, F&& body) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    for (int i; (i = next.fetch_add(1)) < count;) {
      if (failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cohomkit
