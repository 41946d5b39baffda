#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace linkagelab {

// Input outside the supported envelope (CLI exit code 2).
struct EnvelopeError : std::runtime_error {
    explicit EnvelopeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A certified property failed to verify (CLI exit code 1).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; line is 1-based (CLI exit code 2).
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw VerificationError(msg);
}

inline void envelope(bool cond, const std::string& msg) {
    if (!cond) throw EnvelopeError(msg);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for trial i of a seeded experiment.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

// splitmix64 generator; self-contained so sampling is identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, n) by rejection; n >= 1.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    // Bernoulli(p) from the top 53 bits.
    bool coin(double p) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return u < p;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::uint64_t state_;
};

// Runs fn(0..n-1) on up to `jobs` threads; results must be written to
// preallocated slots so aggregation order never depends on scheduling.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int threads = jobs < static_cast<int>(n) ? jobs : static_cast<int>(n);
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace linkagelab
