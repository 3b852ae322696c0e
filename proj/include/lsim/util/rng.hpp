#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsim::rng {

/// 64-bit FNV-1a. Stable across platforms; used for stream keys and file digests.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Hex rendering of fnv1a, 16 lowercase digits.
std::string digest_hex(std::string_view bytes);

std::uint64_t splitmix64(std::uint64_t x);

/// Derive an independent stream seed from a run seed and a list of key parts,
/// e.g. derive(seed, {"assemble", "monthly", "3"}). Order of parts matters.
std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::string_view> parts);

/// Small counter-free generator (splitmix64 sequence). Identical output on every
/// platform, unlike the distributions in <random>.
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [0, n); n > 0. Rejection-sampled, no modulo bias.
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Sample k distinct elements, preserving the shuffled order.
    template <class T>
    std::vector<T> sample(std::vector<T> pool, std::size_t k) {
        shuffle(pool);
        if (pool.size() > k) pool.resize(k);
        return pool;
    }

  private:
    std::uint64_t state_;
};

}  // namespace lsim::rng
