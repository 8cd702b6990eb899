#include "liddi/orientation.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <thread>
#include <vector>

#include "liddi/errors.hpp"

namespace liddi {

namespace {

constexpr int kShards = 64;

// SplitMix64 finalizer used as a counter-based generator: draw k of stream s is
// a pure function of (seed, s, k).
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  const std::uint64_t bits = mix(mix(seed ^ mix(stream)) + k);
  return (bits >> 11) * 0x1.0p-53;
}

Vec3 sphere_point(double u, double v) {
  const double ct = 2 * u - 1;  // inverse CDF of cos(theta)
  const double st = std::sqrt(std::max(0.0, 1 - ct * ct));
  const double ph = 2 * boost::math::constants::pi<double>() * v;
  return {st * std::cos(ph), st * std::sin(ph), ct};
}

struct Moments {
  double sum = 0, sum2 = 0;
};

}  // namespace

CVec3 effective_dipole(const OrientationModel& model, const CVec3& e_L) {
  if (std::abs(e_L.norm() - 1.0) > 1e-12) throw UnnormalizedPolarization("polarization must have unit norm");
  if (const auto* f = std::get_if<Fixed>(&model)) return f->d;
  if (const auto* a = std::get_if<IsotropicAtom>(&model)) {
    if (!(a->d_mag > 0)) throw InvalidArgument("dipole magnitude must be positive");
    return a->d_mag * e_L;
  }
  const auto& m = std::get<RandomMolecule>(model);
  if (!(m.d_mag > 0)) throw InvalidArgument("dipole magnitude must be positive");
  return (m.d_mag * e_L) / 3.0;
}

MonteCarloEstimate isotropic_average_oracle(double d_mag, const Vec3& e_L, const Vec3& e_k, long samples,
                                            std::uint64_t seed, int threads) {
  if (samples < 1000) throw InvalidArgument("at least 1000 samples are required");
  if (std::abs(e_L.norm() - 1) > 1e-12 || std::abs(e_k.norm() - 1) > 1e-12)
    throw UnnormalizedPolarization("e_L and e_k must have unit norm");
  const double d4 = std::pow(d_mag, 4);
  std::vector<Moments> shard(kShards);
  auto run = [&](int s) {
    const long begin = samples * s / kShards, end = samples * (s + 1) / kShards;
    Moments m;
    for (long k = begin; k < end; ++k) {
      const std::uint64_t base = 4 * static_cast<std::uint64_t>(k - begin);
      const Vec3 d1 = sphere_point(uniform(seed, s, base), uniform(seed, s, base + 1));
      const Vec3 d2 = sphere_point(uniform(seed, s, base + 2), uniform(seed, s, base + 3));
      const double x = d4 * d1.dot(e_k) * d2.dot(e_k) * d1.dot(e_L) * d2.dot(e_L);
      m.sum += x;
      m.sum2 += x * x;
    }
    shard[s] = m;
  };
  const int nt = std::max(1, std::min(threads, kShards));
  if (nt == 1) {
    for (int s = 0; s < kShards; ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int s = t; s < kShards; s += nt) run(s);
      });
    for (auto& th : pool) th.join();
  }
  Moments tot;
  for (const auto& m : shard) {
    tot.sum += m.sum;
    tot.sum2 += m.sum2;
  }
  const double n = static_cast<double>(samples);
  const double mean = tot.sum / n;
  const double var = std::max(0.0, (tot.sum2 / n - mean * mean) * n / (n - 1));
  return {mean, std::sqrt(var / n), samples};
}

}  // namespace liddi
