// Times the OpenMP kernels against their serial reference implementations
// and checks that both sides agree.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "klat/continuous.hpp"
#include "klat/equilibrium.hpp"
#include "klat/gallery.hpp"
#include "klat/nikaido.hpp"
#include "klat/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

klat::FiniteGame random_game(int players, int strategies, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> value(-20, 20);
  std::vector<int> counts(static_cast<std::size_t>(players), strategies);
  long long total = 1;
  for (int d : counts) total *= d;
  std::vector<std::vector<klat::Rational>> payoffs(
      static_cast<std::size_t>(players));
  for (auto& tensor : payoffs) {
    tensor.reserve(static_cast<std::size_t>(total));
    for (long long e = 0; e < total; ++e)
      tensor.emplace_back(value(rng));
  }
  return klat::FiniteGame::make(counts, std::move(payoffs));
}

template <class Serial, class Parallel>
void compare(const char* name, Serial serial, Parallel parallel) {
  auto t0 = Clock::now();
  auto lhs = serial();
  double serial_time = seconds_since(t0);
  t0 = Clock::now();
  auto rhs = parallel();
  double parallel_time = seconds_since(t0);
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, serial_time, parallel_time,
              parallel_time > 0 ? serial_time / parallel_time : 0.0,
              lhs == rhs ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  klat::set_threads(klat::max_threads());
  std::printf("threads: %d\n", klat::max_threads());

  {
    klat::FiniteGame g = random_game(3, quick ? 12 : 40, 7);
    compare(
        "enumerate_k_lateral k=2",
        [&] { return klat::enumerate_k_lateral_serial(g, 2); },
        [&] { return klat::enumerate_k_lateral(g, 2); });
  }
  {
    klat::FiniteGame g = random_game(4, quick ? 6 : 12, 11);
    klat::PureProfile x{{1, 2, 3, 4}};
    compare(
        "v_k k=2",
        [&] { return klat::v_k_serial(g, 2, x); },
        [&] { return klat::v_k(g, 2, x); });
  }
  {
    klat::ContinuousGame cg = klat::cournot_game();
    int m = quick ? 400 : 1500;
    compare(
        ("discretize cournot m=" + std::to_string(m)).c_str(),
        [&] { return klat::discretize_serial(cg, m, 10'000'000).game.payoffs; },
        [&] { return klat::discretize(cg, m, 10'000'000).game.payoffs; });
  }
  return 0;
}
