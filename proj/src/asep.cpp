#include "hlrsk/asep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hlrsk {

char occChar(Occ o) {
  switch (o) {
    case Occ::Empty: return '0';
    case Occ::Black: return 'B';
    case Occ::Red: return 'R';
    case Occ::Both: return 'X';
  }
  return '?';
}

const std::vector<Move>& twoLayerMoves() {
  using O = Occ;
  static const std::vector<Move> table = {
      {O::Black, O::Empty, O::Empty, O::Black, RateKind::One},
      {O::Both, O::Red, O::Red, O::Both, RateKind::One},
      {O::Red, O::Empty, O::Empty, O::Red, RateKind::One},
      {O::Both, O::Black, O::Black, O::Both, RateKind::One},
      {O::Both, O::Empty, O::Empty, O::Both, RateKind::One},
      {O::Empty, O::Black, O::Black, O::Empty, RateKind::T},
      {O::Red, O::Both, O::Both, O::Red, RateKind::T},
      {O::Empty, O::Red, O::Red, O::Empty, RateKind::T},
      {O::Black, O::Both, O::Both, O::Black, RateKind::T},
      {O::Red, O::Black, O::Black, O::Red, RateKind::T},
      {O::Empty, O::Both, O::Both, O::Empty, RateKind::T},
      {O::Both, O::Empty, O::Black, O::Red, RateKind::Split},
      {O::Black, O::Red, O::Empty, O::Both, RateKind::Merge},
      {O::Black, O::Red, O::Red, O::Black, RateKind::Swap},
  };
  return table;
}

const std::vector<Move>& oneLayerMoves() {
  using O = Occ;
  static const std::vector<Move> table = {
      {O::Black, O::Empty, O::Empty, O::Black, RateKind::One},
      {O::Empty, O::Black, O::Black, O::Empty, RateKind::T},
  };
  return table;
}

Scalar moveRateSymbolic(RateKind kind, long k) {
  Scalar one(1), t = sT();
  switch (kind) {
    case RateKind::One: return one;
    case RateKind::T: return t;
    case RateKind::Split: return one - t;
    case RateKind::Merge:
      if (k < 1) throw std::invalid_argument("merge rate needs k >= 1");
      return (one - t) / (one - t.pow(k));
    case RateKind::Swap:
      if (k < 1) throw std::invalid_argument("swap rate needs k >= 1");
      return (t - t.pow(k)) / (one - t.pow(k));
  }
  return one;
}

double moveRateValue(RateKind kind, long k, double t) {
  switch (kind) {
    case RateKind::One: return 1.0;
    case RateKind::T: return t;
    case RateKind::Split: return 1.0 - t;
    case RateKind::Merge:
      if (k < 1) throw std::invalid_argument("merge rate needs k >= 1");
      return (1.0 - t) / (1.0 - std::pow(t, double(k)));
    case RateKind::Swap:
      if (k < 1) throw std::invalid_argument("swap rate needs k >= 1");
      return (t - std::pow(t, double(k))) / (1.0 - std::pow(t, double(k)));
  }
  return 1.0;
}

namespace {

Occ fullOcc(int layers) { return layers == 2 ? Occ::Both : Occ::Black; }

const std::vector<Move>& moveTable(int layers) {
  return layers == 2 ? twoLayerMoves() : oneLayerMoves();
}

void checkLayers(int layers) {
  if (layers != 1 && layers != 2)
    throw std::invalid_argument("layers must be 1 or 2");
}

}  // namespace

AsepState stepInitial(int layers, long L) {
  checkLayers(layers);
  if (L < 2) throw std::invalid_argument("window must be >= 2");
  AsepState s;
  s.layers = layers;
  s.L = L;
  s.occ.assign(2 * L, Occ::Empty);
  for (long i = 0; i < L; ++i) s.occ[i] = fullOcc(layers);
  return s;
}

long heightAt(const AsepState& s, int layer, long m) {
  if (layer < 0 || layer >= s.layers)
    throw std::invalid_argument("layer out of range");
  if (m < -s.L) throw std::invalid_argument("height readout outside window");
  long h = 0;
  for (long i = std::max(0L, m + s.L); i < 2 * s.L; ++i) {
    Occ o = s.occ[i];
    h += layer == 0 ? occBlack(o) : occRed(o);
  }
  return h;
}

long kAtBond(const AsepState& s, long i) {
  long k = 0;
  for (long j = i + 1; j < long(s.occ.size()); ++j)
    k += (occRed(s.occ[j]) ? 1 : 0) - (occBlack(s.occ[j]) ? 1 : 0);
  return k;
}

long defaultWindow(double tau) { return long(std::ceil(4.0 * tau)) + 8; }

namespace {

void checkGapInvariant(const AsepState& s) {
  if (s.layers != 2) return;
  long k = 0;
  for (long j = long(s.occ.size()) - 1; j >= 0; --j) {
    k += (occRed(s.occ[j]) ? 1 : 0) - (occBlack(s.occ[j]) ? 1 : 0);
    if (k < 0) throw std::logic_error("height gap h1 - h0 went negative");
  }
}

// one complete run; returns false on a boundary touch
bool runOnce(AsepState& s, double t, double tau, std::mt19937_64& rng) {
  const auto& table = moveTable(s.layers);
  const long nb = long(s.occ.size()) - 1;
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    long bestBond = -1;
    int bestMove = -1;
    for (long i = 0; i < nb; ++i) {
      for (int m = 0; m < int(table.size()); ++m) {
        const Move& mv = table[m];
        if (s.occ[i] != mv.preL || s.occ[i + 1] != mv.preR) continue;
        long k = 0;
        if (mv.kind == RateKind::Merge || mv.kind == RateKind::Swap)
          k = kAtBond(s, i);
        double rate = moveRateValue(mv.kind, k, t);
        if (rate <= 0.0) continue;
        double wait = std::exponential_distribution<double>(rate)(rng);
        if (wait < best) {
          best = wait;
          bestBond = i;
          bestMove = m;
        }
      }
    }
    if (bestBond < 0 || s.time + best > tau) {
      s.time = tau;
      return true;
    }
    if (bestBond == 0 || bestBond + 1 == long(s.occ.size()) - 1) return false;
    s.time += best;
    const Move& mv = table[bestMove];
    s.occ[bestBond] = mv.postL;
    s.occ[bestBond + 1] = mv.postR;
    s.events.push_back({s.time, bestBond - s.L + 1, bestMove});
    checkGapInvariant(s);
  }
}

}  // namespace

AsepState simulateAsep(int layers, double t, double tau, long window,
                       uint64_t seed) {
  checkLayers(layers);
  if (t < 0.0 || t >= 1.0)
    throw std::invalid_argument("t must lie in [0, 1)");
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  long L = std::max(window, 2L);
  for (uint64_t attempt = 0;; ++attempt, L *= 2) {
    std::seed_seq sq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(attempt)};
    std::mt19937_64 rng(sq);
    AsepState s = stepInitial(layers, L);
    if (runOnce(s, t, tau, rng)) return s;
  }
}

double observableValue(const AsepState& s, const TauSeriesObservable& obs,
                       double t) {
  if (obs.ms.size() != obs.ks.size() || obs.ms.size() != obs.layers.size())
    throw std::invalid_argument("observable component length mismatch");
  long e = 0;
  for (size_t p = 0; p < obs.ms.size(); ++p)
    e += obs.ks[p] * heightAt(s, obs.layers[p], obs.ms[p]);
  return std::pow(t, double(e));
}

namespace {

using GenState = std::vector<Occ>;

long genK(const GenState& s, long i) {
  long k = 0;
  for (long j = i + 1; j < long(s.size()); ++j)
    k += (occRed(s[j]) ? 1 : 0) - (occBlack(s[j]) ? 1 : 0);
  return k;
}

}  // namespace

std::vector<Scalar> generatorTauSeries(int layers,
                                       const TauSeriesObservable& obs,
                                       int order, int cap) {
  checkLayers(layers);
  if (order < 0 || order > cap)
    throw std::invalid_argument("series order exceeds the configured cap");
  if (obs.ms.size() != obs.ks.size() || obs.ms.size() != obs.layers.size())
    throw std::invalid_argument("observable component length mismatch");
  for (size_t p = 0; p < obs.ms.size(); ++p) {
    if (std::labs(obs.ms[p]) > order + 1)
      throw std::invalid_argument("readout site outside the reachable range");
    if (obs.layers[p] < 0 || obs.layers[p] >= layers)
      throw std::invalid_argument("layer out of range");
  }
  const long half = order + 2;  // sites at n + 1/2 for n in [-half, half-1]
  const long nsites = 2 * half;
  GenState init(nsites, Occ::Empty);
  for (long i = 0; i < half; ++i) init[i] = fullOcc(layers);

  auto value = [&](const GenState& s) {
    long e = 0;
    for (size_t p = 0; p < obs.ms.size(); ++p) {
      long h = 0;
      for (long i = std::max(0L, obs.ms[p] + half); i < nsites; ++i)
        h += obs.layers[p] == 0 ? occBlack(s[i]) : occRed(s[i]);
      e += obs.ks[p] * h;
    }
    return sT().pow(e);
  };

  const auto& table = moveTable(layers);
  std::map<GenState, Scalar> weight{{init, Scalar(1)}};
  std::vector<Scalar> coeffs{value(init)};
  BigInt factorial(1);
  for (int j = 1; j <= order; ++j) {
    std::map<GenState, Scalar> next;
    for (auto& [s, c] : weight) {
      if (s.front() != fullOcc(layers) || s.back() != Occ::Empty)
        throw std::logic_error("generator support reached the window edge");
      for (long i = 0; i + 1 < nsites; ++i)
        for (const Move& mv : table) {
          if (s[i] != mv.preL || s[i + 1] != mv.preR) continue;
          long k = 0;
          if (mv.kind == RateKind::Merge || mv.kind == RateKind::Swap)
            k = genK(s, i);
          Scalar rate = moveRateSymbolic(mv.kind, k);
          if (rate.isZero()) continue;
          GenState s2 = s;
          s2[i] = mv.postL;
          s2[i + 1] = mv.postR;
          next[s2] += c * rate;
          next[s] -= c * rate;
        }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.isZero() ? next.erase(it) : std::next(it);
    weight = std::move(next);
    factorial *= j;
    Scalar sum;
    for (auto& [s, c] : weight) sum += c * value(s);
    coeffs.push_back(sum / Scalar(factorial));
  }
  return coeffs;
}

std::pair<double, double> mcMoment(int layers, double t,
                                   const TauSeriesObservable& obs, double tau,
                                   long runs, uint64_t seed) {
  if (runs < 2) throw std::invalid_argument("need at least two runs");
  std::vector<double> vals(runs);
  long nthreads = 1;
  if (const char* env = std::getenv("HLRSK_THREADS")) {
    nthreads = std::max(1L, std::atol(env));
  } else {
    nthreads = std::max(1u, std::thread::hardware_concurrency());
  }
  nthreads = std::min<long>(nthreads, 16);
  long window = defaultWindow(tau);
  auto work = [&](long lo, long hi) {
    for (long r = lo; r < hi; ++r) {
      AsepState s = simulateAsep(layers, t, tau, window,
                                 seed + uint64_t(r) * 0x9E3779B97F4A7C15ULL);
      vals[r] = observableValue(s, obs, t);
    }
  };
  if (nthreads == 1 || runs < 256) {
    work(0, runs);
  } else {
    std::vector<std::thread> pool;
    long chunk = (runs + nthreads - 1) / nthreads;
    for (long th = 0; th < nthreads; ++th) {
      long lo = th * chunk, hi = std::min(runs, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= double(runs);
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= double(runs - 1);
  return {mean, std::sqrt(var / double(runs))};
}

std::vector<DTuple> tupleRowForOccupancies(const std::vector<Occ>& line) {
  long W = long(line.size());
  std::vector<long long> h0(W + 1, 0), h1(W + 1, 0);
  for (long p = W - 1; p >= 0; --p) {
    h0[p] = h0[p + 1] + (occBlack(line[p]) ? 1 : 0);
    h1[p] = h1[p + 1] + (occRed(line[p]) ? 1 : 0);
  }
  if (h0[0] != h1[0])
    throw std::invalid_argument("occupancy line must balance black and red");
  std::vector<DTuple> row;
  for (long p = 0; p <= W; ++p) {
    if (h1[p] < h0[p])
      throw std::invalid_argument("height gap negative in occupancy line");
    row.push_back({h0[p], h1[p] - h0[p]});
  }
  return row;
}

std::string asepEventsCsv(const AsepState& s) {
  const auto& table = moveTable(s.layers);
  std::ostringstream out;
  out << "time,site,layer,event\n";
  for (const AsepEvent& ev : s.events) {
    const Move& mv = table[ev.moveIndex];
    bool black = occBlack(mv.preL) != occBlack(mv.postL) ||
                 occBlack(mv.preR) != occBlack(mv.postR);
    bool red = occRed(mv.preL) != occRed(mv.postL) ||
               occRed(mv.preR) != occRed(mv.postR);
    int layer = black && red ? 2 : (red ? 1 : 0);
    out << ev.time << ',' << ev.bond << ',' << layer << ','
        << occChar(mv.preL) << occChar(mv.preR) << '>' << occChar(mv.postL)
        << occChar(mv.postR) << '\n';
  }
  return out.str();
}

}  // namespace hlrsk
