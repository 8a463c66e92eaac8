#pragma once

// Continuous-time simulators for the one- and two-layer asymmetric exclusion
// processes with step initial data, plus an exact generator-based tau-series
// oracle for moment observables t^(sum k_i h_{s_i}(m_i)).
//
// Sites live at half-integer positions; heights h_s(m) count layer-s
// particles strictly to the right of the integer m. The two-layer jump rates
// depend on the local height gap k = h1 - h0 at the jump bond.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hlrsk/scalar.hpp"
#include "hlrsk/vertex.hpp"

namespace hlrsk {

enum class Occ : int { Empty = 0, Black = 1, Red = 2, Both = 3 };

inline bool occBlack(Occ o) { return int(o) & 1; }
inline bool occRed(Occ o) { return int(o) & 2; }
inline Occ makeOcc(bool black, bool red) {
  return Occ((black ? 1 : 0) | (red ? 2 : 0));
}
char occChar(Occ o);

enum class RateKind { One, T, Split, Merge, Swap };

struct Move {
  Occ preL, preR, postL, postR;
  RateKind kind;
};

// the fourteen two-layer jump rules and the two one-layer ones
const std::vector<Move>& twoLayerMoves();
const std::vector<Move>& oneLayerMoves();

Scalar moveRateSymbolic(RateKind kind, long k);
double moveRateValue(RateKind kind, long k, double t);

struct AsepEvent {
  double time;
  long bond;  // integer position of the bond the move fired at
  int moveIndex;
};

struct AsepState {
  int layers = 2;
  long L = 0;  // tracked sites at positions i - L + 1/2, i = 0 .. 2L-1
  std::vector<Occ> occ;
  double time = 0.0;
  std::vector<AsepEvent> events;
};

AsepState stepInitial(int layers, long L);

// number of layer-s particles strictly right of the integer m
long heightAt(const AsepState& s, int layer, long m);
// h1 - h0 evaluated at the bond between sites i and i+1
long kAtBond(const AsepState& s, long i);

long defaultWindow(double tau);

// exact-in-law first-reaction simulation to time tau; any event touching the
// window edge discards the run and retries with the window doubled
AsepState simulateAsep(int layers, double t, double tau, long window,
                       uint64_t seed);

struct TauSeriesObservable {
  std::vector<long> ms;
  std::vector<long> ks;
  std::vector<int> layers;  // 0 = first layer, 1 = second
};

double observableValue(const AsepState& s, const TauSeriesObservable& obs,
                       double t);

// Taylor coefficients in tau of E t^(sum k_i h_{s_i}(m_i; tau)), exact in t,
// via iterated application of the forward generator on the finite set of
// states reachable from the step configuration in at most `order` jumps
std::vector<Scalar> generatorTauSeries(int layers,
                                       const TauSeriesObservable& obs,
                                       int order, int cap = 4);

// sample mean and standard error over independent trajectories
std::pair<double, double> mcMoment(int layers, double t,
                                   const TauSeriesObservable& obs, double tau,
                                   long runs, uint64_t seed);

// tuple row of the two-column projected field realizing a finite occupancy
// line (bonds read left to right, heights zero at the right edge); requires
// equal black and red totals
std::vector<DTuple> tupleRowForOccupancies(const std::vector<Occ>& line);

std::string asepEventsCsv(const AsepState& s);

}  // namespace hlrsk
