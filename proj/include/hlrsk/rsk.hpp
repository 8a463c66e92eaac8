#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "hlrsk/signatures.hpp"

namespace hlrsk {

// Randomized column-insertion transition on same-length signatures.
// Notation follows the growth-grid picture: the lower chain moves from la to
// nu one particle step at a time, and each step triggers a random particle
// step of the upper chain, which moves from mu to the output.
//
// transitionProb(mu, rho, la, nu) is the exact probability (rational in t)
// that the output is rho.  transitionLaw enumerates the full output law.
// transitionSample draws an output at a numeric value of t.

Scalar transitionProb(const Sig& mu, const Sig& rho, const Sig& la,
                      const Sig& nu);

std::vector<std::pair<Sig, Scalar>> transitionLaw(const Sig& mu, const Sig& la,
                                                  const Sig& nu);

Sig transitionSample(const Sig& mu, const Sig& la, const Sig& nu, double t,
                     std::mt19937_64& rng);

// Independent cross-check: enumerate every admissible grid completion by
// branching at each free cell, weighting boxes by the literal local-weight
// table.  Exponential; test use only.
std::vector<std::pair<Sig, Scalar>> gridOracleLaw(const Sig& mu, const Sig& la,
                                                  const Sig& nu);

// Variant with an input count r >= 0: lower chain la -> nu lives one level
// below the upper chain mu -> rho.  Realized by padding the lower chain with
// a sentinel coordinate -V-r -> -V far below everything else.
Scalar inputProb(const Sig& mu, const Sig& rho, const Sig& la, const Sig& nu,
                 long r, long padShift = 1);

std::vector<std::pair<Sig, Scalar>> inputLaw(const Sig& mu, const Sig& la,
                                             const Sig& nu, long r,
                                             long padShift = 1);

Sig inputSample(const Sig& mu, const Sig& la, const Sig& nu, long r, double t,
                std::mt19937_64& rng);

// Inverse direction: given rho over mu and nu under rho, produce (la, r).
// invProb is the probability of one such pair; invLaw enumerates all of them.
Scalar invProb(const Sig& nu, const Sig& la, long r, const Sig& rho,
               const Sig& mu, long padShift = 1);

std::vector<std::tuple<Sig, long, Scalar>> invLaw(const Sig& rho,
                                                  const Sig& mu, const Sig& nu,
                                                  long padShift = 1);

std::pair<Sig, long> invSample(const Sig& rho, const Sig& mu, const Sig& nu,
                               double t, std::mt19937_64& rng);

// Position of the forced upper move triggered by a lower move at d, in the
// collapsed one-row description: smallest k >= d where the upper signature
// has a part count drop matching the lower one.
long triggerPosition(const Sig& laBar, const Sig& muBar, long d);

// Deterministic t=0 degeneration of one triggered step.  la/mu are the
// signatures the whole update started from, laBar/muBar the current pair,
// d the position of the lower move, dPrev/uPrev the previous step's moves
// (pass a large negative value before the first step).
long classicalTriggeredMove(const Sig& la, const Sig& mu, const Sig& laBar,
                            const Sig& muBar, long d, long dPrev, long uPrev);

}  // namespace hlrsk
