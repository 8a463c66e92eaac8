// python bindings for the main operations: transition weights and laws,
// identity verification, formula evaluation, samplers and moment oracles.
// Exact values cross the boundary as canonical "numerator/denominator"
// strings; numeric entry points take rationals as strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hlrsk/asep.hpp"
#include "hlrsk/field.hpp"
#include "hlrsk/identities.hpp"
#include "hlrsk/observables.hpp"
#include "hlrsk/rsk.hpp"
#include "hlrsk/signatures.hpp"
#include "hlrsk/vertex.hpp"

namespace py = pybind11;
using namespace hlrsk;

namespace {

BigRat ratOf(const std::string& s) { return BigRat(s); }

std::array<BigRat, NVARS> pointAtT(const std::string& t) {
  std::array<BigRat, NVARS> pt;
  pt.fill(BigRat(0));
  pt[VT] = ratOf(t);
  return pt;
}

std::vector<BigRat> ratList(const std::vector<std::string>& v) {
  std::vector<BigRat> out;
  for (const auto& s : v) out.push_back(ratOf(s));
  return out;
}

py::dict reportDict(const VerificationReport& v) {
  py::dict d;
  d["id"] = v.id;
  d["equal"] = v.equal;
  d["detail"] = v.detail;
  d["terms_compared"] = v.termsCompared;
  d["truncation"] = v.truncation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hlrsk, m) {
  m.doc() = "exact and stochastic toolkit for randomized column insertion";

  m.def(
      "transition_weight",
      [](const Sig& mu, const Sig& rho, const Sig& la, const Sig& nu) {
        return transitionProb(mu, rho, la, nu).toString();
      },
      py::arg("mu"), py::arg("rho"), py::arg("la"), py::arg("nu"),
      "exact output weight, rational in t");

  m.def(
      "transition_weight_at",
      [](const Sig& mu, const Sig& rho, const Sig& la, const Sig& nu,
         const std::string& t) {
        return transitionProb(mu, rho, la, nu).evaluate(pointAtT(t)).str();
      },
      py::arg("mu"), py::arg("rho"), py::arg("la"), py::arg("nu"),
      py::arg("t"), "output weight at a rational t");

  m.def(
      "transition_law",
      [](const Sig& mu, const Sig& la, const Sig& nu) {
        std::vector<std::pair<Sig, std::string>> out;
        for (const auto& [rho, p] : transitionLaw(mu, la, nu))
          out.emplace_back(rho, p.toString());
        return out;
      },
      py::arg("mu"), py::arg("la"), py::arg("nu"),
      "full output law as (signature, weight) pairs");

  m.def(
      "input_law_mass",
      [](const std::string& a, const std::string& b, const std::string& t,
         long d) {
        return inputCountMass(ratOf(a), ratOf(b), ratOf(t), d).str();
      },
      py::arg("a"), py::arg("b"), py::arg("t"), py::arg("d"),
      "mass of the geometric-type input law");

  m.def(
      "verify_skew_cauchy",
      [](const std::string& variant, const Sig& mu, const Sig& nu, long k,
         long l) {
        CauchyReport r = verifySkewCauchy(variant, mu, nu, k, l);
        py::dict d;
        d["lhs"] = r.lhs.toString();
        d["rhs"] = r.rhs.toString();
        d["equal"] = r.equal;
        return d;
      },
      py::arg("variant"), py::arg("mu"), py::arg("nu"), py::arg("k"),
      py::arg("l"), "summation identity check, variants A, AA, BB");

  m.def(
      "verify_commutation",
      [](int length, long partBound, long maxDegree) {
        CommutationReport r =
            verifyCommutation(makeBasis(length, partBound), maxDegree);
        py::dict d;
        d["ok"] = r.ok;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("length"), py::arg("part_bound"), py::arg("max_degree"),
      "operator commutation check on a truncated basis");

  m.def(
      "verify_measure_identity",
      [](const std::string& id, long M, long N, long r, long D) {
        return reportDict(verifyMeasureIdentity(id, M, N, r, D));
      },
      py::arg("id"), py::arg("M"), py::arg("N"), py::arg("r"), py::arg("D"),
      "coefficient-level identity check for a measure formula");

  m.def(
      "verify_process_observable",
      [](long r1, long r2, long D) {
        return reportDict(verifyProcessObservable(r1, r2, D));
      },
      py::arg("r1"), py::arg("r2"), py::arg("D"),
      "coefficient-level identity check for the two-level formula");

  m.def(
      "evaluate_formula",
      [](const std::string& id, const py::dict& params,
         const std::string& mode, const std::string& tol) {
        ModelParams p;
        auto listLong = [&](const char* key) {
          return params.contains(key)
                     ? params[key].cast<std::vector<long>>()
                     : std::vector<long>{};
        };
        p.ms = listLong("ms");
        p.ns = listLong("ns");
        p.ks = listLong("ks");
        if (params.contains("layers"))
          p.layers = params["layers"].cast<std::vector<int>>();
        if (params.contains("a"))
          p.aParams = ratList(params["a"].cast<std::vector<std::string>>());
        if (params.contains("b"))
          p.bParams = ratList(params["b"].cast<std::vector<std::string>>());
        if (params.contains("t"))
          p.tValue = ratOf(params["t"].cast<std::string>());
        if (params.contains("q"))
          p.tValue = ratOf(params["q"].cast<std::string>());
        if (params.contains("tau"))
          p.tau = ratOf(params["tau"].cast<std::string>());
        if (params.contains("order")) p.order = params["order"].cast<long>();
        if (params.contains("x"))
          p.xParams = ratList(params["x"].cast<std::vector<std::string>>());
        if (params.contains("y"))
          p.yParams = ratList(params["y"].cast<std::vector<std::string>>());
        if (params.contains("r")) p.r = params["r"].cast<long>();
        ModelValue v = evaluateModelFormula(id, p, mode, ratOf(tol));
        py::dict d;
        d["id"] = v.id;
        d["mode"] = v.mode;
        d["value"] = v.value;
        d["bound"] = v.bound;
        d["order"] = v.order;
        std::vector<std::string> series;
        for (const Scalar& s : v.tauSeries) series.push_back(s.toString());
        d["tau_series"] = series;
        return d;
      },
      py::arg("id"), py::arg("params"), py::arg("mode") = "stabilized",
      py::arg("tol") = "1/10000000000",
      "evaluate a moment formula at rational parameters");

  m.def(
      "sample_field",
      [](long maxI, long maxJ, const std::vector<std::string>& a,
         const std::vector<std::string>& b, const std::string& t,
         std::uint64_t seed) {
        FieldParams p;
        p.maxI = maxI;
        p.maxJ = maxJ;
        p.aParams = ratList(a);
        p.bParams = ratList(b);
        p.tValue = ratOf(t);
        p.seed = seed;
        FieldState st = sampleField(p);
        py::dict d;
        py::list sigs, inputs;
        for (long i = 1; i <= maxI; ++i) {
          py::list rowS, rowR;
          for (long j = 1; j <= maxJ; ++j) {
            rowS.append(st.sigs[i][j]);
            rowR.append(st.inputs[i][j]);
          }
          sigs.append(rowS);
          inputs.append(rowR);
        }
        d["sigs"] = sigs;
        d["inputs"] = inputs;
        return d;
      },
      py::arg("max_i"), py::arg("max_j"), py::arg("a"), py::arg("b"),
      py::arg("t"), py::arg("seed"), "sample the signature field");

  m.def(
      "sample_sixvertex",
      [](long rows, long cols, const std::vector<std::string>& a,
         const std::vector<std::string>& b, const std::string& t,
         std::uint64_t seed) {
        return sampleSixVertexGrid(rows, cols, ratList(a), ratList(b),
                                   ratOf(t), seed);
      },
      py::arg("rows"), py::arg("cols"), py::arg("a"), py::arg("b"),
      py::arg("t"), py::arg("seed"), "sample the height grid");

  m.def(
      "mc_moment",
      [](int layers, double t, const std::vector<long>& ms,
         const std::vector<long>& ks, const std::vector<int>& ss, double tau,
         long runs, std::uint64_t seed) {
        return mcMoment(layers, t, {ms, ks, ss}, tau, runs, seed);
      },
      py::arg("layers"), py::arg("t"), py::arg("ms"), py::arg("ks"),
      py::arg("ss"), py::arg("tau"), py::arg("runs"), py::arg("seed"),
      "Monte Carlo estimate and standard error of a height moment");

  m.def(
      "generator_tau_series",
      [](int layers, const std::vector<long>& ms, const std::vector<long>& ks,
         const std::vector<int>& ss, int order) {
        std::vector<std::string> out;
        for (const Scalar& c : generatorTauSeries(layers, {ms, ks, ss}, order))
          out.push_back(c.toString());
        return out;
      },
      py::arg("layers"), py::arg("ms"), py::arg("ks"), py::arg("ss"),
      py::arg("order"), "exact Taylor coefficients of a height moment");

  m.def(
      "rate_table",
      [](int columns, long extent) {
        RateTable rt = kernelEpsilonExpansion(
            deriveProjectionKernel(columns, extent));
        py::list rows;
        for (const auto& [key, rr] : rt.rows) {
          py::dict e;
          e["nw"] = key.nw;
          e["sw"] = key.sw;
          e["se"] = key.se;
          e["frozen"] = rr.frozen;
          py::list rates;
          for (const auto& [d, rate] : rr.rates) {
            py::dict one;
            one["ne"] = d;
            one["rate"] = rate.toString();
            rates.append(one);
          }
          e["rates"] = rates;
          rows.append(e);
        }
        return rows;
      },
      py::arg("columns"), py::arg("extent") = 3,
      "continuous-time rates of the column projection");
}
