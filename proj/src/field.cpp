#include "hlrsk/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace hlrsk {

namespace {

using json = nlohmann::json;

std::string ratToString(const BigRat& r) { return r.str(); }

BigRat ratFromString(const std::string& s) { return BigRat(s); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t cellSeed(std::uint64_t seed, long i, long j) {
    std::uint64_t s = splitmix64(seed ^ (0xD6E8FEB86659FD93ULL * (std::uint64_t)i));
    return splitmix64(s ^ (0xA3EC647659359ACDULL * (std::uint64_t)j));
}

void checkAB(const BigRat& a, const BigRat& b) {
    BigRat u = a * b;
    if (!(u > 0) || !(u < 1))
        throw std::domain_error("input law needs 0 < a*b < 1");
}

BigRat ratPowNonneg(const BigRat& x, long d) {
    BigRat acc(1);
    for (long k = 0; k < d; ++k) acc *= x;
    return acc;
}

Scalar scalarFromRat(const BigRat& r) {
    return Scalar::fromRational(BigInt(boost::multiprecision::numerator(r)),
                                BigInt(boost::multiprecision::denominator(r)));
}

Sig zerosSig(long n) { return Sig(static_cast<size_t>(n), 0); }

// chain point list plus full validation of a signature chain along the path
std::vector<std::pair<long, long>> checkedChain(const DownRightPath& path,
                                                const std::vector<Sig>& sigs) {
    validatePath(path);
    auto points = pathLatticePoints(path);
    if (sigs.size() != points.size())
        throw std::invalid_argument("need one signature per path lattice point");
    for (size_t p = 0; p < points.size(); ++p) {
        if ((long)sigs[p].size() != points[p].second)
            throw std::invalid_argument("signature length must match the height");
        if (!isSignature(sigs[p]))
            throw std::invalid_argument("parts must be weakly decreasing");
    }
    if (!sigs.front().empty())
        throw std::invalid_argument("chain must start with the empty signature");
    if (sigs.back() != zerosSig(points.back().second))
        throw std::invalid_argument("chain must end with the zero signature");
    for (size_t p = 0; p + 1 < points.size(); ++p) {
        bool up = points[p + 1].second == points[p].second + 1;
        const Sig& lo = up ? sigs[p] : sigs[p + 1];
        const Sig& hi = up ? sigs[p + 1] : sigs[p];
        if (!interlaces(lo, hi))
            throw std::invalid_argument("chain does not interlace");
    }
    return points;
}

// x-extent of the cell row at height j (cells (i,j), 1 <= i <= extent)
long rowExtent(const DownRightPath& path, long j) {
    for (size_t k = 0; k < path.ns.size(); ++k)
        if (path.ns[k] >= j) return path.ms[k];
    return 0;
}

}  // namespace

void validateFieldParams(const FieldParams& params) {
    if (params.maxI < 0 || params.maxJ < 0)
        throw std::invalid_argument("extent must be nonnegative");
    if ((long)params.aParams.size() < params.maxI ||
        (long)params.bParams.size() < params.maxJ)
        throw std::invalid_argument("parameter lists shorter than the extent");
    for (const BigRat& a : params.aParams)
        if (!(a > 0)) throw std::invalid_argument("a parameters must be positive");
    for (const BigRat& b : params.bParams)
        if (!(b > 0)) throw std::invalid_argument("b parameters must be positive");
    if (!(params.tValue >= 0) || !(params.tValue < 1))
        throw std::invalid_argument("t must lie in [0,1)");
    for (long i = 1; i <= params.maxI; ++i)
        for (long j = 1; j <= params.maxJ; ++j)
            if (!(params.aParams[i - 1] * params.bParams[j - 1] < 1))
                throw std::invalid_argument("need a_i*b_j < 1 on the extent");
}

BigRat inputCountMass(const BigRat& a, const BigRat& b, const BigRat& t,
                      long d) {
    checkAB(a, b);
    if (d < 0) return BigRat(0);
    BigRat u = a * b;
    BigRat mass = ratPowNonneg(u, d) * (1 - u) / (1 - t * u);
    if (d >= 1) mass *= (1 - t);
    return mass;
}

BigRat inputCountTail(const BigRat& a, const BigRat& b, const BigRat& t,
                      long d) {
    checkAB(a, b);
    if (d <= 0) return BigRat(1);
    BigRat u = a * b;
    return (1 - t) * ratPowNonneg(u, d) / (1 - t * u);
}

Scalar inputCountMassSymbolic(const Scalar& ab, const Scalar& t, long d) {
    if (d < 0) return Scalar();
    Scalar one(1);
    Scalar mass = ab.pow(d) * (one - ab) / (one - t * ab);
    if (d >= 1) mass = mass * (one - t);
    return mass;
}

FieldState sampleField(const FieldParams& params) {
    validateFieldParams(params);
    FieldState st;
    st.params = params;
    long M = params.maxI, N = params.maxJ;
    st.sigs.assign(M + 1, std::vector<Sig>(N + 1));
    st.inputs.assign(M + 1, std::vector<long>(N + 1, 0));
    for (long j = 0; j <= N; ++j) st.sigs[0][j] = zerosSig(j);
    for (long i = 0; i <= M; ++i) st.sigs[i][0] = Sig{};
    double tDouble = params.tValue.convert_to<double>();
    const BigInt denom128 = BigInt(1) << 128;
    for (long n = 2; n <= M + N; ++n) {
        for (long i = std::max(1L, n - N); i <= std::min((long)M, n - 1); ++i) {
            long j = n - i;
            std::mt19937_64 rng(cellSeed(params.seed, i, j));
            BigInt hi = rng(), lo = rng();
            BigRat u = BigRat((hi << 64) | lo, denom128);
            const BigRat& a = params.aParams[i - 1];
            const BigRat& b = params.bParams[j - 1];
            long d = 0;
            BigRat cum = inputCountMass(a, b, params.tValue, 0);
            while (!(u < cum)) {
                ++d;
                cum += inputCountMass(a, b, params.tValue, d);
            }
            st.inputs[i][j] = d;
            st.sigs[i][j] = inputSample(st.sigs[i - 1][j], st.sigs[i - 1][j - 1],
                                        st.sigs[i][j - 1], d, tDouble, rng);
        }
    }
    for (long i = 0; i <= M; ++i)
        for (long j = 0; j <= N; ++j) {
            if (i < M && !interlaces(st.sigs[i][j], st.sigs[i + 1][j]))
                throw std::logic_error("sampled state breaks row interlacing");
            if (j < N && !interlaces(st.sigs[i][j], st.sigs[i][j + 1]))
                throw std::logic_error("sampled state breaks column interlacing");
        }
    return st;
}

std::string fieldStateToJson(const FieldState& state) {
    json doc;
    json p;
    p["a"] = json::array();
    for (const BigRat& a : state.params.aParams) p["a"].push_back(ratToString(a));
    p["b"] = json::array();
    for (const BigRat& b : state.params.bParams) p["b"].push_back(ratToString(b));
    p["t"] = ratToString(state.params.tValue);
    p["maxI"] = state.params.maxI;
    p["maxJ"] = state.params.maxJ;
    p["seed"] = state.params.seed;
    doc["params"] = p;
    doc["inputs"] = state.inputs;
    json rows = json::array();
    for (const auto& row : state.sigs) {
        json r = json::array();
        for (const Sig& s : row) r.push_back(s);
        rows.push_back(r);
    }
    doc["sigs"] = rows;
    return doc.dump(2);
}

FieldState fieldStateFromJson(const std::string& text) {
    json doc = json::parse(text);
    FieldState st;
    const json& p = doc.at("params");
    for (const auto& a : p.at("a"))
        st.params.aParams.push_back(ratFromString(a.get<std::string>()));
    for (const auto& b : p.at("b"))
        st.params.bParams.push_back(ratFromString(b.get<std::string>()));
    st.params.tValue = ratFromString(p.at("t").get<std::string>());
    st.params.maxI = p.at("maxI").get<long>();
    st.params.maxJ = p.at("maxJ").get<long>();
    st.params.seed = p.at("seed").get<std::uint64_t>();
    validateFieldParams(st.params);
    st.inputs = doc.at("inputs").get<std::vector<std::vector<long>>>();
    for (const auto& row : doc.at("sigs")) {
        st.sigs.emplace_back();
        for (const auto& s : row) st.sigs.back().push_back(s.get<Sig>());
    }
    if ((long)st.sigs.size() != st.params.maxI + 1)
        throw std::invalid_argument("signature grid does not match the extent");
    for (const auto& row : st.sigs)
        if ((long)row.size() != st.params.maxJ + 1)
            throw std::invalid_argument("signature grid does not match the extent");
    return st;
}

void validatePath(const DownRightPath& path) {
    if (path.ms.empty() || path.ms.size() != path.ns.size())
        throw std::invalid_argument("path needs matching nonempty corner lists");
    for (size_t k = 0; k < path.ms.size(); ++k) {
        if (path.ms[k] < 1 || path.ns[k] < 1)
            throw std::invalid_argument("corners must be positive");
        if (k > 0 && (path.ms[k] > path.ms[k - 1] || path.ns[k] < path.ns[k - 1]))
            throw std::invalid_argument("corners must go down-right");
    }
}

std::vector<std::pair<long, long>> pathLatticePoints(const DownRightPath& path) {
    validatePath(path);
    std::vector<std::pair<long, long>> pts;
    long x = path.ms[0], y = 0;
    pts.emplace_back(x, y);
    for (size_t k = 0; k < path.ms.size(); ++k) {
        while (y < path.ns[k]) pts.emplace_back(x, ++y);
        long nextX = (k + 1 < path.ms.size()) ? path.ms[k + 1] : 0;
        while (x > nextX) pts.emplace_back(--x, y);
    }
    return pts;
}

Scalar hlProcessWeightSymbolic(const DownRightPath& path,
                               const std::vector<Sig>& sigs,
                               const std::vector<Scalar>& aVars,
                               const std::vector<Scalar>& bVars,
                               bool normalized) {
    auto points = checkedChain(path, sigs);
    if ((long)aVars.size() < path.ms[0] ||
        (long)bVars.size() < path.ns.back())
        throw std::invalid_argument("parameter lists shorter than the path");
    Scalar t = sT();
    Scalar one(1);
    Scalar w = one;
    for (size_t p = 0; p + 1 < points.size(); ++p) {
        const Sig& prev = sigs[p];
        const Sig& cur = sigs[p + 1];
        long delta;
        if (points[p + 1].second == points[p].second + 1) {
            delta = sigWeight(cur) - sigWeight(prev);
            w = w * psiCoeff(cur, prev, t) * bVars[points[p + 1].second - 1].pow(delta);
        } else {
            delta = sigWeight(prev) - sigWeight(cur);
            w = w * phiCoeff(prev, cur, t) * aVars[points[p].first - 1].pow(delta);
        }
    }
    if (normalized)
        for (long j = 1; j <= path.ns.back(); ++j)
            for (long i = 1; i <= rowExtent(path, j); ++i) {
                Scalar u = aVars[i - 1] * bVars[j - 1];
                w = w * (one - u) / (one - t * u);
            }
    return w;
}

Scalar hlProcessWeight(const DownRightPath& path, const std::vector<Sig>& sigs,
                       const FieldParams& params) {
    validateFieldParams(params);
    std::vector<Scalar> aVars, bVars;
    for (const BigRat& a : params.aParams) aVars.push_back(scalarFromRat(a));
    for (const BigRat& b : params.bParams) bVars.push_back(scalarFromRat(b));
    Scalar w = hlProcessWeightSymbolic(path, sigs, aVars, bVars);
    return w.substitute(VT, scalarFromRat(params.tValue));
}

Scalar pathMarginalProbabilitySymbolic(const DownRightPath& path,
                                       const std::vector<Sig>& sigs,
                                       const std::vector<Scalar>& aVars,
                                       const std::vector<Scalar>& bVars) {
    auto points = checkedChain(path, sigs);
    if ((long)aVars.size() < path.ms[0] ||
        (long)bVars.size() < path.ns.back())
        throw std::invalid_argument("parameter lists shorter than the path");
    std::map<std::pair<long, long>, Sig> target;
    for (size_t p = 0; p < points.size(); ++p) target[points[p]] = sigs[p];
    Scalar t = sT();
    long nTop = path.ns.back();
    // NE corner target caps per row: size and largest part
    std::vector<long> capSize(nTop + 1, 0), capPart(nTop + 1, 0), extent(nTop + 1, 0);
    for (long j = 1; j <= nTop; ++j) {
        size_t k = 0;
        while (path.ns[k] < j) ++k;
        const Sig& corner = target[{path.ms[k], path.ns[k]}];
        extent[j] = path.ms[k];
        capSize[j] = sigWeight(corner);
        capPart[j] = corner.empty() ? 0 : corner[0];
    }

    using RowTuple = std::vector<Sig>;
    std::map<RowTuple, Scalar> row;
    row[RowTuple(extent[1], Sig{})] = Scalar(1);

    for (long j = 1; j <= nTop; ++j) {
        std::map<RowTuple, Scalar> next;
        Sig leftBoundary = zerosSig(j);
        Sig prevLeftBoundary = zerosSig(j - 1);
        for (const auto& [prev, prob] : row) {
            // depth-first extension across the row, cells i = 1..extent[j]
            struct Frame {
                RowTuple cur;
                Scalar p;
                long i;
            };
            std::vector<Frame> stack;
            stack.push_back({RowTuple{}, prob, 1});
            while (!stack.empty()) {
                Frame fr = std::move(stack.back());
                stack.pop_back();
                if (fr.i > extent[j]) {
                    Scalar& slot = next[fr.cur];
                    slot = slot + fr.p;
                    continue;
                }
                long i = fr.i;
                const Sig& la = (i == 1) ? prevLeftBoundary : prev[i - 2];
                const Sig& nu = prev[i - 1];
                const Sig& mu = (i == 1) ? leftBoundary : fr.cur[i - 2];
                long base = sigWeight(mu);
                std::vector<Sig> cands;
                auto it = target.find({i, j});
                if (it != target.end()) {
                    cands.push_back(it->second);
                } else {
                    for (long delta = 0; base + delta <= capSize[j]; ++delta)
                        for (Sig& rho : interlacingAbove(mu, false, delta, capPart[j]))
                            cands.push_back(std::move(rho));
                }
                for (const Sig& rho : cands) {
                    if (!interlaces(mu, rho) || !interlaces(nu, rho)) continue;
                    long r = sigWeight(rho) - base - (sigWeight(nu) - sigWeight(la));
                    if (r < 0) continue;
                    // input mass with its evolution-independent factor
                    // (1-u)/(1-t*u) deferred to the end: the running weights
                    // keep polynomial numerators in the a/b symbols
                    Scalar u = aVars[i - 1] * bVars[j - 1];
                    Scalar w = u.pow(r) * inputProb(mu, rho, la, nu, r);
                    if (r >= 1) w = w * (Scalar(1) - t);
                    if (w.isZero()) continue;
                    Frame nf;
                    nf.cur = fr.cur;
                    nf.cur.push_back(rho);
                    nf.p = fr.p * w;
                    nf.i = i + 1;
                    stack.push_back(std::move(nf));
                }
            }
        }
        row = std::move(next);
    }
    Scalar total;
    for (const auto& [tuple, prob] : row) total = total + prob;
    Scalar one(1);
    for (long j = 1; j <= nTop; ++j)
        for (long i = 1; i <= extent[j]; ++i) {
            Scalar u = aVars[i - 1] * bVars[j - 1];
            total = total * ((one - u) / (one - t * u));
        }
    return total;
}

Scalar pathMarginalProbability(const DownRightPath& path,
                               const std::vector<Sig>& sigs,
                               const FieldParams& params) {
    validateFieldParams(params);
    std::vector<Scalar> aVars, bVars;
    for (const BigRat& a : params.aParams) aVars.push_back(scalarFromRat(a));
    for (const BigRat& b : params.bParams) bVars.push_back(scalarFromRat(b));
    Scalar w = pathMarginalProbabilitySymbolic(path, sigs, aVars, bVars);
    return w.substitute(VT, scalarFromRat(params.tValue));
}

std::map<std::vector<Sig>, Scalar> pathMarginalLawSymbolic(
    const DownRightPath& path, long maxPart, const std::vector<Scalar>& aVars,
    const std::vector<Scalar>& bVars, bool normalized) {
    validatePath(path);
    if ((long)aVars.size() < path.ms[0] ||
        (long)bVars.size() < path.ns.back())
        throw std::invalid_argument("parameter lists shorter than the path");
    if (maxPart < 0) throw std::invalid_argument("maxPart must be >= 0");
    Scalar t = sT();
    long nTop = path.ns.back();
    std::vector<long> extent(nTop + 1, 0);
    for (long j = 1; j <= nTop; ++j) extent[j] = rowExtent(path, j);
    auto points = pathLatticePoints(path);

    // parts along a row only grow, so every interior cell is dominated by
    // the path corner of its row; capping all cells by maxPart keeps the
    // grouped sums exact for every chain within the cap
    std::map<std::tuple<Sig, Sig, Sig, Sig, long>, Scalar> memo;
    auto cellProb = [&memo](const Sig& mu, const Sig& rho, const Sig& la,
                            const Sig& nu, long r) -> const Scalar& {
        auto key = std::make_tuple(mu, rho, la, nu, r);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, inputProb(mu, rho, la, nu, r)).first;
        return it->second;
    };

    std::map<std::vector<Sig>, Scalar> law;
    std::vector<std::vector<Sig>> config(nTop + 1);  // config[j] = row j
    Scalar one(1);

    std::function<void(long, long, Scalar)> fill = [&](long j, long i,
                                                       Scalar w) {
        if (j > nTop) {
            std::vector<Sig> chain;
            for (const auto& [x, y] : points) {
                if (y == 0)
                    chain.push_back(Sig{});
                else if (x == 0)
                    chain.push_back(zerosSig(y));
                else
                    chain.push_back(config[y][x - 1]);
            }
            Scalar& slot = law[chain];
            slot = slot + w;
            return;
        }
        if (i > extent[j]) {
            fill(j + 1, 1, std::move(w));
            return;
        }
        const Sig& la = (j == 1) ? Sig{}
                        : (i == 1) ? zerosSig(j - 1)
                                   : config[j - 1][i - 2];
        const Sig& nu = (j == 1) ? Sig{} : config[j - 1][i - 1];
        const Sig& mu = (i == 1) ? zerosSig(j) : config[j][i - 2];
        long base = sigWeight(mu);
        long gap = sigWeight(nu) - sigWeight(la);
        for (long delta = 0; base + delta <= j * maxPart; ++delta) {
            long r = delta - gap;
            if (r < 0) continue;
            for (Sig& rho : interlacingAbove(mu, false, delta, maxPart)) {
                if (!interlaces(nu, rho)) continue;
                Scalar p = cellProb(mu, rho, la, nu, r);
                if (p.isZero()) continue;
                Scalar u = aVars[i - 1] * bVars[j - 1];
                Scalar cw = u.pow(r) * p;
                if (r >= 1) cw = cw * (one - t);
                config[j].push_back(std::move(rho));
                fill(j, i + 1, w * cw);
                config[j].pop_back();
            }
        }
    };
    fill(1, 1, one);

    if (normalized) {
        Scalar norm = one;
        for (long j = 1; j <= nTop; ++j)
            for (long i = 1; i <= extent[j]; ++i) {
                Scalar u = aVars[i - 1] * bVars[j - 1];
                norm = norm * ((one - u) / (one - t * u));
            }
        for (auto& [chain, w] : law) w = w * norm;
    }
    return law;
}

}  // namespace hlrsk
