#include "fsmac/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "fsmac/errors.hpp"
#include "fsmac/parallel.hpp"
#include "fsmac/rng.hpp"

namespace fsmac {

namespace {

constexpr double kProbFloor = 1e-300;
constexpr std::size_t kMaxInnerSteps = 64;
constexpr std::size_t kMaxBacktracks = 60;

inline double nlog2(double x) { return -std::log2(x < kProbFloor ? kProbFloor : x); }

inline double row_entropy(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

// Direction weights shared by all problem families.
//   value = wMix * H(out | ctx) + wOther * H(out | other sender, ctx)
//         + wSelf * H(out | own sender, ctx) - wCond * H(out | both, ctx)
struct DirectionWeights {
  double wMix = 1.0;
  double wOtherOfA = 0.0;  // multiplies H(Y | senderB, ctx), appears in rA
  double wOtherOfB = 0.0;  // multiplies H(Y | senderA, ctx), appears in rB
  double wCond = 1.0;
};

DirectionWeights sum_rate_weights() { return {1.0, 0.0, 0.0, 1.0}; }

DirectionWeights support_weights(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(Errc::InvalidDistribution, "lambda " + std::to_string(lambda) + " outside [0,1]");
  }
  DirectionWeights w;
  if (lambda >= 0.5) {
    w.wMix = 1.0 - lambda;
    w.wOtherOfA = 2.0 * lambda - 1.0;
    w.wOtherOfB = 0.0;
    w.wCond = lambda;
  } else {
    w.wMix = lambda;
    w.wOtherOfA = 0.0;
    w.wOtherOfB = 1.0 - 2.0 * lambda;
    w.wCond = 1.0 - lambda;
  }
  return w;
}

struct AscentProblem {
  std::vector<std::size_t> blockSizes;

  virtual ~AscentProblem() = default;
  virtual double value(const std::vector<double>& x) const = 0;
  virtual void gradient(std::size_t block, const std::vector<double>& x,
                        std::span<double> out) const = 0;

  std::size_t totalSize() const {
    std::size_t t = 0;
    for (std::size_t s : blockSizes) t += s;
    return t;
  }
  std::size_t blockOffset(std::size_t block) const {
    std::size_t o = 0;
    for (std::size_t b = 0; b < block; ++b) o += blockSizes[b];
    return o;
  }
};

struct AscentOutcome {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t outerIterations = 0;
};

// Multiplicative-weights ascent on each simplex block with backtracking; a
// step is kept only when the fresh objective does not decrease, which makes
// the iterate sequence monotone by construction.
AscentOutcome ascend_once(const AscentProblem& prob, const OptimizerConfig& cfg,
                          std::uint64_t restartIndex) {
  rng::Stream stream(cfg.rngSeed + restartIndex);
  AscentOutcome out;
  out.x.reserve(prob.totalSize());
  for (std::size_t size : prob.blockSizes) {
    if (restartIndex == 0) {
      out.x.insert(out.x.end(), size, 1.0 / static_cast<double>(size));
    } else {
      std::vector<double> d = rng::dirichlet(stream, size);
      out.x.insert(out.x.end(), d.begin(), d.end());
    }
  }

  double current = prob.value(out.x);
  if (!std::isfinite(current)) fail(Errc::InternalInconsistency, "non-finite objective");

  std::vector<double> grad(*std::max_element(prob.blockSizes.begin(), prob.blockSizes.end()));
  std::vector<double> trial(out.x);
  std::vector<double> eta(prob.blockSizes.size(), 1.0);

  for (std::size_t outer = 1; outer <= cfg.maxOuterIters; ++outer) {
    out.outerIterations = outer;
    const double sweepStart = current;

    for (std::size_t b = 0; b < prob.blockSizes.size(); ++b) {
      const std::size_t off = prob.blockOffset(b);
      const std::size_t size = prob.blockSizes[b];

      for (std::size_t inner = 0; inner < kMaxInnerSteps; ++inner) {
        std::span<double> g(grad.data(), size);
        prob.gradient(b, out.x, g);
        double gMax = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < size; ++i) gMax = std::max(gMax, g[i]);
        if (!std::isfinite(gMax)) fail(Errc::InternalInconsistency, "non-finite gradient");

        bool accepted = false;
        double step = eta[b];
        double moved = 0.0;
        for (std::size_t bt = 0; bt < kMaxBacktracks && step >= 1e-18; ++bt, step *= 0.5) {
          trial = out.x;
          double z = 0.0;
          for (std::size_t i = 0; i < size; ++i) {
            trial[off + i] = out.x[off + i] * std::exp(step * (g[i] - gMax));
            z += trial[off + i];
          }
          if (!(z > 0.0)) continue;
          for (std::size_t i = 0; i < size; ++i) trial[off + i] /= z;
          const double candidate = prob.value(trial);
          if (candidate >= current) {
            moved = 0.0;
            for (std::size_t i = 0; i < size; ++i) moved += std::abs(trial[off + i] - out.x[off + i]);
            std::copy(trial.begin() + off, trial.begin() + off + size, out.x.begin() + off);
            if (bt == 0) eta[b] = std::min(step * 2.0, 1e6);
            else eta[b] = step;
            const double gain = candidate - current;
            current = candidate;
            accepted = true;
            if (gain == 0.0) moved = 0.0;  // stop the inner loop on a flat step
            break;
          }
        }
        if (!accepted || moved < cfg.innerStepTolerance) break;
      }
    }

    if (current - sweepStart < cfg.objectiveTolerance) {
      out.converged = true;
      break;
    }
  }

  out.value = current;
  return out;
}

struct RestartSummary {
  AscentOutcome best;
  std::vector<double> restartValues;
};

RestartSummary run_restarts(const AscentProblem& prob, const OptimizerConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(cfg.restarts, 1);
  std::vector<AscentOutcome> slots(n);
  parallel_for(n, cfg.threads, [&](std::size_t r) { slots[r] = ascend_once(prob, cfg, r); });

  RestartSummary summary;
  summary.restartValues.reserve(n);
  std::size_t bestIdx = 0;
  for (std::size_t r = 0; r < n; ++r) {
    summary.restartValues.push_back(slots[r].value);
    if (slots[r].value > slots[bestIdx].value) bestIdx = r;
  }
  summary.best = std::move(slots[bestIdx]);
  return summary;
}

// ---- independent-encoder problem ----

struct TeamProblem final : AscentProblem {
  std::size_t nTa, nTb, nS, nY;
  std::vector<double> stateDist;
  std::vector<double> k;         // [(tA*nTb + tB)*nS + s]*nY
  std::vector<double> pairCost;  // state-averaged row entropy per (tA, tB)
  DirectionWeights w;

  TeamProblem(const FsMacChannel& channel, DirectionWeights weights) : w(weights) {
    const Alphabets& a = channel.alphabets;
    const StochasticKernel sk = strategy_channel(channel);
    nS = a.nS;
    nY = a.nY;
    nTa = static_cast<std::size_t>(strategy_count(a.nXa, a.nSa));
    nTb = static_cast<std::size_t>(strategy_count(a.nXb, a.nSb));
    stateDist = channel.stateDist;
    k = sk.flat();
    pairCost.assign(nTa * nTb, 0.0);
    for (std::size_t p = 0; p < nTa * nTb; ++p) {
      double e = 0.0;
      for (std::size_t s = 0; s < nS; ++s) {
        e += stateDist[s] * row_entropy(k.data() + (p * nS + s) * nY, nY);
      }
      pairCost[p] = e;
    }
    blockSizes = {nTa, nTb};
  }

  const double* rowK(std::size_t tA, std::size_t tB, std::size_t s) const {
    return k.data() + ((tA * nTb + tB) * nS + s) * nY;
  }

  struct Parts {
    double hMix = 0.0;      // H(Y | S)
    double hGivenA = 0.0;   // H(Y | Ta, S)
    double hGivenB = 0.0;   // H(Y | Tb, S)
    double hCond = 0.0;     // H(Y | Ta, Tb, S)
  };

  Parts parts(const std::vector<double>& x, std::vector<double>* mixAOut = nullptr,
              std::vector<double>* mixBOut = nullptr) const {
    const double* piA = x.data();
    const double* piB = x.data() + nTa;
    // mixA[tB][s][y]: averaged over sender a; mixB[tA][s][y]: averaged over b
    std::vector<double> localA, localB;
    std::vector<double>& mixA = mixAOut ? *mixAOut : localA;
    std::vector<double>& mixB = mixBOut ? *mixBOut : localB;
    mixA.assign(nTb * nS * nY, 0.0);
    mixB.assign(nTa * nS * nY, 0.0);

    for (std::size_t tA = 0; tA < nTa; ++tA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        const double* base = rowK(tA, tB, 0);
        for (std::size_t s = 0; s < nS; ++s) {
          const double* kr = base + s * nY;
          double* ma = mixA.data() + (tB * nS + s) * nY;
          double* mb = mixB.data() + (tA * nS + s) * nY;
          const double pa = piA[tA];
          const double pb = piB[tB];
          for (std::size_t y = 0; y < nY; ++y) {
            ma[y] += pa * kr[y];
            mb[y] += pb * kr[y];
          }
        }
      }
    }

    Parts p;
    std::vector<double> q(nY);
    for (std::size_t s = 0; s < nS; ++s) {
      const double ps = stateDist[s];
      if (ps == 0.0) continue;
      std::fill(q.begin(), q.end(), 0.0);
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        const double* ma = mixA.data() + (tB * nS + s) * nY;
        const double pb = piB[tB];
        for (std::size_t y = 0; y < nY; ++y) q[y] += pb * ma[y];
        p.hGivenB += ps * pb * row_entropy(ma, nY);
      }
      for (std::size_t tA = 0; tA < nTa; ++tA) {
        p.hGivenA += ps * piA[tA] * row_entropy(mixB.data() + (tA * nS + s) * nY, nY);
      }
      p.hMix += ps * row_entropy(q.data(), nY);
    }
    for (std::size_t tA = 0; tA < nTa; ++tA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        p.hCond += piA[tA] * piB[tB] * pairCost[tA * nTb + tB];
      }
    }
    return p;
  }

  double value(const std::vector<double>& x) const override {
    const Parts p = parts(x);
    return w.wMix * p.hMix + w.wOtherOfA * p.hGivenB + w.wOtherOfB * p.hGivenA - w.wCond * p.hCond;
  }

  RateTriple rates(const std::vector<double>& x) const {
    const Parts p = parts(x);
    RateTriple t;
    t.rA = std::max(0.0, p.hGivenB - p.hCond);
    t.rB = std::max(0.0, p.hGivenA - p.hCond);
    t.rSum = std::max(0.0, p.hMix - p.hCond);
    return t;
  }

  void gradient(std::size_t block, const std::vector<double>& x,
                std::span<double> out) const override {
    const double* piA = x.data();
    const double* piB = x.data() + nTa;
    std::vector<double> mixA, mixB;
    parts(x, &mixA, &mixB);

    // q[s][y]
    std::vector<double> q(nS * nY, 0.0);
    for (std::size_t tB = 0; tB < nTb; ++tB) {
      for (std::size_t s = 0; s < nS; ++s) {
        const double* ma = mixA.data() + (tB * nS + s) * nY;
        for (std::size_t y = 0; y < nY; ++y) q[s * nY + y] += piB[tB] * ma[y];
      }
    }

    if (block == 0) {
      for (std::size_t tA = 0; tA < nTa; ++tA) {
        double g = 0.0;
        for (std::size_t s = 0; s < nS; ++s) {
          const double ps = stateDist[s];
          if (ps == 0.0) continue;
          const double* mb = mixB.data() + (tA * nS + s) * nY;
          if (w.wMix != 0.0) {
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += mb[y] * nlog2(q[s * nY + y]);
            g += w.wMix * ps * t;
          }
          if (w.wOtherOfA != 0.0) {
            double t = 0.0;
            for (std::size_t tB = 0; tB < nTb; ++tB) {
              const double pb = piB[tB];
              if (pb == 0.0) continue;
              const double* kr = rowK(tA, tB, s);
              const double* ma = mixA.data() + (tB * nS + s) * nY;
              for (std::size_t y = 0; y < nY; ++y) t += pb * kr[y] * nlog2(ma[y]);
            }
            g += w.wOtherOfA * ps * t;
          }
          if (w.wOtherOfB != 0.0) {
            g += w.wOtherOfB * ps * row_entropy(mb, nY);
          }
        }
        if (w.wCond != 0.0) {
          double e = 0.0;
          for (std::size_t tB = 0; tB < nTb; ++tB) e += piB[tB] * pairCost[tA * nTb + tB];
          g -= w.wCond * e;
        }
        out[tA] = g;
      }
    } else {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        double g = 0.0;
        for (std::size_t s = 0; s < nS; ++s) {
          const double ps = stateDist[s];
          if (ps == 0.0) continue;
          const double* ma = mixA.data() + (tB * nS + s) * nY;
          if (w.wMix != 0.0) {
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += ma[y] * nlog2(q[s * nY + y]);
            g += w.wMix * ps * t;
          }
          if (w.wOtherOfB != 0.0) {
            double t = 0.0;
            for (std::size_t tA = 0; tA < nTa; ++tA) {
              const double pa = piA[tA];
              if (pa == 0.0) continue;
              const double* kr = rowK(tA, tB, s);
              const double* mb = mixB.data() + (tA * nS + s) * nY;
              for (std::size_t y = 0; y < nY; ++y) t += pa * kr[y] * nlog2(mb[y]);
            }
            g += w.wOtherOfB * ps * t;
          }
          if (w.wOtherOfA != 0.0) {
            g += w.wOtherOfA * ps * row_entropy(ma, nY);
          }
        }
        if (w.wCond != 0.0) {
          double e = 0.0;
          for (std::size_t tA = 0; tA < nTa; ++tA) e += piA[tA] * pairCost[tA * nTb + tB];
          g -= w.wCond * e;
        }
        out[tB] = g;
      }
    }
  }
};

// ---- joint-encoder problem ----

struct CoopProblem final : AscentProblem {
  std::size_t nXa, nTb, nC, nY;
  std::vector<double> ctxWeight;
  std::vector<double> rows;      // [(xA*nTb + tB)*nC + c]*nY
  std::vector<double> pairCost;  // context-averaged row entropy per (xA, tB)
  double wSum, wB;

  CoopProblem(const FsMacChannel& channel, double lambda, bool conditionOnState) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      fail(Errc::InvalidDistribution, "lambda " + std::to_string(lambda) + " outside [0,1]");
    }
    wSum = lambda;
    wB = std::max(0.0, 1.0 - 2.0 * lambda);

    const Alphabets& a = channel.alphabets;
    StrategySpace spaceB(a.nXb, a.nSb);
    nXa = a.nXa;
    nTb = static_cast<std::size_t>(spaceB.count());
    nY = a.nY;
    const std::vector<std::size_t> tabB = spaceB.outputTable();

    // raw per-state rows
    std::vector<double> perState(nXa * nTb * a.nS * nY, 0.0);
    for (std::size_t xA = 0; xA < nXa; ++xA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        for (std::size_t s = 0; s < a.nS; ++s) {
          double* outRow = perState.data() + ((xA * nTb + tB) * a.nS + s) * nY;
          for (std::size_t sb = 0; sb < a.nSb; ++sb) {
            const double wOb = channel.csiB(s, sb);
            if (wOb == 0.0) continue;
            auto kr = channel.channel.row(channel.channelRow(xA, tabB[tB * a.nSb + sb], s));
            for (std::size_t y = 0; y < nY; ++y) outRow[y] += wOb * kr[y];
          }
        }
      }
    }

    if (conditionOnState) {
      nC = a.nS;
      ctxWeight = channel.stateDist;
      rows = std::move(perState);
    } else {
      nC = 1;
      ctxWeight = {1.0};
      rows.assign(nXa * nTb * nY, 0.0);
      for (std::size_t p = 0; p < nXa * nTb; ++p) {
        for (std::size_t s = 0; s < a.nS; ++s) {
          const double ps = channel.stateDist[s];
          const double* src = perState.data() + (p * a.nS + s) * nY;
          for (std::size_t y = 0; y < nY; ++y) rows[p * nY + y] += ps * src[y];
        }
      }
    }

    pairCost.assign(nXa * nTb, 0.0);
    for (std::size_t p = 0; p < nXa * nTb; ++p) {
      double e = 0.0;
      for (std::size_t c = 0; c < nC; ++c) {
        e += ctxWeight[c] * row_entropy(rows.data() + (p * nC + c) * nY, nY);
      }
      pairCost[p] = e;
    }
    blockSizes = {nXa * nTb};
  }

  const double* rowR(std::size_t xA, std::size_t tB, std::size_t c) const {
    return rows.data() + ((xA * nTb + tB) * nC + c) * nY;
  }

  struct Parts {
    double hMix = 0.0;     // H(Y | ctx)
    double hGivenXa = 0.0; // H(Y | Xa, ctx)
    double hCond = 0.0;    // H(Y | Xa, Tb, ctx)
  };

  Parts parts(const std::vector<double>& x, std::vector<double>* mOut = nullptr) const {
    // m[xA][c][y] = sum_tB pi(xA,tB) row
    std::vector<double> local;
    std::vector<double>& m = mOut ? *mOut : local;
    m.assign(nXa * nC * nY, 0.0);
    for (std::size_t xA = 0; xA < nXa; ++xA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        const double p = x[xA * nTb + tB];
        if (p == 0.0) continue;
        for (std::size_t c = 0; c < nC; ++c) {
          const double* r = rowR(xA, tB, c);
          double* dst = m.data() + (xA * nC + c) * nY;
          for (std::size_t y = 0; y < nY; ++y) dst[y] += p * r[y];
        }
      }
    }

    Parts out;
    std::vector<double> q(nY);
    // marginal over xA is independent of the context
    double hXa = 0.0;
    for (std::size_t xA = 0; xA < nXa; ++xA) {
      double pxa = 0.0;
      for (std::size_t tB = 0; tB < nTb; ++tB) pxa += x[xA * nTb + tB];
      if (pxa > 0.0) hXa -= pxa * std::log2(pxa);
    }
    for (std::size_t c = 0; c < nC; ++c) {
      const double wc = ctxWeight[c];
      if (wc == 0.0) continue;
      std::fill(q.begin(), q.end(), 0.0);
      double hJoint = 0.0;
      for (std::size_t xA = 0; xA < nXa; ++xA) {
        const double* mr = m.data() + (xA * nC + c) * nY;
        for (std::size_t y = 0; y < nY; ++y) {
          q[y] += mr[y];
          if (mr[y] > 0.0) hJoint -= mr[y] * std::log2(mr[y]);
        }
      }
      out.hMix += wc * row_entropy(q.data(), nY);
      out.hGivenXa += wc * hJoint;
    }
    out.hGivenXa -= hXa;
    for (std::size_t p = 0; p < nXa * nTb; ++p) out.hCond += x[p] * pairCost[p];
    return out;
  }

  double value(const std::vector<double>& x) const override {
    const Parts p = parts(x);
    return wSum * (p.hMix - p.hCond) + wB * (p.hGivenXa - p.hCond);
  }

  RatePair rates(const std::vector<double>& x) const {
    const Parts p = parts(x);
    return {std::max(0.0, p.hGivenXa - p.hCond), std::max(0.0, p.hMix - p.hCond)};
  }

  void gradient(std::size_t, const std::vector<double>& x, std::span<double> out) const override {
    std::vector<double> m;
    parts(x, &m);
    std::vector<double> q(nC * nY, 0.0);
    for (std::size_t xA = 0; xA < nXa; ++xA) {
      for (std::size_t c = 0; c < nC; ++c) {
        const double* mr = m.data() + (xA * nC + c) * nY;
        for (std::size_t y = 0; y < nY; ++y) q[c * nY + y] += mr[y];
      }
    }
    std::vector<double> pXa(nXa, 0.0);
    for (std::size_t xA = 0; xA < nXa; ++xA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) pXa[xA] += x[xA * nTb + tB];
    }

    for (std::size_t xA = 0; xA < nXa; ++xA) {
      for (std::size_t tB = 0; tB < nTb; ++tB) {
        double g = 0.0;
        for (std::size_t c = 0; c < nC; ++c) {
          const double wc = ctxWeight[c];
          if (wc == 0.0) continue;
          const double* r = rowR(xA, tB, c);
          if (wSum != 0.0) {
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += r[y] * nlog2(q[c * nY + y]);
            g += wSum * wc * t;
          }
          if (wB != 0.0) {
            const double* mr = m.data() + (xA * nC + c) * nY;
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += r[y] * nlog2(mr[y]);
            g += wB * wc * t;
          }
        }
        if (wB != 0.0) g -= wB * nlog2(pXa[xA]);  // -(-log2 pXa) from the -H(Xa) part
        g -= (wSum + wB) * pairCost[xA * nTb + tB];
        out[xA * nTb + tB] = g;
      }
    }
  }
};

// ---- per-observation input problem (receiver-noise reduced channel) ----

struct CondProblem final : AscentProblem {
  std::size_t nXa, nXb, nSr, nY, nCsiA, nCsiB;
  std::vector<double> srDist;
  std::vector<double> rows;      // [(xA*nXb + xB)*nSr + sr]*nY
  std::vector<double> pairCost;  // row entropy per (xA, xB, sr), not averaged
  std::vector<std::size_t> fA, fB;
  DirectionWeights w;

  CondProblem(const NoisyReceiverModel& model, std::vector<std::size_t> mapA,
              std::vector<std::size_t> mapB, DirectionWeights weights)
      : fA(std::move(mapA)), fB(std::move(mapB)), w(weights) {
    const FsMacChannel reduced = equivalent_channel(model);
    const Alphabets& a = reduced.alphabets;
    nXa = a.nXa;
    nXb = a.nXb;
    nSr = a.nS;
    nY = a.nY;
    if (fA.size() != nSr || fB.size() != nSr) {
      fail(Errc::DimensionMismatch, "observation maps must cover the receiver alphabet");
    }
    nCsiA = 1;
    nCsiB = 1;
    for (std::size_t v : fA) nCsiA = std::max(nCsiA, v + 1);
    for (std::size_t v : fB) nCsiB = std::max(nCsiB, v + 1);
    srDist = reduced.stateDist;
    rows = reduced.channel.flat();
    pairCost.assign(nXa * nXb * nSr, 0.0);
    for (std::size_t p = 0; p < nXa * nXb * nSr; ++p) {
      pairCost[p] = row_entropy(rows.data() + p * nY, nY);
    }
    blockSizes.assign(nCsiA + nCsiB, 0);
    for (std::size_t r = 0; r < nCsiA; ++r) blockSizes[r] = nXa;
    for (std::size_t r = 0; r < nCsiB; ++r) blockSizes[nCsiA + r] = nXb;
  }

  const double* rowE(std::size_t xA, std::size_t xB, std::size_t sr) const {
    return rows.data() + ((xA * nXb + xB) * nSr + sr) * nY;
  }
  const double* rowsA(const std::vector<double>& x, std::size_t r) const {
    return x.data() + r * nXa;
  }
  const double* rowsB(const std::vector<double>& x, std::size_t r) const {
    return x.data() + nCsiA * nXa + r * nXb;
  }

  struct Parts {
    double hMix = 0.0;
    double hGivenXa = 0.0;
    double hGivenXb = 0.0;
    double hCond = 0.0;
  };

  Parts parts(const std::vector<double>& x) const {
    Parts p;
    std::vector<double> q(nY), mixA(nXb * nY), mixB(nXa * nY);
    for (std::size_t sr = 0; sr < nSr; ++sr) {
      const double ps = srDist[sr];
      if (ps == 0.0) continue;
      const double* a = rowsA(x, fA[sr]);
      const double* b = rowsB(x, fB[sr]);
      std::fill(q.begin(), q.end(), 0.0);
      std::fill(mixA.begin(), mixA.end(), 0.0);
      std::fill(mixB.begin(), mixB.end(), 0.0);
      for (std::size_t xA = 0; xA < nXa; ++xA) {
        for (std::size_t xB = 0; xB < nXb; ++xB) {
          const double wAB = a[xA] * b[xB];
          const double* r = rowE(xA, xB, sr);
          for (std::size_t y = 0; y < nY; ++y) {
            mixA[xB * nY + y] += a[xA] * r[y];
            mixB[xA * nY + y] += b[xB] * r[y];
          }
          if (wAB == 0.0) continue;
          p.hCond += ps * wAB * pairCost[(xA * nXb + xB) * nSr + sr];
          for (std::size_t y = 0; y < nY; ++y) q[y] += wAB * r[y];
        }
      }
      p.hMix += ps * row_entropy(q.data(), nY);
      for (std::size_t xB = 0; xB < nXb; ++xB) {
        p.hGivenXb += ps * b[xB] * row_entropy(mixA.data() + xB * nY, nY);
      }
      for (std::size_t xA = 0; xA < nXa; ++xA) {
        p.hGivenXa += ps * a[xA] * row_entropy(mixB.data() + xA * nY, nY);
      }
    }
    return p;
  }

  double value(const std::vector<double>& x) const override {
    const Parts p = parts(x);
    return w.wMix * p.hMix + w.wOtherOfA * p.hGivenXb + w.wOtherOfB * p.hGivenXa - w.wCond * p.hCond;
  }

  RateTriple rates(const std::vector<double>& x) const {
    const Parts p = parts(x);
    RateTriple t;
    t.rA = std::max(0.0, p.hGivenXb - p.hCond);
    t.rB = std::max(0.0, p.hGivenXa - p.hCond);
    t.rSum = std::max(0.0, p.hMix - p.hCond);
    return t;
  }

  void gradient(std::size_t block, const std::vector<double>& x,
                std::span<double> out) const override {
    const bool isA = block < nCsiA;
    const std::size_t target = isA ? block : block - nCsiA;
    const std::size_t dim = isA ? nXa : nXb;
    for (std::size_t i = 0; i < dim; ++i) out[i] = 0.0;

    std::vector<double> q(nY), mixA(nXb * nY), mixB(nXa * nY);
    for (std::size_t sr = 0; sr < nSr; ++sr) {
      const double ps = srDist[sr];
      if (ps == 0.0) continue;
      if (isA && fA[sr] != target) continue;
      if (!isA && fB[sr] != target) continue;
      const double* a = rowsA(x, fA[sr]);
      const double* b = rowsB(x, fB[sr]);
      std::fill(q.begin(), q.end(), 0.0);
      std::fill(mixA.begin(), mixA.end(), 0.0);
      std::fill(mixB.begin(), mixB.end(), 0.0);
      for (std::size_t xA = 0; xA < nXa; ++xA) {
        for (std::size_t xB = 0; xB < nXb; ++xB) {
          const double* r = rowE(xA, xB, sr);
          for (std::size_t y = 0; y < nY; ++y) {
            mixA[xB * nY + y] += a[xA] * r[y];
            mixB[xA * nY + y] += b[xB] * r[y];
            q[y] += a[xA] * b[xB] * r[y];
          }
        }
      }

      if (isA) {
        for (std::size_t xA = 0; xA < nXa; ++xA) {
          double g = 0.0;
          const double* mb = mixB.data() + xA * nY;
          if (w.wMix != 0.0) {
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += mb[y] * nlog2(q[y]);
            g += w.wMix * t;
          }
          if (w.wOtherOfA != 0.0) {
            double t = 0.0;
            for (std::size_t xB = 0; xB < nXb; ++xB) {
              const double* r = rowE(xA, xB, sr);
              const double* ma = mixA.data() + xB * nY;
              for (std::size_t y = 0; y < nY; ++y) t += b[xB] * r[y] * nlog2(ma[y]);
            }
            g += w.wOtherOfA * t;
          }
          if (w.wOtherOfB != 0.0) g += w.wOtherOfB * row_entropy(mb, nY);
          if (w.wCond != 0.0) {
            double e = 0.0;
            for (std::size_t xB = 0; xB < nXb; ++xB) {
              e += b[xB] * pairCost[(xA * nXb + xB) * nSr + sr];
            }
            g -= w.wCond * e;
          }
          out[xA] += ps * g;
        }
      } else {
        for (std::size_t xB = 0; xB < nXb; ++xB) {
          double g = 0.0;
          const double* ma = mixA.data() + xB * nY;
          if (w.wMix != 0.0) {
            double t = 0.0;
            for (std::size_t y = 0; y < nY; ++y) t += ma[y] * nlog2(q[y]);
            g += w.wMix * t;
          }
          if (w.wOtherOfB != 0.0) {
            double t = 0.0;
            for (std::size_t xA = 0; xA < nXa; ++xA) {
              const double* r = rowE(xA, xB, sr);
              const double* mb = mixB.data() + xA * nY;
              for (std::size_t y = 0; y < nY; ++y) t += a[xA] * r[y] * nlog2(mb[y]);
            }
            g += w.wOtherOfB * t;
          }
          if (w.wOtherOfA != 0.0) g += w.wOtherOfA * row_entropy(ma, nY);
          if (w.wCond != 0.0) {
            double e = 0.0;
            for (std::size_t xA = 0; xA < nXa; ++xA) {
              e += a[xA] * pairCost[(xA * nXb + xB) * nSr + sr];
            }
            g -= w.wCond * e;
          }
          out[xB] += ps * g;
        }
      }
    }
  }
};

// ---- grid enumeration ----

std::uint64_t grid_point_count(std::size_t k, std::size_t g) {
  // C(g + k - 1, k - 1), saturating
  std::uint64_t num = 1;
  for (std::size_t i = 1; i < k; ++i) {
    const std::uint64_t factor = g + i;
    if (num > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    num = num * factor / i;
  }
  return num;
}

template <typename Fn>
void enumerate_grid(std::size_t k, std::size_t g, std::vector<std::size_t>& counts, std::size_t pos,
                    std::size_t remaining, Fn&& fn) {
  if (pos + 1 == k) {
    counts[pos] = remaining;
    fn(counts);
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    enumerate_grid(k, g, counts, pos + 1, remaining - c, fn);
  }
}

std::vector<std::vector<double>> grid_points(std::size_t k, std::size_t g) {
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> counts(k, 0);
  enumerate_grid(k, g, counts, 0, g, [&](const std::vector<std::size_t>& c) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<double>(c[i]) / static_cast<double>(g);
    pts.push_back(std::move(v));
  });
  return pts;
}

template <typename Problem>
TeamSearchResult finish_team(const Problem& prob, RestartSummary&& summary) {
  TeamSearchResult res;
  res.value = summary.best.value;
  res.converged = summary.best.converged;
  res.outerIterations = summary.best.outerIterations;
  res.restartValues = std::move(summary.restartValues);
  const std::vector<double>& x = summary.best.x;
  res.policy = TeamPolicy{std::vector<double>(x.begin(), x.begin() + prob.nTa),
                          std::vector<double>(x.begin() + prob.nTa, x.end())};
  res.rates = prob.rates(x);
  if (std::abs(res.value - prob.value(x)) > 1e-9) {
    fail(Errc::InternalInconsistency, "reported optimum does not match its policy");
  }
  return res;
}

}  // namespace

TeamSearchResult maximize_sum_rate(const FsMacChannel& channel, const OptimizerConfig& config) {
  TeamProblem prob(channel, sum_rate_weights());
  return finish_team(prob, run_restarts(prob, config));
}

TeamSearchResult maximize_weighted_rate(const FsMacChannel& channel, double lambda,
                                        const OptimizerConfig& config) {
  TeamProblem prob(channel, support_weights(lambda));
  return finish_team(prob, run_restarts(prob, config));
}

CooperativeSearchResult maximize_cooperative(const FsMacChannel& channel, double lambda,
                                             const OptimizerConfig& config, bool conditionOnState) {
  CoopProblem prob(channel, lambda, conditionOnState);
  RestartSummary summary = run_restarts(prob, config);
  CooperativeSearchResult res;
  res.value = summary.best.value;
  res.converged = summary.best.converged;
  res.outerIterations = summary.best.outerIterations;
  res.restartValues = std::move(summary.restartValues);
  res.policy = CooperativePolicy{prob.nXa, prob.nTb, summary.best.x};
  res.rates = prob.rates(summary.best.x);
  if (std::abs(res.value - prob.value(summary.best.x)) > 1e-9) {
    fail(Errc::InternalInconsistency, "reported optimum does not match its policy");
  }
  return res;
}

ConditionedSearchResult maximize_conditioned_rate(const NoisyReceiverModel& model,
                                                  const std::vector<std::size_t>& fA,
                                                  const std::vector<std::size_t>& fB,
                                                  double lambda, const OptimizerConfig& config) {
  CondProblem prob(model, fA, fB, support_weights(lambda));
  RestartSummary summary = run_restarts(prob, config);
  ConditionedSearchResult res;
  res.value = summary.best.value;
  res.converged = summary.best.converged;
  res.outerIterations = summary.best.outerIterations;
  res.restartValues = std::move(summary.restartValues);
  const std::vector<double>& x = summary.best.x;
  res.policy = ConditionedInputPolicy::validated(
      StochasticKernel(prob.nCsiA, prob.nXa,
                       std::vector<double>(x.begin(), x.begin() + prob.nCsiA * prob.nXa)),
      StochasticKernel(prob.nCsiB, prob.nXb,
                       std::vector<double>(x.begin() + prob.nCsiA * prob.nXa, x.end())),
      fA, fB);
  res.rates = prob.rates(x);
  if (std::abs(res.value - prob.value(x)) > 1e-9) {
    fail(Errc::InternalInconsistency, "reported optimum does not match its policy");
  }
  return res;
}

namespace {

TeamOracleResult team_oracle(const FsMacChannel& channel, DirectionWeights weights,
                             std::size_t gridResolution, std::uint64_t budget) {
  if (gridResolution == 0) fail(Errc::DimensionMismatch, "grid resolution must be positive");
  TeamProblem prob(channel, weights);
  const std::uint64_t cA = grid_point_count(prob.nTa, gridResolution);
  const std::uint64_t cB = grid_point_count(prob.nTb, gridResolution);
  if (cA > budget || cB > budget || cA > budget / std::max<std::uint64_t>(cB, 1)) {
    fail(Errc::OracleBudgetExceeded, std::to_string(cA) + " x " + std::to_string(cB) +
                                         " grid evaluations exceed budget " +
                                         std::to_string(budget));
  }
  const auto ptsA = grid_points(prob.nTa, gridResolution);
  const auto ptsB = grid_points(prob.nTb, gridResolution);

  TeamOracleResult res;
  res.value = -std::numeric_limits<double>::infinity();
  res.evaluations = static_cast<std::uint64_t>(ptsA.size()) * ptsB.size();
  std::vector<double> x(prob.nTa + prob.nTb);
  for (const auto& pa : ptsA) {
    std::copy(pa.begin(), pa.end(), x.begin());
    for (const auto& pb : ptsB) {
      std::copy(pb.begin(), pb.end(), x.begin() + prob.nTa);
      const double v = prob.value(x);
      if (v > res.value) {
        res.value = v;
        res.policy = TeamPolicy{pa, pb};
      }
    }
  }
  return res;
}

}  // namespace

TeamOracleResult exhaustive_oracle_sum_rate(const FsMacChannel& channel, std::size_t gridResolution,
                                            std::uint64_t budget) {
  return team_oracle(channel, sum_rate_weights(), gridResolution, budget);
}

TeamOracleResult exhaustive_oracle_weighted(const FsMacChannel& channel, double lambda,
                                            std::size_t gridResolution, std::uint64_t budget) {
  return team_oracle(channel, support_weights(lambda), gridResolution, budget);
}

CooperativeOracleResult exhaustive_oracle_cooperative(const FsMacChannel& channel, double lambda,
                                                      std::size_t gridResolution,
                                                      std::uint64_t budget, bool conditionOnState) {
  if (gridResolution == 0) fail(Errc::DimensionMismatch, "grid resolution must be positive");
  CoopProblem prob(channel, lambda, conditionOnState);
  const std::size_t dim = prob.nXa * prob.nTb;
  const std::uint64_t count = grid_point_count(dim, gridResolution);
  if (count > budget) {
    fail(Errc::OracleBudgetExceeded,
         std::to_string(count) + " grid evaluations exceed budget " + std::to_string(budget));
  }
  CooperativeOracleResult res;
  res.value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> counts(dim, 0);
  enumerate_grid(dim, gridResolution, counts, 0, gridResolution,
                 [&](const std::vector<std::size_t>& c) {
                   std::vector<double> x(dim);
                   for (std::size_t i = 0; i < dim; ++i) {
                     x[i] = static_cast<double>(c[i]) / static_cast<double>(gridResolution);
                   }
                   ++res.evaluations;
                   const double v = prob.value(x);
                   if (v > res.value) {
                     res.value = v;
                     res.policy = CooperativePolicy{prob.nXa, prob.nTb, std::move(x)};
                   }
                 });
  return res;
}

HMinResult h_min_bruteforce(const ModuloAdditiveSpec& spec) {
  const std::size_t q = spec.q;
  const std::size_t nS = spec.stateDist.size();
  const std::size_t nSa = spec.csiA.cols();
  const std::size_t nSb = spec.csiB.cols();
  StrategySpace spaceA(q, nSa);
  StrategySpace spaceB(q, nSb);
  const std::vector<std::size_t> tabA = spaceA.outputTable();
  const std::vector<std::size_t> tabB = spaceB.outputTable();

  HMinResult best;
  best.hMin = std::numeric_limits<double>::infinity();
  std::vector<double> row(q);
  for (std::uint64_t tA = 0; tA < spaceA.count(); ++tA) {
    for (std::uint64_t tB = 0; tB < spaceB.count(); ++tB) {
      double h = 0.0;
      for (std::size_t s = 0; s < nS; ++s) {
        const double ps = spec.stateDist[s];
        if (ps == 0.0) continue;
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t sa = 0; sa < nSa; ++sa) {
          const double wa = spec.csiA(s, sa);
          if (wa == 0.0) continue;
          const std::size_t shiftA = tabA[static_cast<std::size_t>(tA) * nSa + sa];
          for (std::size_t sb = 0; sb < nSb; ++sb) {
            const double w = wa * spec.csiB(s, sb);
            if (w == 0.0) continue;
            const std::size_t shift = (shiftA + tabB[static_cast<std::size_t>(tB) * nSb + sb]) % q;
            for (std::size_t z = 0; z < q; ++z) {
              row[(z + shift) % q] += w * spec.noiseGivenState(s, z);
            }
          }
        }
        h += ps * row_entropy(row.data(), q);
      }
      if (h < best.hMin) {
        best.hMin = h;
        best.indexA = tA;
        best.indexB = tB;
      }
    }
  }
  return best;
}

TeamPolicy uniform_coset_policy(const ModuloAdditiveSpec& spec, std::uint64_t indexA,
                                std::uint64_t indexB) {
  const std::size_t q = spec.q;
  const std::size_t nSa = spec.csiA.cols();
  const std::size_t nSb = spec.csiB.cols();
  StrategySpace spaceA(q, nSa);
  StrategySpace spaceB(q, nSb);
  if (indexA >= spaceA.count() || indexB >= spaceB.count()) {
    fail(Errc::IndexOutOfRange, "strategy index beyond space");
  }

  auto shifted_index = [q](const std::vector<std::size_t>& outputs, std::int64_t shift) {
    std::uint64_t idx = 0;
    std::uint64_t base = 1;
    for (std::size_t c = 0; c < outputs.size(); ++c) {
      const std::size_t v =
          static_cast<std::size_t>((static_cast<std::int64_t>(outputs[c]) + shift) %
                                       static_cast<std::int64_t>(q) +
                                   q) %
          q;
      idx += base * v;
      base *= q;
    }
    return idx;
  };

  std::vector<std::size_t> baseA(nSa), baseB(nSb);
  for (std::size_t c = 0; c < nSa; ++c) baseA[c] = spaceA.at(indexA).apply(c);
  for (std::size_t c = 0; c < nSb; ++c) baseB[c] = spaceB.at(indexB).apply(c);

  std::vector<double> piA(static_cast<std::size_t>(spaceA.count()), 0.0);
  std::vector<double> piB(static_cast<std::size_t>(spaceB.count()), 0.0);
  const double mass = 1.0 / static_cast<double>(q);
  for (std::size_t tau = 0; tau < q; ++tau) {
    piA[shifted_index(baseA, static_cast<std::int64_t>(tau))] += mass;
    piB[shifted_index(baseB, -static_cast<std::int64_t>(tau))] += mass;
  }
  return TeamPolicy::validated(std::move(piA), std::move(piB));
}

}  // namespace fsmac
