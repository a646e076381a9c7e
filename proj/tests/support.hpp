#pragma once

#include <vector>

#include "circlelab/bigfloat.hpp"
#include "circlelab/rng.hpp"
#include "circlelab/smooth_map.hpp"

namespace testsupport {

using circlelab::BigFloat;
using circlelab::Jet;
using circlelab::PrecisionContext;
using circlelab::SampleRng;
using circlelab::SmoothMap;

inline PrecisionContext ctx256() { return PrecisionContext::make(256); }

inline bool close(const BigFloat& a, const BigFloat& b, const BigFloat& tol) {
    return abs(a - b) <= tol;
}

// Cubic polynomial a3 x^3 + a2 x^2 + a1 x + a0 with closed-form jets; the
// standard hand-checkable distortion examples use a2 = 1 (the parabola x^2).
class PolyMap : public SmoothMap {
  public:
    PolyMap(BigFloat a0, BigFloat a1, BigFloat a2, BigFloat a3)
        : a0_(std::move(a0)), a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)) {}

    static PolyMap parabola(const PrecisionContext& c) {
        return PolyMap(c.of(0L), c.of(0L), c.of(1L), c.of(0L));
    }

    Jet jet_at(const BigFloat& x) const override {
        Jet j;
        j.value = ((a3_ * x + a2_) * x + a1_) * x + a0_;
        j.d1 = (3L * a3_ * x + 2L * a2_) * x + a1_;
        j.d2 = 6L * a3_ * x + 2L * a2_;
        j.d3 = 6L * a3_;
        return j;
    }

  private:
    BigFloat a0_, a1_, a2_, a3_;
};

// exp(x): all derivatives equal the value, Schwarzian identically -1/2.
class ExpMap : public SmoothMap {
  public:
    Jet jet_at(const BigFloat& x) const override {
        BigFloat e = exp(x);
        return Jet{e, e, e, e};
    }
};

// count points in [lo,hi] with pairwise separation >= minsep (rejection
// sampling; deterministic for a fixed rng state). A partial configuration
// can wall off the remaining space at tight separations, so the whole set
// is restarted when a point cannot be placed.
inline std::vector<BigFloat> separated_points(SampleRng& rng, const PrecisionContext& ctx,
                                              long count, double lo, double hi, double minsep) {
    std::vector<double> xs;
    long stuck = 0;
    while (static_cast<long>(xs.size()) < count) {
        double c = rng.uniform(lo, hi);
        bool ok = true;
        for (double x : xs)
            if (std::abs(x - c) < minsep) { ok = false; break; }
        if (ok) {
            xs.push_back(c);
            stuck = 0;
        } else if (++stuck > 200) {
            xs.clear();
            stuck = 0;
        }
    }
    std::vector<BigFloat> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(ctx.of(x));
    return out;
}

}  // namespace testsupport
