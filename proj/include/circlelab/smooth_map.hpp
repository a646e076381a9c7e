#pragma once

#include "circlelab/bigfloat.hpp"

namespace circlelab {

// Value and first three derivatives of a map at a point.
struct Jet {
    BigFloat value;
    BigFloat d1;
    BigFloat d2;
    BigFloat d3;
};

// A C^3 real map presented through its 3-jet. Distortion and Schwarzian
// machinery is written against this interface so it applies equally to
// analytic test maps and to iterated circle-map lifts.
class SmoothMap {
  public:
    virtual ~SmoothMap() = default;
    virtual Jet jet_at(const BigFloat& x) const = 0;

    BigFloat value_at(const BigFloat& x) const { return jet_at(x).value; }
    BigFloat deriv_at(const BigFloat& x) const { return jet_at(x).d1; }
};

// Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 from a 3-jet.
inline BigFloat schwarzian(const Jet& j) {
    if (j.d1.is_zero()) throw DomainError("schwarzian: critical point (f' = 0)");
    BigFloat r = j.d2 / j.d1;
    return j.d3 / j.d1 - BigFloat(1.5, r.precision()) * r * r;
}

inline BigFloat schwarzian_at(const SmoothMap& f, const BigFloat& x) {
    return schwarzian(f.jet_at(x));
}

// 3-jet of outer∘inner given the jet of `outer` at inner.value and the jet of
// `inner` at the base point (third-order chain rule).
inline Jet compose_jets(const Jet& outer, const Jet& inner) {
    Jet h;
    h.value = outer.value;
    h.d1 = outer.d1 * inner.d1;
    h.d2 = outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2;
    h.d3 = outer.d3 * inner.d1 * inner.d1 * inner.d1 +
           3L * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3;
    return h;
}

// f∘g as a SmoothMap (borrows both operands).
class ComposedMap : public SmoothMap {
  public:
    ComposedMap(const SmoothMap& f, const SmoothMap& g) : f_(f), g_(g) {}
    Jet jet_at(const BigFloat& x) const override {
        Jet g = g_.jet_at(x);
        return compose_jets(f_.jet_at(g.value), g);
    }

  private:
    const SmoothMap& f_;
    const SmoothMap& g_;
};

// (a x + b) / (c x + d) with ad - bc != 0. Möbius maps have identically zero
// Schwarzian and preserve cross-ratios exactly, which makes them the natural
// null test for the distortion estimates.
class MobiusMap : public SmoothMap {
  public:
    MobiusMap(BigFloat a, BigFloat b, BigFloat c, BigFloat d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if ((a_ * d_ - b_ * c_).is_zero())
            throw DomainError("MobiusMap: determinant must be nonzero");
    }
    Jet jet_at(const BigFloat& x) const override {
        BigFloat w = c_ * x + d_;
        if (w.is_zero()) throw DomainError("MobiusMap: pole hit");
        BigFloat det = a_ * d_ - b_ * c_;
        BigFloat w2 = w * w;
        Jet j;
        j.value = (a_ * x + b_) / w;
        j.d1 = det / w2;
        j.d2 = BigFloat(-2L, w.precision()) * c_ * det / (w2 * w);
        j.d3 = BigFloat(6L, w.precision()) * c_ * c_ * det / (w2 * w2);
        return j;
    }

  private:
    BigFloat a_, b_, c_, d_;
};

}  // namespace circlelab
