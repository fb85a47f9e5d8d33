#pragma once

#include "heckegrid/arith.hpp"

#include <map>
#include <optional>

namespace heckegrid {

/// Truncated Laurent series  sum_n a(n) q^{n/t}  with exact rational coefficients.
///
/// `prec` is an exclusive knowledge bound on the numerator: a(n) is exact for every
/// n < prec and nothing is known for n >= prec. Only nonzero coefficients are stored,
/// so a missing numerator below `prec` means a(n) = 0.
///
/// Values are immutable once built; all arithmetic lives in free functions.
class FracSeries {
public:
    using Coeffs = std::map<long, Rational>;

    /// Zero series in q^{1/tick} known below `prec`.
    FracSeries(long tick, long prec);

    /// Drops zero entries; throws PrecisionError if a nonzero entry sits at n >= prec.
    FracSeries(long tick, long prec, Coeffs coeffs);

    long tick() const { return tick_; }
    long prec() const { return prec_; }
    const Coeffs& coeffs() const { return coeffs_; }

    /// a(n); throws PrecisionError when n >= prec.
    Rational coeff(long n) const;

    bool is_zero() const { return coeffs_.empty(); }

    /// Least stored numerator, or nullopt for the zero series.
    std::optional<long> leading() const;

    /// Least stored numerator, or prec when nothing is stored. Lower bound for the true order.
    long order_bound() const { return coeffs_.empty() ? prec_ : coeffs_.begin()->first; }

    /// Same series with knowledge bound min(prec, new_prec).
    FracSeries truncated(long new_prec) const;

    /// Least common denominator of the stored coefficients.
    Integer denominator_lcm() const;

    /// Zero series compare equal regardless of tick and prec; otherwise tick, prec and
    /// coefficients must all agree.
    friend bool operator==(const FracSeries& f, const FracSeries& g);

private:
    long tick_;
    long prec_;
    Coeffs coeffs_;
};

FracSeries monomial(long tick, long n, const Rational& c, long prec);

/// The constant 1 known below numerator `prec`.
inline FracSeries one(long tick, long prec) { return monomial(tick, 0, 1, prec); }

FracSeries add(const FracSeries& f, const FracSeries& g);
FracSeries sub(const FracSeries& f, const FracSeries& g);
FracSeries neg(const FracSeries& f);
FracSeries scale(const FracSeries& f, const Rational& c);

/// Cauchy product; prec = min(f.prec + v_g, g.prec + v_f) with v the least stored
/// numerator (or prec for a zero factor).
FracSeries mul(const FracSeries& f, const FracSeries& g);

/// Multiplicative inverse known below `prec_out`; the default is the full window
/// f.prec - 2v supported by the input.
FracSeries invert(const FracSeries& f, std::optional<long> prec_out = std::nullopt);

FracSeries pow(const FracSeries& f, unsigned long m);

/// Atkin U(p): numerator n of the result carries a(p n).
FracSeries u_operator(const FracSeries& f, long p);

/// V(m): q^{1/t} -> q^{m/t}, i.e. f(z) -> f(mz).
FracSeries v_operator(const FracSeries& f, long m);

/// Re-express the same formal series with denominator `tick`. Upscaling needs
/// f.tick | tick; downscaling needs every stored numerator divisible by f.tick / tick.
FracSeries retick(const FracSeries& f, long tick);

/// Smallest denominator that represents f exactly.
FracSeries coarsen(const FracSeries& f);

/// f(a z), returned at the coarsest tick.
inline FracSeries rescale(const FracSeries& f, long a) { return coarsen(v_operator(f, a)); }

/// True when f and g agree at every numerator below min(f.prec, g.prec); both must share a tick.
bool agree_on_window(const FracSeries& f, const FracSeries& g);

inline FracSeries operator+(const FracSeries& f, const FracSeries& g) { return add(f, g); }
inline FracSeries operator-(const FracSeries& f, const FracSeries& g) { return sub(f, g); }
inline FracSeries operator-(const FracSeries& f) { return neg(f); }
inline FracSeries operator*(const FracSeries& f, const FracSeries& g) { return mul(f, g); }
inline FracSeries operator*(const Rational& c, const FracSeries& f) { return scale(f, c); }

namespace detail {

/// Schoolbook product over rationals; the reference path `mul` must reproduce exactly.
FracSeries mul_reference(const FracSeries& f, const FracSeries& g);

} // namespace detail

} // namespace heckegrid
